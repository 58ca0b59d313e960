#include "bitext/evaluation.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "bitext/rng.hpp"

namespace bitext {

using nlohmann::json;

NoiseEvalReport eval_noise(
    const std::unordered_map<uint64_t, NoiseCategory>& labels,
    const std::vector<ScoreRecord>& scores) {
  for (const auto& s : scores) {
    if (!labels.count(s.pair_id)) {
      throw EvalError("no label for scored pair id " +
                      std::to_string(s.pair_id));
    }
  }
  std::unordered_set<uint64_t> scored;
  for (const auto& s : scores) scored.insert(s.pair_id);
  for (const auto& [id, label] : labels) {
    if (!scored.count(id)) {
      throw EvalError("no score for labeled pair id " + std::to_string(id));
    }
  }

  SelectionResult selection = median_split(scores, scores.size());

  NoiseEvalReport report;
  report.scorer_id = scores.empty() ? "" : scores.front().scorer_id;
  report.threshold = selection.threshold;
  report.n_total = scores.size();
  report.n_kept = selection.n_kept;
  for (const auto& d : selection.decisions) {
    NoiseCategory label = labels.at(d.pair_id);
    if (label == NoiseCategory::kClean) {
      ++report.n_clean;
      continue;
    }
    auto& outcome = report.per_category[label];
    ++outcome.n_noise;
    if (d.keep) ++outcome.n_noise_kept;
  }
  for (auto& [cat, outcome] : report.per_category) {
    outcome.pct_kept = outcome.n_noise == 0
                           ? 0.0
                           : 100.0 * static_cast<double>(outcome.n_noise_kept) /
                                 static_cast<double>(outcome.n_noise);
  }
  return report;
}

namespace {

std::unordered_map<uint64_t, bool> decision_map(
    const std::vector<FilterDecision>& decisions) {
  std::unordered_map<uint64_t, bool> map;
  map.reserve(decisions.size());
  for (const auto& d : decisions) map[d.pair_id] = d.keep;
  return map;
}

void check_same_universe(const std::unordered_map<uint64_t, bool>& a,
                         const std::unordered_map<uint64_t, bool>& b) {
  if (a.size() == b.size()) {
    for (const auto& [id, keep] : a) {
      if (!b.count(id)) {
        throw EvalError("decision id universes differ; id " +
                        std::to_string(id) + " is in one set only");
      }
    }
    return;
  }
  const auto& larger = a.size() > b.size() ? a : b;
  const auto& smaller = a.size() > b.size() ? b : a;
  for (const auto& [id, keep] : larger) {
    if (!smaller.count(id)) {
      throw EvalError("decision id universes differ; id " +
                      std::to_string(id) + " is in one set only");
    }
  }
  throw EvalError("decision id universes differ in size");
}

}  // namespace

OverlapReport compare_filters(const std::vector<FilterDecision>& decisions_a,
                              const std::vector<FilterDecision>& decisions_b) {
  auto map_a = decision_map(decisions_a);
  auto map_b = decision_map(decisions_b);
  check_same_universe(map_a, map_b);

  OverlapReport report;
  report.n_total = map_a.size();
  for (const auto& [id, keep_a] : map_a) {
    const bool keep_b = map_b.at(id);
    if (keep_a) ++report.n_kept_a;
    if (keep_b) ++report.n_kept_b;
    if (keep_a && keep_b) ++report.n_common;
    else if (keep_a) ++report.n_only_a;
    else if (keep_b) ++report.n_only_b;
    else ++report.n_neither;
  }
  const uint64_t uni = report.n_kept_a + report.n_kept_b - report.n_common;
  report.jaccard =
      uni == 0 ? 1.0
               : static_cast<double>(report.n_common) / static_cast<double>(uni);
  return report;
}

std::vector<FilterDecision> intersect_filters(
    const std::vector<FilterDecision>& decisions_a,
    const std::vector<FilterDecision>& decisions_b) {
  auto map_a = decision_map(decisions_a);
  auto map_b = decision_map(decisions_b);
  check_same_universe(map_a, map_b);
  std::vector<FilterDecision> out = decisions_a;
  std::sort(out.begin(), out.end(),
            [](const FilterDecision& a, const FilterDecision& b) {
              return a.pair_id < b.pair_id;
            });
  for (auto& d : out) {
    d.keep = d.keep && map_b.at(d.pair_id);
    d.scorer_id = "intersection";
  }
  return out;
}

DivergenceSample sample_divergence(
    const std::vector<SentencePair>& corpus,
    const std::vector<FilterDecision>& decisions_a,
    const std::vector<FilterDecision>& decisions_b, uint64_t n_per_bucket,
    uint64_t seed) {
  auto map_a = decision_map(decisions_a);
  auto map_b = decision_map(decisions_b);
  check_same_universe(map_a, map_b);

  std::vector<SentencePair> only_a;
  std::vector<SentencePair> only_b;
  for (const auto& p : corpus) {
    auto it_a = map_a.find(p.id);
    if (it_a == map_a.end()) continue;
    const bool keep_a = it_a->second;
    const bool keep_b = map_b.at(p.id);
    if (keep_a && !keep_b) only_a.push_back(p);
    if (keep_b && !keep_a) only_b.push_back(p);
  }

  auto take = [&](std::vector<SentencePair>& bucket, uint64_t bucket_seed) {
    if (bucket.size() <= n_per_bucket) return bucket;
    return sample_clean(bucket, n_per_bucket, bucket_seed);
  };
  DivergenceSample sample;
  sample.kept_by_a_only = take(only_a, seed);
  sample.kept_by_b_only = take(only_b, seed ^ 0x517CC1B727220A95ULL);
  return sample;
}

FilterReport filter_report(const CorpusStats& before,
                           const CorpusStats& after) {
  FilterReport report;
  report.n_before = before.n_pairs;
  report.n_after = after.n_pairs;
  report.mean_src_before = before.mean_src_tokens;
  report.mean_src_after = after.mean_src_tokens;
  report.mean_tgt_before = before.mean_tgt_tokens;
  report.mean_tgt_after = after.mean_tgt_tokens;
  report.delta_src = after.mean_src_tokens - before.mean_src_tokens;
  report.delta_tgt = after.mean_tgt_tokens - before.mean_tgt_tokens;
  return report;
}

std::string noise_report_json(const NoiseEvalReport& report) {
  json obj;
  obj["schema_version"] = 1;
  obj["scorer_id"] = report.scorer_id;
  obj["threshold"] = report.threshold;
  obj["n_total"] = report.n_total;
  obj["n_kept"] = report.n_kept;
  obj["n_clean"] = report.n_clean;
  json cats = json::object();
  for (const auto& [cat, outcome] : report.per_category) {
    cats[to_string(cat)] = {{"n_noise", outcome.n_noise},
                            {"n_noise_kept", outcome.n_noise_kept},
                            {"pct_kept", outcome.pct_kept}};
  }
  obj["per_category"] = std::move(cats);
  return obj.dump(2) + "\n";
}

std::string noise_report_text(const NoiseEvalReport& report) {
  std::ostringstream out;
  out << "scorer: " << report.scorer_id << "  threshold: " << report.threshold
      << "  kept " << report.n_kept << "/" << report.n_total << "\n";
  for (const auto& [cat, outcome] : report.per_category) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "  %-18s %8lu noise  %8lu kept  %6.1f%%\n",
                  to_string(cat).c_str(),
                  static_cast<unsigned long>(outcome.n_noise),
                  static_cast<unsigned long>(outcome.n_noise_kept),
                  outcome.pct_kept);
    out << buf;
  }
  return out.str();
}

std::string overlap_report_json(const OverlapReport& report) {
  json obj;
  obj["schema_version"] = 1;
  obj["n_total"] = report.n_total;
  obj["n_kept_a"] = report.n_kept_a;
  obj["n_kept_b"] = report.n_kept_b;
  obj["n_common"] = report.n_common;
  obj["n_only_a"] = report.n_only_a;
  obj["n_only_b"] = report.n_only_b;
  obj["n_neither"] = report.n_neither;
  obj["jaccard"] = report.jaccard;
  return obj.dump(2) + "\n";
}

std::string overlap_report_text(const OverlapReport& report) {
  std::ostringstream out;
  out << "total " << report.n_total << "  kept A " << report.n_kept_a
      << "  kept B " << report.n_kept_b << "  common " << report.n_common
      << "  only A " << report.n_only_a << "  only B " << report.n_only_b
      << "  neither " << report.n_neither << "  jaccard " << report.jaccard
      << "\n";
  return out.str();
}

std::string filter_report_json(const FilterReport& report) {
  json obj;
  obj["schema_version"] = 1;
  obj["n_before"] = report.n_before;
  obj["n_after"] = report.n_after;
  obj["mean_src_before"] = report.mean_src_before;
  obj["mean_src_after"] = report.mean_src_after;
  obj["mean_tgt_before"] = report.mean_tgt_before;
  obj["mean_tgt_after"] = report.mean_tgt_after;
  obj["delta_src"] = report.delta_src;
  obj["delta_tgt"] = report.delta_tgt;
  return obj.dump(2) + "\n";
}

}  // namespace bitext
