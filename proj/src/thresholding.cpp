#include "bitext/thresholding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <unordered_set>

#include <json.hpp>

#include "bitext/rng.hpp"

namespace bitext {

using nlohmann::json;

uint64_t keep_count(uint64_t n_total, double p) {
  return static_cast<uint64_t>(
      std::floor(p * static_cast<double>(n_total) + 0.5));
}

namespace {

// Total order used everywhere: better score first, then smaller id.
bool outranks(const ScoreRecord& a, const ScoreRecord& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.pair_id < b.pair_id;
}

void check_coverage(const std::vector<ScoreRecord>& scores, uint64_t n_total) {
  if (n_total == 0) throw ThresholdError("cannot select from an empty corpus");
  if (scores.size() != n_total) {
    throw ThresholdError("score count " + std::to_string(scores.size()) +
                         " does not cover corpus of " +
                         std::to_string(n_total) + " pairs");
  }
  std::unordered_set<uint64_t> seen;
  seen.reserve(scores.size());
  std::string dupes;
  int listed = 0;
  for (const auto& s : scores) {
    if (!seen.insert(s.pair_id).second && listed < 10) {
      dupes += (listed ? ", " : "") + std::to_string(s.pair_id);
      ++listed;
    }
  }
  if (listed > 0) {
    throw ThresholdError("duplicate score ids: " + dupes);
  }
}

}  // namespace

SelectionResult select_top_fraction(const std::vector<ScoreRecord>& scores,
                                    uint64_t n_total, double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw ThresholdError("keep fraction must be in (0,1], got " +
                         std::to_string(p));
  }
  check_coverage(scores, n_total);
  const uint64_t k = keep_count(n_total, p);

  std::vector<ScoreRecord> ranked = scores;
  SelectionResult result;
  result.n_kept = k;
  std::unordered_set<uint64_t> kept_ids;
  if (k > 0) {
    std::nth_element(ranked.begin(), ranked.begin() + (k - 1), ranked.end(),
                     outranks);
    result.threshold = ranked[k - 1].score;
    kept_ids.reserve(k);
    for (uint64_t i = 0; i < k; ++i) kept_ids.insert(ranked[i].pair_id);
  } else {
    result.threshold = std::numeric_limits<double>::infinity();
  }

  result.decisions.reserve(scores.size());
  for (const auto& s : scores) {
    result.decisions.push_back(
        {s.pair_id, kept_ids.count(s.pair_id) > 0, s.scorer_id,
         result.threshold});
  }
  std::sort(result.decisions.begin(), result.decisions.end(),
            [](const FilterDecision& a, const FilterDecision& b) {
              return a.pair_id < b.pair_id;
            });
  return result;
}

std::vector<FilterDecision> select_absolute(
    const std::vector<ScoreRecord>& scores, double t) {
  if (!std::isfinite(t)) {
    throw ThresholdError("absolute threshold must be finite");
  }
  std::vector<FilterDecision> decisions;
  decisions.reserve(scores.size());
  for (const auto& s : scores) {
    decisions.push_back({s.pair_id, s.score >= t, s.scorer_id, t});
  }
  std::sort(decisions.begin(), decisions.end(),
            [](const FilterDecision& a, const FilterDecision& b) {
              return a.pair_id < b.pair_id;
            });
  return decisions;
}

SelectionResult median_split(const std::vector<ScoreRecord>& scores,
                             uint64_t n_total) {
  if (n_total < 2) {
    throw ThresholdError("median split needs at least 2 records");
  }
  return select_top_fraction(scores, n_total, 0.5);
}

std::vector<FilterDecision> random_select(uint64_t n_total, double p,
                                          uint64_t seed) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw ThresholdError("keep fraction must be in (0,1], got " +
                         std::to_string(p));
  }
  const uint64_t k = keep_count(n_total, p);
  std::vector<uint64_t> ids(n_total);
  for (uint64_t i = 0; i < n_total; ++i) ids[i] = i;
  Rng rng(seed);
  // Partial Fisher-Yates: the first k slots become the sample.
  for (uint64_t i = 0; i < k; ++i) {
    uint64_t j = i + rng.bounded(n_total - i);
    std::swap(ids[i], ids[j]);
  }
  std::vector<bool> keep(n_total, false);
  for (uint64_t i = 0; i < k; ++i) keep[ids[i]] = true;
  std::vector<FilterDecision> decisions;
  decisions.reserve(n_total);
  for (uint64_t id = 0; id < n_total; ++id) {
    decisions.push_back({id, keep[id], "random", 0.0});
  }
  return decisions;
}

namespace {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr double kLevelShrink = 2.0 / 3.0;

}  // namespace

size_t QuantileSketch::min_budget_bytes(double epsilon) {
  const size_t k = static_cast<size_t>(std::ceil(2.0 / epsilon));
  return 3 * k * sizeof(double);
}

QuantileSketch::QuantileSketch(size_t memory_budget_bytes, double epsilon,
                               uint64_t seed)
    : rng_state_(seed ^ 0xD1B54A32D192ED03ULL), epsilon_(epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ThresholdError("quantile error bound must be in (0,1)");
  }
  const size_t k_needed = static_cast<size_t>(std::ceil(2.0 / epsilon));
  const size_t k_budget = memory_budget_bytes / (3 * sizeof(double));
  if (k_budget < k_needed) {
    throw ThresholdError(
        "memory budget too small for error bound " + std::to_string(epsilon) +
        "; need at least " + std::to_string(min_budget_bytes(epsilon)) +
        " bytes");
  }
  k_ = std::min<size_t>(k_budget, 1 << 16);
  compactors_.emplace_back();
  capacity_ = k_ + 1;
}

void QuantileSketch::add(double value) {
  compactors_[0].push_back(value);
  ++count_;
  ++stored_;
  while (stored_ > capacity_) {
    // Compact the lowest level that is over its own capacity.
    const size_t levels = compactors_.size();
    size_t level = 0;
    for (; level < levels; ++level) {
      const size_t cap = static_cast<size_t>(std::ceil(
                             k_ * std::pow(kLevelShrink,
                                           static_cast<double>(
                                               levels - level - 1)))) +
                         1;
      if (compactors_[level].size() >= cap) break;
    }
    if (level == levels) break;
    compact_level(level);
  }
}

void QuantileSketch::compact_level(size_t level) {
  if (level + 1 == compactors_.size()) {
    compactors_.emplace_back();
    // Re-derive total capacity for the new height.
    capacity_ = 0;
    for (size_t h = 0; h < compactors_.size(); ++h) {
      capacity_ += static_cast<size_t>(std::ceil(
                       k_ * std::pow(kLevelShrink,
                                     static_cast<double>(
                                         compactors_.size() - h - 1)))) +
                   1;
    }
  }
  auto& src = compactors_[level];
  std::sort(src.begin(), src.end());
  const bool take_odd = (splitmix64(rng_state_) & 1) != 0;
  auto& dst = compactors_[level + 1];
  for (size_t i = take_odd ? 1 : 0; i < src.size(); i += 2) {
    dst.push_back(src[i]);
  }
  src.clear();
  stored_ = 0;
  for (const auto& c : compactors_) stored_ += c.size();
}

double QuantileSketch::quantile(double q) const {
  if (count_ == 0) throw ThresholdError("quantile of an empty sketch");
  std::vector<std::pair<double, uint64_t>> weighted;
  weighted.reserve(stored_);
  for (size_t h = 0; h < compactors_.size(); ++h) {
    const uint64_t w = 1ULL << h;
    for (double v : compactors_[h]) weighted.emplace_back(v, w);
  }
  std::sort(weighted.begin(), weighted.end());
  uint64_t total = 0;
  for (const auto& [v, w] : weighted) total += w;
  const double target = q * static_cast<double>(total);
  uint64_t cum = 0;
  for (const auto& [v, w] : weighted) {
    cum += w;
    if (static_cast<double>(cum) >= target) return v;
  }
  return weighted.back().first;
}

double estimate_quantile(const std::vector<double>& scores, double q,
                         size_t memory_budget_bytes, double epsilon,
                         uint64_t seed) {
  if (!(q > 0.0 && q < 1.0)) {
    throw ThresholdError("quantile must be in (0,1), got " +
                         std::to_string(q));
  }
  QuantileSketch sketch(memory_budget_bytes, epsilon, seed);
  for (double s : scores) sketch.add(s);
  return sketch.quantile(q);
}

void write_decisions(const std::vector<FilterDecision>& decisions,
                     const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ThresholdError("cannot open decisions output: " + path);
  for (const auto& d : decisions) {
    out << d.pair_id << '\t' << (d.keep ? '1' : '0') << '\n';
  }
  if (!out) throw ThresholdError(path + ": write failed");
}

std::vector<FilterDecision> read_decisions(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ThresholdError("cannot open decisions file: " + path);
  std::vector<FilterDecision> decisions;
  std::string line;
  uint64_t line_no = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t tab = line.find('\t');
    if (tab == std::string::npos || tab + 2 != line.size() ||
        (line[tab + 1] != '0' && line[tab + 1] != '1')) {
      throw ThresholdError(path + " line " + std::to_string(line_no) +
                           ": expected id<TAB>0|1");
    }
    uint64_t id = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + tab, id);
    if (ec != std::errc() || ptr != line.data() + tab) {
      throw ThresholdError(path + " line " + std::to_string(line_no) +
                           ": cannot parse id");
    }
    decisions.push_back({id, line[tab + 1] == '1', "", 0.0});
    ++line_no;
  }
  return decisions;
}

void write_threshold_meta(const ThresholdMeta& meta, const std::string& path) {
  json obj;
  obj["scorer_id"] = meta.scorer_id;
  obj["mode"] = meta.mode;
  obj["p"] = meta.p;
  obj["k"] = meta.k;
  obj["threshold"] = meta.threshold;
  obj["n_total"] = meta.n_total;
  if (meta.seed) obj["seed"] = *meta.seed;
  std::ofstream out(path);
  if (!out) throw ThresholdError("cannot open metadata output: " + path);
  out << obj.dump(2) << '\n';
}

}  // namespace bitext
