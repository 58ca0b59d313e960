#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <thread>
#include <unordered_set>

#include <CLI11.hpp>
#include <json.hpp>

#include "bitext/corpus.hpp"
#include "bitext/evaluation.hpp"
#include "bitext/manifest.hpp"
#include "bitext/noise_gen.hpp"
#include "bitext/scorers.hpp"
#include "bitext/thresholding.hpp"

namespace {

using namespace bitext;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

std::string now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
  return buf;
}

RunManifest make_manifest(const std::string& command,
                          const std::map<std::string, std::string>& args,
                          const std::vector<std::string>& inputs,
                          const std::vector<uint64_t>& seeds) {
  RunManifest m;
  m.command = command;
  m.args = args;
  for (const auto& path : inputs) m.input_digests[path] = hash_file(path);
  m.seeds = seeds;
  m.timestamp = now_iso8601();
  return m;
}

std::unordered_map<uint64_t, PairLabel> load_oracle_labels(
    const std::string& path) {
  std::unordered_map<uint64_t, PairLabel> out;
  for (const auto& [id, cat] : read_labels(path)) {
    out[id] = cat == NoiseCategory::kClean ? PairLabel::kClean
                                           : PairLabel::kNoisy;
  }
  return out;
}

// Deterministic chunked parallel map: output order is input order
// regardless of worker scheduling.
std::vector<double> parallel_score(const std::vector<SentencePair>& pairs,
                                   const ScoreFn& fn, unsigned threads) {
  std::vector<double> scores(pairs.size());
  if (threads <= 1 || pairs.size() < 1024) {
    for (size_t i = 0; i < pairs.size(); ++i) scores[i] = fn(pairs[i]);
    return scores;
  }
  std::vector<std::thread> workers;
  const size_t chunk = (pairs.size() + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const size_t begin = w * chunk;
    const size_t end = std::min(pairs.size(), begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([&, begin, end] {
      for (size_t i = begin; i < end; ++i) scores[i] = fn(pairs[i]);
    });
  }
  for (auto& t : workers) t.join();
  return scores;
}

struct ScoreArgs {
  std::string corpus_path;
  std::string format = "jsonl";
  std::string scorer;
  std::string scorer_id;
  std::string score_file;
  std::string labels_path;
  std::vector<std::string> profile_paths;
  std::string expected_src_lang;
  std::string expected_tgt_lang;
  std::vector<std::string> parts;  // name:weight for composite
  std::string out;
  unsigned threads = 1;
};

int cmd_score(const ScoreArgs& args) {
  const CorpusFormat format = parse_format(args.format);
  const std::vector<SentencePair> pairs = read_corpus(args.corpus_path, format);
  const std::string scorer_id =
      args.scorer_id.empty() ? args.scorer : args.scorer_id;

  std::vector<ScoreRecord> records;
  std::vector<std::string> inputs = {args.corpus_path};

  if (args.scorer == "external") {
    if (args.score_file.empty()) {
      std::cerr << "score: --scorer external requires --score-file\n";
      return kExitUsage;
    }
    inputs.push_back(args.score_file);
    records = score_external(pairs, args.score_file, scorer_id);
  } else {
    ScoreFn fn;
    if (args.scorer == "length_ratio") {
      fn = score_length_ratio;
    } else if (args.scorer == "copy_penalty") {
      fn = score_copy_penalty;
    } else if (args.scorer == "lang_fingerprint") {
      if (args.profile_paths.empty()) {
        std::cerr << "score: --scorer lang_fingerprint requires --profile\n";
        return kExitUsage;
      }
      auto profiles = std::make_shared<std::map<std::string, LangProfile>>();
      for (const auto& p : args.profile_paths) {
        inputs.push_back(p);
        LangProfile profile = load_lang_profile(p);
        (*profiles)[profile.lang] = std::move(profile);
      }
      fn = [profiles, src_lang = args.expected_src_lang,
            tgt_lang = args.expected_tgt_lang](const SentencePair& pair) {
        return score_lang_fingerprint(pair, *profiles, src_lang, tgt_lang);
      };
    } else if (args.scorer == "oracle") {
      if (args.labels_path.empty()) {
        std::cerr << "score: --scorer oracle requires --labels\n";
        return kExitUsage;
      }
      inputs.push_back(args.labels_path);
      auto labels = std::make_shared<std::unordered_map<uint64_t, PairLabel>>(
          load_oracle_labels(args.labels_path));
      fn = [labels](const SentencePair& pair) {
        return score_oracle(pair, *labels);
      };
    } else if (args.scorer == "composite") {
      if (args.parts.empty()) {
        std::cerr << "score: --scorer composite requires --part name:weight\n";
        return kExitUsage;
      }
      std::vector<std::pair<ScoreFn, double>> parts;
      for (const auto& spec : args.parts) {
        size_t colon = spec.rfind(':');
        if (colon == std::string::npos) {
          std::cerr << "score: bad --part '" << spec << "'\n";
          return kExitUsage;
        }
        const std::string name = spec.substr(0, colon);
        const double weight = std::stod(spec.substr(colon + 1));
        if (name == "length_ratio") {
          parts.emplace_back(score_length_ratio, weight);
        } else if (name == "copy_penalty") {
          parts.emplace_back(score_copy_penalty, weight);
        } else {
          std::cerr << "score: unknown composite part '" << name << "'\n";
          return kExitUsage;
        }
      }
      fn = [parts](const SentencePair& pair) {
        return score_composite(pair, parts);
      };
    } else {
      std::cerr << "score: unknown scorer '" << args.scorer << "'\n";
      return kExitUsage;
    }
    std::vector<double> values = parallel_score(pairs, fn, args.threads);
    records.reserve(pairs.size());
    for (size_t i = 0; i < pairs.size(); ++i) {
      records.push_back({pairs[i].id, scorer_id, values[i]});
    }
  }

  write_scores(records, args.out);
  write_manifest(make_manifest("score",
                               {{"corpus", args.corpus_path},
                                {"scorer", args.scorer},
                                {"out", args.out}},
                               inputs, {}),
                 args.out + ".manifest.json");
  return kExitOk;
}

struct FilterArgs {
  std::string corpus_path;
  std::string format = "jsonl";
  std::string scores_path;
  double keep_fraction = -1.0;
  double threshold = std::numeric_limits<double>::quiet_NaN();
  int64_t random_seed = -1;
  bool approx = false;
  size_t memory_budget = 1 << 20;
  std::string out_kept;
  std::string out_dropped;
  std::string out_decisions;
  std::string out_meta;
  unsigned threads = 1;
};

int cmd_filter(const FilterArgs& args) {
  const CorpusFormat format = parse_format(args.format);
  const std::vector<SentencePair> pairs = read_corpus(args.corpus_path, format);

  const bool random_mode = args.random_seed >= 0;
  const bool absolute_mode = !std::isnan(args.threshold);
  const bool fraction_mode = args.keep_fraction > 0.0 && !random_mode;
  if (!random_mode && !absolute_mode && !fraction_mode) {
    std::cerr << "filter: need --keep-fraction, --threshold or "
                 "--random-seed\n";
    return kExitUsage;
  }

  std::vector<FilterDecision> decisions;
  ThresholdMeta meta;
  meta.n_total = pairs.size();
  std::vector<std::string> inputs = {args.corpus_path};
  std::vector<uint64_t> seeds;

  if (random_mode) {
    const double p = args.keep_fraction > 0.0 ? args.keep_fraction : 0.5;
    decisions = random_select(pairs.size(),  p,
                              static_cast<uint64_t>(args.random_seed));
    seeds.push_back(static_cast<uint64_t>(args.random_seed));
    meta.scorer_id = "random";
    meta.mode = "random_fraction";
    meta.p = p;
    meta.k = keep_count(pairs.size(), p);
    meta.seed = static_cast<uint64_t>(args.random_seed);
  } else {
    if (args.scores_path.empty()) {
      std::cerr << "filter: score-based modes require --scores\n";
      return kExitUsage;
    }
    inputs.push_back(args.scores_path);
    std::vector<ScoreRecord> scores = read_scores(args.scores_path, "scores");
    // Coverage check against the corpus id set.
    {
      std::unordered_set<uint64_t> scored;
      for (const auto& s : scores) scored.insert(s.pair_id);
      std::string missing;
      int listed = 0;
      for (const auto& p : pairs) {
        if (!scored.count(p.id) && listed < 10) {
          missing += (listed ? ", " : "") + std::to_string(p.id);
          ++listed;
        }
      }
      if (listed > 0) {
        std::cerr << "filter: missing scores for ids: " << missing << "\n";
        return kExitUsage;
      }
    }
    if (absolute_mode) {
      decisions = select_absolute(scores, args.threshold);
      meta.mode = "absolute";
      meta.threshold = args.threshold;
      meta.k = 0;
      for (const auto& d : decisions) meta.k += d.keep ? 1 : 0;
    } else if (args.approx) {
      std::vector<double> values;
      values.reserve(scores.size());
      for (const auto& s : scores) values.push_back(s.score);
      const double q = 1.0 - args.keep_fraction;
      const double t = estimate_quantile(values, q, args.memory_budget);
      decisions = select_absolute(scores, t);
      uint64_t kept = 0;
      for (const auto& d : decisions) kept += d.keep ? 1 : 0;
      std::cout << "approx threshold " << t << " realized fraction "
                << static_cast<double>(kept) / pairs.size() << "\n";
      meta.mode = "keep_fraction_approx";
      meta.p = args.keep_fraction;
      meta.threshold = t;
      meta.k = kept;
    } else {
      SelectionResult sel =
          select_top_fraction(scores, pairs.size(), args.keep_fraction);
      decisions = std::move(sel.decisions);
      meta.mode = "keep_fraction";
      meta.p = args.keep_fraction;
      meta.threshold = sel.threshold;
      meta.k = sel.n_kept;
    }
    meta.scorer_id = scores.empty() ? "" : "scores";
  }

  std::unordered_map<uint64_t, bool> keep;
  for (const auto& d : decisions) keep[d.pair_id] = d.keep;
  CorpusWriter kept_writer(args.out_kept, format);
  CorpusWriter dropped_writer(args.out_dropped, format);
  for (const auto& p : pairs) {
    (keep.at(p.id) ? kept_writer : dropped_writer).write(p);
  }
  kept_writer.close();
  dropped_writer.close();

  const std::string decisions_path = args.out_decisions.empty()
                                         ? args.out_kept + ".decisions.tsv"
                                         : args.out_decisions;
  write_decisions(decisions, decisions_path);
  const std::string meta_path =
      args.out_meta.empty() ? args.out_kept + ".threshold.json" : args.out_meta;
  write_threshold_meta(meta, meta_path);
  write_manifest(make_manifest("filter",
                               {{"corpus", args.corpus_path},
                                {"mode", meta.mode},
                                {"out_kept", args.out_kept},
                                {"out_dropped", args.out_dropped}},
                               inputs, seeds),
                 args.out_kept + ".manifest.json");
  return kExitOk;
}

struct NoiseGenArgs {
  std::string corpus_path;
  std::string format = "jsonl";
  std::string category;
  uint64_t n = 1000;
  int64_t n_clean = -1;
  uint64_t seed = 0;
  std::string donor_path;
  std::string donor_format = "jsonl";
  double truncate_low = 0.2;
  double truncate_high = 0.5;
  std::string out;
};

int cmd_noise_gen(const NoiseGenArgs& args) {
  NoiseSpec spec;
  spec.category = parse_noise_category(args.category);
  if (spec.category == NoiseCategory::kClean) {
    std::cerr << "noise-gen: 'clean' is not a corruption category\n";
    return kExitUsage;
  }
  spec.n_samples = args.n;
  spec.seed = args.seed;
  spec.truncate_range = {args.truncate_low, args.truncate_high};
  if (spec.category == NoiseCategory::kWrongLanguage) {
    if (args.donor_path.empty()) {
      std::cerr << "noise-gen: wrong_language requires --donor\n";
      return kExitUsage;
    }
    spec.donors = read_corpus(args.donor_path, parse_format(args.donor_format));
  }
  const std::vector<SentencePair> corpus =
      read_corpus(args.corpus_path, parse_format(args.format));
  const uint64_t n_clean =
      args.n_clean >= 0 ? static_cast<uint64_t>(args.n_clean) : args.n;

  NoiseBenchmark benchmark = build_noise_benchmark(corpus, spec, n_clean);
  write_corpus(benchmark.pairs, args.out, CorpusFormat::kJsonl);
  write_labels(benchmark, args.out + ".labels.tsv");

  json meta;
  meta["category"] = args.category;
  meta["n_clean"] = benchmark.n_clean;
  meta["n_noise"] = benchmark.n_noise;
  meta["skipped"] = benchmark.skipped;
  meta["seed"] = args.seed;
  meta["truncate_range"] = {args.truncate_low, args.truncate_high};
  meta["source_digest"] = hash_file(args.corpus_path);
  if (!args.donor_path.empty()) meta["donor"] = args.donor_path;
  std::ofstream meta_out(args.out + ".meta.json");
  meta_out << meta.dump(2) << "\n";

  std::vector<std::string> inputs = {args.corpus_path};
  if (!args.donor_path.empty()) inputs.push_back(args.donor_path);
  write_manifest(make_manifest("noise-gen",
                               {{"corpus", args.corpus_path},
                                {"category", args.category},
                                {"out", args.out}},
                               inputs, {args.seed}),
                 args.out + ".manifest.json");
  return kExitOk;
}

struct EvalNoiseArgs {
  std::string labels_path;
  std::string scores_path;
  std::string out_report;
};

int cmd_eval_noise(const EvalNoiseArgs& args) {
  const auto labels = read_labels(args.labels_path);
  const auto scores = read_scores(args.scores_path, "scores");
  NoiseEvalReport report = eval_noise(labels, scores);
  std::ofstream out(args.out_report);
  if (!out) {
    std::cerr << "eval-noise: cannot open " << args.out_report << "\n";
    return kExitIo;
  }
  out << noise_report_json(report);
  std::cout << noise_report_text(report);
  write_manifest(make_manifest("eval-noise",
                               {{"labels", args.labels_path},
                                {"scores", args.scores_path},
                                {"out", args.out_report}},
                               {args.labels_path, args.scores_path}, {}),
                 args.out_report + ".manifest.json");
  return kExitOk;
}

struct CompareArgs {
  std::string decisions_a;
  std::string decisions_b;
  std::string corpus_path;
  std::string format = "jsonl";
  uint64_t sample = 0;
  uint64_t seed = 0;
  std::string out;
  std::string intersect_out;
};

int cmd_compare(const CompareArgs& args) {
  const auto a = read_decisions(args.decisions_a);
  const auto b = read_decisions(args.decisions_b);
  OverlapReport report = compare_filters(a, b);
  std::ofstream out(args.out);
  if (!out) {
    std::cerr << "compare: cannot open " << args.out << "\n";
    return kExitIo;
  }
  out << overlap_report_json(report);
  std::cout << overlap_report_text(report);

  std::vector<std::string> inputs = {args.decisions_a, args.decisions_b};
  if (!args.intersect_out.empty()) {
    write_decisions(intersect_filters(a, b), args.intersect_out);
  }
  if (args.sample > 0) {
    if (args.corpus_path.empty()) {
      std::cerr << "compare: --sample requires a corpus\n";
      return kExitUsage;
    }
    inputs.push_back(args.corpus_path);
    const auto corpus =
        read_corpus(args.corpus_path, parse_format(args.format));
    DivergenceSample sample =
        sample_divergence(corpus, a, b, args.sample, args.seed);
    std::ofstream div(args.out + ".divergence.jsonl");
    auto emit = [&](const std::vector<SentencePair>& bucket,
                    const std::string& kept_by) {
      for (const auto& p : bucket) {
        json obj;
        obj["id"] = p.id;
        obj["src"] = p.src;
        obj["tgt"] = p.tgt;
        obj["kept_by"] = kept_by;
        obj["scores"] = json::object();
        div << obj.dump() << "\n";
      }
    };
    emit(sample.kept_by_a_only, "a");
    emit(sample.kept_by_b_only, "b");
  }
  write_manifest(make_manifest("compare",
                               {{"decisions_a", args.decisions_a},
                                {"decisions_b", args.decisions_b},
                                {"out", args.out}},
                               inputs, args.sample ? std::vector<uint64_t>{args.seed}
                                                   : std::vector<uint64_t>{}),
                 args.out + ".manifest.json");
  return kExitOk;
}

struct StatsArgs {
  std::string corpus_path;
  std::string format = "jsonl";
  int64_t max_tokens = -1;
  bool count_chars = false;
  std::string out;
};

int cmd_stats(const StatsArgs& args) {
  const auto pairs = read_corpus(args.corpus_path, parse_format(args.format));
  CorpusStats stats = compute_stats(pairs);
  json obj;
  obj["schema_version"] = 1;
  obj["n_pairs"] = stats.n_pairs;
  obj["mean_src_tokens"] = stats.mean_src_tokens;
  obj["mean_tgt_tokens"] = stats.mean_tgt_tokens;
  json src_hist = json::object();
  for (const auto& [len, count] : stats.src_token_histogram) {
    src_hist[std::to_string(len)] = count;
  }
  json tgt_hist = json::object();
  for (const auto& [len, count] : stats.tgt_token_histogram) {
    tgt_hist[std::to_string(len)] = count;
  }
  obj["src_token_histogram"] = std::move(src_hist);
  obj["tgt_token_histogram"] = std::move(tgt_hist);
  if (args.max_tokens >= 1) {
    uint64_t dropped = 0;
    for (const auto& p : pairs) {
      if (!length_filter_keeps(p, static_cast<uint64_t>(args.max_tokens),
                               args.count_chars)) {
        ++dropped;
      }
    }
    obj["max_tokens"] = args.max_tokens;
    obj["would_drop"] = dropped;
    obj["would_keep"] = stats.n_pairs - dropped;
  }
  const std::string text = obj.dump(2) + "\n";
  if (args.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(args.out);
    out << text;
    write_manifest(make_manifest("stats",
                                 {{"corpus", args.corpus_path},
                                  {"out", args.out}},
                                 {args.corpus_path}, {}),
                   args.out + ".manifest.json");
  }
  return kExitOk;
}

struct BuildProfileArgs {
  std::string corpus_path;
  std::string format = "jsonl";
  std::string side = "tgt";
  std::string lang;
  std::string out;
};

int cmd_build_profile(const BuildProfileArgs& args) {
  const auto pairs = read_corpus(args.corpus_path, parse_format(args.format));
  std::vector<std::string> texts;
  texts.reserve(pairs.size());
  for (const auto& p : pairs) {
    texts.push_back(args.side == "src" ? p.src : p.tgt);
  }
  save_lang_profile(build_lang_profile(texts, args.lang), args.out);
  write_manifest(make_manifest("build-profile",
                               {{"corpus", args.corpus_path},
                                {"lang", args.lang},
                                {"out", args.out}},
                               {args.corpus_path}, {}),
                 args.out + ".manifest.json");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bitext: quality filtering for parallel corpora"};
  app.require_subcommand(1);

  ScoreArgs score_args;
  auto* score = app.add_subcommand("score", "Score every sentence pair");
  score->add_option("corpus", score_args.corpus_path)->required();
  score->add_option("--format", score_args.format)
      ->check(CLI::IsMember({"jsonl", "tsv"}));
  score->add_option("--scorer", score_args.scorer)->required();
  score->add_option("--scorer-id", score_args.scorer_id);
  score->add_option("--score-file", score_args.score_file);
  score->add_option("--labels", score_args.labels_path);
  score->add_option("--profile", score_args.profile_paths);
  score->add_option("--src-lang", score_args.expected_src_lang);
  score->add_option("--tgt-lang", score_args.expected_tgt_lang);
  score->add_option("--part", score_args.parts);
  score->add_option("--out", score_args.out)->required();
  score->add_option("--threads", score_args.threads);

  FilterArgs filter_args;
  auto* filter = app.add_subcommand("filter", "Split a corpus by decisions");
  filter->add_option("corpus", filter_args.corpus_path)->required();
  filter->add_option("--format", filter_args.format)
      ->check(CLI::IsMember({"jsonl", "tsv"}));
  filter->add_option("--scores", filter_args.scores_path);
  filter->add_option("--keep-fraction", filter_args.keep_fraction);
  filter->add_option("--threshold", filter_args.threshold);
  filter->add_option("--random-seed", filter_args.random_seed);
  filter->add_flag("--approx", filter_args.approx);
  filter->add_option("--memory-budget", filter_args.memory_budget);
  filter->add_option("--out-kept", filter_args.out_kept)->required();
  filter->add_option("--out-dropped", filter_args.out_dropped)->required();
  filter->add_option("--out-decisions", filter_args.out_decisions);
  filter->add_option("--out-meta", filter_args.out_meta);
  filter->add_option("--threads", filter_args.threads);

  NoiseGenArgs noise_args;
  auto* noise = app.add_subcommand("noise-gen", "Build a noise benchmark");
  noise->add_option("corpus", noise_args.corpus_path)->required();
  noise->add_option("--format", noise_args.format)
      ->check(CLI::IsMember({"jsonl", "tsv"}));
  noise->add_option("--category", noise_args.category)->required();
  noise->add_option("--n", noise_args.n);
  noise->add_option("--n-clean", noise_args.n_clean);
  noise->add_option("--seed", noise_args.seed);
  noise->add_option("--donor", noise_args.donor_path);
  noise->add_option("--donor-format", noise_args.donor_format);
  noise->add_option("--truncate-low", noise_args.truncate_low);
  noise->add_option("--truncate-high", noise_args.truncate_high);
  noise->add_option("--out", noise_args.out)->required();

  EvalNoiseArgs eval_args;
  auto* eval = app.add_subcommand("eval-noise", "Median-split noise detection report");
  eval->add_option("labels", eval_args.labels_path)->required();
  eval->add_option("scores", eval_args.scores_path)->required();
  eval->add_option("--out-report", eval_args.out_report)->required();

  CompareArgs compare_args;
  auto* compare = app.add_subcommand("compare", "Overlap of two filters");
  compare->add_option("decisions_a", compare_args.decisions_a)->required();
  compare->add_option("decisions_b", compare_args.decisions_b)->required();
  compare->add_option("--corpus", compare_args.corpus_path);
  compare->add_option("--format", compare_args.format)
      ->check(CLI::IsMember({"jsonl", "tsv"}));
  compare->add_option("--sample", compare_args.sample);
  compare->add_option("--seed", compare_args.seed);
  compare->add_option("--out", compare_args.out)->required();
  compare->add_option("--intersect-out", compare_args.intersect_out);

  StatsArgs stats_args;
  auto* stats = app.add_subcommand("stats", "Corpus length statistics");
  stats->add_option("corpus", stats_args.corpus_path)->required();
  stats->add_option("--format", stats_args.format)
      ->check(CLI::IsMember({"jsonl", "tsv"}));
  stats->add_option("--max-tokens", stats_args.max_tokens);
  stats->add_flag("--count-chars", stats_args.count_chars);
  stats->add_option("--out", stats_args.out);

  BuildProfileArgs profile_args;
  auto* profile =
      app.add_subcommand("build-profile", "Character-trigram language profile");
  profile->add_option("corpus", profile_args.corpus_path)->required();
  profile->add_option("--format", profile_args.format)
      ->check(CLI::IsMember({"jsonl", "tsv"}));
  profile->add_option("--side", profile_args.side)
      ->check(CLI::IsMember({"src", "tgt"}));
  profile->add_option("--lang", profile_args.lang)->required();
  profile->add_option("--out", profile_args.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (score->parsed()) return cmd_score(score_args);
    if (filter->parsed()) return cmd_filter(filter_args);
    if (noise->parsed()) return cmd_noise_gen(noise_args);
    if (eval->parsed()) return cmd_eval_noise(eval_args);
    if (compare->parsed()) return cmd_compare(compare_args);
    if (stats->parsed()) return cmd_stats(stats_args);
    if (profile->parsed()) return cmd_build_profile(profile_args);
  } catch (const CorpusError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
