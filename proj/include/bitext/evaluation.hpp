#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bitext/corpus.hpp"
#include "bitext/noise_gen.hpp"
#include "bitext/thresholding.hpp"

namespace bitext {

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CategoryOutcome {
  uint64_t n_noise = 0;
  uint64_t n_noise_kept = 0;
  double pct_kept = 0.0;
};

struct NoiseEvalReport {
  std::string scorer_id;
  std::map<NoiseCategory, CategoryOutcome> per_category;
  double threshold = 0.0;
  uint64_t n_total = 0;
  uint64_t n_kept = 0;
  uint64_t n_clean = 0;
};

// Median-split protocol: one threshold over the combined clean+noise
// scores, keeping exactly half; reports the kept percentage per noise
// category (0 means every noisy pair was filtered out).
NoiseEvalReport eval_noise(
    const std::unordered_map<uint64_t, NoiseCategory>& labels,
    const std::vector<ScoreRecord>& scores);

struct OverlapReport {
  uint64_t n_total = 0;
  uint64_t n_kept_a = 0;
  uint64_t n_kept_b = 0;
  uint64_t n_common = 0;
  uint64_t n_only_a = 0;
  uint64_t n_only_b = 0;
  uint64_t n_neither = 0;
  double jaccard = 0.0;
};

OverlapReport compare_filters(const std::vector<FilterDecision>& decisions_a,
                              const std::vector<FilterDecision>& decisions_b);

// keep iff both keep.
std::vector<FilterDecision> intersect_filters(
    const std::vector<FilterDecision>& decisions_a,
    const std::vector<FilterDecision>& decisions_b);

struct DivergenceSample {
  std::vector<SentencePair> kept_by_a_only;
  std::vector<SentencePair> kept_by_b_only;
};

DivergenceSample sample_divergence(
    const std::vector<SentencePair>& corpus,
    const std::vector<FilterDecision>& decisions_a,
    const std::vector<FilterDecision>& decisions_b, uint64_t n_per_bucket,
    uint64_t seed);

struct FilterReport {
  uint64_t n_before = 0;
  uint64_t n_after = 0;
  double mean_src_before = 0.0;
  double mean_src_after = 0.0;
  double mean_tgt_before = 0.0;
  double mean_tgt_after = 0.0;
  double delta_src = 0.0;
  double delta_tgt = 0.0;
};

FilterReport filter_report(const CorpusStats& before, const CorpusStats& after);

// JSON is the machine contract; the text renderings are for humans.
std::string noise_report_json(const NoiseEvalReport& report);
std::string noise_report_text(const NoiseEvalReport& report);
std::string overlap_report_json(const OverlapReport& report);
std::string overlap_report_text(const OverlapReport& report);
std::string filter_report_json(const FilterReport& report);

}  // namespace bitext
