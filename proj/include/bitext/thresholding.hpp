#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bitext/scorers.hpp"

namespace bitext {

struct FilterDecision {
  uint64_t pair_id = 0;
  bool keep = false;
  std::string scorer_id;
  double threshold = 0.0;

  bool operator==(const FilterDecision&) const = default;
};

enum class ThresholdMode {
  kKeepFraction,
  kAbsolute,
  kMedianSplit,
  kRandomFraction,
};

struct ThresholdPlan {
  ThresholdMode mode = ThresholdMode::kKeepFraction;
  std::optional<double> keep_fraction;  // fraction modes
  std::optional<double> threshold;      // absolute mode
  std::optional<uint64_t> seed;         // random mode
};

class ThresholdError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SelectionResult {
  std::vector<FilterDecision> decisions;  // ordered by pair id
  double threshold = 0.0;
  uint64_t n_kept = 0;
};

// Fraction-mode cardinality: round half up.
uint64_t keep_count(uint64_t n_total, double p);

// Keeps exactly keep_count(n_total, p) records, greatest first under the
// total order (score descending, id ascending). Reported threshold is the
// score of the last kept record.
SelectionResult select_top_fraction(const std::vector<ScoreRecord>& scores,
                                    uint64_t n_total, double p);

// keep iff score >= t.
std::vector<FilterDecision> select_absolute(
    const std::vector<ScoreRecord>& scores, double t);

// select_top_fraction at p = 0.5.
SelectionResult median_split(const std::vector<ScoreRecord>& scores,
                             uint64_t n_total);

// Seeded uniform selection without replacement over ids 0..n_total-1.
std::vector<FilterDecision> random_select(uint64_t n_total, double p,
                                          uint64_t seed);

// Streaming quantile sketch (KLL-style relative-compactor hierarchy) with
// deterministic seeded compaction. Rank error is bounded by roughly 2/k.
class QuantileSketch {
 public:
  // Throws if the budget cannot meet the requested rank-error bound.
  QuantileSketch(size_t memory_budget_bytes, double epsilon = 0.001,
                 uint64_t seed = 0);

  void add(double value);
  size_t count() const { return count_; }
  double error_bound() const { return epsilon_; }

  // Value v such that about q of the stream is < v.
  double quantile(double q) const;

  static size_t min_budget_bytes(double epsilon);

 private:
  void compact_level(size_t level);

  std::vector<std::vector<double>> compactors_;
  size_t k_ = 0;
  size_t count_ = 0;
  size_t stored_ = 0;
  size_t capacity_ = 0;
  uint64_t rng_state_ = 0;
  double epsilon_ = 0.0;
};

// One-pass approximate threshold: keep fraction 1-q of the stream when
// applied with select_absolute. Exact selection remains the default path.
double estimate_quantile(const std::vector<double>& scores, double q,
                         size_t memory_budget_bytes, double epsilon = 0.001,
                         uint64_t seed = 0);

void write_decisions(const std::vector<FilterDecision>& decisions,
                     const std::string& path);
std::vector<FilterDecision> read_decisions(const std::string& path);

struct ThresholdMeta {
  std::string scorer_id;
  std::string mode;
  double p = 0.0;
  uint64_t k = 0;
  double threshold = 0.0;
  uint64_t n_total = 0;
  std::optional<uint64_t> seed;
};

void write_threshold_meta(const ThresholdMeta& meta, const std::string& path);

}  // namespace bitext
