#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "bitext/corpus.hpp"

namespace bitext {

enum class NoiseCategory {
  kClean,
  kMisaligned,
  kMisorderedSrc,
  kMisorderedTgt,
  kWrongLanguage,
  kUntranslatedSrc,
  kUntranslatedTgt,
  kOvertranslation,
  kUndertranslation,
};

std::string to_string(NoiseCategory category);
NoiseCategory parse_noise_category(const std::string& name);

// The eight corruption categories (everything except kClean).
const std::vector<NoiseCategory>& noise_categories();

class NoiseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LabeledPair {
  SentencePair pair;
  NoiseCategory label = NoiseCategory::kClean;
};

// Seeded reservoir sample of n distinct pairs, returned in id order.
std::vector<SentencePair> sample_clean(const std::vector<SentencePair>& pairs,
                                       uint64_t n, uint64_t seed);

// Targets permuted by a seeded index derangement: no position keeps its
// own target. Duplicate target texts may still coincide by value.
std::vector<LabeledPair> make_misaligned(const std::vector<SentencePair>& pairs,
                                         uint64_t seed);

enum class Side { kSrc, kTgt };

// Token order of the chosen side shuffled; resampled until it differs
// from identity whenever the side has >= 2 distinct tokens.
std::vector<LabeledPair> make_misordered(const std::vector<SentencePair>& pairs,
                                         Side side, uint64_t seed);

std::vector<LabeledPair> make_wrong_language(
    const std::vector<SentencePair>& pairs,
    const std::vector<SentencePair>& donors, uint64_t seed);

enum class CopyDirection { kSrcToTgt, kTgtToSrc };

std::vector<LabeledPair> make_untranslated(
    const std::vector<SentencePair>& pairs, CopyDirection direction);

struct TruncateRange {
  double low = 0.2;
  double high = 0.5;
};

struct TruncateResult {
  std::vector<LabeledPair> pairs;
  uint64_t skipped = 0;  // sides with < 2 tokens
};

// Removes a trailing Uniform[low,high] fraction of the side's tokens,
// keeping at least 1 and removing at least 1. Truncating the source
// yields overtranslation, truncating the target undertranslation.
TruncateResult make_truncated(const std::vector<SentencePair>& pairs,
                              Side side, TruncateRange range, uint64_t seed);

struct NoiseSpec {
  NoiseCategory category = NoiseCategory::kMisaligned;
  uint64_t n_samples = 0;
  uint64_t seed = 0;
  std::vector<SentencePair> donors;  // wrong_language only
  TruncateRange truncate_range;
};

struct NoiseBenchmark {
  std::vector<SentencePair> pairs;  // fresh gapless ids 0..N-1
  std::unordered_map<uint64_t, NoiseCategory> labels;
  uint64_t n_clean = 0;
  uint64_t n_noise = 0;
  uint64_t skipped = 0;
};

// Mixes n_clean clean pairs with n_noise corrupted ones, drawn from
// disjoint seeded samples of the corpus, and renumbers ids from 0.
NoiseBenchmark build_noise_benchmark(const std::vector<SentencePair>& corpus,
                                     const NoiseSpec& spec, uint64_t n_clean);

void write_labels(const NoiseBenchmark& benchmark, const std::string& path);
std::unordered_map<uint64_t, NoiseCategory> read_labels(
    const std::string& path);

}  // namespace bitext
