#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "bitext/corpus.hpp"

namespace bitext {

struct ScoreRecord {
  uint64_t pair_id = 0;
  std::string scorer_id;
  double score = 0.0;

  bool operator==(const ScoreRecord&) const = default;
};

class ScoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Character-trigram language fingerprint, L2-normalized. Trigrams run over
// code points of the lowercased text with ^/$ boundary padding.
struct LangProfile {
  std::string lang;
  std::unordered_map<std::string, double> trigram_weights;
};

// Join externally computed scores onto a corpus. Two file layouts:
// one score per line (joined by position) or `id<TAB>score` rows.
std::vector<ScoreRecord> score_external(const std::vector<SentencePair>& pairs,
                                        const std::string& score_path,
                                        const std::string& scorer_id);

// min/max token-count ratio in [0,1]; 0 when exactly one side is empty.
double score_length_ratio(const SentencePair& pair);

// 1 - Jaccard similarity of src/tgt token sets; identical sides score 0.
double score_copy_penalty(const SentencePair& pair);

std::vector<std::string> char_trigrams(const std::string& text);

LangProfile build_lang_profile(const std::vector<std::string>& texts,
                               const std::string& lang);

LangProfile load_lang_profile(const std::string& path);
void save_lang_profile(const LangProfile& profile, const std::string& path);

// min over sides of cosine(text trigram vector, expected profile),
// clamped to [0,1]. Empty side scores 0. The expected languages default
// to the pair's tags; overriding them checks text against the corpus
// languages even when a tag was rewritten (wrong-language noise).
double score_lang_fingerprint(
    const SentencePair& pair,
    const std::map<std::string, LangProfile>& profiles,
    const std::string& expected_src_lang = "",
    const std::string& expected_tgt_lang = "");

using ScoreFn = std::function<double(const SentencePair&)>;

double score_composite(const SentencePair& pair,
                       const std::vector<std::pair<ScoreFn, double>>& parts);

enum class PairLabel { kClean, kNoisy };

double score_oracle(const SentencePair& pair,
                    const std::unordered_map<uint64_t, PairLabel>& labels);

void write_scores(const std::vector<ScoreRecord>& scores,
                  const std::string& path);
std::vector<ScoreRecord> read_scores(const std::string& path,
                                     const std::string& scorer_id);

}  // namespace bitext
