#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bitext {

struct SentencePair {
  uint64_t id = 0;
  std::string src;
  std::string tgt;
  std::string src_lang;
  std::string tgt_lang;
  std::optional<std::string> provenance;

  bool operator==(const SentencePair&) const = default;
};

enum class CorpusFormat { kJsonl, kTsv };

CorpusFormat parse_format(const std::string& name);

// Parse/serialization errors carry the 1-based context the message needs.
class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Streaming reader: pulls one SentencePair per line. Ids default to the
// 0-based line index; a JSONL `id` field overrides and must stay unique.
class CorpusReader {
 public:
  CorpusReader(const std::string& path, CorpusFormat format);
  ~CorpusReader();
  CorpusReader(CorpusReader&&) noexcept;
  CorpusReader& operator=(CorpusReader&&) noexcept;

  // Returns false at end of stream. Throws CorpusError on malformed input.
  bool next(SentencePair& out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

class CorpusWriter {
 public:
  CorpusWriter(const std::string& path, CorpusFormat format);
  ~CorpusWriter();

  void write(const SentencePair& pair);
  // Flushes and closes; returns number of pairs written.
  uint64_t close();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<SentencePair> read_corpus(const std::string& path,
                                      CorpusFormat format);
uint64_t write_corpus(const std::vector<SentencePair>& pairs,
                      const std::string& path, CorpusFormat format);

// Maximal runs of non-whitespace, splitting on Unicode whitespace
// (ASCII space/tab/newline family plus common Unicode space code points).
std::vector<std::string> tokenize(const std::string& text);
size_t token_count(const std::string& text);
// Code-point count, the per-character alternative for unsegmented scripts.
size_t char_count(const std::string& text);

struct CorpusStats {
  uint64_t n_pairs = 0;
  double mean_src_tokens = 0.0;
  double mean_tgt_tokens = 0.0;
  std::map<uint64_t, uint64_t> src_token_histogram;
  std::map<uint64_t, uint64_t> tgt_token_histogram;
};

struct LengthFilterResult {
  std::vector<SentencePair> kept;
  uint64_t dropped = 0;
};

// Keeps a pair iff both sides are <= max_tokens. With count_chars the
// length unit is code points instead of whitespace tokens.
LengthFilterResult length_filter(const std::vector<SentencePair>& pairs,
                                 uint64_t max_tokens,
                                 bool count_chars = false);
bool length_filter_keeps(const SentencePair& pair, uint64_t max_tokens,
                         bool count_chars = false);

CorpusStats compute_stats(const std::vector<SentencePair>& pairs);

// Streaming accumulator so stats can be folded shard-parallel.
class StatsAccumulator {
 public:
  void add(const SentencePair& pair);
  void merge(const StatsAccumulator& other);
  CorpusStats finish() const;

 private:
  uint64_t n_ = 0;
  uint64_t src_tokens_total_ = 0;
  uint64_t tgt_tokens_total_ = 0;
  std::map<uint64_t, uint64_t> src_hist_;
  std::map<uint64_t, uint64_t> tgt_hist_;
};

}  // namespace bitext
