#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "bitext/corpus.hpp"
#include "bitext/rng.hpp"

using namespace bitext;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

SentencePair random_pair(Rng& rng, uint64_t id) {
  auto word = [&] {
    std::string w;
    for (uint64_t i = 0, n = 1 + rng.bounded(6); i < n; ++i) {
      w += static_cast<char>('a' + rng.bounded(26));
    }
    return w;
  };
  auto sentence = [&] {
    std::string s;
    for (uint64_t i = 0, n = 1 + rng.bounded(12); i < n; ++i) {
      if (i) s += ' ';
      s += word();
    }
    return s;
  };
  SentencePair p{id, sentence(), sentence(), "aa", "bb", std::nullopt};
  if (rng.bounded(2)) p.provenance = "test";
  return p;
}

}  // namespace

TEST_CASE("tsv line maps fields directly") {
  const std::string path = temp_path("corpus_tsv_basic.tsv");
  write_file(path, "Hello\tHallo\n");
  auto pairs = read_corpus(path, CorpusFormat::kTsv);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].id == 0);
  CHECK(pairs[0].src == "Hello");
  CHECK(pairs[0].tgt == "Hallo");
}

TEST_CASE("empty file yields empty stream") {
  const std::string path = temp_path("corpus_empty.tsv");
  write_file(path, "");
  CHECK(read_corpus(path, CorpusFormat::kTsv).empty());
  CHECK(read_corpus(path, CorpusFormat::kJsonl).empty());
}

TEST_CASE("tsv line without tab names line 0") {
  const std::string path = temp_path("corpus_tsv_bad.tsv");
  write_file(path, "no tab here\n");
  CHECK_THROWS_WITH_AS(read_corpus(path, CorpusFormat::kTsv),
                       doctest::Contains("line 0"), CorpusError);
}

TEST_CASE("duplicate explicit jsonl ids are rejected") {
  const std::string path = temp_path("corpus_dupe.jsonl");
  write_file(path,
             "{\"id\":7,\"src\":\"a\",\"tgt\":\"b\"}\n"
             "{\"id\":7,\"src\":\"c\",\"tgt\":\"d\"}\n");
  CHECK_THROWS_WITH_AS(read_corpus(path, CorpusFormat::kJsonl),
                       doctest::Contains("duplicate id 7"), CorpusError);
}

TEST_CASE("explicit jsonl id overrides line index") {
  const std::string path = temp_path("corpus_explicit_id.jsonl");
  write_file(path, "{\"id\":42,\"src\":\"a\",\"tgt\":\"b\"}\n");
  auto pairs = read_corpus(path, CorpusFormat::kJsonl);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].id == 42);
}

TEST_CASE("round-trip reproduces pairs field for field") {
  Rng rng(101);
  std::vector<SentencePair> pairs;
  for (uint64_t i = 0; i < 50; ++i) pairs.push_back(random_pair(rng, i));

  for (CorpusFormat format : {CorpusFormat::kJsonl, CorpusFormat::kTsv}) {
    const std::string path = temp_path("corpus_roundtrip");
    CHECK(write_corpus(pairs, path, format) == pairs.size());
    auto back = read_corpus(path, format);
    REQUIRE(back.size() == pairs.size());
    for (size_t i = 0; i < pairs.size(); ++i) {
      CHECK(back[i].id == pairs[i].id);
      CHECK(back[i].src == pairs[i].src);
      CHECK(back[i].tgt == pairs[i].tgt);
      if (format == CorpusFormat::kJsonl) {
        CHECK(back[i].src_lang == pairs[i].src_lang);
        CHECK(back[i].provenance == pairs[i].provenance);
      }
    }
  }
}

TEST_CASE("tab in text is an error in tsv, fine in jsonl") {
  SentencePair p{0, "has\ttab", "x", "", "", std::nullopt};
  const std::string tsv = temp_path("corpus_tab.tsv");
  CHECK_THROWS_AS(write_corpus({p}, tsv, CorpusFormat::kTsv), CorpusError);

  const std::string jsonl = temp_path("corpus_tab.jsonl");
  CHECK(write_corpus({p}, jsonl, CorpusFormat::kJsonl) == 1);
  auto back = read_corpus(jsonl, CorpusFormat::kJsonl);
  CHECK(back[0].src == "has\ttab");
}

TEST_CASE("raw newlines are rejected at write time") {
  SentencePair p{0, "line\nbreak", "x", "", "", std::nullopt};
  const std::string path = temp_path("corpus_newline.jsonl");
  CHECK_THROWS_AS(write_corpus({p}, path, CorpusFormat::kJsonl), CorpusError);
}

TEST_CASE("tokenize collapses whitespace runs") {
  CHECK(tokenize("a  b c") == std::vector<std::string>{"a", "b", "c"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("   ").empty());
  CHECK(tokenize("日本語のテスト") == std::vector<std::string>{"日本語のテスト"});
  CHECK(tokenize(" leading trailing ") ==
        std::vector<std::string>{"leading", "trailing"});
  // U+3000 ideographic space also splits.
  CHECK(tokenize("a\xe3\x80\x80z") == std::vector<std::string>{"a", "z"});
}

TEST_CASE("char_count counts code points") {
  CHECK(char_count("") == 0);
  CHECK(char_count("abc") == 3);
  CHECK(char_count("日本語") == 3);
}

namespace {
std::string n_tokens(size_t n) {
  std::string s;
  for (size_t i = 0; i < n; ++i) {
    if (i) s += ' ';
    s += "tok";
  }
  return s;
}
}  // namespace

TEST_CASE("length_filter boundary is inclusive") {
  SentencePair over{0, n_tokens(130), n_tokens(5), "", "", std::nullopt};
  SentencePair at{1, n_tokens(128), n_tokens(128), "", "", std::nullopt};
  auto result = length_filter({over, at}, 128);
  CHECK(result.dropped == 1);
  REQUIRE(result.kept.size() == 1);
  CHECK(result.kept[0].id == 1);
}

TEST_CASE("length_filter drops when either side exceeds") {
  SentencePair p{0, n_tokens(5), n_tokens(10), "", "", std::nullopt};
  CHECK(length_filter({p}, 9).dropped == 1);
  CHECK(length_filter({p}, 10).dropped == 0);
}

TEST_CASE("length_filter is idempotent") {
  Rng rng(77);
  std::vector<SentencePair> pairs;
  for (uint64_t i = 0; i < 200; ++i) pairs.push_back(random_pair(rng, i));
  auto once = length_filter(pairs, 6);
  auto twice = length_filter(once.kept, 6);
  CHECK(twice.dropped == 0);
  CHECK(twice.kept.size() == once.kept.size());
}

TEST_CASE("compute_stats basic arithmetic") {
  SentencePair a{0, "x y", "p", "", "", std::nullopt};
  SentencePair b{1, "x y z w", "p q r", "", "", std::nullopt};
  auto stats = compute_stats({a, b});
  CHECK(stats.n_pairs == 2);
  CHECK(stats.mean_src_tokens == doctest::Approx(3.0));
  CHECK(stats.mean_tgt_tokens == doctest::Approx(2.0));
}

TEST_CASE("compute_stats empty stream is all zero") {
  auto stats = compute_stats({});
  CHECK(stats.n_pairs == 0);
  CHECK(stats.mean_src_tokens == 0.0);
  CHECK(stats.mean_tgt_tokens == 0.0);
}

TEST_CASE("stats match a naive second pass over 1000 random pairs") {
  Rng rng(2024);
  std::vector<SentencePair> pairs;
  for (uint64_t i = 0; i < 1000; ++i) pairs.push_back(random_pair(rng, i));
  auto stats = compute_stats(pairs);

  // Independent recomputation.
  uint64_t src_total = 0, tgt_total = 0;
  std::map<uint64_t, uint64_t> src_hist;
  for (const auto& p : pairs) {
    uint64_t s = tokenize(p.src).size();
    src_total += s;
    tgt_total += tokenize(p.tgt).size();
    ++src_hist[s];
  }
  CHECK(stats.n_pairs == pairs.size());
  CHECK(stats.mean_src_tokens ==
        doctest::Approx(double(src_total) / pairs.size()).epsilon(1e-12));
  CHECK(stats.mean_tgt_tokens ==
        doctest::Approx(double(tgt_total) / pairs.size()).epsilon(1e-12));
  CHECK(stats.src_token_histogram == src_hist);

  uint64_t hist_sum = 0;
  for (const auto& [len, c] : stats.src_token_histogram) hist_sum += c;
  CHECK(hist_sum == stats.n_pairs);
}

TEST_CASE("sharded accumulator merge equals sequential stats") {
  Rng rng(31337);
  std::vector<SentencePair> pairs;
  for (uint64_t i = 0; i < 500; ++i) pairs.push_back(random_pair(rng, i));

  StatsAccumulator shard_a, shard_b, shard_c;
  for (size_t i = 0; i < pairs.size(); ++i) {
    (i % 3 == 0 ? shard_a : i % 3 == 1 ? shard_b : shard_c).add(pairs[i]);
  }
  shard_a.merge(shard_b);
  shard_a.merge(shard_c);
  auto merged = shard_a.finish();
  auto sequential = compute_stats(pairs);

  CHECK(merged.n_pairs == sequential.n_pairs);
  CHECK(merged.mean_src_tokens ==
        doctest::Approx(sequential.mean_src_tokens).epsilon(1e-12));
  CHECK(merged.mean_tgt_tokens ==
        doctest::Approx(sequential.mean_tgt_tokens).epsilon(1e-12));
  CHECK(merged.src_token_histogram == sequential.src_token_histogram);
  CHECK(merged.tgt_token_histogram == sequential.tgt_token_histogram);
}
