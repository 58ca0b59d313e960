#include "bitext/noise_gen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <unordered_set>

#include "bitext/rng.hpp"

namespace bitext {

std::string to_string(NoiseCategory category) {
  switch (category) {
    case NoiseCategory::kClean: return "clean";
    case NoiseCategory::kMisaligned: return "misaligned";
    case NoiseCategory::kMisorderedSrc: return "misordered_src";
    case NoiseCategory::kMisorderedTgt: return "misordered_tgt";
    case NoiseCategory::kWrongLanguage: return "wrong_language";
    case NoiseCategory::kUntranslatedSrc: return "untranslated_src";
    case NoiseCategory::kUntranslatedTgt: return "untranslated_tgt";
    case NoiseCategory::kOvertranslation: return "overtranslation";
    case NoiseCategory::kUndertranslation: return "undertranslation";
  }
  return "unknown";
}

NoiseCategory parse_noise_category(const std::string& name) {
  for (NoiseCategory c :
       {NoiseCategory::kClean, NoiseCategory::kMisaligned,
        NoiseCategory::kMisorderedSrc, NoiseCategory::kMisorderedTgt,
        NoiseCategory::kWrongLanguage, NoiseCategory::kUntranslatedSrc,
        NoiseCategory::kUntranslatedTgt, NoiseCategory::kOvertranslation,
        NoiseCategory::kUndertranslation}) {
    if (to_string(c) == name) return c;
  }
  throw NoiseError("unknown noise category: " + name);
}

const std::vector<NoiseCategory>& noise_categories() {
  static const std::vector<NoiseCategory> cats = {
      NoiseCategory::kMisaligned,      NoiseCategory::kMisorderedSrc,
      NoiseCategory::kMisorderedTgt,   NoiseCategory::kWrongLanguage,
      NoiseCategory::kUntranslatedSrc, NoiseCategory::kUntranslatedTgt,
      NoiseCategory::kOvertranslation, NoiseCategory::kUndertranslation};
  return cats;
}

std::vector<SentencePair> sample_clean(const std::vector<SentencePair>& pairs,
                                       uint64_t n, uint64_t seed) {
  if (pairs.size() < n) {
    throw NoiseError("cannot sample " + std::to_string(n) + " pairs from " +
                     std::to_string(pairs.size()));
  }
  Rng rng(seed);
  // Algorithm R over the corpus stream.
  std::vector<SentencePair> reservoir(pairs.begin(), pairs.begin() + n);
  for (uint64_t i = n; i < pairs.size(); ++i) {
    uint64_t j = rng.bounded(i + 1);
    if (j < n) reservoir[j] = pairs[i];
  }
  std::sort(reservoir.begin(), reservoir.end(),
            [](const SentencePair& a, const SentencePair& b) {
              return a.id < b.id;
            });
  return reservoir;
}

std::vector<LabeledPair> make_misaligned(const std::vector<SentencePair>& pairs,
                                         uint64_t seed) {
  if (pairs.size() < 2) {
    throw NoiseError("misalignment needs at least 2 pairs");
  }
  Rng rng(seed);
  std::vector<size_t> perm(pairs.size());
  bool has_fixed_point = true;
  while (has_fixed_point) {
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    has_fixed_point = false;
    for (size_t i = 0; i < perm.size(); ++i) {
      if (perm[i] == i) {
        has_fixed_point = true;
        break;
      }
    }
  }
  std::vector<LabeledPair> out;
  out.reserve(pairs.size());
  for (size_t i = 0; i < pairs.size(); ++i) {
    LabeledPair lp{pairs[i], NoiseCategory::kMisaligned};
    lp.pair.tgt = pairs[perm[i]].tgt;
    out.push_back(std::move(lp));
  }
  return out;
}

std::vector<LabeledPair> make_misordered(const std::vector<SentencePair>& pairs,
                                         Side side, uint64_t seed) {
  Rng rng(seed);
  const NoiseCategory label = side == Side::kSrc ? NoiseCategory::kMisorderedSrc
                                                 : NoiseCategory::kMisorderedTgt;
  std::vector<LabeledPair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    LabeledPair lp{p, label};
    std::string& text = side == Side::kSrc ? lp.pair.src : lp.pair.tgt;
    std::vector<std::string> tokens = tokenize(text);
    std::set<std::string> distinct(tokens.begin(), tokens.end());
    if (distinct.size() >= 2) {
      const std::vector<std::string> original = tokens;
      do {
        rng.shuffle(tokens);
      } while (tokens == original);
    }
    std::string joined;
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (i) joined += ' ';
      joined += tokens[i];
    }
    text = joined;
    out.push_back(std::move(lp));
  }
  return out;
}

std::vector<LabeledPair> make_wrong_language(
    const std::vector<SentencePair>& pairs,
    const std::vector<SentencePair>& donors, uint64_t seed) {
  if (donors.empty()) throw NoiseError("wrong_language needs a donor corpus");
  if (!pairs.empty() && !donors.front().tgt_lang.empty() &&
      donors.front().tgt_lang == pairs.front().tgt_lang) {
    throw NoiseError("donor target language '" + donors.front().tgt_lang +
                     "' equals the corpus target language");
  }
  Rng rng(seed);
  std::vector<LabeledPair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    const SentencePair& donor = donors[rng.bounded(donors.size())];
    LabeledPair lp{p, NoiseCategory::kWrongLanguage};
    lp.pair.tgt = donor.tgt;
    lp.pair.tgt_lang = donor.tgt_lang;
    out.push_back(std::move(lp));
  }
  return out;
}

std::vector<LabeledPair> make_untranslated(
    const std::vector<SentencePair>& pairs, CopyDirection direction) {
  std::vector<LabeledPair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    LabeledPair lp{p, direction == CopyDirection::kSrcToTgt
                          ? NoiseCategory::kUntranslatedSrc
                          : NoiseCategory::kUntranslatedTgt};
    if (direction == CopyDirection::kSrcToTgt) {
      lp.pair.tgt = p.src;
      lp.pair.tgt_lang = p.src_lang;
    } else {
      lp.pair.src = p.tgt;
      lp.pair.src_lang = p.tgt_lang;
    }
    out.push_back(std::move(lp));
  }
  return out;
}

TruncateResult make_truncated(const std::vector<SentencePair>& pairs,
                              Side side, TruncateRange range, uint64_t seed) {
  if (!(range.low > 0.0 && range.low < range.high && range.high < 1.0)) {
    throw NoiseError("truncation range must satisfy 0 < low < high < 1");
  }
  Rng rng(seed);
  const NoiseCategory label = side == Side::kSrc
                                  ? NoiseCategory::kOvertranslation
                                  : NoiseCategory::kUndertranslation;
  TruncateResult result;
  result.pairs.reserve(pairs.size());
  for (const auto& p : pairs) {
    LabeledPair lp{p, label};
    std::string& text = side == Side::kSrc ? lp.pair.src : lp.pair.tgt;
    std::vector<std::string> tokens = tokenize(text);
    const double f = rng.uniform(range.low, range.high);
    if (tokens.size() < 2) {
      ++result.skipped;
      continue;
    }
    // Keep ceil(n*(1-f)), clamped so >= 1 token stays and >= 1 goes.
    size_t kept = static_cast<size_t>(
        std::ceil(static_cast<double>(tokens.size()) * (1.0 - f)));
    kept = std::min(kept, tokens.size() - 1);
    kept = std::max<size_t>(kept, 1);
    std::string joined;
    for (size_t i = 0; i < kept; ++i) {
      if (i) joined += ' ';
      joined += tokens[i];
    }
    text = joined;
    result.pairs.push_back(std::move(lp));
  }
  return result;
}

NoiseBenchmark build_noise_benchmark(const std::vector<SentencePair>& corpus,
                                     const NoiseSpec& spec, uint64_t n_clean) {
  const uint64_t needed = n_clean + spec.n_samples;
  if (corpus.size() < needed) {
    throw NoiseError("corpus of " + std::to_string(corpus.size()) +
                     " pairs cannot supply " + std::to_string(n_clean) +
                     " clean + " + std::to_string(spec.n_samples) +
                     " noise-source pairs");
  }
  // One sample of clean+noise size, split so the pools stay disjoint.
  std::vector<SentencePair> pool = sample_clean(corpus, needed, spec.seed);
  Rng rng(spec.seed ^ 0xA5A5A5A5A5A5A5A5ULL);
  rng.shuffle(pool);
  std::vector<SentencePair> clean_pool(pool.begin(), pool.begin() + n_clean);
  std::vector<SentencePair> noise_pool(pool.begin() + n_clean, pool.end());

  std::vector<LabeledPair> corrupted;
  const uint64_t noise_seed = spec.seed + 1;
  switch (spec.category) {
    case NoiseCategory::kMisaligned:
      corrupted = make_misaligned(noise_pool, noise_seed);
      break;
    case NoiseCategory::kMisorderedSrc:
      corrupted = make_misordered(noise_pool, Side::kSrc, noise_seed);
      break;
    case NoiseCategory::kMisorderedTgt:
      corrupted = make_misordered(noise_pool, Side::kTgt, noise_seed);
      break;
    case NoiseCategory::kWrongLanguage:
      corrupted = make_wrong_language(noise_pool, spec.donors, noise_seed);
      break;
    case NoiseCategory::kUntranslatedSrc:
      corrupted = make_untranslated(noise_pool, CopyDirection::kSrcToTgt);
      break;
    case NoiseCategory::kUntranslatedTgt:
      corrupted = make_untranslated(noise_pool, CopyDirection::kTgtToSrc);
      break;
    case NoiseCategory::kOvertranslation: {
      auto r = make_truncated(noise_pool, Side::kSrc, spec.truncate_range,
                              noise_seed);
      corrupted = std::move(r.pairs);
      break;
    }
    case NoiseCategory::kUndertranslation: {
      auto r = make_truncated(noise_pool, Side::kTgt, spec.truncate_range,
                              noise_seed);
      corrupted = std::move(r.pairs);
      break;
    }
    case NoiseCategory::kClean:
      throw NoiseError("clean is not a corruption category");
  }

  NoiseBenchmark benchmark;
  benchmark.skipped = noise_pool.size() - corrupted.size();
  uint64_t next_id = 0;
  for (const auto& p : clean_pool) {
    SentencePair fresh = p;
    fresh.id = next_id;
    benchmark.labels[next_id] = NoiseCategory::kClean;
    benchmark.pairs.push_back(std::move(fresh));
    ++next_id;
  }
  for (const auto& lp : corrupted) {
    SentencePair fresh = lp.pair;
    fresh.id = next_id;
    benchmark.labels[next_id] = lp.label;
    benchmark.pairs.push_back(std::move(fresh));
    ++next_id;
  }
  benchmark.n_clean = clean_pool.size();
  benchmark.n_noise = corrupted.size();
  return benchmark;
}

void write_labels(const NoiseBenchmark& benchmark, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NoiseError("cannot open label output: " + path);
  for (const auto& p : benchmark.pairs) {
    out << p.id << '\t' << to_string(benchmark.labels.at(p.id)) << '\n';
  }
  if (!out) throw NoiseError(path + ": write failed");
}

std::unordered_map<uint64_t, NoiseCategory> read_labels(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NoiseError("cannot open label file: " + path);
  std::unordered_map<uint64_t, NoiseCategory> labels;
  std::string line;
  uint64_t line_no = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw NoiseError(path + " line " + std::to_string(line_no) +
                       ": expected id<TAB>category");
    }
    uint64_t id = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + tab, id);
    if (ec != std::errc() || ptr != line.data() + tab) {
      throw NoiseError(path + " line " + std::to_string(line_no) +
                       ": cannot parse id");
    }
    labels[id] = parse_noise_category(line.substr(tab + 1));
    ++line_no;
  }
  return labels;
}

}  // namespace bitext
