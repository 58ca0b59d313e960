#include "bitext/scorers.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_set>

#include <json.hpp>

namespace bitext {

using nlohmann::json;

namespace {

double parse_score(const std::string& text, const std::string& context) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ScoreError(context + ": cannot parse score '" + text + "'");
  }
  if (!std::isfinite(value)) {
    throw ScoreError(context + ": non-finite score '" + text + "'");
  }
  return value;
}

}  // namespace

std::vector<ScoreRecord> score_external(const std::vector<SentencePair>& pairs,
                                        const std::string& score_path,
                                        const std::string& scorer_id) {
  std::ifstream in(score_path, std::ios::binary);
  if (!in) throw ScoreError("cannot open score file: " + score_path);

  std::string line;
  uint64_t line_no = 0;
  bool keyed = false;
  std::unordered_map<uint64_t, double> by_id;
  std::vector<double> by_line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string context = score_path + " line " + std::to_string(line_no);
    size_t tab = line.find('\t');
    if (line_no == 0) keyed = tab != std::string::npos;
    if (keyed) {
      if (tab == std::string::npos) {
        throw ScoreError(context + ": expected id<TAB>score row");
      }
      uint64_t id = 0;
      const std::string id_text = line.substr(0, tab);
      auto [ptr, ec] = std::from_chars(
          id_text.data(), id_text.data() + id_text.size(), id);
      if (ec != std::errc() || ptr != id_text.data() + id_text.size()) {
        throw ScoreError(context + ": cannot parse id '" + id_text + "'");
      }
      by_id[id] = parse_score(line.substr(tab + 1), context);
    } else {
      by_line.push_back(parse_score(line, context));
    }
    ++line_no;
  }

  std::vector<ScoreRecord> records;
  records.reserve(pairs.size());
  if (keyed) {
    for (const auto& p : pairs) {
      auto it = by_id.find(p.id);
      if (it == by_id.end()) {
        throw ScoreError(score_path + ": no score for pair id " +
                         std::to_string(p.id));
      }
      records.push_back({p.id, scorer_id, it->second});
    }
  } else {
    if (by_line.size() != pairs.size()) {
      throw ScoreError(score_path + ": count mismatch " +
                       std::to_string(by_line.size()) + "≠" +
                       std::to_string(pairs.size()));
    }
    for (size_t i = 0; i < pairs.size(); ++i) {
      records.push_back({pairs[i].id, scorer_id, by_line[i]});
    }
  }
  return records;
}

double score_length_ratio(const SentencePair& pair) {
  const double m = static_cast<double>(token_count(pair.src));
  const double n = static_cast<double>(token_count(pair.tgt));
  if (m == 0.0 && n == 0.0) return 1.0;
  if (m == 0.0 || n == 0.0) return 0.0;
  return std::min(m, n) / std::max(m, n);
}

double score_copy_penalty(const SentencePair& pair) {
  auto src_tokens = tokenize(pair.src);
  auto tgt_tokens = tokenize(pair.tgt);
  std::set<std::string> src_set(src_tokens.begin(), src_tokens.end());
  std::set<std::string> tgt_set(tgt_tokens.begin(), tgt_tokens.end());
  if (src_set.empty() && tgt_set.empty()) return 0.0;
  size_t common = 0;
  for (const auto& t : src_set) common += tgt_set.count(t);
  const size_t uni = src_set.size() + tgt_set.size() - common;
  const double jaccard = static_cast<double>(common) / uni;
  return 1.0 - jaccard;
}

namespace {

// ASCII lowercasing only; the trigram space treats non-ASCII code points
// case-sensitively, which is deterministic without a Unicode table.
std::string ascii_lower(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::vector<std::string> utf8_chars(const std::string& s) {
  std::vector<std::string> chars;
  size_t i = 0;
  while (i < s.size()) {
    size_t start = i;
    unsigned char c = s[i];
    size_t len = 1;
    if (c >= 0xF0) len = 4;
    else if (c >= 0xE0) len = 3;
    else if (c >= 0xC0) len = 2;
    len = std::min(len, s.size() - start);
    chars.push_back(s.substr(start, len));
    i = start + len;
  }
  return chars;
}

}  // namespace

std::vector<std::string> char_trigrams(const std::string& text) {
  std::vector<std::string> chars = utf8_chars(ascii_lower(text));
  if (chars.empty()) return {};
  std::vector<std::string> padded;
  padded.reserve(chars.size() + 2);
  padded.push_back("^");
  for (auto& c : chars) padded.push_back(std::move(c));
  padded.push_back("$");
  std::vector<std::string> grams;
  for (size_t i = 0; i + 3 <= padded.size(); ++i) {
    grams.push_back(padded[i] + padded[i + 1] + padded[i + 2]);
  }
  return grams;
}

LangProfile build_lang_profile(const std::vector<std::string>& texts,
                               const std::string& lang) {
  std::unordered_map<std::string, double> counts;
  for (const auto& text : texts) {
    for (auto& g : char_trigrams(text)) counts[g] += 1.0;
  }
  if (counts.empty()) {
    throw ScoreError("cannot build language profile for '" + lang +
                     "': no trigrams in input");
  }
  double norm_sq = 0.0;
  for (const auto& [g, c] : counts) norm_sq += c * c;
  const double norm = std::sqrt(norm_sq);
  for (auto& [g, c] : counts) c /= norm;
  return LangProfile{lang, std::move(counts)};
}

LangProfile load_lang_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScoreError("cannot open profile file: " + path);
  json obj = json::parse(in);
  LangProfile profile;
  profile.lang = obj.at("lang").get<std::string>();
  for (const auto& [g, w] : obj.at("trigrams").items()) {
    profile.trigram_weights[g] = w.get<double>();
  }
  return profile;
}

void save_lang_profile(const LangProfile& profile, const std::string& path) {
  json obj;
  obj["lang"] = profile.lang;
  json grams = json::object();
  std::vector<std::string> keys;
  keys.reserve(profile.trigram_weights.size());
  for (const auto& [g, w] : profile.trigram_weights) keys.push_back(g);
  std::sort(keys.begin(), keys.end());
  for (const auto& g : keys) grams[g] = profile.trigram_weights.at(g);
  obj["trigrams"] = std::move(grams);
  std::ofstream out(path);
  if (!out) throw ScoreError("cannot open profile output: " + path);
  out << obj.dump() << '\n';
}

namespace {

double cosine_to_profile(const std::string& text, const LangProfile& profile) {
  std::unordered_map<std::string, double> counts;
  for (auto& g : char_trigrams(text)) counts[g] += 1.0;
  if (counts.empty()) return 0.0;
  double norm_sq = 0.0;
  double dot = 0.0;
  for (const auto& [g, c] : counts) {
    norm_sq += c * c;
    auto it = profile.trigram_weights.find(g);
    if (it != profile.trigram_weights.end()) dot += c * it->second;
  }
  // Profile weights are unit-norm already.
  const double cosine = dot / std::sqrt(norm_sq);
  return std::clamp(cosine, 0.0, 1.0);
}

}  // namespace

double score_lang_fingerprint(
    const SentencePair& pair,
    const std::map<std::string, LangProfile>& profiles,
    const std::string& expected_src_lang,
    const std::string& expected_tgt_lang) {
  auto find = [&](const std::string& lang) -> const LangProfile& {
    auto it = profiles.find(lang);
    if (it == profiles.end()) {
      throw ScoreError("no language profile for tag '" + lang + "'");
    }
    return it->second;
  };
  const std::string& src_lang =
      expected_src_lang.empty() ? pair.src_lang : expected_src_lang;
  const std::string& tgt_lang =
      expected_tgt_lang.empty() ? pair.tgt_lang : expected_tgt_lang;
  const double src_cos = cosine_to_profile(pair.src, find(src_lang));
  const double tgt_cos = cosine_to_profile(pair.tgt, find(tgt_lang));
  return std::min(src_cos, tgt_cos);
}

double score_composite(const SentencePair& pair,
                       const std::vector<std::pair<ScoreFn, double>>& parts) {
  double total = 0.0;
  for (const auto& [fn, weight] : parts) {
    if (!std::isfinite(weight)) throw ScoreError("non-finite composite weight");
    total += weight * fn(pair);
  }
  return total;
}

double score_oracle(const SentencePair& pair,
                    const std::unordered_map<uint64_t, PairLabel>& labels) {
  auto it = labels.find(pair.id);
  if (it == labels.end()) {
    throw ScoreError("no label for pair id " + std::to_string(pair.id));
  }
  return it->second == PairLabel::kClean ? 1.0 : 0.0;
}

void write_scores(const std::vector<ScoreRecord>& scores,
                  const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ScoreError("cannot open score output: " + path);
  char buf[64];
  for (const auto& r : scores) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), r.score,
                                   std::chars_format::general, 17);
    out << r.pair_id << '\t' << std::string_view(buf, ptr - buf) << '\n';
  }
  if (!out) throw ScoreError(path + ": write failed");
}

std::vector<ScoreRecord> read_scores(const std::string& path,
                                     const std::string& scorer_id) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScoreError("cannot open score file: " + path);
  std::vector<ScoreRecord> records;
  std::string line;
  uint64_t line_no = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string context = path + " line " + std::to_string(line_no);
    size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ScoreError(context + ": expected id<TAB>score row");
    }
    uint64_t id = 0;
    const std::string id_text = line.substr(0, tab);
    auto [ptr, ec] =
        std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
    if (ec != std::errc() || ptr != id_text.data() + id_text.size()) {
      throw ScoreError(context + ": cannot parse id '" + id_text + "'");
    }
    records.push_back({id, scorer_id, parse_score(line.substr(tab + 1), context)});
    ++line_no;
  }
  return records;
}

}  // namespace bitext
