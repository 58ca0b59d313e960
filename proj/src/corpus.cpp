#include "bitext/corpus.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

namespace bitext {

using nlohmann::json;

CorpusFormat parse_format(const std::string& name) {
  if (name == "jsonl") return CorpusFormat::kJsonl;
  if (name == "tsv") return CorpusFormat::kTsv;
  throw CorpusError("unknown corpus format: " + name);
}

namespace {

bool has_newline(const std::string& s) {
  return s.find('\n') != std::string::npos ||
         s.find('\r') != std::string::npos;
}

SentencePair parse_jsonl_line(const std::string& line, uint64_t line_no,
                              uint64_t next_default_id) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw CorpusError("line " + std::to_string(line_no) + ": bad JSON: " +
                      e.what());
  }
  if (!obj.is_object() || !obj.contains("src") || !obj.contains("tgt")) {
    throw CorpusError("line " + std::to_string(line_no) +
                      ": JSONL record needs src and tgt fields");
  }
  SentencePair p;
  p.id = obj.contains("id") ? obj.at("id").get<uint64_t>() : next_default_id;
  p.src = obj.at("src").get<std::string>();
  p.tgt = obj.at("tgt").get<std::string>();
  if (obj.contains("src_lang")) p.src_lang = obj.at("src_lang");
  if (obj.contains("tgt_lang")) p.tgt_lang = obj.at("tgt_lang");
  if (obj.contains("provenance"))
    p.provenance = obj.at("provenance").get<std::string>();
  return p;
}

SentencePair parse_tsv_line(const std::string& line, uint64_t line_no,
                            uint64_t id) {
  size_t tab = line.find('\t');
  if (tab == std::string::npos) {
    throw CorpusError("line " + std::to_string(line_no) +
                      ": TSV line has no tab separator");
  }
  if (line.find('\t', tab + 1) != std::string::npos) {
    throw CorpusError("line " + std::to_string(line_no) +
                      ": TSV line has more than two fields");
  }
  SentencePair p;
  p.id = id;
  p.src = line.substr(0, tab);
  p.tgt = line.substr(tab + 1);
  return p;
}

}  // namespace

struct CorpusReader::Impl {
  std::ifstream in;
  CorpusFormat format;
  std::string path;
  uint64_t line_no = 0;
  uint64_t byte_offset = 0;
  std::unordered_set<uint64_t> seen_ids;
};

CorpusReader::CorpusReader(const std::string& path, CorpusFormat format)
    : impl_(std::make_unique<Impl>()) {
  impl_->in.open(path, std::ios::binary);
  impl_->format = format;
  impl_->path = path;
  if (!impl_->in) throw CorpusError("cannot open corpus file: " + path);
}

CorpusReader::~CorpusReader() = default;
CorpusReader::CorpusReader(CorpusReader&&) noexcept = default;
CorpusReader& CorpusReader::operator=(CorpusReader&&) noexcept = default;

bool CorpusReader::next(SentencePair& out) {
  std::string line;
  if (!std::getline(impl_->in, line)) return false;
  const uint64_t line_no = impl_->line_no;
  const uint64_t offset = impl_->byte_offset;
  impl_->byte_offset += line.size() + 1;
  ++impl_->line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  try {
    out = impl_->format == CorpusFormat::kJsonl
              ? parse_jsonl_line(line, line_no, line_no)
              : parse_tsv_line(line, line_no, line_no);
  } catch (const CorpusError& e) {
    throw CorpusError(impl_->path + ": " + e.what() + " (byte offset " +
                      std::to_string(offset) + ")");
  }
  if (!impl_->seen_ids.insert(out.id).second) {
    throw CorpusError(impl_->path + ": duplicate id " +
                      std::to_string(out.id) + " at line " +
                      std::to_string(line_no));
  }
  return true;
}

struct CorpusWriter::Impl {
  std::ofstream out;
  CorpusFormat format;
  std::string path;
  uint64_t written = 0;
  uint64_t bytes = 0;
};

CorpusWriter::CorpusWriter(const std::string& path, CorpusFormat format)
    : impl_(std::make_unique<Impl>()) {
  impl_->out.open(path, std::ios::binary);
  impl_->format = format;
  impl_->path = path;
  if (!impl_->out) throw CorpusError("cannot open output file: " + path);
}

CorpusWriter::~CorpusWriter() = default;

void CorpusWriter::write(const SentencePair& pair) {
  if (has_newline(pair.src) || has_newline(pair.tgt)) {
    throw CorpusError("pair " + std::to_string(pair.id) +
                      ": raw newline in text is not representable");
  }
  std::string line;
  if (impl_->format == CorpusFormat::kTsv) {
    if (pair.src.find('\t') != std::string::npos ||
        pair.tgt.find('\t') != std::string::npos) {
      throw CorpusError("pair " + std::to_string(pair.id) +
                        ": tab in text is not representable in TSV");
    }
    line = pair.src + "\t" + pair.tgt;
  } else {
    json obj;
    obj["id"] = pair.id;
    obj["src"] = pair.src;
    obj["tgt"] = pair.tgt;
    if (!pair.src_lang.empty()) obj["src_lang"] = pair.src_lang;
    if (!pair.tgt_lang.empty()) obj["tgt_lang"] = pair.tgt_lang;
    if (pair.provenance) obj["provenance"] = *pair.provenance;
    line = obj.dump();
  }
  impl_->out << line << '\n';
  if (!impl_->out) {
    throw CorpusError(impl_->path + ": write failed after " +
                      std::to_string(impl_->bytes) + " bytes");
  }
  impl_->bytes += line.size() + 1;
  ++impl_->written;
}

uint64_t CorpusWriter::close() {
  impl_->out.close();
  if (impl_->out.fail()) {
    throw CorpusError(impl_->path + ": close failed after " +
                      std::to_string(impl_->bytes) + " bytes");
  }
  return impl_->written;
}

std::vector<SentencePair> read_corpus(const std::string& path,
                                      CorpusFormat format) {
  CorpusReader reader(path, format);
  std::vector<SentencePair> pairs;
  SentencePair p;
  while (reader.next(p)) pairs.push_back(std::move(p));
  return pairs;
}

uint64_t write_corpus(const std::vector<SentencePair>& pairs,
                      const std::string& path, CorpusFormat format) {
  CorpusWriter writer(path, format);
  for (const auto& p : pairs) writer.write(p);
  return writer.close();
}

namespace {

// Decodes one UTF-8 code point; malformed bytes are taken as single
// code points so tokenization never fails on dirty input.
uint32_t decode_utf8(const std::string& s, size_t& i) {
  unsigned char c = s[i];
  uint32_t cp = c;
  size_t extra = 0;
  if (c >= 0xF0) {
    cp = c & 0x07;
    extra = 3;
  } else if (c >= 0xE0) {
    cp = c & 0x0F;
    extra = 2;
  } else if (c >= 0xC0) {
    cp = c & 0x1F;
    extra = 1;
  }
  size_t j = i + 1;
  for (; extra > 0 && j < s.size() && (s[j] & 0xC0) == 0x80; --extra, ++j) {
    cp = (cp << 6) | (s[j] & 0x3F);
  }
  i = j;
  return cp;
}

bool is_unicode_space(uint32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  size_t i = 0;
  size_t token_start = 0;
  bool in_token = false;
  while (i < text.size()) {
    size_t cp_start = i;
    uint32_t cp = decode_utf8(text, i);
    if (is_unicode_space(cp)) {
      if (in_token) {
        tokens.push_back(text.substr(token_start, cp_start - token_start));
        in_token = false;
      }
    } else if (!in_token) {
      token_start = cp_start;
      in_token = true;
    }
  }
  if (in_token) tokens.push_back(text.substr(token_start));
  return tokens;
}

size_t token_count(const std::string& text) { return tokenize(text).size(); }

size_t char_count(const std::string& text) {
  size_t n = 0;
  for (size_t i = 0; i < text.size(); ++n) decode_utf8(text, i);
  return n;
}

bool length_filter_keeps(const SentencePair& pair, uint64_t max_tokens,
                         bool count_chars) {
  auto len = [&](const std::string& s) {
    return count_chars ? char_count(s) : token_count(s);
  };
  return len(pair.src) <= max_tokens && len(pair.tgt) <= max_tokens;
}

LengthFilterResult length_filter(const std::vector<SentencePair>& pairs,
                                 uint64_t max_tokens, bool count_chars) {
  LengthFilterResult result;
  for (const auto& p : pairs) {
    if (length_filter_keeps(p, max_tokens, count_chars)) {
      result.kept.push_back(p);
    } else {
      ++result.dropped;
    }
  }
  return result;
}

void StatsAccumulator::add(const SentencePair& pair) {
  uint64_t s = token_count(pair.src);
  uint64_t t = token_count(pair.tgt);
  ++n_;
  src_tokens_total_ += s;
  tgt_tokens_total_ += t;
  ++src_hist_[s];
  ++tgt_hist_[t];
}

void StatsAccumulator::merge(const StatsAccumulator& other) {
  n_ += other.n_;
  src_tokens_total_ += other.src_tokens_total_;
  tgt_tokens_total_ += other.tgt_tokens_total_;
  for (const auto& [k, v] : other.src_hist_) src_hist_[k] += v;
  for (const auto& [k, v] : other.tgt_hist_) tgt_hist_[k] += v;
}

CorpusStats StatsAccumulator::finish() const {
  CorpusStats stats;
  stats.n_pairs = n_;
  stats.mean_src_tokens =
      n_ == 0 ? 0.0 : static_cast<double>(src_tokens_total_) / n_;
  stats.mean_tgt_tokens =
      n_ == 0 ? 0.0 : static_cast<double>(tgt_tokens_total_) / n_;
  stats.src_token_histogram = src_hist_;
  stats.tgt_token_histogram = tgt_hist_;
  return stats;
}

CorpusStats compute_stats(const std::vector<SentencePair>& pairs) {
  StatsAccumulator acc;
  for (const auto& p : pairs) acc.add(p);
  return acc.finish();
}

}  // namespace bitext
