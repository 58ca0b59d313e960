#include "bitext/manifest.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bitext {

using nlohmann::json;

uint64_t fnv1a64(const void* data, size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  uint64_t hash = 0xCBF29CE484222325ULL;
  for (size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

std::string hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file for hashing: " + path);
  uint64_t hash = 0xCBF29CE484222325ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001B3ULL;
    }
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << hash;
  return out.str();
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
  json obj;
  obj["command"] = manifest.command;
  obj["args"] = manifest.args;
  obj["input_digests"] = manifest.input_digests;
  obj["seeds"] = manifest.seeds;
  obj["tool_version"] = manifest.tool_version;
  obj["timestamp"] = manifest.timestamp;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open manifest output: " + path);
  out << obj.dump(2) << '\n';
}

}  // namespace bitext
