#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bitext {

inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a 64-bit. Fixed and documented so manifests are comparable
// across runs and machines.
uint64_t fnv1a64(const void* data, size_t size);
std::string hash_file(const std::string& path);

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> args;
  std::map<std::string, std::string> input_digests;
  std::vector<uint64_t> seeds;
  std::string tool_version = kToolVersion;
  std::string timestamp;
};

// Written as <output>.manifest.json next to the primary output.
void write_manifest(const RunManifest& manifest, const std::string& path);

}  // namespace bitext
