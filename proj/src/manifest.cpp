#include "varsel/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "varsel/errors.hpp"
#include "varsel/version.hpp"

namespace varsel {

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const unsigned char* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("digest: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string contents = ss.str();
  return fnv1a64(contents.data(), contents.size());
}

std::string to_hex(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(value));
  return std::string(buf);
}

nlohmann::ordered_json make_manifest(
    const std::string& command, const nlohmann::ordered_json& config,
    std::uint64_t seed, const std::vector<std::string>& input_paths,
    const std::vector<std::string>& output_paths) {
  nlohmann::ordered_json manifest;
  manifest["command"] = command;
  manifest["version"] = kVersion;
  manifest["seed"] = seed;
  manifest["config"] = config;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
  for (const auto& path : input_paths) {
    nlohmann::ordered_json entry;
    entry["path"] = path;
    entry["fnv1a64"] = to_hex(fnv1a64_file(path));
    inputs.push_back(entry);
  }
  manifest["inputs"] = inputs;
  manifest["outputs"] = output_paths;
  return manifest;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace varsel
