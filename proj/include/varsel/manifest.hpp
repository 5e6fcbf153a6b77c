#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace varsel {

// FNV-1a 64-bit digest.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64_file(const std::string& path);
std::string to_hex(std::uint64_t value);

// Builds the reproducibility manifest emitted next to every result file:
// command name, resolved configuration, seed, input digests, tool version,
// output names. Contains no clock or host information, so reruns are
// byte-identical.
nlohmann::ordered_json make_manifest(const std::string& command,
                                     const nlohmann::ordered_json& config,
                                     std::uint64_t seed,
                                     const std::vector<std::string>& input_paths,
                                     const std::vector<std::string>& output_paths);

// Writes text to path, throwing IoError on failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace varsel
