#pragma once

/**
 * @file manifest.hpp
 * @brief Reproducibility manifest written next to every CLI output: the tool
 *        version, the subcommand, its parameters, the seed in effect and the
 *        files produced. JSON, written atomically (temp file + rename).
 */

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace radet {

inline constexpr const char* kToolName = "radet";
inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
  std::string command;                          ///< CLI subcommand name
  std::map<std::string, std::string> parameters;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;             ///< files written by the run
};

/// Serializes the manifest to pretty-printed JSON.
std::string manifest_json(const RunManifest& m);

/// Writes manifest_json(m) to `path` atomically. Throws std::runtime_error on
/// I/O failure.
void write_manifest(const std::string& path, const RunManifest& m);

}  // namespace radet
