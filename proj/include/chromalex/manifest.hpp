#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace chromalex {

/// Provenance record written once per output directory so any result can
/// be regenerated from the recorded command, configuration, and inputs.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> config;
  std::uint64_t seed = 0;
  std::vector<std::filesystem::path> inputs;  // hashed at write time
};

/// Writes <out_dir>/run-manifest.json (replacing any previous one).
void write_run_manifest(const std::filesystem::path& out_dir, const RunManifest& manifest);

}  // namespace chromalex
