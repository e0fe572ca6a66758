#include "chromalex/manifest.hpp"

#include <json.hpp>

#include "chromalex/util.hpp"
#include "chromalex/version.hpp"

namespace chromalex {

void write_run_manifest(const std::filesystem::path& out_dir,
                        const RunManifest& manifest) {
  nlohmann::json root;
  root["command"] = manifest.command;
  root["config"] = manifest.config;
  root["seed"] = manifest.seed;
  nlohmann::json inputs = nlohmann::json::object();
  for (const auto& path : manifest.inputs) {
    inputs[path.string()] = file_hash_hex(path);
  }
  root["inputs"] = std::move(inputs);
  root["tool-version"] = kVersion;
  root["created-at"] = iso8601_utc_now();

  std::filesystem::create_directories(out_dir);
  write_file_text(out_dir / "run-manifest.json", root.dump(2) + "\n");
}

}  // namespace chromalex
