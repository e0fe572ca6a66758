#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "chromalex/embedding.hpp"
#include "chromalex/imaging.hpp"

namespace chromalex::pipeline {

struct EmbedOptions {
  bool include_std = true;
};

struct WordEmbeddingResult {
  embedding::WordColorEmbedding record;  // colorgram_path left for the caller
  imaging::Colorgram colorgram;
  std::uint64_t out_of_range_pixels = 0;
  int decode_failures = 0;
};

/// Decode, resize to canonical size, histogram, and aggregate one word's
/// images. Images that fail to decode are skipped and counted; throws
/// EmptyInput when none decode.
WordEmbeddingResult embed_word(const std::string& word,
                               std::span<const std::filesystem::path> image_paths,
                               const EmbedOptions& opts = {});

/// Image files under `dir` in lexicographic filename order (.png/.jpg/.jpeg).
std::vector<std::filesystem::path> list_image_files(const std::filesystem::path& dir);

}  // namespace chromalex::pipeline
