#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "chromalex/embedding.hpp"

namespace chromalex::store {

/// word -> embedding record; std::map keeps on-disk key order stable.
using EmbeddingMap = std::map<std::string, embedding::WordColorEmbedding>;

/// Serialize to the on-disk JSON layout (sorted keys, full-precision reals).
std::string embeddings_to_json(const EmbeddingMap& entries);

void save_embeddings(const std::filesystem::path& path, const EmbeddingMap& entries);

/// Load the embedding JSON. With skip_bad=false a malformed entry throws
/// ParseError naming the word and field; with skip_bad=true the entry is
/// skipped and the message appended to `problems`.
EmbeddingMap load_embeddings(const std::filesystem::path& path,
                             bool skip_bad = false,
                             std::vector<std::string>* problems = nullptr);

struct ConcretenessEntry {
  double mean = 0.0;
  double sd = 0.0;
};

struct ConcretenessTable {
  std::map<std::string, ConcretenessEntry> entries;
  int duplicates = 0;  // rows that overwrote an earlier word (last wins)
};

/// CSV/TSV with header row `word,concreteness-mean,concreteness-sd`.
/// Words lowercased; ParseError on non-numeric ratings.
ConcretenessTable load_concreteness(const std::filesystem::path& path);

struct TextVectorTable {
  std::map<std::string, std::vector<double>> vectors;
  int dimension = 0;
};

/// Whitespace-delimited `word v1 .. vD` lines; a first line of exactly two
/// integers is treated as a count/dim header. Words lowercased.
/// DimensionMismatch names the offending line number.
TextVectorTable load_text_vectors(const std::filesystem::path& path);

}  // namespace chromalex::store
