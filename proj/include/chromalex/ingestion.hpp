#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace chromalex::ingestion {

enum class Mode { kLocalDir, kHttpSearch };

/// Parses a search-result body into image URLs, best first.
using ResultParser = std::function<std::vector<std::string>(const std::string&)>;

struct IngestionConfig {
  Mode mode = Mode::kLocalDir;
  /// LOCAL_DIR: directory containing one subdirectory per word.
  /// HTTP_SEARCH: URL template with a {query} placeholder.
  std::string root_or_endpoint;
  int images_per_word = 100;
  std::string extra_query = "safe=off&site=&tbm=isch&source=hp&gs_l=img";
  double rate_limit = 2.0;  // requests per second (HTTP mode)
  std::filesystem::path cache_dir;
  double timeout_s = 10.0;
  int max_in_flight = 4;
  std::string user_agent = "chromalex/0.1";
  ResultParser result_parser;  // required in HTTP mode
};

struct WordImageSet {
  std::string word;
  std::vector<std::filesystem::path> image_paths;  // rank / filename order
  std::string fetched_at;
  int shortfall = 0;
  bool from_cache = false;
};

struct CorpusReport {
  std::vector<WordImageSet> sets;  // successful words, input order
  struct Failure {
    std::string word;
    std::string error;
  };
  std::vector<Failure> failures;
};

/// Fetch (or locate) a word's image set. LOCAL_DIR lists
/// <root>/<word>/ in lexicographic filename order without copying;
/// HTTP_SEARCH downloads into <cache_dir>/<word>/<rank>.<ext> with a
/// manifest.json, and repeat calls are served from the cache without
/// network I/O. Fewer images than requested is a shortfall, not an error;
/// zero is NotFound.
WordImageSet ingest_word(const std::string& word, const IngestionConfig& cfg);

/// Per-word ingestion over a batch: results in input order, failures
/// isolated per word, one shared rate limiter across all requests.
CorpusReport ingest_corpus(const std::vector<std::string>& words,
                           const IngestionConfig& cfg);

/// Fixture parser: one JSON object per line, each with a "url" key.
std::vector<std::string> parse_json_lines(const std::string& body);

}  // namespace chromalex::ingestion
