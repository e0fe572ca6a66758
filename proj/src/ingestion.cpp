#include "chromalex/ingestion.hpp"

#include <algorithm>
#include <chrono>
#include <mutex>
#include <optional>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "chromalex/errors.hpp"
#include "chromalex/pipeline.hpp"
#include "chromalex/util.hpp"

namespace chromalex::ingestion {
namespace {

using nlohmann::json;

/// Capacity-one token bucket shared across a batch; the first request is
/// immediate and each further request waits for the refill.
class TokenBucket {
 public:
  explicit TokenBucket(double rate) : rate_(rate) {}

  void acquire() {
    std::unique_lock lock(mu_);
    for (;;) {
      const auto now = std::chrono::steady_clock::now();
      if (last_) {
        tokens_ = std::min(1.0, tokens_ + std::chrono::duration<double>(now - *last_).count() * rate_);
      }
      last_ = now;
      if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return;
      }
      const double wait_s = (1.0 - tokens_) / rate_;
      lock.unlock();
      std::this_thread::sleep_for(std::chrono::duration<double>(wait_s));
      lock.lock();
    }
  }

 private:
  std::mutex mu_;
  double rate_;
  double tokens_ = 1.0;
  std::optional<std::chrono::steady_clock::time_point> last_;
};

struct SplitUrl {
  std::string base;        // scheme://host[:port]
  std::string path_query;  // starts with '/'
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("not an absolute URL: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

std::string url_encode(const std::string& s) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
        (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xF]);
    }
  }
  return out;
}

std::string build_search_url(const std::string& word, const IngestionConfig& cfg) {
  const std::string placeholder = "{query}";
  const auto pos = cfg.root_or_endpoint.find(placeholder);
  if (pos == std::string::npos) {
    throw ConfigError("endpoint template lacks a {query} placeholder");
  }
  std::string url = cfg.root_or_endpoint;
  url.replace(pos, placeholder.size(), url_encode(word));
  if (!cfg.extra_query.empty()) {
    url += (url.find('?') != std::string::npos ? '&' : '?');
    url += cfg.extra_query;
  }
  return url;
}

std::optional<std::string> http_get(const std::string& url, const IngestionConfig& cfg,
                                    TokenBucket& bucket) {
  bucket.acquire();
  const SplitUrl parts = split_url(url);
  httplib::Client client(parts.base);
  client.set_connection_timeout(std::chrono::duration<double>(cfg.timeout_s));
  client.set_read_timeout(std::chrono::duration<double>(cfg.timeout_s));
  client.set_follow_location(true);
  httplib::Headers headers = {{"User-Agent", cfg.user_agent}};
  auto res = client.Get(parts.path_query, headers);
  if (!res || res->status != 200) return std::nullopt;
  return res->body;
}

std::string pick_extension(const std::string& url, const std::string& body) {
  static const unsigned char kPngMagic[4] = {0x89, 'P', 'N', 'G'};
  if (body.size() >= 4 && std::equal(kPngMagic, kPngMagic + 4,
                                     reinterpret_cast<const unsigned char*>(body.data()))) {
    return ".png";
  }
  if (body.size() >= 2 && static_cast<unsigned char>(body[0]) == 0xFF &&
      static_cast<unsigned char>(body[1]) == 0xD8) {
    return ".jpg";
  }
  const auto query = url.find('?');
  const std::string path = url.substr(0, query);
  const auto dot = path.rfind('.');
  if (dot != std::string::npos) {
    const std::string ext = to_lower(path.substr(dot));
    if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") return ext;
  }
  return "";
}

std::string rank_name(int rank, const std::string& ext) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%03d", rank);
  return std::string(buf) + ext;
}

std::optional<WordImageSet> try_cache(const std::string& word,
                                      const IngestionConfig& cfg) {
  const auto word_dir = cfg.cache_dir / word;
  const auto manifest_path = word_dir / "manifest.json";
  if (!std::filesystem::exists(manifest_path)) return std::nullopt;

  json manifest;
  try {
    manifest = json::parse(read_file_text(manifest_path));
  } catch (...) {
    return std::nullopt;  // unreadable manifest: treat as a miss
  }
  if (!manifest.is_object() || !manifest.contains("requested") ||
      !manifest.contains("entries")) {
    return std::nullopt;
  }
  if (manifest["requested"].get<int>() < cfg.images_per_word) {
    return std::nullopt;  // earlier run asked for fewer images
  }

  WordImageSet set;
  set.word = word;
  set.fetched_at = manifest.value("fetched-at", "");
  set.from_cache = true;
  for (const auto& entry : manifest["entries"]) {
    if (static_cast<int>(set.image_paths.size()) >= cfg.images_per_word) break;
    const auto file = word_dir / entry.at("file").get<std::string>();
    if (!std::filesystem::exists(file)) return std::nullopt;
    set.image_paths.push_back(file);
  }
  set.shortfall = cfg.images_per_word - static_cast<int>(set.image_paths.size());
  if (set.image_paths.empty()) return std::nullopt;
  return set;
}

WordImageSet ingest_word_http(const std::string& word, const IngestionConfig& cfg,
                              TokenBucket& bucket) {
  if (auto cached = try_cache(word, cfg)) return *cached;

  const std::string search_url = build_search_url(word, cfg);
  const auto body = http_get(search_url, cfg, bucket);
  if (!body) throw NotFound("search request failed for '" + word + "'");

  std::vector<std::string> urls = cfg.result_parser(*body);
  if (urls.size() > static_cast<std::size_t>(cfg.images_per_word)) {
    urls.resize(static_cast<std::size_t>(cfg.images_per_word));
  }
  if (urls.empty()) throw NotFound("no search results for '" + word + "'");

  const SplitUrl search_parts = split_url(search_url);
  const auto word_dir = cfg.cache_dir / word;
  std::filesystem::create_directories(word_dir);

  WordImageSet set;
  set.word = word;
  set.fetched_at = iso8601_utc_now();
  json entries = json::array();
  int rank = 0;
  for (const auto& raw_url : urls) {
    const std::string url =
        raw_url.rfind("http", 0) == 0 ? raw_url : search_parts.base + raw_url;
    const auto payload = http_get(url, cfg, bucket);
    if (!payload) {
      ++rank;
      continue;
    }
    const std::string ext = pick_extension(url, *payload);
    if (ext.empty()) {
      ++rank;
      continue;
    }
    const std::string name = rank_name(rank, ext);
    const auto file = word_dir / name;
    write_file_atomic(file, std::span<const unsigned char>(
                                reinterpret_cast<const unsigned char*>(payload->data()),
                                payload->size()));
    json entry;
    entry["rank"] = rank;
    entry["url"] = url;
    entry["file"] = name;
    entry["hash"] = to_hex(fnv1a64(*payload));
    entry["fetched-at"] = set.fetched_at;
    entries.push_back(std::move(entry));
    set.image_paths.push_back(file);
    ++rank;
  }

  if (set.image_paths.empty()) {
    throw NotFound("no images retrievable for '" + word + "'");
  }

  json manifest;
  manifest["word"] = word;
  manifest["requested"] = cfg.images_per_word;
  manifest["fetched-at"] = set.fetched_at;
  manifest["entries"] = std::move(entries);
  const std::string text = manifest.dump(2) + "\n";
  write_file_atomic(word_dir / "manifest.json",
                    std::span<const unsigned char>(
                        reinterpret_cast<const unsigned char*>(text.data()),
                        text.size()));

  set.shortfall = cfg.images_per_word - static_cast<int>(set.image_paths.size());
  return set;
}

WordImageSet ingest_word_local(const std::string& word, const IngestionConfig& cfg) {
  const auto dir = std::filesystem::path(cfg.root_or_endpoint) / word;
  if (!std::filesystem::is_directory(dir)) {
    throw NotFound("no image directory for '" + word + "'");
  }
  auto files = pipeline::list_image_files(dir);
  if (files.empty()) throw NotFound("no images for '" + word + "'");
  if (files.size() > static_cast<std::size_t>(cfg.images_per_word)) {
    files.resize(static_cast<std::size_t>(cfg.images_per_word));
  }

  WordImageSet set;
  set.word = word;
  set.image_paths = std::move(files);
  set.fetched_at = iso8601_utc_now();
  set.shortfall = cfg.images_per_word - static_cast<int>(set.image_paths.size());
  return set;
}

void validate_config(const IngestionConfig& cfg) {
  if (cfg.images_per_word < 1) throw ConfigError("images_per_word must be >= 1");
  if (cfg.mode == Mode::kHttpSearch) {
    if (cfg.rate_limit <= 0.0) throw ConfigError("rate_limit must be > 0");
    if (cfg.cache_dir.empty()) throw ConfigError("cache_dir is required in HTTP mode");
    if (!cfg.result_parser) throw ConfigError("result parser is required in HTTP mode");
  } else if (cfg.root_or_endpoint.empty()) {
    throw ConfigError("image root directory is required");
  }
}

WordImageSet ingest_word_impl(const std::string& word, const IngestionConfig& cfg,
                              TokenBucket& bucket) {
  if (cfg.mode == Mode::kLocalDir) return ingest_word_local(word, cfg);
  return ingest_word_http(word, cfg, bucket);
}

}  // namespace

WordImageSet ingest_word(const std::string& word, const IngestionConfig& cfg) {
  validate_config(cfg);
  TokenBucket bucket(cfg.rate_limit > 0 ? cfg.rate_limit : 1.0);
  return ingest_word_impl(word, cfg, bucket);
}

CorpusReport ingest_corpus(const std::vector<std::string>& words,
                           const IngestionConfig& cfg) {
  validate_config(cfg);
  if (words.empty()) throw EmptyInput("ingest_corpus: no words");

  TokenBucket bucket(cfg.rate_limit > 0 ? cfg.rate_limit : 1.0);
  std::vector<std::optional<WordImageSet>> results(words.size());
  std::vector<std::string> errors(words.size());
  parallel_for(words.size(), cfg.max_in_flight, [&](std::size_t i) {
    try {
      results[i] = ingest_word_impl(words[i], cfg, bucket);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  CorpusReport report;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (results[i]) {
      report.sets.push_back(std::move(*results[i]));
    } else {
      report.failures.push_back({words[i], errors[i]});
    }
  }
  return report;
}

std::vector<std::string> parse_json_lines(const std::string& body) {
  std::vector<std::string> urls;
  for (const std::string& line : split(body, '\n')) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    try {
      const json obj = json::parse(t);
      if (obj.is_object() && obj.contains("url") && obj["url"].is_string()) {
        urls.push_back(obj["url"].get<std::string>());
      }
    } catch (...) {
      // tolerate junk lines in fixtures
    }
  }
  return urls;
}

}  // namespace chromalex::ingestion
