#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <chrono>
#include <string>
#include <thread>
#include <vector>

#include "chromalex/errors.hpp"
#include "chromalex/imaging.hpp"
#include "chromalex/ingestion.hpp"
#include "helpers.hpp"

using namespace chromalex;
using ingestion::IngestionConfig;
using ingestion::Mode;

namespace {

void write_solid_png(const std::filesystem::path& path, int r, int g, int b) {
  imaging::save_png(testutil::solid_image(4, 4, r, g, b), path);
}

/// Local corpus: <root>/<word>/ with n solid images each.
std::filesystem::path make_local_corpus(
    const std::string& tag, const std::vector<std::pair<std::string, int>>& words) {
  const auto root = testutil::fresh_dir("ingest-" + tag);
  for (const auto& [word, n] : words) {
    for (int i = 0; i < n; ++i) {
      char name[16];
      std::snprintf(name, sizeof(name), "%02d.png", i);
      write_solid_png(root / word / name, (i * 37) % 256, 64, 128);
    }
  }
  return root;
}

/// Stub image-search service: /search?q=w lists /img/<k>.png results.
struct StubServer {
  httplib::Server server;
  std::thread thread;
  int port = 0;
  std::atomic<int> search_hits{0};
  std::atomic<int> image_hits{0};
  int results_per_query = 3;
  bool relative_urls = false;

  StubServer() {
    server.Get("/search", [this](const httplib::Request& req, httplib::Response& res) {
      ++search_hits;
      std::string body;
      for (int i = 0; i < results_per_query; ++i) {
        const std::string prefix =
            relative_urls ? "" : "http://127.0.0.1:" + std::to_string(port);
        body += "{\"url\": \"" + prefix + "/img/" + std::to_string(i) +
                ".png\", \"q\": \"" + req.get_param_value("q") + "\"}\n";
      }
      res.set_content(body, "application/json");
    });
    server.Get(R"(/img/(\d+)\.png)", [this](const httplib::Request& req,
                                            httplib::Response& res) {
      ++image_hits;
      const int k = std::stoi(req.matches[1]);
      const auto png =
          imaging::encode_png(testutil::solid_image(4, 4, (k * 50) % 256, 0, 0));
      res.set_content(std::string(png.begin(), png.end()), "image/png");
    });
    port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }

  ~StubServer() {
    server.stop();
    thread.join();
  }

  IngestionConfig config(const std::filesystem::path& cache_dir,
                         int images_per_word) const {
    IngestionConfig cfg;
    cfg.mode = Mode::kHttpSearch;
    cfg.root_or_endpoint =
        "http://127.0.0.1:" + std::to_string(port) + "/search?q={query}";
    cfg.extra_query.clear();
    cfg.images_per_word = images_per_word;
    cfg.rate_limit = 1000.0;  // effectively unthrottled unless a test lowers it
    cfg.cache_dir = cache_dir;
    cfg.result_parser = ingestion::parse_json_lines;
    return cfg;
  }
};

}  // namespace

TEST_CASE("local mode lists images in filename order and reports shortfall") {
  const auto root = make_local_corpus("local", {{"pyramid", 5}});
  IngestionConfig cfg;
  cfg.mode = Mode::kLocalDir;
  cfg.root_or_endpoint = root.string();
  cfg.images_per_word = 100;

  const auto set = ingestion::ingest_word("pyramid", cfg);
  CHECK(set.word == "pyramid");
  REQUIRE(set.image_paths.size() == 5);
  CHECK(set.shortfall == 95);
  CHECK(!set.from_cache);
  for (std::size_t i = 1; i < set.image_paths.size(); ++i) {
    CHECK(set.image_paths[i - 1].filename().string() <
          set.image_paths[i].filename().string());
  }
  // files are referenced in place, not copied
  CHECK(set.image_paths[0].string().find(root.string()) == 0);
}

TEST_CASE("local mode truncates to the requested count") {
  const auto root = make_local_corpus("local-trunc", {{"lime", 6}});
  IngestionConfig cfg;
  cfg.mode = Mode::kLocalDir;
  cfg.root_or_endpoint = root.string();
  cfg.images_per_word = 4;
  const auto set = ingestion::ingest_word("lime", cfg);
  CHECK(set.image_paths.size() == 4);
  CHECK(set.shortfall == 0);
}

TEST_CASE("a word without images is NotFound") {
  const auto root = make_local_corpus("local-missing", {{"present", 2}});
  IngestionConfig cfg;
  cfg.mode = Mode::kLocalDir;
  cfg.root_or_endpoint = root.string();
  CHECK_THROWS_AS(ingestion::ingest_word("absent", cfg), NotFound);
}

TEST_CASE("corpus ingestion isolates per-word failures") {
  const auto root = make_local_corpus("local-corpus", {{"alpha", 2}, {"gamma", 3}});
  IngestionConfig cfg;
  cfg.mode = Mode::kLocalDir;
  cfg.root_or_endpoint = root.string();
  cfg.images_per_word = 10;

  const auto report = ingestion::ingest_corpus({"alpha", "beta", "gamma"}, cfg);
  REQUIRE(report.sets.size() == 2);
  CHECK(report.sets[0].word == "alpha");
  CHECK(report.sets[1].word == "gamma");
  REQUIRE(report.failures.size() == 1);
  CHECK(report.failures[0].word == "beta");
  CHECK(!report.failures[0].error.empty());
}

TEST_CASE("config validation rejects incomplete setups") {
  IngestionConfig cfg;
  cfg.mode = Mode::kLocalDir;
  CHECK_THROWS_AS(ingestion::ingest_word("x", cfg), ConfigError);  // no root

  IngestionConfig http;
  http.mode = Mode::kHttpSearch;
  http.root_or_endpoint = "http://h/search";  // missing {query}
  http.cache_dir = testutil::fresh_dir("ingest-valcfg");
  http.result_parser = ingestion::parse_json_lines;
  CHECK_THROWS_AS(ingestion::ingest_word("x", http), ConfigError);

  // with a valid config, an empty word list is its own error
  IngestionConfig ok;
  ok.mode = Mode::kLocalDir;
  ok.root_or_endpoint = testutil::fresh_dir("ingest-valroot").string();
  CHECK_THROWS_AS(ingestion::ingest_corpus({}, ok), EmptyInput);
}

TEST_CASE("json-lines parser pulls urls and tolerates junk") {
  const auto urls = ingestion::parse_json_lines(
      "{\"url\": \"http://a/1.png\"}\n"
      "not json at all\n"
      "{\"other\": 1}\n"
      "{\"url\": \"http://a/2.jpg\"}\n");
  REQUIRE(urls.size() == 2);
  CHECK(urls[0] == "http://a/1.png");
  CHECK(urls[1] == "http://a/2.jpg");
}

TEST_CASE("http ingestion downloads ranked files and caches them") {
  StubServer stub;
  const auto cache = testutil::fresh_dir("ingest-http");
  const auto cfg = stub.config(cache, 3);

  const auto set = ingestion::ingest_word("lime", cfg);
  REQUIRE(set.image_paths.size() == 3);
  CHECK(set.shortfall == 0);
  CHECK(!set.from_cache);
  CHECK(set.image_paths[0].filename().string() == "000.png");
  CHECK(set.image_paths[2].filename().string() == "002.png");
  CHECK(std::filesystem::exists(cache / "lime" / "manifest.json"));
  CHECK(stub.search_hits == 1);
  CHECK(stub.image_hits == 3);

  // the downloads are decodable images
  const auto img = imaging::load_image_file(set.image_paths[1]);
  CHECK(img.at(0, 0, 0) == 50.0f);

  // second run is served from cache with zero network traffic
  const auto again = ingestion::ingest_word("lime", cfg);
  CHECK(again.from_cache);
  REQUIRE(again.image_paths.size() == 3);
  CHECK(stub.search_hits == 1);
  CHECK(stub.image_hits == 3);

  // asking for fewer images also hits the cache
  auto fewer = cfg;
  fewer.images_per_word = 2;
  const auto small = ingestion::ingest_word("lime", fewer);
  CHECK(small.from_cache);
  CHECK(small.image_paths.size() == 2);
  CHECK(stub.search_hits == 1);

  // asking for more than was ever requested forces a refetch
  auto more = cfg;
  more.images_per_word = 5;
  const auto big = ingestion::ingest_word("lime", more);
  CHECK(!big.from_cache);
  CHECK(big.image_paths.size() == 3);  // stub only serves 3 results
  CHECK(big.shortfall == 2);
  CHECK(stub.search_hits == 2);
}

TEST_CASE("relative result urls resolve against the search host") {
  StubServer stub;
  stub.relative_urls = true;
  const auto cache = testutil::fresh_dir("ingest-http-rel");
  const auto set = ingestion::ingest_word("sky", stub.config(cache, 2));
  CHECK(set.image_paths.size() == 2);
}

TEST_CASE("the rate limiter spaces out request bursts") {
  StubServer stub;
  stub.results_per_query = 9;
  const auto cache = testutil::fresh_dir("ingest-rate");
  auto cfg = stub.config(cache, 9);
  cfg.rate_limit = 2.0;  // 10 requests (search + 9 images) at 2/s

  const auto start = std::chrono::steady_clock::now();
  const auto set = ingestion::ingest_word("slow", cfg);
  const auto elapsed = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  CHECK(set.image_paths.size() == 9);
  CHECK(stub.image_hits == 9);
  CHECK(elapsed >= 4.4);
}
