#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fcntl.h>
#include <json.hpp>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "chromalex/cli.hpp"
#include "chromalex/embedding.hpp"
#include "chromalex/imaging.hpp"
#include "chromalex/store.hpp"
#include "chromalex/util.hpp"
#include "helpers.hpp"

using namespace chromalex;

namespace {

/// Redirects stdout to a file for the lifetime of the object.
struct CaptureStdout {
  int saved;
  explicit CaptureStdout(const std::filesystem::path& path) {
    std::fflush(stdout);
    saved = dup(fileno(stdout));
    const int fd =
        open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    dup2(fd, fileno(stdout));
    close(fd);
  }
  ~CaptureStdout() {
    std::fflush(stdout);
    dup2(saved, fileno(stdout));
    close(saved);
  }
};

int run_quiet(const std::vector<std::string>& args,
              const std::filesystem::path& stdout_file) {
  CaptureStdout capture(stdout_file);
  return run_cli(args);
}

/// Image cache with black/white/mixed words for embed runs.
std::filesystem::path make_image_cache(const std::string& tag) {
  const auto cache = testutil::fresh_dir("cli-cache-" + tag);
  const int n = imaging::kCanonicalSize;
  const auto black = testutil::solid_image(n, n, 0, 0, 0);
  const auto white = testutil::solid_image(n, n, 255, 255, 255);
  imaging::save_png(black, cache / "dark" / "000.png");
  imaging::save_png(black, cache / "dark" / "001.png");
  imaging::save_png(white, cache / "bright" / "000.png");
  imaging::save_png(white, cache / "bright" / "001.png");
  imaging::save_png(black, cache / "mixed" / "000.png");
  imaging::save_png(black, cache / "mixed" / "001.png");
  imaging::save_png(white, cache / "mixed" / "002.png");
  return cache;
}

std::filesystem::path write_words(const std::filesystem::path& dir,
                                  const std::string& content) {
  const auto path = dir / "words.txt";
  testutil::write_text(path, content);
  return path;
}

/// Parses a two-row CSV (header + data rows) into row maps.
std::vector<std::map<std::string, std::string>> read_csv(
    const std::filesystem::path& path) {
  const auto text = testutil::read_text(path);
  std::vector<std::vector<std::string>> rows;
  for (const auto& line : split(text, '\n')) {
    if (!line.empty()) rows.push_back(split(line, ','));
  }
  REQUIRE(!rows.empty());
  std::vector<std::map<std::string, std::string>> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    std::map<std::string, std::string> row;
    for (std::size_t c = 0; c < rows[0].size() && c < rows[r].size(); ++c) {
      row[rows[0][c]] = rows[r][c];
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

TEST_CASE("embed builds records that match hand-computed aggregates") {
  const auto cache = make_image_cache("embed");
  const auto out = testutil::fresh_dir("cli-embed-out");
  const auto words =
      write_words(out, "dark\nbright\nmixed\n# comment line\ndark\n");

  const int code = run_quiet({"embed", "--words", words.string(), "--cache",
                              cache.string(), "--out", out.string()},
                             out / "stdout.txt");
  REQUIRE(code == 0);

  const auto entries = store::load_embeddings(out / "embeddings.json");
  REQUIRE(entries.size() == 3);  // duplicate and comment lines ignored

  const auto& mixed = entries.at("mixed");
  CHECK(mixed.image_count == 3);
  // 2 black images (dark cell) + 1 white (bright cell)
  CHECK(mixed.jzazbz_dist[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(mixed.jzazbz_dist[5] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  REQUIRE(mixed.jzazbz_dist_std.has_value());
  CHECK((*mixed.jzazbz_dist_std)[1] ==
        doctest::Approx(std::sqrt(2.0) / 3.0).epsilon(1e-12));
  CHECK(mixed.rgb_vector[0] == doctest::Approx(85.0).epsilon(1e-12));
  // coordinate means go through float32 image storage, so the oracle value
  // is rounded to float before averaging
  const double white_jz_f32 = static_cast<float>(0.16655674104685406);
  CHECK(mixed.jzazbz_vector[0] ==
        doctest::Approx(white_jz_f32 / 3.0).epsilon(1e-12));
  CHECK(mixed.colorgram_path == "colorgrams/mixed.png");
  CHECK(std::filesystem::exists(out / "colorgrams" / "mixed.png"));
  CHECK(std::filesystem::exists(out / "run-manifest.json"));

  const auto manifest =
      nlohmann::json::parse(testutil::read_text(out / "run-manifest.json"));
  CHECK(manifest.contains("seed"));
  CHECK(manifest.contains("inputs"));
  CHECK(manifest["command"] == "embed");

  // a second run produces byte-identical embeddings
  const auto first = testutil::read_text(out / "embeddings.json");
  const auto out2 = testutil::fresh_dir("cli-embed-out2");
  REQUIRE(run_quiet({"embed", "--words", words.string(), "--cache",
                     cache.string(), "--out", out2.string()},
                    out2 / "stdout.txt") == 0);
  CHECK(testutil::read_text(out2 / "embeddings.json") == first);
}

TEST_CASE("embed --no-std omits the spread field") {
  const auto cache = make_image_cache("nostd");
  const auto out = testutil::fresh_dir("cli-nostd-out");
  const auto words = write_words(out, "dark\n");
  REQUIRE(run_quiet({"embed", "--words", words.string(), "--cache",
                     cache.string(), "--out", out.string(), "--no-std"},
                    out / "stdout.txt") == 0);
  const auto entries = store::load_embeddings(out / "embeddings.json");
  CHECK(!entries.at("dark").jzazbz_dist_std.has_value());
  CHECK(testutil::read_text(out / "embeddings.json").find("jzazbz-dist-std") ==
        std::string::npos);
}

TEST_CASE("embed fails with its own exit code when nothing embeds") {
  const auto empty_cache = testutil::fresh_dir("cli-embed-empty");
  const auto out = testutil::fresh_dir("cli-embed-empty-out");
  const auto words = write_words(out, "ghost\n");
  CHECK(run_quiet({"embed", "--words", words.string(), "--cache",
                   empty_cache.string(), "--out", out.string()},
                  out / "stdout.txt") == 3);
}

TEST_CASE("compare prints six decimal places and flags missing words") {
  const auto cache = make_image_cache("compare");
  const auto out = testutil::fresh_dir("cli-compare");
  const auto words = write_words(out, "dark\nbright\n");
  REQUIRE(run_quiet({"embed", "--words", words.string(), "--cache",
                     cache.string(), "--out", out.string()},
                    out / "stdout.txt") == 0);
  const auto emb = (out / "embeddings.json").string();

  REQUIRE(run_quiet({"compare", "--embeddings", emb, "dark", "dark"},
                    out / "self.txt") == 0);
  CHECK(testutil::read_text(out / "self.txt") == "0.000000\n");

  REQUIRE(run_quiet({"compare", "--embeddings", emb, "dark", "bright"},
                    out / "cross.txt") == 0);
  CHECK(testutil::read_text(out / "cross.txt") == "0.693147\n");

  // case-insensitive lookup
  REQUIRE(run_quiet({"compare", "--embeddings", emb, "DARK", "Bright"},
                    out / "upper.txt") == 0);
  CHECK(testutil::read_text(out / "upper.txt") == "0.693147\n");

  CHECK(run_quiet({"compare", "--embeddings", emb, "dark", "missing"},
                  out / "miss.txt") == 4);
}

TEST_CASE("bad flags and missing options exit with the config code") {
  const auto dir = testutil::fresh_dir("cli-config");
  CHECK(run_quiet({"compare", "--embeddings"}, dir / "a.txt") == 2);
  CHECK(run_quiet({"--definitely-not-a-flag"}, dir / "b.txt") == 2);
  CHECK(run_quiet({"embed", "--words", "x"}, dir / "c.txt") == 2);  // no --cache/--out
  CHECK(run_quiet({"--version"}, dir / "d.txt") == 0);
  CHECK(testutil::read_text(dir / "d.txt") == "0.1.0\n");
}

TEST_CASE("ingest in local mode writes the per-word report") {
  const auto root = testutil::fresh_dir("cli-ingest-root");
  const int n = 8;
  for (int i = 0; i < n; ++i) {
    char name[16];
    std::snprintf(name, sizeof(name), "%02d.png", i);
    imaging::save_png(testutil::solid_image(4, 4, 10 * i, 0, 0),
                      root / "pyramid" / name);
  }
  const auto out = testutil::fresh_dir("cli-ingest-out");
  const auto words = write_words(out, "pyramid\nabsent\n");

  const int code = run_quiet({"ingest", "--words", words.string(), "--mode",
                              "local", "--root", root.string(),
                              "--images-per-word", "10", "--out", out.string()},
                             out / "stdout.txt");
  REQUIRE(code == 0);
  const auto rows = read_csv(out / "ingest-report.csv");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].at("word") == "pyramid");
  CHECK(rows[0].at("obtained") == "8");
  CHECK(rows[0].at("shortfall") == "2");
  CHECK(rows[1].at("word") == "absent");
  CHECK(rows[1].at("obtained") == "0");
  CHECK(!rows[1].at("error").empty());
}

// ---------------------------------------------------------------------------
// analyze subcommands on synthetic stores

namespace {

embedding::WordColorEmbedding two_cell_record(const std::string& word, double t) {
  embedding::WordColorEmbedding rec;
  rec.word = word;
  rec.jzazbz_dist[0] = 1.0 - t;
  rec.jzazbz_dist[1] = t;
  rec.rgb_dist[0] = 1.0 - t;
  rec.rgb_dist[1] = t;
  rec.image_count = 1;
  return rec;
}

}  // namespace

TEST_CASE("planted linear concreteness-vs-divergence is recovered exactly") {
  // Nine words; a single comparison word anchors every pair, and each word's
  // concreteness is chosen so that summed concreteness is an exact affine
  // function of the pair's divergence. Bin means then stay on that line,
  // whatever the binning.
  const auto dir = testutil::fresh_dir("cli-conc");
  store::EmbeddingMap entries;
  std::vector<std::string> names;
  for (int i = 0; i < 9; ++i) {
    const std::string name = "w" + std::to_string(i);
    names.push_back(name);
    entries[name] = two_cell_record(name, 0.05 + 0.1 * i);
  }
  store::save_embeddings(dir / "embeddings.json", entries);

  // replicate the CLI's deterministic comparison-word draw for seed 42
  std::vector<std::string> pool(names.begin(), names.end());
  std::sort(pool.begin(), pool.end());
  Rng rng(42);
  rng.shuffle(pool);
  const std::string anchor = pool[0];

  std::string conc = "word,concreteness-mean,concreteness-sd\n";
  char line[128];
  const double anchor_conc = 1.0;
  for (const auto& name : names) {
    double value = anchor_conc;
    if (name != anchor) {
      const double js = embedding::js_divergence(entries.at(name).jzazbz_dist,
                                                 entries.at(anchor).jzazbz_dist);
      value = 3.0 + 2.0 * js - anchor_conc;  // sum = 3 + 2*js exactly
    }
    std::snprintf(line, sizeof(line), "%s,%.17g,0.1\n", name.c_str(), value);
    conc += line;
  }
  testutil::write_text(dir / "concreteness.csv", conc);

  const auto out = testutil::fresh_dir("cli-conc-out");
  const int code = run_quiet(
      {"--seed", "42", "analyze", "concreteness", "--embeddings",
       (dir / "embeddings.json").string(), "--concreteness",
       (dir / "concreteness.csv").string(), "--out", out.string(),
       "--comparison-words", "1", "--bins", "8"},
      out / "stdout.txt");
  REQUIRE(code == 0);

  const auto reg = read_csv(out / "regression.csv");
  REQUIRE(reg.size() == 2);
  CHECK(reg[0].at("model") == "linear");
  CHECK(std::stod(reg[0].at("r_squared")) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::stod(reg[0].at("c1")) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(std::stod(reg[0].at("c0")) == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(reg[1].at("model") == "poly3");

  const auto stats = read_csv(out / "stats.csv");
  REQUIRE(stats.size() == 1);
  CHECK(std::stod(stats[0].at("spearman_rho")) == doctest::Approx(1.0));
  CHECK(stats[0].at("joined_words") == "9");
  CHECK(std::filesystem::exists(out / "trend.csv"));
  CHECK(std::filesystem::exists(out / "trend.svg"));
  CHECK(testutil::read_text(out / "trend.svg").find("<svg") != std::string::npos);

  // reruns with the same seed are byte-identical
  const auto out2 = testutil::fresh_dir("cli-conc-out2");
  REQUIRE(run_quiet({"--seed", "42", "analyze", "concreteness", "--embeddings",
                     (dir / "embeddings.json").string(), "--concreteness",
                     (dir / "concreteness.csv").string(), "--out", out2.string(),
                     "--comparison-words", "1", "--bins", "8"},
                    out2 / "stdout.txt") == 0);
  CHECK(testutil::read_text(out2 / "trend.csv") ==
        testutil::read_text(out / "trend.csv"));
  CHECK(testutil::read_text(out2 / "stats.csv") ==
        testutil::read_text(out / "stats.csv"));
}

TEST_CASE("analyze exits with the join code when stores share no words") {
  const auto dir = testutil::fresh_dir("cli-conc-nojoin");
  store::EmbeddingMap entries;
  entries["alpha"] = two_cell_record("alpha", 0.25);
  store::save_embeddings(dir / "embeddings.json", entries);
  testutil::write_text(dir / "concreteness.csv",
                       "word,concreteness-mean,concreteness-sd\nzzz,1,0.1\n");
  const auto out = testutil::fresh_dir("cli-conc-nojoin-out");
  CHECK(run_quiet({"analyze", "concreteness", "--embeddings",
                   (dir / "embeddings.json").string(), "--concreteness",
                   (dir / "concreteness.csv").string(), "--out", out.string()},
                  out / "stdout.txt") == 5);
}

TEST_CASE("similarity trend pairs textual and visual similarity") {
  // words spread along a color axis; text vectors rotate in step, so close
  // colors mean close vectors: divergence must rise as cosine falls
  const auto dir = testutil::fresh_dir("cli-sim");
  store::EmbeddingMap entries;
  std::string vectors;
  for (int i = 0; i < 8; ++i) {
    const std::string name = "w" + std::to_string(i);
    entries[name] = two_cell_record(name, 0.05 + 0.1 * i);
    const double theta = 0.15 * i;
    char line[96];
    std::snprintf(line, sizeof(line), "%s %.17g %.17g\n", name.c_str(),
                  std::cos(theta), std::sin(theta));
    vectors += line;
  }
  store::save_embeddings(dir / "embeddings.json", entries);
  testutil::write_text(dir / "vectors.txt", vectors);

  const auto out = testutil::fresh_dir("cli-sim-out");
  const int code = run_quiet(
      {"analyze", "similarity-trend", "--embeddings",
       (dir / "embeddings.json").string(), "--vectors",
       (dir / "vectors.txt").string(), "--out", out.string(), "--bins", "7"},
      out / "stdout.txt");
  REQUIRE(code == 0);

  const auto stats = read_csv(out / "stats.csv");
  REQUIRE(stats.size() == 1);
  // ordered most- to least-similar in text, divergence increases
  CHECK(std::stod(stats[0].at("jt_p_one_sided")) < 0.01);
  CHECK(std::stod(stats[0].at("spearman_rho")) < -0.9);
  CHECK(std::filesystem::exists(out / "trend.csv"));
  CHECK(std::filesystem::exists(out / "trend.svg"));
}

TEST_CASE("metaphor analyze classifies the separable fixture perfectly") {
  const auto dir = testutil::fresh_dir("cli-meta");
  store::EmbeddingMap entries;
  std::string vectors;
  std::string pairs = "adjective,noun,label\n";
  for (int i = 0; i < 30; ++i) {
    const auto add = [&](const std::string& word, int bin, double vx, double vy) {
      embedding::WordColorEmbedding rec;
      rec.word = word;
      rec.jzazbz_dist[bin] = 1.0;
      rec.rgb_dist[bin] = 1.0;
      rec.image_count = 1;
      entries[word] = rec;
      char line[96];
      std::snprintf(line, sizeof(line), "%s %.17g %.17g %g %g\n", word.c_str(),
                    vx, vy, 0.01 * (i % 5), 0.0);
      vectors += line;
    };
    const std::string suffix = std::to_string(i);
    add("madj" + suffix, 0, 1.0, 0.0);
    add("mnoun" + suffix, 0, 0.0, 0.0);
    add("ladj" + suffix, 0, 0.0, 1.0);
    add("lnoun" + suffix, 1, 0.0, 0.0);
    pairs += "madj" + suffix + ",mnoun" + suffix + ",metaphorical\n";
    pairs += "ladj" + suffix + ",lnoun" + suffix + ",literal\n";
  }
  store::save_embeddings(dir / "embeddings.json", entries);
  testutil::write_text(dir / "vectors.txt", vectors);
  testutil::write_text(dir / "pairs.csv", pairs);

  const auto out = testutil::fresh_dir("cli-meta-out");
  const int code = run_quiet(
      {"--seed", "42", "analyze", "metaphor", "--embeddings",
       (dir / "embeddings.json").string(), "--vectors",
       (dir / "vectors.txt").string(), "--pairs", (dir / "pairs.csv").string(),
       "--out", out.string(), "--dims", "2,4"},
      out / "stdout.txt");
  REQUIRE(code == 0);

  const auto rows = read_csv(out / "classifier.csv");
  REQUIRE(rows.size() == 4);  // 2 feature families x 2 dims
  for (const auto& row : rows) {
    CHECK(std::stod(row.at("test_accuracy")) == doctest::Approx(1.0));
    CHECK(row.at("seed") == "42");
  }
  CHECK(rows[0].at("embedding") == "color");
  CHECK(rows[2].at("embedding") == "text");

  const auto stats = read_csv(out / "stats.csv");
  REQUIRE(stats.size() == 1);
  CHECK(stats[0].at("joined_pairs") == "60");
  CHECK(std::stod(stats[0].at("wilcoxon_p_two_sided")) < 0.01);
  // literal pairs straddle cells, metaphorical pairs share one
  CHECK(std::stod(stats[0].at("literal_mean_js")) >
        std::stod(stats[0].at("metaphorical_mean_js")));
  CHECK(std::filesystem::exists(out / "accuracy.svg"));
  CHECK(std::filesystem::exists(out / "groups.svg"));

  // rerun: identical bytes
  const auto out2 = testutil::fresh_dir("cli-meta-out2");
  REQUIRE(run_quiet({"--seed", "42", "analyze", "metaphor", "--embeddings",
                     (dir / "embeddings.json").string(), "--vectors",
                     (dir / "vectors.txt").string(), "--pairs",
                     (dir / "pairs.csv").string(), "--out", out2.string(),
                     "--dims", "2,4"},
                    out2 / "stdout.txt") == 0);
  CHECK(testutil::read_text(out2 / "classifier.csv") ==
        testutil::read_text(out / "classifier.csv"));

  // too few pairs joins below the minimum and exits accordingly
  testutil::write_text(dir / "few.csv",
                       "adjective,noun,label\nmadj1,mnoun1,metaphorical\n");
  const auto out3 = testutil::fresh_dir("cli-meta-out3");
  CHECK(run_quiet({"analyze", "metaphor", "--embeddings",
                   (dir / "embeddings.json").string(), "--vectors",
                   (dir / "vectors.txt").string(), "--pairs",
                   (dir / "few.csv").string(), "--out", out3.string()},
                  out3 / "stdout.txt") == 5);
}
