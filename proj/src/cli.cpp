#include "chromalex/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <optional>

#include <CLI11.hpp>

#include "chromalex/analysis.hpp"
#include "chromalex/embedding.hpp"
#include "chromalex/errors.hpp"
#include "chromalex/imaging.hpp"
#include "chromalex/ingestion.hpp"
#include "chromalex/manifest.hpp"
#include "chromalex/pipeline.hpp"
#include "chromalex/store.hpp"
#include "chromalex/svg.hpp"
#include "chromalex/util.hpp"
#include "chromalex/version.hpp"

namespace chromalex {
namespace {

constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitEmbed = 3;
constexpr int kExitLookup = 4;
constexpr int kExitJoin = 5;

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

using CsvRow = std::vector<std::string>;

void write_csv(const std::filesystem::path& path, const CsvRow& header,
               const std::vector<CsvRow>& rows) {
  std::string out;
  auto append_row = [&out](const CsvRow& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(',');
      out += row[i];
    }
    out.push_back('\n');
  };
  append_row(header);
  for (const CsvRow& row : rows) append_row(row);
  write_file_text(path, out);
}

std::vector<std::string> read_word_list(const std::filesystem::path& path) {
  std::vector<std::string> words;
  for (const std::string& raw : split(read_file_text(path), '\n')) {
    std::string line = trim(raw);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    const std::string word = to_lower(line);
    if (std::find(words.begin(), words.end(), word) == words.end()) {
      words.push_back(word);
    }
  }
  if (words.empty()) throw ConfigError("no words in " + path.string());
  return words;
}

std::vector<int> parse_dims(const std::string& spec) {
  std::vector<int> dims;
  for (const std::string& tok : split(spec, ',')) {
    const std::string t = trim(tok);
    if (t.empty()) continue;
    try {
      dims.push_back(std::stoi(t));
    } catch (...) {
      throw ConfigError("bad dimension list: " + spec);
    }
    if (dims.back() < 1) throw ConfigError("dimensions must be >= 1");
  }
  if (dims.empty()) throw ConfigError("empty dimension list");
  return dims;
}

/// Words present in both maps, sorted; count of embedding words dropped.
template <typename MapB>
std::vector<std::string> join_words(const store::EmbeddingMap& emb, const MapB& other,
                                    int* dropped) {
  std::vector<std::string> words;
  for (const auto& [word, rec] : emb) {
    if (other.count(word)) words.push_back(word);
  }
  if (dropped) *dropped = static_cast<int>(emb.size() - words.size());
  return words;
}

/// Pair sample: every joined word against a seed-sampled comparison
/// subset, skipping self-pairs.
struct PairSample {
  std::vector<double> js;
  std::vector<double> other;  // concreteness sum or cosine similarity
};

std::vector<std::string> sample_words(const std::vector<std::string>& words,
                                      int count, Rng& rng) {
  std::vector<std::string> pool(words);
  rng.shuffle(pool);
  if (static_cast<int>(pool.size()) > count) {
    pool.resize(static_cast<std::size_t>(count));
  }
  std::sort(pool.begin(), pool.end());
  return pool;
}

struct IngestArgs {
  std::string words_file;
  std::string mode = "local";
  std::string root;
  std::string endpoint;
  int images_per_word = 100;
  double rate_limit = 2.0;
  std::string cache;
  double timeout_s = 10.0;
  std::string out;
  int threads = 1;
};

int run_ingest(const IngestArgs& args, std::uint64_t seed) {
  const auto words = read_word_list(args.words_file);

  ingestion::IngestionConfig cfg;
  if (args.mode == "local") {
    cfg.mode = ingestion::Mode::kLocalDir;
    if (args.root.empty()) throw ConfigError("--root is required in local mode");
    cfg.root_or_endpoint = args.root;
  } else if (args.mode == "http") {
    cfg.mode = ingestion::Mode::kHttpSearch;
    if (args.endpoint.empty()) throw ConfigError("--endpoint is required in http mode");
    cfg.root_or_endpoint = args.endpoint;
    cfg.result_parser = ingestion::parse_json_lines;
  } else {
    throw ConfigError("unknown mode: " + args.mode);
  }
  cfg.images_per_word = args.images_per_word;
  cfg.rate_limit = args.rate_limit;
  cfg.cache_dir = args.cache;
  cfg.timeout_s = args.timeout_s;
  cfg.max_in_flight = args.threads;

  const ingestion::CorpusReport report = ingestion::ingest_corpus(words, cfg);

  std::vector<CsvRow> rows;
  std::printf("%-20s %8s %9s\n", "word", "obtained", "shortfall");
  for (const auto& set : report.sets) {
    std::printf("%-20s %8zu %9d\n", set.word.c_str(), set.image_paths.size(),
                set.shortfall);
    rows.push_back({set.word, std::to_string(set.image_paths.size()),
                    std::to_string(set.shortfall), ""});
  }
  for (const auto& failure : report.failures) {
    std::printf("%-20s %8s %9s  %s\n", failure.word.c_str(), "-", "-",
                failure.error.c_str());
    rows.push_back({failure.word, "0", std::to_string(cfg.images_per_word),
                    failure.error});
  }

  if (!args.out.empty()) {
    std::filesystem::create_directories(args.out);
    write_csv(std::filesystem::path(args.out) / "ingest-report.csv",
              {"word", "obtained", "shortfall", "error"}, rows);
    RunManifest manifest;
    manifest.command = "ingest";
    manifest.config = {{"mode", args.mode},
                       {"images-per-word", std::to_string(cfg.images_per_word)},
                       {"rate-limit", real(cfg.rate_limit)},
                       {"source", cfg.root_or_endpoint}};
    manifest.seed = seed;
    manifest.inputs = {args.words_file};
    write_run_manifest(args.out, manifest);
  }

  return report.sets.empty() ? kExitError : 0;
}

struct EmbedArgs {
  std::string words_file;
  std::string cache;
  std::string out;
  bool with_std = true;
  int threads = 1;
};

int run_embed(const EmbedArgs& args, std::uint64_t seed) {
  const auto words = read_word_list(args.words_file);
  if (args.cache.empty()) throw ConfigError("--cache is required");
  if (args.out.empty()) throw ConfigError("--out is required");

  const std::filesystem::path out_dir(args.out);
  const std::filesystem::path gram_dir = out_dir / "colorgrams";
  std::filesystem::create_directories(gram_dir);

  pipeline::EmbedOptions opts;
  opts.include_std = args.with_std;

  std::vector<std::optional<embedding::WordColorEmbedding>> records(words.size());
  std::vector<std::string> failures(words.size());
  std::mutex io_mu;
  parallel_for(words.size(), args.threads, [&](std::size_t i) {
    const std::string& word = words[i];
    try {
      const auto files =
          pipeline::list_image_files(std::filesystem::path(args.cache) / word);
      if (files.empty()) throw NotFound("no cached images for '" + word + "'");
      pipeline::WordEmbeddingResult result = pipeline::embed_word(word, files, opts);
      const std::string gram_name = word + ".png";
      result.record.colorgram_path = "colorgrams/" + gram_name;
      imaging::save_png(result.colorgram.image, gram_dir / gram_name);
      records[i] = std::move(result.record);
      if (result.decode_failures > 0 || result.out_of_range_pixels > 0) {
        std::scoped_lock lock(io_mu);
        std::fprintf(stderr, "%s: %d undecodable images, %llu out-of-range pixels\n",
                     word.c_str(), result.decode_failures,
                     static_cast<unsigned long long>(result.out_of_range_pixels));
      }
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });

  store::EmbeddingMap entries;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (records[i]) {
      entries[words[i]] = std::move(*records[i]);
    } else {
      std::fprintf(stderr, "skipping %s: %s\n", words[i].c_str(), failures[i].c_str());
    }
  }
  if (entries.empty()) {
    std::fprintf(stderr, "no words produced usable embeddings\n");
    return kExitEmbed;
  }

  store::save_embeddings(out_dir / "embeddings.json", entries);

  RunManifest manifest;
  manifest.command = "embed";
  manifest.config = {{"cache", args.cache},
                     {"std", args.with_std ? "true" : "false"},
                     {"words", std::to_string(entries.size())}};
  manifest.seed = seed;
  manifest.inputs = {args.words_file};
  write_run_manifest(out_dir, manifest);

  std::printf("embedded %zu/%zu words -> %s\n", entries.size(), words.size(),
              (out_dir / "embeddings.json").string().c_str());
  return 0;
}

struct CompareArgs {
  std::string embeddings;
  std::string word_a;
  std::string word_b;
};

int run_compare(const CompareArgs& args) {
  const auto entries = store::load_embeddings(args.embeddings);
  for (const std::string& word : {to_lower(args.word_a), to_lower(args.word_b)}) {
    if (!entries.count(word)) {
      std::fprintf(stderr, "word not found: %s\n", word.c_str());
      return kExitLookup;
    }
  }
  const double js = embedding::js_divergence(entries.at(to_lower(args.word_a)).jzazbz_dist,
                                             entries.at(to_lower(args.word_b)).jzazbz_dist);
  std::printf("%.6f\n", js);
  return 0;
}

struct AnalyzeArgs {
  std::string embeddings;
  std::string concreteness;
  std::string vectors;
  std::string pairs_file;
  std::string out;
  int comparison_words = 500;
  int bins = 40;
  std::string dims = "2,4,8,16";
  int threads = 1;
};

int run_analyze_concreteness(const AnalyzeArgs& args, std::uint64_t seed) {
  if (args.out.empty()) throw ConfigError("--out is required");
  const auto embeddings = store::load_embeddings(args.embeddings);
  const auto table = store::load_concreteness(args.concreteness);

  int dropped = 0;
  const auto words = join_words(embeddings, table.entries, &dropped);
  if (words.size() < 2) {
    std::fprintf(stderr, "only %zu words join the concreteness table\n", words.size());
    return kExitJoin;
  }

  Rng rng(seed);
  const auto comparison = sample_words(words, args.comparison_words, rng);

  PairSample sample;
  for (const std::string& w : words) {
    const auto& rec_w = embeddings.at(w);
    const double conc_w = table.entries.at(w).mean;
    for (const std::string& c : comparison) {
      if (c == w) continue;
      const auto& rec_c = embeddings.at(c);
      sample.js.push_back(embedding::js_divergence(rec_w.jzazbz_dist, rec_c.jzazbz_dist));
      sample.other.push_back(conc_w + table.entries.at(c).mean);
    }
  }
  if (sample.js.size() < static_cast<std::size_t>(args.bins)) {
    std::fprintf(stderr, "%zu pairs is fewer than %d bins\n", sample.js.size(), args.bins);
    return kExitJoin;
  }

  // equal-count bins of summed concreteness; per-bin mean divergence
  const auto trend = analysis::binned_trend(sample.other, sample.js, args.bins);

  std::vector<double> bin_conc, bin_js;
  std::vector<CsvRow> trend_rows;
  for (std::size_t b = 0; b < trend.size(); ++b) {
    bin_conc.push_back(trend[b].mean_x);
    bin_js.push_back(trend[b].mean_y);
    trend_rows.push_back({std::to_string(b), real(trend[b].mean_x),
                          real(trend[b].mean_y), std::to_string(trend[b].count)});
  }

  const auto linear =
      analysis::fit_regression(bin_js, bin_conc, analysis::ModelKind::kLinear);
  const auto poly3 =
      analysis::fit_regression(bin_js, bin_conc, analysis::ModelKind::kPoly3);
  const auto [delta_lnl, delta_bic] = analysis::compare_models(poly3, linear);
  const double rho = analysis::spearman_rho(bin_conc, bin_js);

  const std::filesystem::path out_dir(args.out);
  std::filesystem::create_directories(out_dir);
  write_csv(out_dir / "trend.csv",
            {"bin", "mean_concreteness_sum", "mean_js_divergence", "count"}, trend_rows);

  std::vector<CsvRow> reg_rows;
  for (const auto* rep : {&linear, &poly3}) {
    CsvRow row{rep->kind == analysis::ModelKind::kLinear ? "linear" : "poly3"};
    for (int c = 0; c < 4; ++c) {
      row.push_back(c < static_cast<int>(rep->coefficients.size())
                        ? real(rep->coefficients[static_cast<std::size_t>(c)])
                        : "");
    }
    row.push_back(real(rep->r_squared));
    row.push_back(real(rep->log_likelihood));
    row.push_back(real(rep->bic));
    row.push_back(std::to_string(rep->n));
    reg_rows.push_back(std::move(row));
  }
  write_csv(out_dir / "regression.csv",
            {"model", "c0", "c1", "c2", "c3", "r_squared", "log_likelihood", "bic", "n"},
            reg_rows);

  write_csv(out_dir / "stats.csv",
            {"spearman_rho", "delta_lnl_poly3_minus_linear",
             "delta_bic_poly3_minus_linear", "joined_words", "dropped_words", "pairs"},
            {{real(rho), real(delta_lnl), real(delta_bic),
              std::to_string(words.size()), std::to_string(dropped),
              std::to_string(sample.js.size())}});

  svg::Series series;
  series.label = "binned mean";
  series.x = bin_conc;
  series.y = bin_js;
  write_file_text(out_dir / "trend.svg",
                  svg::line_chart("Color similarity vs. summed concreteness",
                                  "summed concreteness (binned)",
                                  "JS divergence (lower = more similar)", {series}));

  RunManifest manifest;
  manifest.command = "analyze concreteness";
  manifest.config = {{"bins", std::to_string(args.bins)},
                     {"comparison-words", std::to_string(args.comparison_words)}};
  manifest.seed = seed;
  manifest.inputs = {args.embeddings, args.concreteness};
  write_run_manifest(out_dir, manifest);

  std::printf("linear r_squared %.6f, poly3 r_squared %.6f, spearman %.4f\n",
              linear.r_squared, poly3.r_squared, rho);
  return 0;
}

int run_analyze_similarity(const AnalyzeArgs& args, std::uint64_t seed) {
  if (args.out.empty()) throw ConfigError("--out is required");
  const auto embeddings = store::load_embeddings(args.embeddings);
  const auto table = store::load_text_vectors(args.vectors);

  int dropped = 0;
  const auto words = join_words(embeddings, table.vectors, &dropped);
  if (words.size() < 2) {
    std::fprintf(stderr, "only %zu words join the vector table\n", words.size());
    return kExitJoin;
  }

  Rng rng(seed);
  const auto comparison = sample_words(words, args.comparison_words, rng);

  PairSample sample;
  for (const std::string& w : words) {
    const auto& rec_w = embeddings.at(w);
    const auto& vec_w = table.vectors.at(w);
    for (const std::string& c : comparison) {
      if (c == w) continue;
      sample.js.push_back(
          embedding::js_divergence(rec_w.jzazbz_dist, embeddings.at(c).jzazbz_dist));
      sample.other.push_back(embedding::cosine_similarity(vec_w, table.vectors.at(c)));
    }
  }
  if (sample.js.size() < static_cast<std::size_t>(args.bins)) {
    std::fprintf(stderr, "%zu pairs is fewer than %d bins\n", sample.js.size(), args.bins);
    return kExitJoin;
  }

  const auto trend = analysis::binned_trend(sample.other, sample.js, args.bins);

  // the same equal-count split, kept as raw per-bin groups for the trend
  // test; groups run from most to least text-similar
  std::vector<std::size_t> order(sample.other.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sample.other[a] < sample.other[b];
  });
  const std::size_t n = order.size();
  const std::size_t base = n / static_cast<std::size_t>(args.bins);
  const std::size_t rem = n % static_cast<std::size_t>(args.bins);
  std::vector<std::vector<double>> groups(static_cast<std::size_t>(args.bins));
  std::size_t pos = 0;
  for (std::size_t b = 0; b < groups.size(); ++b) {
    const std::size_t size = base + (b < rem ? 1 : 0);
    for (std::size_t k = 0; k < size; ++k, ++pos) {
      groups[b].push_back(sample.js[order[pos]]);
    }
  }
  std::reverse(groups.begin(), groups.end());
  const auto jt = analysis::jonckheere_terpstra(groups);

  std::vector<double> bin_cos, bin_js;
  std::vector<CsvRow> trend_rows;
  for (std::size_t b = 0; b < trend.size(); ++b) {
    bin_cos.push_back(trend[b].mean_x);
    bin_js.push_back(trend[b].mean_y);
    trend_rows.push_back({std::to_string(b), real(trend[b].mean_x),
                          real(trend[b].mean_y), std::to_string(trend[b].count)});
  }

  const std::filesystem::path out_dir(args.out);
  std::filesystem::create_directories(out_dir);
  write_csv(out_dir / "trend.csv",
            {"bin", "mean_cosine_similarity", "mean_js_divergence", "count"}, trend_rows);
  write_csv(out_dir / "stats.csv",
            {"jt_statistic", "jt_p_one_sided", "spearman_rho", "joined_words",
             "dropped_words", "pairs"},
            {{real(jt.statistic), real(jt.p_value),
              real(analysis::spearman_rho(bin_cos, bin_js)),
              std::to_string(words.size()), std::to_string(dropped),
              std::to_string(sample.js.size())}});

  svg::Series series;
  series.label = "binned mean";
  series.x = bin_cos;
  series.y = bin_js;
  write_file_text(out_dir / "trend.svg",
                  svg::line_chart("Color similarity vs. text similarity",
                                  "cosine similarity (binned)",
                                  "JS divergence (lower = more similar)", {series}));

  RunManifest manifest;
  manifest.command = "analyze similarity-trend";
  manifest.config = {{"bins", std::to_string(args.bins)},
                     {"comparison-words", std::to_string(args.comparison_words)}};
  manifest.seed = seed;
  manifest.inputs = {args.embeddings, args.vectors};
  write_run_manifest(out_dir, manifest);

  std::printf("jt %.1f (p %.3g) over %d bins\n", jt.statistic, jt.p_value, args.bins);
  return 0;
}

int run_analyze_metaphor(const AnalyzeArgs& args, std::uint64_t seed) {
  if (args.out.empty()) throw ConfigError("--out is required");
  const auto embeddings = store::load_embeddings(args.embeddings);
  const auto vectors = store::load_text_vectors(args.vectors);
  const auto pairs = analysis::load_labeled_pairs(args.pairs_file);
  const auto dims = parse_dims(args.dims);

  const auto result =
      analysis::metaphor_pipeline(pairs, embeddings, vectors, dims, seed);

  const std::filesystem::path out_dir(args.out);
  std::filesystem::create_directories(out_dir);

  std::vector<CsvRow> rows;
  svg::Series color_series{"color", {}, {}};
  svg::Series text_series{"text", {}, {}};
  for (const auto& rep : result.reports) {
    rows.push_back({rep.embedding_name, std::to_string(rep.pca_dims),
                    real(rep.train_accuracy), real(rep.test_accuracy),
                    std::to_string(rep.seed)});
    auto& series = rep.embedding_name == "color" ? color_series : text_series;
    series.x.push_back(rep.pca_dims);
    series.y.push_back(rep.test_accuracy);
  }
  write_csv(out_dir / "classifier.csv",
            {"embedding", "pca_dims", "train_accuracy", "test_accuracy", "seed"}, rows);
  write_file_text(out_dir / "accuracy.svg",
                  svg::line_chart("Metaphor classification accuracy",
                                  "PCA dimensions", "test accuracy",
                                  {color_series, text_series}));

  auto mean_sem = [](const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sem = v.size() > 1
                           ? std::sqrt(ss / static_cast<double>(v.size() - 1)) /
                                 std::sqrt(static_cast<double>(v.size()))
                           : 0.0;
    return std::pair<double, double>(mean, sem);
  };
  const auto [lit_mean, lit_sem] = mean_sem(result.literal_js);
  const auto [met_mean, met_sem] = mean_sem(result.metaphorical_js);
  const auto wilcoxon =
      analysis::wilcoxon_rank_sum(result.literal_js, result.metaphorical_js);

  write_csv(out_dir / "stats.csv",
            {"literal_n", "literal_mean_js", "metaphorical_n", "metaphorical_mean_js",
             "wilcoxon_u", "wilcoxon_p_two_sided", "joined_pairs", "dropped_pairs"},
            {{std::to_string(result.literal_js.size()), real(lit_mean),
              std::to_string(result.metaphorical_js.size()), real(met_mean),
              real(wilcoxon.statistic), real(wilcoxon.p_value),
              std::to_string(result.joined_pairs), std::to_string(result.dropped_pairs)}});

  write_file_text(
      out_dir / "groups.svg",
      svg::bar_chart("JS divergence by pair label (95% CI)", "mean JS divergence",
                     {{"literal", lit_mean, 1.96 * lit_sem},
                      {"metaphorical", met_mean, 1.96 * met_sem}}));

  RunManifest manifest;
  manifest.command = "analyze metaphor";
  manifest.config = {{"dims", args.dims}};
  manifest.seed = seed;
  manifest.inputs = {args.embeddings, args.vectors, args.pairs_file};
  write_run_manifest(out_dir, manifest);

  std::printf("%d joined pairs; wilcoxon p %.3g\n", result.joined_pairs,
              wilcoxon.p_value);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"perceptual word--color embeddings"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config");
  app.require_subcommand(0, 1);

  std::uint64_t seed = 42;
  int threads = 1;
  app.add_option("--seed", seed, "seed for all randomized steps");
  app.add_option("--threads", threads, "worker threads");

  IngestArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest", "fetch or locate per-word image sets");
  ingest->fallthrough();
  ingest->add_option("--words", ingest_args.words_file, "word list, one per line")
      ->required();
  ingest->add_option("--mode", ingest_args.mode, "local or http");
  ingest->add_option("--root", ingest_args.root, "image root (local mode)");
  ingest->add_option("--endpoint", ingest_args.endpoint,
                     "search URL template with {query} (http mode)");
  ingest->add_option("--images-per-word", ingest_args.images_per_word);
  ingest->add_option("--rate-limit", ingest_args.rate_limit, "requests per second");
  ingest->add_option("--cache", ingest_args.cache, "download cache directory");
  ingest->add_option("--timeout", ingest_args.timeout_s, "request timeout, seconds");
  ingest->add_option("--out", ingest_args.out, "report directory");

  EmbedArgs embed_args;
  auto* embed = app.add_subcommand("embed", "build embeddings from cached images");
  embed->fallthrough();
  embed->add_option("--words", embed_args.words_file)->required();
  embed->add_option("--cache", embed_args.cache, "directory with per-word images")
      ->required();
  embed->add_option("--out", embed_args.out, "output directory")->required();
  embed->add_flag("--std,!--no-std", embed_args.with_std,
                  "include per-bin standard deviations");

  CompareArgs compare_args;
  auto* compare = app.add_subcommand("compare", "JS divergence between two words");
  compare->fallthrough();
  compare->add_option("--embeddings", compare_args.embeddings)->required();
  compare->add_option("word_a", compare_args.word_a)->required();
  compare->add_option("word_b", compare_args.word_b)->required();

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "reproduce the statistical analyses");
  analyze->fallthrough();
  analyze->require_subcommand(1);

  auto* concreteness =
      analyze->add_subcommand("concreteness", "similarity vs. summed concreteness");
  concreteness->fallthrough();
  concreteness->add_option("--embeddings", analyze_args.embeddings)->required();
  concreteness->add_option("--concreteness", analyze_args.concreteness)->required();
  concreteness->add_option("--out", analyze_args.out)->required();
  concreteness->add_option("--comparison-words", analyze_args.comparison_words);
  concreteness->add_option("--bins", analyze_args.bins);

  auto* similarity =
      analyze->add_subcommand("similarity-trend", "color vs. text similarity");
  similarity->fallthrough();
  similarity->add_option("--embeddings", analyze_args.embeddings)->required();
  similarity->add_option("--vectors", analyze_args.vectors)->required();
  similarity->add_option("--out", analyze_args.out)->required();
  similarity->add_option("--comparison-words", analyze_args.comparison_words);
  similarity->add_option("--bins", analyze_args.bins);

  auto* metaphor =
      analyze->add_subcommand("metaphor", "metaphorical vs. literal classification");
  metaphor->fallthrough();
  metaphor->add_option("--embeddings", analyze_args.embeddings)->required();
  metaphor->add_option("--vectors", analyze_args.vectors)->required();
  metaphor->add_option("--pairs", analyze_args.pairs_file, "labeled pair CSV")
      ->required();
  metaphor->add_option("--out", analyze_args.out)->required();
  metaphor->add_option("--dims", analyze_args.dims, "comma-separated PCA sweep");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("chromalex");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  ingest_args.threads = threads;
  embed_args.threads = threads;
  analyze_args.threads = threads;

  try {
    if (*ingest) return run_ingest(ingest_args, seed);
    if (*embed) return run_embed(embed_args, seed);
    if (*compare) return run_compare(compare_args);
    if (*analyze) {
      if (*concreteness) return run_analyze_concreteness(analyze_args, seed);
      if (*similarity) return run_analyze_similarity(analyze_args, seed);
      if (*metaphor) return run_analyze_metaphor(analyze_args, seed);
    }
    std::cout << app.help();
    return 0;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const InsufficientJoin& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitJoin;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
}

}  // namespace chromalex
