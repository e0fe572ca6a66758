#include <algorithm>
#include <cmath>
#include <numeric>

#include "chromalex/analysis.hpp"
#include "chromalex/embedding.hpp"
#include "chromalex/errors.hpp"

namespace chromalex::analysis {
namespace {

struct Split {
  std::vector<int> train;
  std::vector<int> test;
};

/// Stratified 80/20 split: indices of each class are shuffled with the
/// shared rng and the tail 20% (at least one point) held out.
Split stratified_split(std::span<const int> labels, Rng& rng) {
  std::vector<int> class0, class1;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (labels[i] ? class1 : class0).push_back(static_cast<int>(i));
  }
  Split split;
  for (std::vector<int>* cls : {&class0, &class1}) {
    rng.shuffle(*cls);
    const int n = static_cast<int>(cls->size());
    int n_test = static_cast<int>(std::llround(0.2 * n));
    n_test = std::clamp(n_test, n > 1 ? 1 : 0, n > 1 ? n - 1 : 0);
    for (int i = 0; i < n; ++i) {
      (i < n - n_test ? split.train : split.test).push_back((*cls)[static_cast<std::size_t>(i)]);
    }
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

Matrix take_rows(const Matrix& m, const std::vector<int>& rows) {
  Matrix out(static_cast<int>(rows.size()), m.cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < m.cols; ++j) {
      out.at(static_cast<int>(i), j) = m.at(rows[i], j);
    }
  }
  return out;
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
  if (predicted.empty()) return 0.0;
  int hits = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    hits += predicted[i] == truth[i];
  }
  return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

ClassifierReport run_experiment(const std::string& name, const Matrix& features,
                                std::span<const int> labels, const PcaModel& pca,
                                int dims, std::uint64_t seed,
                                const GbtParams& params) {
  Matrix projected = pca_transform(pca, features, dims);

  Rng rng(seed);
  const Split split = stratified_split(labels, rng);
  std::vector<int> train_labels, test_labels;
  for (int i : split.train) train_labels.push_back(labels[static_cast<std::size_t>(i)]);
  for (int i : split.test) test_labels.push_back(labels[static_cast<std::size_t>(i)]);

  const Matrix train_x = take_rows(projected, split.train);
  const Matrix test_x = take_rows(projected, split.test);
  const GbtModel model = gbt_train(train_x, train_labels, params);

  ClassifierReport report;
  report.embedding_name = name;
  report.pca_dims = dims;
  report.train_accuracy = accuracy(gbt_predict(model, train_x), train_labels);
  report.test_accuracy = accuracy(gbt_predict(model, test_x), test_labels);
  report.seed = seed;
  return report;
}

}  // namespace

std::vector<LabeledPair> load_labeled_pairs(const std::filesystem::path& path) {
  const std::string text = read_file_text(path);
  const auto lines = split(text, '\n');
  if (lines.empty() || trim(lines[0]).empty()) {
    throw ParseError(path.string() + ": missing header row");
  }

  std::vector<LabeledPair> pairs;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string line = trim(lines[i]);
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    const std::string context = path.string() + " row " + std::to_string(i + 1);
    if (cols.size() < 3) throw ParseError(context + ": expected 3 columns");
    LabeledPair pair;
    pair.adjective = to_lower(trim(cols[0]));
    pair.noun = to_lower(trim(cols[1]));
    const std::string label = to_lower(trim(cols[2]));
    if (label == "metaphorical") {
      pair.metaphorical = true;
    } else if (label == "literal") {
      pair.metaphorical = false;
    } else {
      throw ParseError(context + ": unknown label '" + label + "'");
    }
    if (pair.adjective.empty() || pair.noun.empty()) {
      throw ParseError(context + ": empty word");
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

MetaphorResult metaphor_pipeline(const std::vector<LabeledPair>& pairs,
                                 const store::EmbeddingMap& color,
                                 const store::TextVectorTable& text,
                                 std::span<const int> dims_sweep,
                                 std::uint64_t seed, const GbtParams& params) {
  MetaphorResult result;
  std::vector<const LabeledPair*> joined;
  for (const LabeledPair& pair : pairs) {
    if (color.count(pair.adjective) && color.count(pair.noun) &&
        text.vectors.count(pair.adjective) && text.vectors.count(pair.noun)) {
      joined.push_back(&pair);
    }
  }
  result.joined_pairs = static_cast<int>(joined.size());
  result.dropped_pairs = static_cast<int>(pairs.size() - joined.size());
  if (joined.size() < 50) {
    throw InsufficientJoin("metaphor_pipeline: only " +
                           std::to_string(joined.size()) + " joinable pairs");
  }

  const int n = static_cast<int>(joined.size());
  const int color_dim = 2 * embedding::kBins + 1;
  Matrix color_features(n, color_dim);
  Matrix text_features(n, text.dimension);
  std::vector<int> labels(static_cast<std::size_t>(n));

  for (int i = 0; i < n; ++i) {
    const LabeledPair& pair = *joined[static_cast<std::size_t>(i)];
    const auto& adj = color.at(pair.adjective);
    const auto& noun = color.at(pair.noun);
    for (int k = 0; k < embedding::kBins; ++k) {
      color_features.at(i, k) = adj.jzazbz_dist[k];
      color_features.at(i, embedding::kBins + k) = noun.jzazbz_dist[k];
    }
    const double js = embedding::js_divergence(adj.jzazbz_dist, noun.jzazbz_dist);
    color_features.at(i, color_dim - 1) = js;

    const auto& av = text.vectors.at(pair.adjective);
    const auto& nv = text.vectors.at(pair.noun);
    for (int j = 0; j < text.dimension; ++j) {
      text_features.at(i, j) = av[static_cast<std::size_t>(j)] - nv[static_cast<std::size_t>(j)];
    }

    labels[static_cast<std::size_t>(i)] = pair.metaphorical ? 1 : 0;
    (pair.metaphorical ? result.metaphorical_js : result.literal_js).push_back(js);
  }

  const PcaModel color_pca = pca_fit(color_features);
  const PcaModel text_pca = pca_fit(text_features);
  for (int dims : dims_sweep) {
    result.reports.push_back(
        run_experiment("color", color_features, labels, color_pca, dims, seed, params));
  }
  for (int dims : dims_sweep) {
    result.reports.push_back(
        run_experiment("text", text_features, labels, text_pca, dims, seed, params));
  }
  return result;
}

}  // namespace chromalex::analysis
