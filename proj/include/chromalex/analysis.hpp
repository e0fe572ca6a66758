#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chromalex/store.hpp"
#include "chromalex/util.hpp"

namespace chromalex::analysis {

struct TrendBin {
  double mean_x = 0.0;
  double mean_y = 0.0;
  int count = 0;
};

/// Sort points by x, split into n_bins equal-count quantile bins (any
/// remainder goes one-per-bin starting with the first), and average each
/// bin. Throws InsufficientData when there are fewer points than bins.
std::vector<TrendBin> binned_trend(std::span<const double> x,
                                   std::span<const double> y, int n_bins = 40);

enum class ModelKind { kLinear, kPoly3 };

struct RegressionReport {
  ModelKind kind = ModelKind::kLinear;
  std::vector<double> coefficients;  // ascending powers of x
  double r_squared = 0.0;
  double log_likelihood = 0.0;
  double bic = 0.0;
  int n = 0;
};

/// Least-squares polynomial fit (degree 1 or 3) with Gaussian
/// log-likelihood at the MLE noise variance and
/// BIC = k ln n - 2 lnL, where k counts the noise variance too.
RegressionReport fit_regression(std::span<const double> x,
                                std::span<const double> y, ModelKind kind);

/// (delta_lnL, delta_bic) = a - b. Throws SampleMismatch when n differs.
std::pair<double, double> compare_models(const RegressionReport& a,
                                         const RegressionReport& b);

struct PcaModel {
  std::vector<double> mean;         // per column
  Matrix components;                // rank x cols, rows are components
  std::vector<double> eigenvalues;  // descending, one per component
  int rank = 0;
};

/// PCA of the sample covariance. Components are ordered by descending
/// eigenvalue and signed so each component's largest-magnitude loading is
/// positive; components below numerical rank are dropped.
PcaModel pca_fit(const Matrix& data);

/// Mean-centered projection onto the top-k components. k above the model
/// rank is truncated (reported through k_used).
Matrix pca_transform(const PcaModel& model, const Matrix& rows, int k,
                     int* k_used = nullptr);

struct GbtParams {
  int rounds = 200;
  int depth = 3;
  double learning_rate = 0.1;
  double lambda = 1.0;            // L2 penalty on leaf values
  double gamma = 0.0;             // split gain threshold
  double min_child_weight = 1e-3; // minimum hessian sum per child
};

struct GbtNode {
  int feature = -1;      // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
};

struct GbtModel {
  std::vector<std::vector<GbtNode>> trees;
  double base_margin = 0.0;
  std::vector<double> train_loss;  // per-round log-loss, non-increasing
};

/// Boosted trees with logistic loss; deterministic. Throws
/// DegenerateLabels on a single-class label set.
GbtModel gbt_train(const Matrix& features, std::span<const int> labels,
                   const GbtParams& params = {});

std::vector<double> gbt_predict_margin(const GbtModel& model, const Matrix& rows);
std::vector<double> gbt_predict_proba(const GbtModel& model, const Matrix& rows);
std::vector<int> gbt_predict(const GbtModel& model, const Matrix& rows);

struct RankTest {
  double statistic = 0.0;
  double p_value = 0.0;
};

/// Mann-Whitney U of sample a (midrank ties). Exact two-sided p by
/// enumeration for pooled n <= 20, else the normal approximation with tie
/// and continuity corrections.
RankTest wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b);

/// Jonckheere-Terpstra trend statistic over ordered groups (ties 0.5);
/// one-sided increasing-trend p via the normal approximation.
RankTest jonckheere_terpstra(const std::vector<std::vector<double>>& groups);

/// Spearman rank correlation with midrank ties.
double spearman_rho(std::span<const double> x, std::span<const double> y);

struct LabeledPair {
  std::string adjective;
  std::string noun;
  bool metaphorical = false;
};

/// CSV with header `adjective,noun,label`, label in {metaphorical, literal}.
std::vector<LabeledPair> load_labeled_pairs(const std::filesystem::path& path);

struct ClassifierReport {
  std::string embedding_name;
  int pca_dims = 0;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  std::uint64_t seed = 0;
};

struct MetaphorResult {
  std::vector<ClassifierReport> reports;  // color rows, then text rows
  int joined_pairs = 0;
  int dropped_pairs = 0;
  // JS divergence of each joined pair, grouped by label, for rank tests.
  std::vector<double> literal_js;
  std::vector<double> metaphorical_js;
};

/// The classification experiment: per-pair color features (both words'
/// bin means plus their JS divergence) and text features (word vector
/// differences), PCA-compressed to each swept dimension, stratified 80/20
/// split, boosted-tree classifier. Throws InsufficientJoin below 50
/// joinable pairs.
MetaphorResult metaphor_pipeline(const std::vector<LabeledPair>& pairs,
                                 const store::EmbeddingMap& color,
                                 const store::TextVectorTable& text,
                                 std::span<const int> dims_sweep,
                                 std::uint64_t seed,
                                 const GbtParams& params = {});

}  // namespace chromalex::analysis
