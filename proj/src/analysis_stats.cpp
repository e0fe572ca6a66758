#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "chromalex/analysis.hpp"
#include "chromalex/errors.hpp"

namespace chromalex::analysis {
namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double normal_sf(double z) {  // P(Z > z)
  return 0.5 * std::erfc(z / kSqrt2);
}

std::vector<double> midranks(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

std::vector<TrendBin> binned_trend(std::span<const double> x,
                                   std::span<const double> y, int n_bins) {
  if (x.size() != y.size()) throw DimensionMismatch("binned_trend: x/y length mismatch");
  if (n_bins < 1) throw InsufficientData("binned_trend: need at least one bin");
  if (x.size() < static_cast<std::size_t>(n_bins)) {
    throw InsufficientData("binned_trend: fewer points than bins");
  }

  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  const std::size_t n = x.size();
  const std::size_t base = n / static_cast<std::size_t>(n_bins);
  const std::size_t rem = n % static_cast<std::size_t>(n_bins);

  std::vector<TrendBin> bins;
  bins.reserve(static_cast<std::size_t>(n_bins));
  std::size_t pos = 0;
  for (int b = 0; b < n_bins; ++b) {
    const std::size_t size = base + (static_cast<std::size_t>(b) < rem ? 1 : 0);
    TrendBin bin;
    bin.count = static_cast<int>(size);
    double sx = 0.0, sy = 0.0;
    for (std::size_t k = 0; k < size; ++k, ++pos) {
      sx += x[order[pos]];
      sy += y[order[pos]];
    }
    bin.mean_x = sx / static_cast<double>(size);
    bin.mean_y = sy / static_cast<double>(size);
    bins.push_back(bin);
  }
  return bins;
}

RegressionReport fit_regression(std::span<const double> x,
                                std::span<const double> y, ModelKind kind) {
  if (x.size() != y.size()) throw DimensionMismatch("fit_regression: x/y length mismatch");
  const int degree = kind == ModelKind::kLinear ? 1 : 3;
  const int p = degree + 1;       // polynomial coefficients
  const int k_params = p + 1;     // + noise variance
  const int n = static_cast<int>(x.size());
  if (n < k_params + 2) throw InsufficientData("fit_regression: too few samples");

  Eigen::MatrixXd design(n, p);
  Eigen::VectorXd response(n);
  for (int i = 0; i < n; ++i) {
    double pow_x = 1.0;
    for (int j = 0; j < p; ++j) {
      design(i, j) = pow_x;
      pow_x *= x[static_cast<std::size_t>(i)];
    }
    response(i) = y[static_cast<std::size_t>(i)];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < p) throw SingularDesign("fit_regression: collinear design");
  const Eigen::VectorXd beta = qr.solve(response);

  const Eigen::VectorXd residuals = response - design * beta;
  const double rss = residuals.squaredNorm();
  const double mean_y = response.mean();
  const double tss = (response.array() - mean_y).square().sum();

  RegressionReport report;
  report.kind = kind;
  report.coefficients.assign(beta.data(), beta.data() + p);
  report.n = n;
  report.r_squared = tss > 0.0 ? 1.0 - rss / tss : 1.0;
  const double sigma2 = std::max(rss / n, 1e-12);
  report.log_likelihood =
      -0.5 * n * (std::log(2.0 * std::numbers::pi * sigma2) + 1.0);
  report.bic = k_params * std::log(static_cast<double>(n)) - 2.0 * report.log_likelihood;
  return report;
}

std::pair<double, double> compare_models(const RegressionReport& a,
                                         const RegressionReport& b) {
  if (a.n != b.n) throw SampleMismatch("compare_models: different sample sizes");
  return {a.log_likelihood - b.log_likelihood, a.bic - b.bic};
}

RankTest wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw EmptyInput("wilcoxon_rank_sum: empty sample");
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t n = na + nb;

  std::vector<double> pooled;
  pooled.reserve(n);
  pooled.insert(pooled.end(), a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::vector<double> ranks = midranks(pooled);

  double rank_sum_a = 0.0;
  for (std::size_t i = 0; i < na; ++i) rank_sum_a += ranks[i];
  const double u = rank_sum_a - 0.5 * static_cast<double>(na) * static_cast<double>(na + 1);
  const double mu = 0.5 * static_cast<double>(na) * static_cast<double>(nb);

  RankTest result;
  result.statistic = u;

  if (n <= 20) {
    // Exact: enumerate every assignment of na pooled positions to sample a.
    const double target = std::abs(u - mu) - 1e-12;
    std::vector<std::size_t> idx(na);
    std::iota(idx.begin(), idx.end(), 0);
    std::uint64_t total = 0, extreme = 0;
    for (;;) {
      double rs = 0.0;
      for (std::size_t i : idx) rs += ranks[i];
      const double u2 = rs - 0.5 * static_cast<double>(na) * static_cast<double>(na + 1);
      ++total;
      if (std::abs(u2 - mu) >= target) ++extreme;
      // next combination
      std::size_t i = na;
      while (i > 0 && idx[i - 1] == n - na + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < na; ++j) idx[j] = idx[j - 1] + 1;
    }
    result.p_value = static_cast<double>(extreme) / static_cast<double>(total);
    return result;
  }

  // Normal approximation with tie and continuity corrections.
  std::vector<double> sorted(pooled);
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }
  const double nn = static_cast<double>(n);
  const double var = (static_cast<double>(na) * static_cast<double>(nb) / 12.0) *
                     ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
  if (var <= 0.0) {
    result.p_value = 1.0;
    return result;
  }
  const double z = std::max(std::abs(u - mu) - 0.5, 0.0) / std::sqrt(var);
  result.p_value = std::min(2.0 * normal_sf(z), 1.0);
  return result;
}

RankTest jonckheere_terpstra(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 3) {
    throw InsufficientData("jonckheere_terpstra: need at least 3 ordered groups");
  }
  for (const auto& g : groups) {
    if (g.empty()) throw EmptyInput("jonckheere_terpstra: empty group");
  }

  double jt = 0.0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      for (double va : groups[i]) {
        for (double vb : groups[j]) {
          if (va < vb) {
            jt += 1.0;
          } else if (va == vb) {
            jt += 0.5;
          }
        }
      }
    }
  }

  double total = 0.0, sum_sq = 0.0, sum_var = 0.0;
  for (const auto& g : groups) {
    const double ni = static_cast<double>(g.size());
    total += ni;
    sum_sq += ni * ni;
    sum_var += ni * ni * (2.0 * ni + 3.0);
  }
  const double mu = (total * total - sum_sq) / 4.0;
  const double var = (total * total * (2.0 * total + 3.0) - sum_var) / 72.0;

  RankTest result;
  result.statistic = jt;
  if (var <= 0.0) {
    result.p_value = jt > mu ? 0.0 : 1.0;
    return result;
  }
  result.p_value = normal_sf((jt - mu) / std::sqrt(var));
  return result;
}

double spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionMismatch("spearman_rho: length mismatch");
  if (x.size() < 2) throw InsufficientData("spearman_rho: need at least 2 points");
  const std::vector<double> rx = midranks(x);
  const std::vector<double> ry = midranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = rx[i] - mx;
    const double dy = ry[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace chromalex::analysis
