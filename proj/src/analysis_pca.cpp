#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "chromalex/analysis.hpp"
#include "chromalex/errors.hpp"

namespace chromalex::analysis {

PcaModel pca_fit(const Matrix& data) {
  const int n = data.rows;
  const int d = data.cols;
  if (n < 2) throw InsufficientData("pca_fit: need at least 2 rows");
  if (d < 1) throw InsufficientData("pca_fit: need at least 1 column");

  PcaModel model;
  model.mean.assign(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) model.mean[static_cast<std::size_t>(j)] += data.at(i, j);
  }
  for (double& m : model.mean) m /= static_cast<double>(n);

  Eigen::MatrixXd centered(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      centered(i, j) = data.at(i, j) - model.mean[static_cast<std::size_t>(j)];
    }
  }
  const Eigen::MatrixXd cov =
      (centered.transpose() * centered) / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw Error("pca_fit: eigendecomposition failed");
  }
  const Eigen::VectorXd evals = solver.eigenvalues();   // ascending
  const Eigen::MatrixXd evecs = solver.eigenvectors();  // columns

  const double max_eval = std::max(evals(d - 1), 0.0);
  const double floor = std::max(max_eval * 1e-10, 1e-300);
  const int max_rank = std::min(n - 1, d);

  for (int c = d - 1; c >= 0 && model.rank < max_rank; --c) {
    if (evals(c) <= floor) break;
    model.eigenvalues.push_back(evals(c));
    ++model.rank;
  }

  model.components = Matrix(model.rank, d);
  for (int r = 0; r < model.rank; ++r) {
    const int c = d - 1 - r;  // descending eigenvalue order
    int peak = 0;
    for (int j = 1; j < d; ++j) {
      if (std::abs(evecs(j, c)) > std::abs(evecs(peak, c))) peak = j;
    }
    const double sign = evecs(peak, c) < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < d; ++j) model.components.at(r, j) = sign * evecs(j, c);
  }
  return model;
}

Matrix pca_transform(const PcaModel& model, const Matrix& rows, int k, int* k_used) {
  if (rows.cols != static_cast<int>(model.mean.size())) {
    throw DimensionMismatch("pca_transform: column count mismatch");
  }
  if (k < 1) throw InsufficientData("pca_transform: k must be >= 1");
  const int kk = std::min(k, model.rank);
  if (k_used) *k_used = kk;

  Matrix out(rows.rows, kk);
  for (int i = 0; i < rows.rows; ++i) {
    for (int r = 0; r < kk; ++r) {
      double dot = 0.0;
      for (int j = 0; j < rows.cols; ++j) {
        dot += (rows.at(i, j) - model.mean[static_cast<std::size_t>(j)]) *
               model.components.at(r, j);
      }
      out.at(i, r) = dot;
    }
  }
  return out;
}

}  // namespace chromalex::analysis
