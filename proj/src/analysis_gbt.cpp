#include <algorithm>
#include <cmath>
#include <numeric>

#include "chromalex/analysis.hpp"
#include "chromalex/errors.hpp"

namespace chromalex::analysis {
namespace {

double sigmoid(double m) { return 1.0 / (1.0 + std::exp(-m)); }

double log_loss(std::span<const int> labels, const std::vector<double>& margins) {
  double loss = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double p = std::clamp(sigmoid(margins[i]), 1e-12, 1.0 - 1e-12);
    loss -= labels[i] ? std::log(p) : std::log(1.0 - p);
  }
  return loss / static_cast<double>(labels.size());
}

double tree_output(const std::vector<GbtNode>& tree, const Matrix& rows, int row) {
  int node = 0;
  while (tree[static_cast<std::size_t>(node)].feature >= 0) {
    const GbtNode& nd = tree[static_cast<std::size_t>(node)];
    node = rows.at(row, nd.feature) < nd.threshold ? nd.left : nd.right;
  }
  return tree[static_cast<std::size_t>(node)].value;
}

struct BestSplit {
  double gain = 0.0;
  int feature = -1;
  double threshold = 0.0;
};

BestSplit find_split(const Matrix& features, const std::vector<double>& grad,
                     const std::vector<double>& hess,
                     const std::vector<int>& rows, const GbtParams& params) {
  double g_total = 0.0, h_total = 0.0;
  for (int r : rows) {
    g_total += grad[static_cast<std::size_t>(r)];
    h_total += hess[static_cast<std::size_t>(r)];
  }
  const double parent_score = g_total * g_total / (h_total + params.lambda);

  BestSplit best;
  std::vector<int> order(rows);
  for (int f = 0; f < features.cols; ++f) {
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const double va = features.at(a, f);
      const double vb = features.at(b, f);
      return va < vb || (va == vb && a < b);
    });
    double g_left = 0.0, h_left = 0.0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      const int r = order[i];
      g_left += grad[static_cast<std::size_t>(r)];
      h_left += hess[static_cast<std::size_t>(r)];
      const double v = features.at(r, f);
      const double v_next = features.at(order[i + 1], f);
      if (v == v_next) continue;  // can only split between distinct values
      const double h_right = h_total - h_left;
      if (h_left < params.min_child_weight || h_right < params.min_child_weight) {
        continue;
      }
      const double g_right = g_total - g_left;
      const double gain = 0.5 * (g_left * g_left / (h_left + params.lambda) +
                                 g_right * g_right / (h_right + params.lambda) -
                                 parent_score) -
                          params.gamma;
      if (gain > best.gain) {
        best.gain = gain;
        best.feature = f;
        best.threshold = 0.5 * (v + v_next);
      }
    }
  }
  return best;
}

void build_node(std::vector<GbtNode>& tree, int node_id, std::vector<int> rows,
                int depth, const Matrix& features, const std::vector<double>& grad,
                const std::vector<double>& hess, const GbtParams& params) {
  double g = 0.0, h = 0.0;
  for (int r : rows) {
    g += grad[static_cast<std::size_t>(r)];
    h += hess[static_cast<std::size_t>(r)];
  }

  if (depth < params.depth && rows.size() >= 2) {
    const BestSplit split = find_split(features, grad, hess, rows, params);
    if (split.feature >= 0 && split.gain > 1e-12) {
      std::vector<int> left_rows, right_rows;
      for (int r : rows) {
        (features.at(r, split.feature) < split.threshold ? left_rows : right_rows)
            .push_back(r);
      }
      auto& node = tree[static_cast<std::size_t>(node_id)];
      node.feature = split.feature;
      node.threshold = split.threshold;
      node.left = static_cast<int>(tree.size());
      node.right = node.left + 1;
      tree.emplace_back();
      tree.emplace_back();
      const int left_id = tree[static_cast<std::size_t>(node_id)].left;
      const int right_id = tree[static_cast<std::size_t>(node_id)].right;
      build_node(tree, left_id, std::move(left_rows), depth + 1, features, grad,
                 hess, params);
      build_node(tree, right_id, std::move(right_rows), depth + 1, features, grad,
                 hess, params);
      return;
    }
  }

  tree[static_cast<std::size_t>(node_id)].feature = -1;
  tree[static_cast<std::size_t>(node_id)].value =
      -g / (h + params.lambda) * params.learning_rate;
}

}  // namespace

GbtModel gbt_train(const Matrix& features, std::span<const int> labels,
                   const GbtParams& params) {
  const int n = features.rows;
  if (n < 2 || static_cast<std::size_t>(n) != labels.size()) {
    throw InsufficientData("gbt_train: need >= 2 labeled rows");
  }
  bool has_pos = false, has_neg = false;
  for (int y : labels) (y ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg) throw DegenerateLabels("gbt_train: single-class labels");

  GbtModel model;
  std::vector<double> margins(static_cast<std::size_t>(n), model.base_margin);
  double prev_loss = log_loss(labels, margins);

  std::vector<double> grad(static_cast<std::size_t>(n));
  std::vector<double> hess(static_cast<std::size_t>(n));
  std::vector<int> all_rows(static_cast<std::size_t>(n));
  std::iota(all_rows.begin(), all_rows.end(), 0);

  for (int round = 0; round < params.rounds; ++round) {
    for (int i = 0; i < n; ++i) {
      const double p = sigmoid(margins[static_cast<std::size_t>(i)]);
      grad[static_cast<std::size_t>(i)] = p - labels[static_cast<std::size_t>(i)];
      hess[static_cast<std::size_t>(i)] = std::max(p * (1.0 - p), 1e-16);
    }

    std::vector<GbtNode> tree(1);
    build_node(tree, 0, all_rows, 0, features, grad, hess, params);

    // Line-search safeguard: halve the tree's contribution until the
    // training loss stops increasing, zeroing it as a last resort.
    std::vector<double> delta(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) delta[static_cast<std::size_t>(i)] = 0.0;
    auto fill_delta = [&] {
      for (int i = 0; i < n; ++i) {
        delta[static_cast<std::size_t>(i)] = tree_output(tree, features, i);
      }
    };
    fill_delta();
    std::vector<double> trial(static_cast<std::size_t>(n));
    double new_loss = 0.0;
    bool accepted = false;
    for (int attempt = 0; attempt <= 40; ++attempt) {
      for (int i = 0; i < n; ++i) {
        trial[static_cast<std::size_t>(i)] =
            margins[static_cast<std::size_t>(i)] + delta[static_cast<std::size_t>(i)];
      }
      new_loss = log_loss(labels, trial);
      if (new_loss <= prev_loss + 1e-12) {
        accepted = true;
        break;
      }
      for (auto& node : tree) {
        if (node.feature < 0) node.value *= 0.5;
      }
      fill_delta();
    }
    if (!accepted) {
      for (auto& node : tree) {
        if (node.feature < 0) node.value = 0.0;
      }
      trial = margins;
      new_loss = prev_loss;
    }

    margins = trial;
    prev_loss = std::min(new_loss, prev_loss);
    model.trees.push_back(std::move(tree));
    model.train_loss.push_back(prev_loss);
  }
  return model;
}

std::vector<double> gbt_predict_margin(const GbtModel& model, const Matrix& rows) {
  std::vector<double> margins(static_cast<std::size_t>(rows.rows), model.base_margin);
  for (const auto& tree : model.trees) {
    for (int i = 0; i < rows.rows; ++i) {
      margins[static_cast<std::size_t>(i)] += tree_output(tree, rows, i);
    }
  }
  return margins;
}

std::vector<double> gbt_predict_proba(const GbtModel& model, const Matrix& rows) {
  std::vector<double> out = gbt_predict_margin(model, rows);
  for (double& m : out) m = sigmoid(m);
  return out;
}

std::vector<int> gbt_predict(const GbtModel& model, const Matrix& rows) {
  const std::vector<double> margins = gbt_predict_margin(model, rows);
  std::vector<int> labels(margins.size());
  for (std::size_t i = 0; i < margins.size(); ++i) labels[i] = margins[i] > 0.0 ? 1 : 0;
  return labels;
}

}  // namespace chromalex::analysis
