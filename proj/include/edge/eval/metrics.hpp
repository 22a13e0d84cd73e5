#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "edge/core/matrix.hpp"
#include "edge/graph/sparse_graph.hpp"

namespace edge {

// sigmoid(z_i . z_j)
double score_edge(const Matrix& z, std::size_t i, std::size_t j);

struct RankMetrics {
  double auc = 0.0;
  double ap = 0.0;
};

// AUC as the Mann-Whitney statistic with ties counted one half. AP sums
// precision times recall increments over the descending ranking, where tied
// scores form a single threshold. Labels are 0/1; both must be present.
RankMetrics rank_metrics(std::span<const double> scores, std::span<const int> labels);

struct LinkPredReport {
  double auc = 0.0;
  double ap = 0.0;
  std::vector<double> scores;  // positives first, then negatives
  std::vector<int> labels;
};

LinkPredReport evaluate_link_prediction(const Matrix& z, std::span<const Edge> positives,
                                        std::span<const Edge> negatives);

}  // namespace edge
