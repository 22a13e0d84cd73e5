#include "edge/eval/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "edge/core/errors.hpp"
#include "edge/core/kernels.hpp"

namespace edge {

double score_edge(const Matrix& z, std::size_t i, std::size_t j) {
  if (i >= z.rows() || j >= z.rows()) throw DimensionError("score_edge: node index out of range");
  const auto a = z.row(i);
  const auto b = z.row(j);
  double s = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) s += a[c] * b[c];
  return sigmoid(s);
}

RankMetrics rank_metrics(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw MetricError("scores and labels differ in length");
  std::size_t pos = 0;
  for (int l : labels) {
    if (l != 0 && l != 1) throw MetricError("labels must be 0 or 1");
    pos += static_cast<std::size_t>(l);
  }
  const std::size_t neg = labels.size() - pos;
  if (pos == 0 || neg == 0) throw MetricError("ranking metrics need both positive and negative labels");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  // Walk tie groups from the top. Every positive in a group beats the
  // negatives below it and half-beats the negatives inside it.
  double wins = 0.0;
  double ap = 0.0;
  std::size_t tp = 0;
  std::size_t seen = 0;
  std::size_t neg_below = neg;
  for (std::size_t g = 0; g < order.size();) {
    std::size_t end = g;
    std::size_t gp = 0;
    while (end < order.size() && scores[order[end]] == scores[order[g]]) gp += static_cast<std::size_t>(labels[order[end++]]);
    const std::size_t gn = (end - g) - gp;
    neg_below -= gn;
    wins += static_cast<double>(gp) * (static_cast<double>(neg_below) + 0.5 * static_cast<double>(gn));
    tp += gp;
    seen = end;
    if (gp > 0) ap += static_cast<double>(gp) * static_cast<double>(tp) / static_cast<double>(seen);
    g = end;
  }
  RankMetrics m;
  m.auc = wins / (static_cast<double>(pos) * static_cast<double>(neg));
  m.ap = ap / static_cast<double>(pos);
  return m;
}

LinkPredReport evaluate_link_prediction(const Matrix& z, std::span<const Edge> positives,
                                        std::span<const Edge> negatives) {
  LinkPredReport r;
  r.scores.reserve(positives.size() + negatives.size());
  for (const auto& [a, b] : positives) {
    r.scores.push_back(score_edge(z, a, b));
    r.labels.push_back(1);
  }
  for (const auto& [a, b] : negatives) {
    r.scores.push_back(score_edge(z, a, b));
    r.labels.push_back(0);
  }
  const auto m = rank_metrics(r.scores, r.labels);
  r.auc = m.auc;
  r.ap = m.ap;
  return r;
}

}  // namespace edge
