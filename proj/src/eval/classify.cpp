#include "edge/eval/classify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <string_view>

#include <spdlog/spdlog.h>

#include "edge/core/errors.hpp"
#include "edge/core/hash.hpp"
#include "edge/core/kernels.hpp"
#include "edge/model/adam.hpp"

namespace edge {

double default_train_ratio(std::string_view dataset) {
  std::string d(dataset);
  std::transform(d.begin(), d.end(), d.begin(), [](unsigned char c) { return std::tolower(c); });
  if (d == "citeseer") return 0.03;
  if (d == "pubmed") return 0.003;
  return 0.5;
}

NodeClfReport node_classification(const Matrix& z, std::span<const int> labels, double train_ratio,
                                  std::uint64_t seed, const ClassifierConfig& cfg) {
  if (labels.size() != z.rows()) throw DimensionError("labels and embeddings differ in node count");
  if (!(train_ratio > 0.0 && train_ratio < 1.0)) throw ConfigError("train ratio must lie in (0, 1)");

  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] >= 0) by_class[labels[i]].push_back(i);
  for (auto it = by_class.begin(); it != by_class.end();) {
    if (it->second.size() < 2) {
      spdlog::warn("class {} has a single labelled node and is left out of classification", it->first);
      it = by_class.erase(it);
    } else {
      ++it;
    }
  }
  if (by_class.size() < 2) throw MetricError("node classification needs at least two classes");

  std::mt19937_64 rng(mix_seed(seed, 0xc1a5));
  std::vector<std::size_t> train, test;
  std::vector<int> train_y, test_y;
  NodeClfReport rep;
  rep.train_ratio = train_ratio;
  int cls = 0;
  for (auto& [label, members] : by_class) {
    std::shuffle(members.begin(), members.end(), rng);
    auto k = static_cast<std::size_t>(std::llround(train_ratio * static_cast<double>(members.size())));
    if (k == 0) spdlog::warn("class {} would get no training nodes at ratio {}; using one", label, train_ratio);
    k = std::clamp<std::size_t>(k, 1, members.size() - 1);
    for (std::size_t m = 0; m < members.size(); ++m) {
      (m < k ? train : test).push_back(members[m]);
      (m < k ? train_y : test_y).push_back(cls);
    }
    rep.train_per_class.push_back(k);
    rep.test_per_class.push_back(members.size() - k);
    ++cls;
  }
  const std::size_t c = by_class.size();
  const std::size_t d = z.cols();

  std::vector<double> mean(d, 0.0), inv_sd(d, 0.0);
  for (std::size_t i : train)
    for (std::size_t f = 0; f < d; ++f) mean[f] += z(i, f);
  for (double& m : mean) m /= static_cast<double>(train.size());
  for (std::size_t i : train)
    for (std::size_t f = 0; f < d; ++f) inv_sd[f] += (z(i, f) - mean[f]) * (z(i, f) - mean[f]);
  for (double& s : inv_sd) {
    s = std::sqrt(s / static_cast<double>(train.size()));
    s = s > 1e-12 ? 1.0 / s : 0.0;
  }
  const auto features = [&](const std::vector<std::size_t>& nodes) {
    Matrix x(nodes.size(), d + 1);
    for (std::size_t r = 0; r < nodes.size(); ++r) {
      for (std::size_t f = 0; f < d; ++f) x(r, f) = (z(nodes[r], f) - mean[f]) * inv_sd[f];
      x(r, d) = 1.0;
    }
    return x;
  };
  const Matrix x_train = features(train);
  const Matrix x_test = features(test);

  Matrix w(d + 1, c);
  AdamMoments mom = AdamMoments::zeros_like(w);
  const double inv_n = 1.0 / static_cast<double>(train.size());
  for (std::size_t step = 1; step <= cfg.epochs; ++step) {
    Matrix resid = kernels::gemm(x_train, w);
    for (std::size_t r = 0; r < train.size(); ++r)
      for (std::size_t k = 0; k < c; ++k)
        resid(r, k) = (sigmoid(resid(r, k)) - (train_y[r] == static_cast<int>(k) ? 1.0 : 0.0)) * inv_n;
    Matrix grad = kernels::gemm_tn(x_train, resid);
    for (std::size_t f = 0; f < d; ++f)
      for (std::size_t k = 0; k < c; ++k) grad(f, k) += cfg.l2 * w(f, k);
    adam_step(w, grad, mom, step, cfg.learning_rate);
  }

  const Matrix logits = kernels::gemm(x_test, w);
  std::size_t correct = 0;
  for (std::size_t r = 0; r < test.size(); ++r) {
    const auto row = logits.row(r);
    const auto best = static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
    correct += best == test_y[r];
  }
  rep.train_size = train.size();
  rep.test_size = test.size();
  rep.accuracy = static_cast<double>(correct) / static_cast<double>(test.size());
  return rep;
}

}  // namespace edge
