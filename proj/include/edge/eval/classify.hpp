#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "edge/core/matrix.hpp"

namespace edge {

struct ClassifierConfig {
  double l2 = 1e-3;
  double learning_rate = 0.01;
  std::size_t epochs = 300;
};

struct NodeClfReport {
  double accuracy = 0.0;
  double train_ratio = 0.0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  std::vector<std::size_t> train_per_class;
  std::vector<std::size_t> test_per_class;
};

// Default training ratios for the citation benchmarks; 0.5 for anything else.
double default_train_ratio(std::string_view dataset);

// One-vs-rest L2 logistic regression on standardized embeddings, trained with
// Adam on a seeded stratified split. Nodes labelled -1 are ignored. A class
// whose share would round to zero training nodes gets one; a class with a
// single labelled node cannot be split and is left out with a warning.
NodeClfReport node_classification(const Matrix& z, std::span<const int> labels, double train_ratio,
                                  std::uint64_t seed, const ClassifierConfig& cfg = {});

}  // namespace edge
