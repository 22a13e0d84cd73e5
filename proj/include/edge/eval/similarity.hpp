#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "edge/core/matrix.hpp"

namespace edge {

struct SimilarityReport {
  Matrix matrix;                   // cosine similarities in `order`
  std::vector<std::size_t> order;  // labelled nodes sorted by class, then index
  std::vector<int> ordered_labels;
  double block_score = 0.0;
};

// Mean within-class cosine (diagonal excluded) minus mean cross-class cosine.
// Nodes labelled -1 are skipped; an empty pair set contributes 0.
double block_score(const Matrix& z, std::span<const int> labels);

SimilarityReport similarity_matrix(const Matrix& z, std::span<const int> labels);

// Space-separated matrix rows plus a sidecar of `node<TAB>class` lines in
// matrix order.
void save_similarity(const SimilarityReport& r, std::span<const std::string> node_names,
                     std::span<const std::string> class_names, const std::filesystem::path& matrix_path,
                     const std::filesystem::path& order_path);

}  // namespace edge
