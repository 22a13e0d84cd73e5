#include "edge/eval/similarity.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "edge/core/errors.hpp"
#include "edge/core/kernels.hpp"

namespace edge {
namespace {

std::vector<std::size_t> labelled_order(std::span<const int> labels) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] >= 0) order.push_back(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
  return order;
}

Matrix unit_rows(const Matrix& z, std::span<const std::size_t> order) {
  Matrix u(order.size(), z.cols());
  for (std::size_t r = 0; r < order.size(); ++r) std::copy_n(z.row(order[r]).begin(), z.cols(), u.row(r).begin());
  kernels::normalize_rows(u);
  return u;
}

double score(const Matrix& cos, std::span<const int> ordered) {
  double within = 0.0, cross = 0.0;
  std::size_t n_within = 0, n_cross = 0;
  for (std::size_t i = 0; i < cos.rows(); ++i)
    for (std::size_t j = 0; j < cos.cols(); ++j) {
      if (i == j) continue;
      if (ordered[i] == ordered[j]) {
        within += cos(i, j);
        ++n_within;
      } else {
        cross += cos(i, j);
        ++n_cross;
      }
    }
  const double mw = n_within ? within / static_cast<double>(n_within) : 0.0;
  const double mc = n_cross ? cross / static_cast<double>(n_cross) : 0.0;
  return mw - mc;
}

}  // namespace

SimilarityReport similarity_matrix(const Matrix& z, std::span<const int> labels) {
  if (labels.size() != z.rows()) throw DimensionError("labels and embeddings differ in node count");
  SimilarityReport r;
  r.order = labelled_order(labels);
  for (std::size_t i : r.order) r.ordered_labels.push_back(labels[i]);
  const Matrix u = unit_rows(z, r.order);
  r.matrix = kernels::gemm_nt(u, u);
  r.block_score = score(r.matrix, r.ordered_labels);
  return r;
}

double block_score(const Matrix& z, std::span<const int> labels) {
  return similarity_matrix(z, labels).block_score;
}

void save_similarity(const SimilarityReport& r, std::span<const std::string> node_names,
                     std::span<const std::string> class_names, const std::filesystem::path& matrix_path,
                     const std::filesystem::path& order_path) {
  std::ofstream m(matrix_path);
  if (!m) throw IoError("cannot write " + matrix_path.string());
  char buf[32];
  for (std::size_t i = 0; i < r.matrix.rows(); ++i) {
    for (std::size_t j = 0; j < r.matrix.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.6g", r.matrix(i, j));
      if (j) m << ' ';
      m << buf;
    }
    m << '\n';
  }
  std::ofstream o(order_path);
  if (!o) throw IoError("cannot write " + order_path.string());
  for (std::size_t k = 0; k < r.order.size(); ++k) {
    const int c = r.ordered_labels[k];
    o << node_names[r.order[k]] << '\t'
      << (static_cast<std::size_t>(c) < class_names.size() ? class_names[static_cast<std::size_t>(c)]
                                                            : std::to_string(c))
      << '\n';
  }
}

}  // namespace edge
