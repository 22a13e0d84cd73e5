#pragma once

// Data-parallel numeric kernels. The functions in `edge::kernels` split work
// by output row with OpenMP; every output element is produced by exactly one
// thread with a fixed summation order, so results do not depend on the thread
// count. `edge::kernels::serial` holds plain loop-nest reference versions used
// by tests and benchmarks.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "edge/core/matrix.hpp"

namespace edge {

inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

namespace kernels {

// Sum of squared residuals between sigmoid(z z^T) and a sparse target, plus
// the unscaled row gradient g_i = sum_j r_ij * s_ij * (1 - s_ij) * z_j.
struct GramResidual {
  double sum_sq = 0.0;
  Matrix grad;
};

Matrix spmm(const CsrMatrix& a, const Matrix& b);
Matrix gemm(const Matrix& a, const Matrix& b);
Matrix gemm_nt(const Matrix& a, const Matrix& b);
Matrix gemm_tn(const Matrix& a, const Matrix& b);
Matrix sigmoid_gram(const Matrix& z);
GramResidual gram_residual(const Matrix& z, const CsrMatrix& target, bool with_grad);

// Rows of `rows` are L2-normalized in place; zero rows stay zero.
void normalize_rows(Matrix& rows);

// Indices of the k rows with highest dot product against row `query`,
// restricted to rows with eligible[j] true and j != query. Ties go to the
// smaller index.
std::vector<std::size_t> top_k_dot(const Matrix& rows, std::size_t query, std::size_t k,
                                   std::span<const char> eligible);

namespace serial {
Matrix spmm(const CsrMatrix& a, const Matrix& b);
Matrix gemm(const Matrix& a, const Matrix& b);
Matrix gemm_nt(const Matrix& a, const Matrix& b);
Matrix gemm_tn(const Matrix& a, const Matrix& b);
Matrix sigmoid_gram(const Matrix& z);
GramResidual gram_residual(const Matrix& z, const CsrMatrix& target, bool with_grad);
}  // namespace serial

}  // namespace kernels
}  // namespace edge
