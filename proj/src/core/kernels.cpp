#include "edge/core/kernels.hpp"

#include <algorithm>
#include <string>

#include "edge/core/errors.hpp"

namespace edge::kernels {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DimensionError(what);
}

using Index = std::ptrdiff_t;

}  // namespace

Matrix spmm(const CsrMatrix& a, const Matrix& b) {
  require(a.cols == b.rows(), "spmm: inner dimensions differ");
  Matrix out(a.rows, b.cols());
  const std::size_t d = b.cols();
#pragma omp parallel for schedule(dynamic, 64)
  for (Index r = 0; r < static_cast<Index>(a.rows); ++r) {
    double* dst = out.data() + static_cast<std::size_t>(r) * d;
    for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
      const double v = a.values[k];
      const double* src = b.data() + a.col_idx[k] * d;
      for (std::size_t c = 0; c < d; ++c) dst[c] += v * src[c];
    }
  }
  return out;
}

Matrix gemm(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "gemm: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  const std::size_t inner = a.cols();
  const std::size_t d = b.cols();
#pragma omp parallel for schedule(static)
  for (Index r = 0; r < static_cast<Index>(a.rows()); ++r) {
    double* dst = out.data() + static_cast<std::size_t>(r) * d;
    const double* arow = a.data() + static_cast<std::size_t>(r) * inner;
    for (std::size_t k = 0; k < inner; ++k) {
      const double v = arow[k];
      if (v == 0.0) continue;
      const double* src = b.data() + k * d;
      for (std::size_t c = 0; c < d; ++c) dst[c] += v * src[c];
    }
  }
  return out;
}

Matrix gemm_nt(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.cols(), "gemm_nt: inner dimensions differ");
  Matrix out(a.rows(), b.rows());
  const std::size_t inner = a.cols();
#pragma omp parallel for schedule(static)
  for (Index r = 0; r < static_cast<Index>(a.rows()); ++r) {
    const double* arow = a.data() + static_cast<std::size_t>(r) * inner;
    for (std::size_t c = 0; c < b.rows(); ++c) {
      const double* brow = b.data() + c * inner;
      double s = 0.0;
      for (std::size_t k = 0; k < inner; ++k) s += arow[k] * brow[k];
      out(static_cast<std::size_t>(r), c) = s;
    }
  }
  return out;
}

Matrix gemm_tn(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), "gemm_tn: inner dimensions differ");
  // Rows of the output are columns of `a`; each thread owns whole output rows
  // and sweeps the shared dimension in order.
  Matrix out(a.cols(), b.cols());
  const std::size_t n = a.rows();
  const std::size_t d = b.cols();
#pragma omp parallel for schedule(static)
  for (Index k = 0; k < static_cast<Index>(a.cols()); ++k) {
    double* dst = out.data() + static_cast<std::size_t>(k) * d;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = a(i, static_cast<std::size_t>(k));
      if (v == 0.0) continue;
      const double* src = b.data() + i * d;
      for (std::size_t c = 0; c < d; ++c) dst[c] += v * src[c];
    }
  }
  return out;
}

Matrix sigmoid_gram(const Matrix& z) {
  Matrix out(z.rows(), z.rows());
  const std::size_t d = z.cols();
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < static_cast<Index>(z.rows()); ++i) {
    const double* zi = z.data() + static_cast<std::size_t>(i) * d;
    for (std::size_t j = 0; j < z.rows(); ++j) {
      const double* zj = z.data() + j * d;
      double dot = 0.0;
      for (std::size_t c = 0; c < d; ++c) dot += zi[c] * zj[c];
      out(static_cast<std::size_t>(i), j) = sigmoid(dot);
    }
  }
  return out;
}

namespace {

constexpr std::size_t kGramBlock = 4;

// Residual rows [i0, i0 + rows) of the Gram fit. Rows are processed together
// so each z_j load serves several independent dot products; every dot and
// every gradient row keeps the plain sequential summation order.
double gram_rows(const Matrix& z, const CsrMatrix& target, std::size_t i0, std::size_t rows,
                 Matrix* grad) {
  const std::size_t n = z.rows();
  const std::size_t d = z.cols();
  const double* zi[kGramBlock];
  double* gi[kGramBlock];
  std::size_t cursor[kGramBlock], end[kGramBlock];
  double acc[kGramBlock] = {};
  for (std::size_t b = 0; b < rows; ++b) {
    zi[b] = z.data() + (i0 + b) * d;
    gi[b] = grad ? grad->data() + (i0 + b) * d : nullptr;
    cursor[b] = target.row_ptr[i0 + b];
    end[b] = target.row_ptr[i0 + b + 1];
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double* zj = z.data() + j * d;
    double dot[kGramBlock] = {};
    if (rows == kGramBlock) {
      for (std::size_t c = 0; c < d; ++c) {
        const double v = zj[c];
        dot[0] += zi[0][c] * v;
        dot[1] += zi[1][c] * v;
        dot[2] += zi[2][c] * v;
        dot[3] += zi[3][c] * v;
      }
    } else {
      for (std::size_t b = 0; b < rows; ++b)
        for (std::size_t c = 0; c < d; ++c) dot[b] += zi[b][c] * zj[c];
    }
    for (std::size_t b = 0; b < rows; ++b) {
      double t = 0.0;
      if (cursor[b] < end[b] && target.col_idx[cursor[b]] == j) t = target.values[cursor[b]++];
      const double s = sigmoid(dot[b]);
      const double r = s - t;
      acc[b] += r * r;
      if (grad) {
        const double g = r * s * (1.0 - s);
        double* out = gi[b];
        for (std::size_t c = 0; c < d; ++c) out[c] += g * zj[c];
      }
    }
  }
  double total = 0.0;
  for (std::size_t b = 0; b < rows; ++b) total += acc[b];
  return total;
}

}  // namespace

GramResidual gram_residual(const Matrix& z, const CsrMatrix& target, bool with_grad) {
  require(target.rows == z.rows() && target.cols == z.rows(),
          "gram_residual: target must be n x n with n = rows(z)");
  const std::size_t n = z.rows();
  GramResidual res;
  if (with_grad) res.grad = Matrix(n, z.cols());
  const std::size_t blocks = (n + kGramBlock - 1) / kGramBlock;
  std::vector<double> block_sums(blocks, 0.0);
#pragma omp parallel for schedule(dynamic, 4)
  for (Index bb = 0; bb < static_cast<Index>(blocks); ++bb) {
    const auto b = static_cast<std::size_t>(bb);
    const std::size_t i0 = b * kGramBlock;
    block_sums[b] = gram_rows(z, target, i0, std::min(kGramBlock, n - i0), with_grad ? &res.grad : nullptr);
  }
  for (double s : block_sums) res.sum_sq += s;
  return res;
}

void normalize_rows(Matrix& rows) {
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < static_cast<Index>(rows.rows()); ++i) {
    auto r = rows.row(static_cast<std::size_t>(i));
    double s = 0.0;
    for (double v : r) s += v * v;
    if (s <= 0.0) continue;
    const double inv = 1.0 / std::sqrt(s);
    for (double& v : r) v *= inv;
  }
}

std::vector<std::size_t> top_k_dot(const Matrix& rows, std::size_t query, std::size_t k,
                                   std::span<const char> eligible) {
  require(eligible.size() == rows.rows(), "top_k_dot: eligibility mask size mismatch");
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(rows.rows());
  const auto q = rows.row(query);
  for (std::size_t j = 0; j < rows.rows(); ++j) {
    if (j == query || !eligible[j]) continue;
    const auto r = rows.row(j);
    double dot = 0.0;
    for (std::size_t c = 0; c < q.size(); ++c) dot += q[c] * r[c];
    scored.emplace_back(dot, j);
  }
  const auto better = [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  };
  const std::size_t take = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<Index>(take), scored.end(),
                    better);
  std::vector<std::size_t> out;
  out.reserve(take);
  for (std::size_t t = 0; t < take; ++t) out.push_back(scored[t].second);
  return out;
}

}  // namespace edge::kernels
