#include "edge/core/errors.hpp"
#include "edge/core/kernels.hpp"

namespace edge::kernels::serial {

Matrix spmm(const CsrMatrix& a, const Matrix& b) {
  if (a.cols != b.rows()) throw DimensionError("spmm: inner dimensions differ");
  Matrix out(a.rows, b.cols());
  for (std::size_t r = 0; r < a.rows; ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) {
      double s = 0.0;
      for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k)
        s += a.values[k] * b(a.col_idx[k], c);
      out(r, c) = s;
    }
  return out;
}

Matrix gemm(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("gemm: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

Matrix gemm_nt(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw DimensionError("gemm_nt: inner dimensions differ");
  Matrix out(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(j, k);
      out(i, j) = s;
    }
  return out;
}

Matrix gemm_tn(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("gemm_tn: inner dimensions differ");
  Matrix out(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.rows(); ++k) s += a(k, i) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

Matrix sigmoid_gram(const Matrix& z) {
  Matrix out(z.rows(), z.rows());
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.rows(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < z.cols(); ++k) s += z(i, k) * z(j, k);
      out(i, j) = sigmoid(s);
    }
  return out;
}

GramResidual gram_residual(const Matrix& z, const CsrMatrix& target, bool with_grad) {
  if (target.rows != z.rows() || target.cols != z.rows())
    throw DimensionError("gram_residual: target must be n x n with n = rows(z)");
  const Matrix s = sigmoid_gram(z);
  const Matrix t = target.to_dense();
  GramResidual res;
  if (with_grad) res.grad = Matrix(z.rows(), z.cols());
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.rows(); ++j) {
      const double r = s(i, j) - t(i, j);
      res.sum_sq += r * r;
      if (with_grad) {
        const double g = r * s(i, j) * (1.0 - s(i, j));
        for (std::size_t k = 0; k < z.cols(); ++k) res.grad(i, k) += g * z(j, k);
      }
    }
  return res;
}

}  // namespace edge::kernels::serial
