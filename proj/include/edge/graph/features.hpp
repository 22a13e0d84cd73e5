#pragma once

#include <cstddef>
#include <filesystem>

#include "edge/core/matrix.hpp"

namespace edge {

// n x D node feature matrix. Stored sparse together with its transpose, which
// the encoder needs for the first-layer weight gradient. Entries are finite.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  explicit FeatureMatrix(CsrMatrix values);

  static FeatureMatrix identity(std::size_t n);
  static FeatureMatrix from_dense(const Matrix& dense);

  std::size_t rows() const { return values_.rows; }
  std::size_t cols() const { return values_.cols; }
  const CsrMatrix& sparse() const { return values_; }
  const CsrMatrix& transposed() const { return transposed_; }
  Matrix dense() const { return values_.to_dense(); }

 private:
  CsrMatrix values_;
  CsrMatrix transposed_;
};

// Header-less CSV, one row per node in id-map order.
FeatureMatrix load_features_csv(const std::filesystem::path& path, std::size_t expected_rows);

}  // namespace edge
