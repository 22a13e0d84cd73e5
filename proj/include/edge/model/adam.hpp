#pragma once

#include <cstddef>

#include "edge/core/matrix.hpp"

namespace edge {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamMoments {
  Matrix m;
  Matrix v;

  static AdamMoments zeros_like(const Matrix& w) {
    return {Matrix(w.rows(), w.cols()), Matrix(w.rows(), w.cols())};
  }
};

// One bias-corrected Adam update; `step` is the 1-based step count.
void adam_step(Matrix& w, const Matrix& grad, AdamMoments& moments, std::size_t step, double lr,
               const AdamConfig& cfg = {});

}  // namespace edge
