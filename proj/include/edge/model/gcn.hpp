#pragma once

#include <cstdint>

#include "edge/core/matrix.hpp"
#include "edge/graph/features.hpp"
#include "edge/graph/normalize.hpp"

namespace edge {

// Two-layer encoder Z = A tanh(A X W0) W1. The second layer is linear.
struct GcnWeights {
  Matrix w0;
  Matrix w1;
};

// Glorot uniform, range sqrt(6 / (fan_in + fan_out)).
GcnWeights glorot_weights(std::size_t in, std::size_t hidden, std::size_t out, std::uint64_t seed);

struct GcnForward {
  Matrix hidden;  // tanh(A X W0)
  Matrix z;
};

GcnForward gcn_forward(const NormalizedAdjacency& adj, const FeatureMatrix& x, const GcnWeights& w);

inline Matrix gcn_encode(const NormalizedAdjacency& adj, const FeatureMatrix& x, const GcnWeights& w) {
  return gcn_forward(adj, x, w).z;
}

// Weight gradients from dL/dZ. Relies on A being symmetric.
GcnWeights gcn_backward(const NormalizedAdjacency& adj, const FeatureMatrix& x, const GcnWeights& w,
                        const GcnForward& fwd, const Matrix& grad_z);

}  // namespace edge
