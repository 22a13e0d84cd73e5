#include "edge/model/gcn.hpp"

#include <cmath>
#include <random>

#include "edge/core/errors.hpp"
#include "edge/core/kernels.hpp"

namespace edge {
namespace {

Matrix glorot(std::size_t in, std::size_t out, std::mt19937_64& rng) {
  const double r = std::sqrt(6.0 / static_cast<double>(in + out));
  std::uniform_real_distribution<double> u(-r, r);
  Matrix w(in, out);
  for (double& v : w.values()) v = u(rng);
  return w;
}

void check_shapes(const NormalizedAdjacency& adj, const FeatureMatrix& x, const GcnWeights& w) {
  if (adj.matrix.rows != x.rows())
    throw DimensionError("encoder: adjacency has " + std::to_string(adj.matrix.rows) +
                         " rows but features have " + std::to_string(x.rows()));
  if (x.cols() != w.w0.rows())
    throw DimensionError("encoder: feature width " + std::to_string(x.cols()) +
                         " does not match W0 rows " + std::to_string(w.w0.rows()));
  if (w.w0.cols() != w.w1.rows()) throw DimensionError("encoder: W0 and W1 are not chainable");
}

}  // namespace

GcnWeights glorot_weights(std::size_t in, std::size_t hidden, std::size_t out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GcnWeights w;
  w.w0 = glorot(in, hidden, rng);
  w.w1 = glorot(hidden, out, rng);
  return w;
}

GcnForward gcn_forward(const NormalizedAdjacency& adj, const FeatureMatrix& x, const GcnWeights& w) {
  check_shapes(adj, x, w);
  GcnForward f;
  f.hidden = kernels::spmm(adj.matrix, kernels::spmm(x.sparse(), w.w0));
  for (double& v : f.hidden.values()) v = std::tanh(v);
  f.z = kernels::spmm(adj.matrix, kernels::gemm(f.hidden, w.w1));
  return f;
}

GcnWeights gcn_backward(const NormalizedAdjacency& adj, const FeatureMatrix& x, const GcnWeights& w,
                        const GcnForward& fwd, const Matrix& grad_z) {
  check_shapes(adj, x, w);
  if (grad_z.rows() != fwd.z.rows() || grad_z.cols() != fwd.z.cols())
    throw DimensionError("encoder backward: gradient shape differs from Z");
  GcnWeights g;
  const Matrix grad_q = kernels::spmm(adj.matrix, grad_z);
  g.w1 = kernels::gemm_tn(fwd.hidden, grad_q);
  Matrix grad_p = kernels::gemm_nt(grad_q, w.w1);
  const auto h = fwd.hidden.values();
  auto gp = grad_p.values();
  for (std::size_t k = 0; k < gp.size(); ++k) gp[k] *= 1.0 - h[k] * h[k];
  g.w0 = kernels::spmm(x.transposed(), kernels::spmm(adj.matrix, grad_p));
  return g;
}

}  // namespace edge
