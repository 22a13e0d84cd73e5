#include "edge/model/adam.hpp"

#include <cmath>

#include "edge/core/errors.hpp"

namespace edge {

void adam_step(Matrix& w, const Matrix& grad, AdamMoments& moments, std::size_t step, double lr,
               const AdamConfig& cfg) {
  if (grad.rows() != w.rows() || grad.cols() != w.cols() || moments.m.size() != w.size() ||
      moments.v.size() != w.size())
    throw DimensionError("adam: parameter, gradient and moment shapes differ");
  if (step == 0) throw ConfigError("adam: step count starts at 1");
  const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
  const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
  auto p = w.values();
  const auto g = grad.values();
  auto m = moments.m.values();
  auto v = moments.v.values();
  for (std::size_t k = 0; k < p.size(); ++k) {
    m[k] = cfg.beta1 * m[k] + (1.0 - cfg.beta1) * g[k];
    v[k] = cfg.beta2 * v[k] + (1.0 - cfg.beta2) * g[k] * g[k];
    p[k] -= lr * (m[k] / c1) / (std::sqrt(v[k] / c2) + cfg.epsilon);
  }
}

}  // namespace edge
