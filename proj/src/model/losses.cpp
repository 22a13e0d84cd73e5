#include "edge/model/losses.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <spdlog/spdlog.h>

#include "edge/core/errors.hpp"
#include "edge/core/kernels.hpp"

namespace edge {
namespace {

double dot(const Matrix& z, std::size_t i, std::size_t j) {
  const auto a = z.row(i);
  const auto b = z.row(j);
  double s = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) s += a[c] * b[c];
  return s;
}

void axpy_row(Matrix& g, std::size_t i, double scale, const Matrix& z, std::size_t j) {
  auto gi = g.row(i);
  const auto zj = z.row(j);
  for (std::size_t c = 0; c < gi.size(); ++c) gi[c] += scale * zj[c];
}

// Turns a squared sum and its gradient into the requested norm in place.
void finish_norm(LossTerm& t, double sum_sq, NormKind norm, bool with_grad) {
  if (norm == NormKind::squared) {
    t.value = sum_sq;
    return;
  }
  t.value = std::sqrt(std::max(sum_sq, 0.0));
  if (!with_grad) return;
  const double scale = t.value > 0.0 ? 0.5 / t.value : 0.0;
  for (double& v : t.grad.values()) v *= scale;
}

// -log sigmoid(x) with clamping, and its derivative in x.
std::pair<double, double> neg_log_sigmoid(double x) {
  double p = sigmoid(x);
  if (p < kProbabilityClamp) return {-std::log(kProbabilityClamp), 0.0};
  if (p > 1.0 - kProbabilityClamp) return {-std::log(1.0 - kProbabilityClamp), 0.0};
  return {-std::log(p), p - 1.0};
}

}  // namespace

void LossWeights::validate() const {
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !(gamma >= 0.0))
    throw ConfigError("loss weights alpha, beta, gamma must be non-negative");
}

Matrix decode_adjacency(const Matrix& z) { return kernels::sigmoid_gram(z); }

double decode_entry(const Matrix& z, std::size_t i, std::size_t j) { return sigmoid(dot(z, i, j)); }

LossTerm loss_reconstruction(const CsrMatrix& a, const Matrix& z, const ReconstructionOptions& opt,
                             bool with_grad) {
  const std::size_t n = z.rows();
  if (a.rows != n || a.cols != n)
    throw DimensionError("reconstruction: adjacency is " + std::to_string(a.rows) + "x" +
                         std::to_string(a.cols) + " but Z has " + std::to_string(n) + " rows");
  LossTerm t;
  if (n == 0) {
    if (with_grad) t.grad = Matrix(0, z.cols());
    return t;
  }
  double sum_sq = 0.0;
  if (n <= opt.dense_threshold) {
    auto res = kernels::gram_residual(z, a, with_grad);
    sum_sq = res.sum_sq;
    if (with_grad) {
      t.grad = std::move(res.grad);
      for (double& v : t.grad.values()) v *= 4.0;
    }
  } else {
    if (opt.sample_budget == 0) throw ConfigError("reconstruction: sample budget must be positive");
    if (with_grad) t.grad = Matrix(n, z.cols());
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const double w = static_cast<double>(n) * static_cast<double>(n) /
                     static_cast<double>(opt.sample_budget);
    double sampled = 0.0;
    for (std::size_t b = 0; b < opt.sample_budget; ++b) {
      const std::size_t i = pick(rng);
      const std::size_t j = pick(rng);
      const double s = decode_entry(z, i, j);
      sampled += s * s;
      if (with_grad) {
        // d(s^2)/dx = 2 s s'
        const double g = w * 2.0 * s * s * (1.0 - s);
        axpy_row(t.grad, i, g, z, j);
        axpy_row(t.grad, j, g, z, i);
      }
    }
    sum_sq = w * sampled;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
        const std::size_t j = a.col_idx[k];
        const double v = a.values[k];
        const double s = decode_entry(z, i, j);
        // (v - s)^2 - s^2 = v^2 - 2 v s
        sum_sq += v * v - 2.0 * v * s;
        if (with_grad) {
          const double g = -2.0 * v * s * (1.0 - s);
          axpy_row(t.grad, i, g, z, j);
          axpy_row(t.grad, j, g, z, i);
        }
      }
  }
  finish_norm(t, sum_sq, opt.norm, with_grad);
  return t;
}

AlignmentTerm loss_alignment(const Matrix& z_k, const Matrix& z_t, const SelectionMap& r,
                             NormKind norm, bool with_grad) {
  if (r.domain_size() != z_k.rows())
    throw DimensionError("alignment: selection map covers " + std::to_string(r.domain_size()) +
                         " entities but Z_K has " + std::to_string(z_k.rows()) + " rows");
  if (r.augmented_size() != z_t.rows())
    throw DimensionError("alignment: selection map targets " + std::to_string(r.augmented_size()) +
                         " rows but Z_T has " + std::to_string(z_t.rows()));
  if (z_k.cols() != z_t.cols()) throw DimensionError("alignment: embedding widths differ");
  Matrix diff = r.select(z_t);
  const auto k = z_k.values();
  auto d = diff.values();
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = k[i] - d[i];
    sum_sq += d[i] * d[i];
  }
  AlignmentTerm t;
  double scale = 2.0;
  if (norm == NormKind::squared) {
    t.value = sum_sq;
  } else {
    t.value = std::sqrt(sum_sq);
    scale = t.value > 0.0 ? 1.0 / t.value : 0.0;
  }
  if (with_grad) {
    for (double& v : d) v *= scale;
    t.grad_t = Matrix(z_t.rows(), z_t.cols());
    r.scatter_add(diff, t.grad_t, -1.0);
    t.grad_k = std::move(diff);
  }
  return t;
}

LocalitySampleSet sample_locality_pairs(const AugmentedGraph& ag, std::size_t k_neg, std::uint64_t seed) {
  LocalitySampleSet s;
  s.k_neg = k_neg;
  const auto textual = ag.textual_nodes();
  if (textual.empty()) return s;
  std::mt19937_64 rng(seed);
  std::size_t starved = 0;
  std::vector<std::size_t> attached;
  for (std::size_t e = 0; e < ag.node_count(); ++e) {
    if (ag.provenance[e].is_textual()) continue;
    attached.clear();
    for (std::size_t nb : ag.graph.neighbors(e))
      if (ag.provenance[nb].is_textual())
        attached.push_back(static_cast<std::size_t>(
            std::lower_bound(textual.begin(), textual.end(), nb) - textual.begin()));
    if (attached.empty()) continue;
    // neighbors() is sorted, so attached positions are too.
    const std::size_t available = textual.size() - attached.size();
    if (available == 0) ++starved;
    for (std::size_t p : attached) {
      s.pos.emplace_back(e, textual[p]);
      if (available == 0) continue;
      std::uniform_int_distribution<std::size_t> pick(0, available - 1);
      for (std::size_t k = 0; k < k_neg; ++k) {
        std::size_t r = pick(rng);
        for (std::size_t a : attached)
          if (a <= r) ++r;
        s.neg.emplace_back(e, textual[r]);
        s.neg_owner.push_back(s.pos.size() - 1);
      }
    }
  }
  if (starved > 0)
    spdlog::debug("{} targets are attached to every textual node and get no negatives", starved);
  return s;
}

LossTerm loss_locality(const Matrix& z_t, const LocalitySampleSet& s, bool with_grad) {
  LossTerm t;
  if (with_grad) t.grad = Matrix(z_t.rows(), z_t.cols());
  if (s.pos.empty()) return t;
  const double inv_p = 1.0 / static_cast<double>(s.pos.size());
  std::vector<std::size_t> neg_count(s.pos.size(), 0);
  for (std::size_t o : s.neg_owner) ++neg_count[o];
  double sum = 0.0;
  for (const auto& [e, x] : s.pos) {
    if (e >= z_t.rows() || x >= z_t.rows()) throw DimensionError("locality: pair index out of range");
    const auto [l, g] = neg_log_sigmoid(dot(z_t, e, x));
    sum += l;
    if (with_grad && g != 0.0) {
      axpy_row(t.grad, e, g * inv_p, z_t, x);
      axpy_row(t.grad, x, g * inv_p, z_t, e);
    }
  }
  for (std::size_t k = 0; k < s.neg.size(); ++k) {
    const auto [e, x] = s.neg[k];
    if (e >= z_t.rows() || x >= z_t.rows()) throw DimensionError("locality: pair index out of range");
    const double w = 1.0 / static_cast<double>(neg_count[s.neg_owner[k]]);
    // -log s(-y); derivative wrt y is -(d/du of -log s(u)) at u = -y.
    const auto [l, g] = neg_log_sigmoid(-dot(z_t, e, x));
    sum += w * l;
    if (with_grad && g != 0.0) {
      axpy_row(t.grad, e, -g * w * inv_p, z_t, x);
      axpy_row(t.grad, x, -g * w * inv_p, z_t, e);
    }
  }
  t.value = sum * inv_p;
  return t;
}

double total_loss(const LossParts& p, const LossWeights& w) {
  return p.l_k + w.alpha * p.l_t + w.beta * p.l_j + w.gamma * p.l_n;
}

}  // namespace edge
