#include "edge/model/trainer.hpp"

#include <cmath>
#include <sstream>

#include <spdlog/spdlog.h>

#include "edge/core/errors.hpp"
#include "edge/core/hash.hpp"

namespace edge {
namespace {

EncoderState init_encoder(std::size_t in, const TrainConfig& cfg, std::uint64_t stream) {
  EncoderState e;
  e.weights = glorot_weights(in, cfg.hidden, cfg.embedding, mix_seed(cfg.seed, stream));
  e.w0 = AdamMoments::zeros_like(e.weights.w0);
  e.w1 = AdamMoments::zeros_like(e.weights.w1);
  return e;
}

std::uint64_t epoch_seed(const TrainConfig& cfg, std::size_t epoch, std::uint64_t stream) {
  return mix_seed(mix_seed(cfg.seed, 0x100 + epoch), stream);
}

ReconstructionOptions recon_options(const TrainConfig& cfg, std::uint64_t seed) {
  return {cfg.norm, cfg.dense_threshold, cfg.sample_budget, seed};
}

std::string breakdown(std::size_t epoch, const LossParts& p) {
  std::ostringstream os;
  os << "epoch " << epoch << ": L_K=" << p.l_k << " L_T=" << p.l_t << " L_J=" << p.l_j
     << " L_N=" << p.l_n;
  return os.str();
}

void require_finite(const Matrix& g, const char* term, std::size_t epoch) {
  if (!g.all_finite())
    throw NumericalError("non-finite gradient from " + std::string(term) + " at epoch " +
                         std::to_string(epoch));
}

void add_scaled(Matrix& dst, const Matrix& src, double scale) {
  if (scale == 0.0) return;
  auto d = dst.values();
  const auto s = src.values();
  for (std::size_t k = 0; k < d.size(); ++k) d[k] += scale * s[k];
}

void update(EncoderState& e, const GcnWeights& g, std::size_t step, const TrainConfig& cfg) {
  adam_step(e.weights.w0, g.w0, e.w0, step, cfg.learning_rate, cfg.adam);
  adam_step(e.weights.w1, g.w1, e.w1, step, cfg.learning_rate, cfg.adam);
}

void check_state(const ModelState& s, std::size_t in_k, std::size_t in_t, const TrainConfig& cfg) {
  const auto ok = [&](const EncoderState& e, std::size_t in) {
    return e.weights.w0.rows() == in && e.weights.w0.cols() == cfg.hidden &&
           e.weights.w1.rows() == cfg.hidden && e.weights.w1.cols() == cfg.embedding;
  };
  if (!ok(s.original, in_k) || (in_t > 0 && !ok(s.augmented, in_t)))
    throw DimensionError("resumed model state does not match the configured shapes");
  if (s.epoch > cfg.epochs)
    throw ConfigError("resumed state has " + std::to_string(s.epoch) +
                      " epochs, more than the configured " + std::to_string(cfg.epochs));
}

// Keeps the best-scoring Z_K when selection is enabled.
struct Selector {
  explicit Selector(const TrainOptions& o) : opts(o) {}
  const TrainOptions& opts;
  double best = -INFINITY;
  Matrix z;
  std::size_t epoch = 0;

  void offer(const Matrix& z_k, std::size_t e) {
    if (!opts.select) return;
    const double s = opts.select(z_k);
    if (s > best) {
      best = s;
      z = z_k;
      epoch = e;
    }
  }
};

}  // namespace

void TrainConfig::validate() const {
  if (epochs > 1'000'000) throw ConfigError("epochs is unreasonably large");
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
  if (hidden == 0 || embedding == 0) throw ConfigError("layer sizes must be positive");
  if (negatives == 0) throw ConfigError("negatives per positive must be >= 1");
  if (sample_budget == 0) throw ConfigError("reconstruction sample budget must be positive");
  weights.validate();
}

ModelState init_model(std::size_t in_original, std::size_t in_augmented, const TrainConfig& cfg) {
  ModelState s;
  s.original = init_encoder(in_original, cfg, 1);
  if (in_augmented > 0) s.augmented = init_encoder(in_augmented, cfg, 2);
  return s;
}

JointObjective::JointObjective(const SparseGraph& kg, const FeatureMatrix& x_k,
                               const AugmentedGraph& akg, const FeatureMatrix& x_t,
                               const TrainConfig& cfg)
    : kg_(kg), x_k_(x_k), akg_(akg), x_t_(x_t), cfg_(cfg) {
  if (x_k.rows() != kg.node_count()) throw DimensionError("X_K rows differ from the original node count");
  if (x_t.rows() != akg.node_count()) throw DimensionError("X_T rows differ from the augmented node count");
  r_ = akg.selection(kg);
  adj_k_ = normalize_adjacency(kg, cfg.self_loops);
  adj_t_ = normalize_adjacency(akg.graph, cfg.self_loops);
}

JointStep JointObjective::evaluate(const GcnWeights& w_k, const GcnWeights& w_t, std::size_t epoch,
                                   bool with_grad) const {
  const auto fk = gcn_forward(adj_k_, x_k_, w_k);
  const auto ft = gcn_forward(adj_t_, x_t_, w_t);

  auto lk = loss_reconstruction(kg_.adjacency(), fk.z,
                                recon_options(cfg_, epoch_seed(cfg_, epoch, 1)), with_grad);
  auto lt = loss_reconstruction(akg_.graph.adjacency(), ft.z,
                                recon_options(cfg_, epoch_seed(cfg_, epoch, 2)), with_grad);
  auto lj = loss_alignment(fk.z, ft.z, r_, cfg_.norm, with_grad);
  const auto pairs = sample_locality_pairs(akg_, cfg_.negatives, epoch_seed(cfg_, epoch, 3));
  auto ln = loss_locality(ft.z, pairs, with_grad);

  JointStep out;
  out.loss.parts = {lk.value, lt.value, lj.value, ln.value};
  out.loss.total = total_loss(out.loss.parts, cfg_.weights);
  if (!std::isfinite(out.loss.total))
    throw NumericalError("non-finite loss at " + breakdown(epoch, out.loss.parts));
  out.z_k = fk.z;
  if (!with_grad) return out;

  const auto& w = cfg_.weights;
  require_finite(lk.grad, "L_K", epoch);
  Matrix gk = std::move(lk.grad);
  Matrix gt(ft.z.rows(), ft.z.cols());
  if (w.alpha != 0.0) require_finite(lt.grad, "L_T", epoch);
  add_scaled(gt, lt.grad, w.alpha);
  if (w.beta != 0.0) {
    require_finite(lj.grad_k, "L_J", epoch);
    require_finite(lj.grad_t, "L_J", epoch);
  }
  add_scaled(gk, lj.grad_k, w.beta);
  add_scaled(gt, lj.grad_t, w.beta);
  if (w.gamma != 0.0) require_finite(ln.grad, "L_N", epoch);
  add_scaled(gt, ln.grad, w.gamma);

  out.grad_k = gcn_backward(adj_k_, x_k_, w_k, fk, gk);
  out.grad_t = gcn_backward(adj_t_, x_t_, w_t, ft, gt);
  return out;
}

TrainResult train(const SparseGraph& kg, const FeatureMatrix& x_k, const AugmentedGraph& akg,
                  const FeatureMatrix& x_t, const TrainConfig& cfg, const TrainOptions& opts) {
  cfg.validate();
  const JointObjective objective(kg, x_k, akg, x_t, cfg);

  TrainResult out;
  out.state = opts.resume ? *opts.resume : init_model(x_k.cols(), x_t.cols(), cfg);
  if (opts.resume) {
    if (!out.state.joint()) throw ConfigError("resumed state is not a joint model");
    check_state(out.state, x_k.cols(), x_t.cols(), cfg);
  }
  out.history = opts.resume_history;
  Selector sel(opts);
  ModelState& s = out.state;

  for (std::size_t epoch = s.epoch; epoch < cfg.epochs; ++epoch) {
    auto step = objective.evaluate(s.original.weights, s.augmented.weights, epoch);
    sel.offer(step.z_k, epoch);
    out.history.push_back(step.loss);
    spdlog::debug("{} total={}", breakdown(epoch, step.loss.parts), step.loss.total);
    update(s.original, step.grad_k, epoch + 1, cfg);
    update(s.augmented, step.grad_t, epoch + 1, cfg);
    s.epoch = epoch + 1;
  }

  out.z_k = gcn_encode(objective.adjacency_k(), x_k, s.original.weights);
  out.z_t = gcn_encode(objective.adjacency_t(), x_t, s.augmented.weights);
  if (!out.z_k.all_finite() || !out.z_t.all_finite())
    throw NumericalError("non-finite embeddings after " + std::to_string(s.epoch) + " epochs");
  out.selected_epoch = s.epoch;
  sel.offer(out.z_k, s.epoch);
  if (opts.select) {
    out.z_k = std::move(sel.z);
    out.selected_epoch = sel.epoch;
  }
  return out;
}

TrainResult train_autoencoder(const SparseGraph& g, const FeatureMatrix& x, const TrainConfig& cfg,
                              const TrainOptions& opts) {
  cfg.validate();
  if (x.rows() != g.node_count()) throw DimensionError("feature rows differ from the node count");
  const auto adj = normalize_adjacency(g, cfg.self_loops);

  TrainResult out;
  out.state = opts.resume ? *opts.resume : init_model(x.cols(), 0, cfg);
  if (opts.resume) check_state(out.state, x.cols(), 0, cfg);
  out.history = opts.resume_history;
  Selector sel(opts);
  ModelState& s = out.state;

  for (std::size_t epoch = s.epoch; epoch < cfg.epochs; ++epoch) {
    const auto f = gcn_forward(adj, x, s.original.weights);
    sel.offer(f.z, epoch);
    auto l = loss_reconstruction(g.adjacency(), f.z, recon_options(cfg, epoch_seed(cfg, epoch, 1)));
    EpochLoss rec;
    rec.parts.l_k = l.value;
    rec.total = l.value;
    if (!std::isfinite(rec.total))
      throw NumericalError("non-finite loss at " + breakdown(epoch, rec.parts));
    out.history.push_back(rec);
    spdlog::debug("{} total={}", breakdown(epoch, rec.parts), rec.total);
    require_finite(l.grad, "L_K", epoch);
    update(s.original, gcn_backward(adj, x, s.original.weights, f, l.grad), epoch + 1, cfg);
    s.epoch = epoch + 1;
  }

  out.z_k = gcn_encode(adj, x, s.original.weights);
  if (!out.z_k.all_finite())
    throw NumericalError("non-finite embeddings after " + std::to_string(s.epoch) + " epochs");
  out.selected_epoch = s.epoch;
  sel.offer(out.z_k, s.epoch);
  if (opts.select) {
    out.z_k = std::move(sel.z);
    out.selected_epoch = sel.epoch;
  }
  return out;
}

}  // namespace edge
