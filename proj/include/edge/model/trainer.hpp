#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "edge/augment/augmented_graph.hpp"
#include "edge/graph/features.hpp"
#include "edge/graph/sparse_graph.hpp"
#include "edge/model/adam.hpp"
#include "edge/model/gcn.hpp"
#include "edge/model/losses.hpp"

namespace edge {

struct TrainConfig {
  std::size_t epochs = 200;
  double learning_rate = 0.001;
  std::size_t hidden = 320;
  std::size_t embedding = 160;
  LossWeights weights;
  std::size_t negatives = 1;
  std::uint64_t seed = 0;
  bool self_loops = true;
  NormKind norm = NormKind::frobenius;
  std::size_t dense_threshold = kDenseThreshold;
  std::size_t sample_budget = 1'000'000;
  AdamConfig adam;

  void validate() const;
};

struct EncoderState {
  GcnWeights weights;
  AdamMoments w0;
  AdamMoments w1;
};

// Weights and optimizer state. `augmented` is empty for single-graph runs.
struct ModelState {
  EncoderState original;
  EncoderState augmented;
  std::size_t epoch = 0;  // completed epochs

  bool joint() const { return !augmented.weights.w0.empty(); }
};

struct EpochLoss {
  double total = 0.0;
  LossParts parts;
};

struct TrainResult {
  Matrix z_k;
  Matrix z_t;  // empty for single-graph runs
  ModelState state;
  std::vector<EpochLoss> history;
  std::size_t selected_epoch = 0;  // epoch whose Z_K is returned
};

struct TrainOptions {
  // Continue from a saved state; history is prepended to the new records.
  const ModelState* resume = nullptr;
  std::vector<EpochLoss> resume_history;
  // When set, Z_K is taken from the epoch with the highest returned score
  // instead of the final weights.
  std::function<double(const Matrix& z_k)> select;
};

struct JointStep {
  EpochLoss loss;
  Matrix z_k;
  GcnWeights grad_k;
  GcnWeights grad_t;
};

// The full objective at fixed weights, with the epoch selecting the sampled
// negatives and reconstruction pairs. Holds references to its inputs.
class JointObjective {
 public:
  JointObjective(const SparseGraph& kg, const FeatureMatrix& x_k, const AugmentedGraph& akg,
                 const FeatureMatrix& x_t, const TrainConfig& cfg);

  JointStep evaluate(const GcnWeights& w_k, const GcnWeights& w_t, std::size_t epoch,
                     bool with_grad = true) const;

  const NormalizedAdjacency& adjacency_k() const { return adj_k_; }
  const NormalizedAdjacency& adjacency_t() const { return adj_t_; }

 private:
  const SparseGraph& kg_;
  const FeatureMatrix& x_k_;
  const AugmentedGraph& akg_;
  const FeatureMatrix& x_t_;
  const TrainConfig& cfg_;
  SelectionMap r_;
  NormalizedAdjacency adj_k_;
  NormalizedAdjacency adj_t_;
};

// Glorot weights from independent streams: stream 1 for the original-graph
// encoder, stream 2 for the augmented one (skipped when in_augmented is 0).
ModelState init_model(std::size_t in_original, std::size_t in_augmented, const TrainConfig& cfg);

// Joint training of both encoders on L_K + a L_T + b L_J + c L_N.
TrainResult train(const SparseGraph& kg, const FeatureMatrix& x_k, const AugmentedGraph& akg,
                  const FeatureMatrix& x_t, const TrainConfig& cfg, const TrainOptions& opts = {});

// Single-graph auto-encoder on the reconstruction loss alone.
TrainResult train_autoencoder(const SparseGraph& g, const FeatureMatrix& x, const TrainConfig& cfg,
                              const TrainOptions& opts = {});

}  // namespace edge
