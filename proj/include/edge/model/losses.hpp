#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "edge/augment/augmented_graph.hpp"
#include "edge/core/matrix.hpp"
#include "edge/graph/selection.hpp"

namespace edge {

// Frobenius norm of the difference, or its square.
enum class NormKind { frobenius, squared };

struct LossWeights {
  double alpha = 0.001;
  double beta = 10.0;
  double gamma = 1.0;

  void validate() const;
};

// A loss value and, when requested, its gradient with respect to Z.
struct LossTerm {
  double value = 0.0;
  Matrix grad;
};

inline constexpr std::size_t kDenseThreshold = 5000;
inline constexpr double kProbabilityClamp = 1e-12;

// sigmoid(Z Z^T), dense.
Matrix decode_adjacency(const Matrix& z);
double decode_entry(const Matrix& z, std::size_t i, std::size_t j);

struct ReconstructionOptions {
  NormKind norm = NormKind::frobenius;
  std::size_t dense_threshold = kDenseThreshold;
  // Uniformly sampled entry pairs above the dense threshold.
  std::size_t sample_budget = 1'000'000;
  std::uint64_t seed = 0;
};

// ||A - sigmoid(Z Z^T)|| over all n^2 entries. Above the dense threshold the
// squared norm is estimated as (n^2 / B) * sum of sigmoid^2 over B uniform
// pairs plus the exact correction at the stored entries of A, which is
// unbiased for the squared norm.
LossTerm loss_reconstruction(const CsrMatrix& a, const Matrix& z, const ReconstructionOptions& opt,
                             bool with_grad = true);

struct AlignmentTerm {
  double value = 0.0;
  Matrix grad_k;
  Matrix grad_t;
};

// ||Z_K - R Z_T||. The gradient is zero where the norm is zero.
AlignmentTerm loss_alignment(const Matrix& z_k, const Matrix& z_t, const SelectionMap& r,
                             NormKind norm = NormKind::frobenius, bool with_grad = true);

using NodePair = std::pair<std::size_t, std::size_t>;

// POS holds every (target, textual) edge of the augmented graph. NEG holds up
// to k_neg textual nodes per positive, drawn uniformly from the textual nodes
// not attached to that target; neg_owner[i] is the positive NEG[i] belongs to.
struct LocalitySampleSet {
  std::vector<NodePair> pos;
  std::vector<NodePair> neg;
  std::vector<std::size_t> neg_owner;
  std::size_t k_neg = 1;
};

LocalitySampleSet sample_locality_pairs(const AugmentedGraph& ag, std::size_t k_neg, std::uint64_t seed);

// Mean over positives of -log s(z_e.z_t) - mean_neg log s(-z_e.z_t'), all rows
// from the augmented embedding. Probabilities are clamped to [1e-12, 1 - 1e-12]
// and clamped entries pass no gradient.
LossTerm loss_locality(const Matrix& z_t, const LocalitySampleSet& s, bool with_grad = true);

struct LossParts {
  double l_k = 0.0;
  double l_t = 0.0;
  double l_j = 0.0;
  double l_n = 0.0;
};

double total_loss(const LossParts& parts, const LossWeights& w);

}  // namespace edge
