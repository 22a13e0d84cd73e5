#include "edge/graph/selection.hpp"

#include <algorithm>
#include <unordered_map>

#include "edge/core/errors.hpp"

namespace edge {

SelectionMap::SelectionMap(std::vector<std::size_t> targets, std::size_t augmented_size)
    : targets_(std::move(targets)), augmented_size_(augmented_size) {
  std::vector<char> seen(augmented_size, 0);
  for (std::size_t t : targets_) {
    if (t >= augmented_size) throw AlignmentError("selection target outside augmented graph");
    if (seen[t]) throw AlignmentError("selection map is not injective");
    seen[t] = 1;
  }
}

SelectionMap SelectionMap::identity(std::size_t n_original, std::size_t n_augmented) {
  std::vector<std::size_t> t(n_original);
  for (std::size_t i = 0; i < n_original; ++i) t[i] = i;
  return SelectionMap(std::move(t), n_augmented);
}

Matrix SelectionMap::select(const Matrix& m) const {
  if (m.rows() != augmented_size_)
    throw DimensionError("selection expects " + std::to_string(augmented_size_) + " rows, got " +
                         std::to_string(m.rows()));
  Matrix out(targets_.size(), m.cols());
  for (std::size_t i = 0; i < targets_.size(); ++i) {
    auto src = m.row(targets_[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

void SelectionMap::scatter_add(const Matrix& src, Matrix& dst, double scale) const {
  if (src.rows() != targets_.size() || dst.rows() != augmented_size_ || src.cols() != dst.cols())
    throw DimensionError("scatter_add shape mismatch");
  for (std::size_t i = 0; i < targets_.size(); ++i) {
    auto s = src.row(i);
    auto d = dst.row(targets_[i]);
    for (std::size_t c = 0; c < s.size(); ++c) d[c] += scale * s[c];
  }
}

Matrix SelectionMap::to_dense() const {
  Matrix r(targets_.size(), augmented_size_);
  for (std::size_t i = 0; i < targets_.size(); ++i) r(i, targets_[i]) = 1.0;
  return r;
}

SelectionMap build_selection_map(const SparseGraph& original,
                                 std::span<const NodeOrigin> augmented_provenance) {
  std::unordered_map<std::string, std::size_t> by_id;
  by_id.reserve(augmented_provenance.size());
  for (std::size_t k = 0; k < augmented_provenance.size(); ++k)
    if (!augmented_provenance[k].is_textual()) by_id.emplace(augmented_provenance[k].name, k);
  std::vector<std::size_t> targets(original.node_count());
  for (std::size_t i = 0; i < original.node_count(); ++i) {
    auto it = by_id.find(original.name(i));
    if (it == by_id.end())
      throw AlignmentError("original entity '" + original.name(i) +
                           "' is missing from the augmented graph");
    targets[i] = it->second;
  }
  return SelectionMap(std::move(targets), augmented_provenance.size());
}

}  // namespace edge
