#pragma once

#include <vector>

#include "edge/core/matrix.hpp"
#include "edge/graph/sparse_graph.hpp"

namespace edge {

// D^{-1/2} (A [+ I]) D^{-1/2}. Zero-degree nodes get a zero inverse root, so
// their rows and columns are empty.
struct NormalizedAdjacency {
  CsrMatrix matrix;
  std::vector<double> degrees;
  bool self_loops = true;
};

NormalizedAdjacency normalize_adjacency(const SparseGraph& g, bool add_self_loops = true);

}  // namespace edge
