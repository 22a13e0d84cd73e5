#include "edge/graph/normalize.hpp"

#include <cmath>

namespace edge {

NormalizedAdjacency normalize_adjacency(const SparseGraph& g, bool add_self_loops) {
  const std::size_t n = g.node_count();
  const CsrMatrix& a = g.adjacency();
  NormalizedAdjacency out;
  out.self_loops = add_self_loops;
  out.degrees.resize(n);
  std::vector<double> inv_root(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double d = 0.0;
    for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) d += a.values[k];
    if (add_self_loops) d += 1.0;
    out.degrees[i] = d;
    if (d > 0.0) inv_root[i] = 1.0 / std::sqrt(d);
  }

  CsrMatrix& m = out.matrix;
  m.rows = n;
  m.cols = n;
  m.row_ptr.assign(n + 1, 0);
  m.col_idx.reserve(a.nnz() + (add_self_loops ? n : 0));
  m.values.reserve(m.col_idx.capacity());
  for (std::size_t i = 0; i < n; ++i) {
    bool diag_done = !add_self_loops;
    for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const std::size_t j = a.col_idx[k];
      if (!diag_done && j > i) {
        m.col_idx.push_back(i);
        m.values.push_back(inv_root[i] * inv_root[i]);
        diag_done = true;
      }
      m.col_idx.push_back(j);
      m.values.push_back(inv_root[i] * a.values[k] * inv_root[j]);
    }
    if (!diag_done) {
      m.col_idx.push_back(i);
      m.values.push_back(inv_root[i] * inv_root[i]);
    }
    m.row_ptr[i + 1] = m.col_idx.size();
  }
  return out;
}

}  // namespace edge
