#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "edge/graph/sparse_graph.hpp"

namespace edge {

struct ClassLabels {
  std::vector<int> per_node;  // -1 when unlabeled
  std::vector<std::string> class_names;
};

// `id<TAB>free text` per line. Nodes without a line get an empty text; ids
// absent from the graph are skipped with a warning.
std::vector<std::string> load_node_texts(const std::filesystem::path& path, const SparseGraph& g);

// `id<TAB>class-name` per line. Class indices follow sorted class names.
ClassLabels load_labels(const std::filesystem::path& path, const SparseGraph& g);

}  // namespace edge
