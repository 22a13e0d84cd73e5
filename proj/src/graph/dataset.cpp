#include "edge/graph/dataset.hpp"

#include <fstream>
#include <map>

#include <spdlog/spdlog.h>

#include "edge/core/errors.hpp"

namespace edge {
namespace {

template <typename Fn>
void for_each_tab_line(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(path.string() + ": expected 'id<TAB>value'", lineno);
    fn(line.substr(0, tab), line.substr(tab + 1), lineno);
  }
}

}  // namespace

std::vector<std::string> load_node_texts(const std::filesystem::path& path, const SparseGraph& g) {
  std::vector<std::string> texts(g.node_count());
  std::size_t unknown = 0;
  for_each_tab_line(path, [&](std::string id, std::string text, std::size_t) {
    auto idx = g.index_of(id);
    if (!idx) {
      ++unknown;
      return;
    }
    texts[*idx] = std::move(text);
  });
  if (unknown) spdlog::warn("{}: {} text line(s) name ids outside the graph", path.string(), unknown);
  return texts;
}

ClassLabels load_labels(const std::filesystem::path& path, const SparseGraph& g) {
  std::vector<std::pair<std::size_t, std::string>> raw;
  std::map<std::string, int> classes;
  std::size_t unknown = 0;
  for_each_tab_line(path, [&](std::string id, std::string cls, std::size_t lineno) {
    if (cls.empty()) throw ParseError(path.string() + ": empty class name", lineno);
    auto idx = g.index_of(id);
    if (!idx) {
      ++unknown;
      return;
    }
    classes.emplace(cls, 0);
    raw.emplace_back(*idx, std::move(cls));
  });
  if (unknown) spdlog::warn("{}: {} label line(s) name ids outside the graph", path.string(), unknown);
  ClassLabels out;
  int next = 0;
  for (auto& [name, index] : classes) {
    index = next++;
    out.class_names.push_back(name);
  }
  out.per_node.assign(g.node_count(), -1);
  for (const auto& [node, cls] : raw) out.per_node[node] = classes.at(cls);
  return out;
}

}  // namespace edge
