#include "edge/graph/features.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "edge/core/errors.hpp"

namespace edge {

FeatureMatrix::FeatureMatrix(CsrMatrix values) : values_(std::move(values)) {
  for (double v : values_.values)
    if (!std::isfinite(v)) throw ValidationError("feature matrix contains a non-finite entry");
  transposed_ = values_.transposed();
}

FeatureMatrix FeatureMatrix::identity(std::size_t n) { return FeatureMatrix(CsrMatrix::identity(n)); }

FeatureMatrix FeatureMatrix::from_dense(const Matrix& dense) {
  return FeatureMatrix(CsrMatrix::from_dense(dense));
}

FeatureMatrix load_features_csv(const std::filesystem::path& path, std::size_t expected_rows) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open features " + path.string());
  std::vector<Triplet> t;
  std::string line;
  std::size_t row = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t col = 0;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t end = line.find(',', pos);
      if (end == std::string::npos) end = line.size();
      std::size_t b = pos, e = end;
      while (b < e && (line[b] == ' ' || line[b] == '\t')) ++b;
      while (e > b && (line[e - 1] == ' ' || line[e - 1] == '\t')) --e;
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(line.data() + b, line.data() + e, v);
      if (ec != std::errc() || ptr != line.data() + e || !std::isfinite(v))
        throw ParseError(path.string() + ": bad feature value in column " + std::to_string(col + 1),
                         row + 1);
      if (v != 0.0) t.push_back({row, col, v});
      ++col;
      pos = end + 1;
    }
    if (row == 0) width = col;
    if (col != width)
      throw ParseError(path.string() + ": expected " + std::to_string(width) + " columns", row + 1);
    ++row;
  }
  if (row != expected_rows)
    throw ValidationError(path.string() + ": " + std::to_string(row) + " feature rows for " +
                          std::to_string(expected_rows) + " nodes");
  return FeatureMatrix(CsrMatrix::from_triplets(row, width, std::move(t)));
}

}  // namespace edge
