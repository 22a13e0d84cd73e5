#include "edge/augment/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "edge/core/errors.hpp"
#include "edge/core/hash.hpp"
#include "edge/core/kernels.hpp"

namespace edge {

CsrMatrix tfidf_vectors(const TextCorpus& corpus) {
  std::vector<Triplet> t;
  for (std::size_t d = 0; d < corpus.doc_count(); ++d) {
    std::vector<std::size_t> terms = corpus.docs[d];
    std::sort(terms.begin(), terms.end());
    const std::size_t first = t.size();
    double norm = 0.0;
    for (std::size_t k = 0; k < terms.size();) {
      std::size_t e = k;
      while (e < terms.size() && terms[e] == terms[k]) ++e;
      const double w = static_cast<double>(e - k) * corpus.idf(terms[k]);
      t.push_back({d, terms[k], w});
      norm += w * w;
      k = e;
    }
    if (norm > 0.0) {
      const double inv = 1.0 / std::sqrt(norm);
      for (std::size_t k = first; k < t.size(); ++k) t[k].value *= inv;
    }
  }
  return CsrMatrix::from_triplets(corpus.doc_count(), corpus.vocab_size(), std::move(t));
}

namespace {

Matrix projection(std::size_t vocab, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(mix_seed(seed, 0x5e3a));
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix p(vocab, dim);
  for (double& v : p.values()) v = normal(rng);
  if (vocab <= dim) {
    // Modified Gram-Schmidt, two passes.
    for (std::size_t i = 0; i < vocab; ++i) {
      auto ri = p.row(i);
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t j = 0; j < i; ++j) {
          auto rj = p.row(j);
          double dot = 0.0;
          for (std::size_t c = 0; c < dim; ++c) dot += ri[c] * rj[c];
          for (std::size_t c = 0; c < dim; ++c) ri[c] -= dot * rj[c];
        }
      double s = 0.0;
      for (double v : ri) s += v * v;
      const double inv = 1.0 / std::sqrt(s);
      for (double& v : ri) v *= inv;
    }
  } else {
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (double& v : p.values()) v *= scale;
  }
  return p;
}

}  // namespace

Matrix semantic_embeddings(const TextCorpus& corpus, std::size_t dim, std::uint64_t seed) {
  if (corpus.doc_count() == 0) throw ConfigError("semantic embeddings: empty corpus");
  if (corpus.vocab_size() == 0) throw ConfigError("semantic embeddings: empty vocabulary");
  if (dim == 0) throw ConfigError("semantic embeddings: dim must be positive");
  Matrix out = kernels::spmm(tfidf_vectors(corpus), projection(corpus.vocab_size(), dim, seed));
  kernels::normalize_rows(out);
  return out;
}

Matrix structural_embeddings(const SparseGraph& g, const WalkConfig& cfg, std::uint64_t seed) {
  if (g.edge_count() == 0) throw ConfigError("structural embeddings need at least one edge");
  if (cfg.dim == 0 || cfg.walk_length < 2 || cfg.window == 0 || cfg.walks_per_node == 0)
    throw ConfigError("structural embeddings: invalid walk configuration");
  const std::size_t n = g.node_count();
  const std::size_t dim = cfg.dim;
  std::mt19937_64 rng(mix_seed(seed, 0xd33f));

  std::vector<std::vector<std::size_t>> walks;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<double> freq(n, 0.0);
  for (std::size_t pass = 0; pass < cfg.walks_per_node; ++pass) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start : order) {
      if (g.degree(start) == 0) continue;
      std::vector<std::size_t> walk{start};
      while (walk.size() < cfg.walk_length) {
        auto nb = g.neighbors(walk.back());
        walk.push_back(nb[std::uniform_int_distribution<std::size_t>(0, nb.size() - 1)(rng)]);
      }
      for (std::size_t v : walk) freq[v] += 1.0;
      walks.push_back(std::move(walk));
    }
  }
  for (double& f : freq) f = std::pow(f, 0.75);
  std::discrete_distribution<std::size_t> noise(freq.begin(), freq.end());

  Matrix in(n, dim);
  Matrix out(n, dim);
  std::uniform_real_distribution<double> init(-0.5 / static_cast<double>(dim),
                                              0.5 / static_cast<double>(dim));
  for (double& v : in.values()) v = init(rng);

  std::size_t total = 0;
  for (const auto& w : walks) total += w.size();
  std::size_t processed = 0;
  std::vector<double> grad_in(dim);
  for (const auto& walk : walks) {
    for (std::size_t pos = 0; pos < walk.size(); ++pos, ++processed) {
      const double lr = std::max(cfg.learning_rate * 1e-4,
                                 cfg.learning_rate * (1.0 - static_cast<double>(processed) /
                                                               static_cast<double>(total)));
      const std::size_t center = walk[pos];
      const std::size_t lo = pos >= cfg.window ? pos - cfg.window : 0;
      const std::size_t hi = std::min(walk.size() - 1, pos + cfg.window);
      for (std::size_t cpos = lo; cpos <= hi; ++cpos) {
        if (cpos == pos) continue;
        const std::size_t context = walk[cpos];
        std::fill(grad_in.begin(), grad_in.end(), 0.0);
        auto vin = in.row(center);
        for (std::size_t s = 0; s <= cfg.negatives; ++s) {
          std::size_t target = context;
          double label = 1.0;
          if (s > 0) {
            target = noise(rng);
            if (target == context) continue;
            label = 0.0;
          }
          auto vout = out.row(target);
          double dot = 0.0;
          for (std::size_t c = 0; c < dim; ++c) dot += vin[c] * vout[c];
          const double step = (label - sigmoid(dot)) * lr;
          for (std::size_t c = 0; c < dim; ++c) {
            grad_in[c] += step * vout[c];
            vout[c] += step * vin[c];
          }
        }
        for (std::size_t c = 0; c < dim; ++c) vin[c] += grad_in[c];
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (g.degree(i) == 0) std::fill(in.row(i).begin(), in.row(i).end(), 0.0);
  kernels::normalize_rows(in);
  return in;
}

}  // namespace edge
