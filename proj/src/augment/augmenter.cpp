#include "edge/augment/augmenter.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <map>
#include <unordered_set>

#include <spdlog/spdlog.h>

#include "edge/core/errors.hpp"
#include "edge/core/kernels.hpp"

namespace edge {
namespace {

// Frequent verbs, adjectives and pronoun-like words in dictionary glosses.
constexpr std::array<std::string_view, 96> kClosedList = {
    "able", "also", "another", "anybody", "anything", "any", "become", "becomes", "big",
    "capable", "cause", "causes", "certain", "characteristic", "common", "consist", "consists",
    "contain", "contains", "contaminate", "different", "especially", "etc", "every", "first",
    "free", "full", "general", "get", "gets", "give", "gives", "good", "great", "high", "higher",
    "include", "includes", "involve", "involves", "large", "larger", "last", "least", "less",
    "like", "little", "long", "low", "lower", "main", "major", "make", "makes", "many", "may",
    "might", "minor", "move", "moves", "much", "must", "natural", "new", "next", "often", "old",
    "one", "ones", "particular", "produce", "produces", "put", "relate", "second", "several",
    "short", "similar", "single", "small", "smaller", "somebody", "someone", "something",
    "special", "specific", "take", "takes", "true", "upper", "use", "usual", "usually", "various",
    "whole", "would"};

bool closed_list(std::string_view t) {
  return std::find(kClosedList.begin(), kClosedList.end(), t) != kClosedList.end();
}

bool verbal(std::string_view t) {
  const auto dash = t.rfind('-');
  if (dash != std::string_view::npos) t = t.substr(dash + 1);
  const auto ends = [&](std::string_view s) {
    return t.size() >= s.size() && t.substr(t.size() - s.size()) == s;
  };
  return (t.size() > 5 && ends("ing")) || (t.size() > 4 && ends("ed")) ||
         (t.size() > 5 && ends("ally"));
}

bool breaks_phrase(const std::string& t) {
  if (t.size() < 2 || is_stopword(t) || closed_list(t) || verbal(t)) return true;
  return std::all_of(t.begin(), t.end(), [](unsigned char c) { return c >= '0' && c <= '9'; });
}

std::size_t ceil_half(std::size_t v) { return (v + 1) / 2; }

template <typename Fn>
std::vector<std::vector<std::string>> per_target(const SparseGraph& g, Execution exec, Fn&& fn) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<std::string>> terms(n);
  std::vector<std::exception_ptr> errors(n);
  const auto body = [&](std::size_t t) {
    try {
      terms[t] = fn(t);
    } catch (const std::exception& e) {
      errors[t] = std::make_exception_ptr(
          ValidationError("augmenting target entity '" + g.name(t) + "': " + e.what()));
    }
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(n); ++t) body(static_cast<std::size_t>(t));
  } else {
    for (std::size_t t = 0; t < n; ++t) body(t);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return terms;
}

}  // namespace

void AugmentationConfig::validate() const {
  if (similar == 0 || keywords == 0 || entities == 0)
    throw ConfigError("augmentation counts v, w, m must all be >= 1");
  if (!(semantic_share >= 0.0 && semantic_share <= 1.0))
    throw ConfigError("semantic_share must lie in [0, 1]");
  if (semantic_dim == 0) throw ConfigError("semantic_dim must be >= 1");
}

std::vector<std::size_t> top_similar_entities(std::size_t target, const Matrix& semantic,
                                              const Matrix& structural, std::size_t k_semantic,
                                              std::size_t k_structural) {
  if (semantic.rows() != structural.rows())
    throw DimensionError("semantic and structural embeddings cover different node counts");
  std::vector<std::size_t> out;
  for (const auto* m : {&semantic, &structural}) {
    const std::size_t k = m == &semantic ? k_semantic : k_structural;
    if (k == 0 || m->cols() == 0) continue;
    std::vector<char> eligible(m->rows());
    for (std::size_t j = 0; j < m->rows(); ++j) {
      auto r = m->row(j);
      eligible[j] = std::any_of(r.begin(), r.end(), [](double v) { return v != 0.0; });
    }
    // A zero query row has no meaningful ranking.
    if (!eligible[target]) continue;
    auto top = kernels::top_k_dot(*m, target, k, eligible);
    out.insert(out.end(), top.begin(), top.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::size_t> top_similar_entities(std::size_t target, const Matrix& semantic,
                                              const Matrix& structural, std::size_t v) {
  if (v >= semantic.rows()) throw ConfigError("v must be smaller than the node count");
  return top_similar_entities(target, semantic, structural, ceil_half(v), ceil_half(v));
}

std::vector<std::string> extract_keywords(std::span<const std::size_t> entities,
                                          const TextCorpus& corpus, std::size_t w) {
  std::map<std::size_t, std::size_t> counts;
  for (std::size_t e : entities)
    for (std::size_t term : corpus.docs.at(e)) ++counts[term];
  std::vector<std::pair<double, const std::string*>> scored;
  scored.reserve(counts.size());
  for (const auto& [term, c] : counts)
    scored.emplace_back(static_cast<double>(c) * corpus.idf(term), &corpus.vocab[term]);
  const std::size_t take = std::min(w, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end(),
                    [](const auto& a, const auto& b) {
                      return a.first != b.first ? a.first > b.first : *a.second < *b.second;
                    });
  std::vector<std::string> out;
  out.reserve(take);
  for (std::size_t k = 0; k < take; ++k) out.push_back(*scored[k].second);
  return out;
}

std::vector<std::string> extract_textual_entities(std::span<const std::string> sentences,
                                                  std::size_t m) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& s : sentences) {
    const auto tokens = tokenize(s);
    std::size_t k = 0;
    while (k < tokens.size() && out.size() < m) {
      if (breaks_phrase(tokens[k])) {
        ++k;
        continue;
      }
      std::size_t end = k;
      while (end < tokens.size() && !breaks_phrase(tokens[end])) ++end;
      std::string phrase;
      for (std::size_t t = std::max(k, end >= 3 ? end - 3 : 0); t < end; ++t) {
        if (!phrase.empty()) phrase.push_back(' ');
        phrase += tokens[t];
      }
      if (seen.insert(phrase).second) out.push_back(std::move(phrase));
      k = end;
    }
    if (out.size() >= m) break;
  }
  return out;
}

AugmentedGraph construct_augmented_graph(const SparseGraph& g, const TextCorpus& corpus,
                                         const Lexicon& lex, const AugmentationConfig& cfg,
                                         Execution exec) {
  cfg.validate();
  if (corpus.doc_count() != g.node_count())
    throw DimensionError("text corpus must have one document per graph node");
  const std::size_t n = g.node_count();
  if (n < 2 || lex.empty()) return trivial_augmentation(g);

  const Matrix semantic = semantic_embeddings(corpus, cfg.semantic_dim, cfg.seed);
  Matrix structural(n, 0);
  if (g.edge_count() > 0) structural = structural_embeddings(g, cfg.walks, cfg.seed);

  const std::size_t v = std::min(cfg.similar, n - 1);
  const auto k_sem = static_cast<std::size_t>(std::ceil(static_cast<double>(v) * cfg.semantic_share));
  const auto k_str =
      static_cast<std::size_t>(std::ceil(static_cast<double>(v) * (1.0 - cfg.semantic_share)));

  auto terms = per_target(g, exec, [&](std::size_t target) {
    const auto similar = top_similar_entities(target, semantic, structural, k_sem, k_str);
    if (similar.empty()) return std::vector<std::string>{};
    const auto keywords = extract_keywords(similar, corpus, cfg.keywords);
    if (keywords.empty()) return std::vector<std::string>{};
    const auto sentences = query_lexicon(keywords, lex);
    return extract_textual_entities(sentences, cfg.entities);
  });
  AugmentedGraph ag = assemble_augmented_graph(g, terms);
  spdlog::info("augmented graph: {} original + {} textual nodes, {} edges", n, ag.textual_count(),
               ag.graph.edge_count());
  return ag;
}

AugmentedGraph construct_cooccurrence_graph(const SparseGraph& g, std::span<const std::string> texts,
                                            const Lexicon& lex, std::size_t m, Execution exec) {
  if (texts.size() != g.node_count())
    throw DimensionError("one text per graph node is required");
  if (m == 0) throw ConfigError("m must be >= 1");
  const std::size_t max_len = std::max<std::size_t>(1, lex.max_term_tokens());
  auto terms = per_target(g, exec, [&](std::size_t target) {
    const auto tokens = tokenize(texts[target]);
    std::vector<std::string> found;
    std::size_t k = 0;
    while (k < tokens.size() && found.size() < m) {
      std::size_t matched = 0;
      for (std::size_t len = std::min(max_len, tokens.size() - k); len >= 1 && !matched; --len) {
        bool content = false;
        std::string key;
        for (std::size_t t = k; t < k + len; ++t) {
          if (!key.empty()) key.push_back(' ');
          key += tokens[t];
          content = content || !breaks_phrase(tokens[t]);
        }
        if (content && lex.contains(key)) {
          matched = len;
          if (std::find(found.begin(), found.end(), key) == found.end()) found.push_back(key);
        }
      }
      k += matched ? matched : 1;
    }
    return found;
  });
  return assemble_augmented_graph(g, terms);
}

}  // namespace edge
