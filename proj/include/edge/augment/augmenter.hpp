#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "edge/augment/augmented_graph.hpp"
#include "edge/augment/embeddings.hpp"
#include "edge/augment/lexicon.hpp"
#include "edge/augment/text.hpp"
#include "edge/core/matrix.hpp"
#include "edge/graph/sparse_graph.hpp"

namespace edge {

struct AugmentationConfig {
  std::size_t similar = 8;   // v: similar entities per target
  std::size_t keywords = 4;  // w: keywords queried per target
  std::size_t entities = 4;  // m: textual entities kept per target
  double semantic_share = 0.5;
  std::size_t semantic_dim = 256;
  WalkConfig walks;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class Execution { parallel, serial };

// Union of the top-k_semantic and top-k_structural neighbours of `target`
// by dot product of unit rows, target excluded, ties to the smaller index.
// Zero rows are never ranked. Returned ascending.
std::vector<std::size_t> top_similar_entities(std::size_t target, const Matrix& semantic,
                                              const Matrix& structural, std::size_t k_semantic,
                                              std::size_t k_structural);

// v split evenly: ceil(v/2) from each ranking.
std::vector<std::size_t> top_similar_entities(std::size_t target, const Matrix& semantic,
                                              const Matrix& structural, std::size_t v);

// w highest pooled-tf x idf terms over the entities' documents; ties broken
// lexicographically. Empty when the pooled text is empty.
std::vector<std::string> extract_keywords(std::span<const std::size_t> entities,
                                          const TextCorpus& corpus, std::size_t w);

// Noun-phrase candidates from gloss sentences: maximal runs of tokens that are
// not stopwords, not in a closed verb/adjective list and not -ing/-ed forms,
// truncated to their last three tokens and joined with spaces. The first m
// distinct candidates in sentence order are returned.
std::vector<std::string> extract_textual_entities(std::span<const std::string> sentences,
                                                  std::size_t m);

// Similarity-driven augmentation. Targets run in parallel; the result is
// identical for both execution modes.
AugmentedGraph construct_augmented_graph(const SparseGraph& g, const TextCorpus& corpus,
                                         const Lexicon& lex, const AugmentationConfig& cfg,
                                         Execution exec = Execution::parallel);

// Co-occurrence ablation: attaches lexicon terms that occur verbatim (as token
// sequences, longest match first) in each target's own text, first m kept.
AugmentedGraph construct_cooccurrence_graph(const SparseGraph& g, std::span<const std::string> texts,
                                            const Lexicon& lex, std::size_t m,
                                            Execution exec = Execution::parallel);

}  // namespace edge
