#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace edge {

// Lowercased word tokens. A token is a run of ASCII letters/digits (bytes
// >= 0x80 count as letters so UTF-8 words survive); a hyphen between two word
// characters stays inside the token.
std::vector<std::string> tokenize(std::string_view text);

bool is_stopword(std::string_view token);

// Lexicon key form of a term: tokens joined by single spaces.
std::string canonical_term(std::string_view term);

// Maps inflected and -ction forms to a base form that a dictionary knows
// ("infected" -> "infect", "bites" -> "bite", "infection" -> "infect").
// Tokens with no known candidate are returned unchanged.
class TermNormalizer {
 public:
  explicit TermNormalizer(std::function<bool(const std::string&)> known) : known_(std::move(known)) {}
  std::string operator()(const std::string& token) const;

 private:
  std::function<bool(const std::string&)> known_;
};

// Per-node content tokens (stopwords, numbers and 1-character tokens removed)
// with a dense vocabulary and document frequencies.
struct TextCorpus {
  std::vector<std::vector<std::size_t>> docs;
  std::vector<std::string> vocab;
  std::vector<std::size_t> doc_freq;
  std::unordered_map<std::string, std::size_t> index;

  static TextCorpus build(std::span<const std::string> texts,
                          const TermNormalizer* normalizer = nullptr);

  std::size_t doc_count() const { return docs.size(); }
  std::size_t vocab_size() const { return vocab.size(); }
  std::optional<std::size_t> term_index(const std::string& term) const;
  // Smoothed inverse document frequency ln((1 + N) / (1 + df)) + 1.
  double idf(std::size_t term) const;
};

}  // namespace edge
