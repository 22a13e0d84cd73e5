#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace edge {

// Offline term -> glosses dictionary. Keys are canonical terms (see
// canonical_term), so lookups are case-insensitive.
class Lexicon {
 public:
  struct Entry {
    std::string term;
    std::vector<std::string> glosses;
  };

  // JSON Lines: {"term": "...", "glosses": ["...", ...]} per line. Repeated
  // terms merge their glosses.
  static Lexicon load_jsonl(const std::filesystem::path& path);
  void save_jsonl(const std::filesystem::path& path) const;

  void add(std::string_view term, std::vector<std::string> glosses);

  // nullptr when the term is absent.
  const std::vector<std::string>* find(std::string_view term) const;
  bool contains(std::string_view term) const { return find(term) != nullptr; }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }
  // Longest term measured in tokens.
  std::size_t max_term_tokens() const { return max_tokens_; }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t max_tokens_ = 0;
};

// Glosses of every keyword found, keyword order then gloss order, each
// sentence kept once.
std::vector<std::string> query_lexicon(std::span<const std::string> keywords, const Lexicon& lex);

}  // namespace edge
