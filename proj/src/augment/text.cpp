#include "edge/augment/text.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace edge {
namespace {

bool word_char(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

// English function words.
constexpr std::array<std::string_view, 179> kStopwords = {
    "a", "about", "above", "after", "again", "against", "ain", "all", "am", "an", "and", "any",
    "are", "aren", "aren't", "as", "at", "be", "because", "been", "before", "being", "below",
    "between", "both", "but", "by", "can", "couldn", "couldn't", "d", "did", "didn", "didn't",
    "do", "does", "doesn", "doesn't", "doing", "don", "don't", "down", "during", "each", "few",
    "for", "from", "further", "had", "hadn", "hadn't", "has", "hasn", "hasn't", "have", "haven",
    "haven't", "having", "he", "her", "here", "hers", "herself", "him", "himself", "his", "how",
    "i", "if", "in", "into", "is", "isn", "isn't", "it", "it's", "its", "itself", "just", "ll",
    "m", "ma", "me", "mightn", "mightn't", "more", "most", "mustn", "mustn't", "my", "myself",
    "needn", "needn't", "no", "nor", "not", "now", "o", "of", "off", "on", "once", "only", "or",
    "other", "our", "ours", "ourselves", "out", "over", "own", "re", "s", "same", "shan",
    "shan't", "she", "she's", "should", "should've", "shouldn", "shouldn't", "so", "some", "such",
    "t", "than", "that", "that'll", "the", "their", "theirs", "them", "themselves", "then",
    "there", "these", "they", "this", "those", "through", "to", "too", "under", "until", "up",
    "ve", "very", "was", "wasn", "wasn't", "we", "were", "weren", "weren't", "what", "when",
    "where", "which", "while", "who", "whom", "why", "will", "with", "won", "won't", "wouldn",
    "wouldn't", "y", "you", "you'd", "you'll", "you're", "you've", "your", "yours", "yourself",
    "yourselves"};
static_assert(std::is_sorted(kStopwords.begin(), kStopwords.end()));
static_assert(!kStopwords.back().empty());

bool all_digits(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return c >= '0' && c <= '9'; });
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (word_char(c)) {
      cur.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
    } else if (c == '-' && !cur.empty() && i + 1 < text.size() &&
               word_char(static_cast<unsigned char>(text[i + 1]))) {
      cur.push_back('-');
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool is_stopword(std::string_view token) {
  return std::binary_search(kStopwords.begin(), kStopwords.end(), token);
}

std::string canonical_term(std::string_view term) {
  std::string out;
  for (const auto& t : tokenize(term)) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

std::string TermNormalizer::operator()(const std::string& token) const {
  const std::size_t n = token.size();
  std::vector<std::string> candidates;
  auto strip = [&](std::size_t k, std::string_view add = {}) {
    candidates.push_back(token.substr(0, n - k) + std::string(add));
  };
  if (n > 4 && ends_with(token, "ies")) strip(3, "y");
  if (n > 3 && ends_with(token, "s") && !ends_with(token, "ss")) strip(1);
  if (n > 4 && ends_with(token, "es")) strip(2);
  if (n > 3 && ends_with(token, "ed")) {
    strip(1);
    strip(2);
    if (n > 4 && token[n - 3] == token[n - 4]) strip(3);
  }
  if (n > 5 && ends_with(token, "ing")) {
    strip(3, "e");
    strip(3);
    if (token[n - 4] == token[n - 5]) strip(4);
  }
  if (n > 6 && ends_with(token, "ctions")) strip(4);
  if (n > 5 && ends_with(token, "ction")) strip(3);
  for (const auto& c : candidates)
    if (c.size() >= 3 && known_(c)) return c;
  return token;
}

TextCorpus TextCorpus::build(std::span<const std::string> texts, const TermNormalizer* normalizer) {
  TextCorpus corpus;
  corpus.docs.resize(texts.size());
  for (std::size_t d = 0; d < texts.size(); ++d) {
    std::vector<std::size_t> seen;
    for (auto& tok : tokenize(texts[d])) {
      if (tok.size() < 2 || all_digits(tok) || is_stopword(tok)) continue;
      std::string term = normalizer ? (*normalizer)(tok) : tok;
      auto [it, inserted] = corpus.index.emplace(term, corpus.vocab.size());
      if (inserted) {
        corpus.vocab.push_back(term);
        corpus.doc_freq.push_back(0);
      }
      corpus.docs[d].push_back(it->second);
      seen.push_back(it->second);
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (std::size_t t : seen) ++corpus.doc_freq[t];
  }
  return corpus;
}

std::optional<std::size_t> TextCorpus::term_index(const std::string& term) const {
  auto it = index.find(term);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

double TextCorpus::idf(std::size_t term) const {
  return std::log((1.0 + static_cast<double>(doc_count())) /
                  (1.0 + static_cast<double>(doc_freq[term]))) +
         1.0;
}

}  // namespace edge
