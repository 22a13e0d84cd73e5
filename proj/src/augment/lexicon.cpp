#include "edge/augment/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "edge/augment/text.hpp"
#include "edge/core/errors.hpp"

namespace edge {

Lexicon Lexicon::load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon " + path.string());
  Lexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path.string() + ": " + e.what(), lineno);
    }
    if (!j.is_object() || !j.contains("term") || !j["term"].is_string() || !j.contains("glosses") ||
        !j["glosses"].is_array())
      throw ParseError(path.string() + ": expected {\"term\": string, \"glosses\": [string]}", lineno);
    std::vector<std::string> glosses;
    for (const auto& g : j["glosses"]) {
      if (!g.is_string()) throw ParseError(path.string() + ": gloss is not a string", lineno);
      glosses.push_back(g.get<std::string>());
    }
    lex.add(j["term"].get<std::string>(), std::move(glosses));
  }
  return lex;
}

void Lexicon::save_jsonl(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& e : entries_) out << nlohmann::json{{"term", e.term}, {"glosses", e.glosses}}.dump() << '\n';
}

void Lexicon::add(std::string_view term, std::vector<std::string> glosses) {
  std::string key = canonical_term(term);
  if (key.empty()) return;
  auto [it, inserted] = index_.emplace(key, entries_.size());
  if (inserted) {
    max_tokens_ = std::max<std::size_t>(max_tokens_, 1 + std::count(key.begin(), key.end(), ' '));
    entries_.push_back({std::move(key), {}});
  }
  auto& dst = entries_[it->second].glosses;
  for (auto& g : glosses)
    if (std::find(dst.begin(), dst.end(), g) == dst.end()) dst.push_back(std::move(g));
}

const std::vector<std::string>* Lexicon::find(std::string_view term) const {
  auto it = index_.find(canonical_term(term));
  return it == index_.end() ? nullptr : &entries_[it->second].glosses;
}

std::vector<std::string> query_lexicon(std::span<const std::string> keywords, const Lexicon& lex) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& k : keywords) {
    const auto* glosses = lex.find(k);
    if (!glosses) continue;
    for (const auto& g : *glosses)
      if (seen.insert(g).second) out.push_back(g);
  }
  return out;
}

}  // namespace edge
