// Converts WordNet dict files (index.* / data.*) into a JSON Lines lexicon.

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>

#include "edge/augment/lexicon.hpp"
#include "edge/core/errors.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw edge::IoError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

// Data lines keyed by their leading synset offset. Repackaged dict files may
// have CRLF endings, which breaks seeking by byte offset.
std::unordered_map<std::size_t, std::string_view> index_data(const std::string& data) {
  std::unordered_map<std::size_t, std::string_view> lines;
  std::size_t pos = 0;
  while (pos < data.size()) {
    auto eol = data.find('\n', pos);
    if (eol == std::string::npos) eol = data.size();
    std::string_view line(data.data() + pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty() && line[0] != ' ') {
      std::size_t off = 0;
      const auto [end, ec] = std::from_chars(line.data(), line.data() + line.size(), off);
      if (ec == std::errc() && end != line.data()) lines.emplace(off, line);
    }
    pos = eol + 1;
  }
  return lines;
}

// Definition part of a data line, without the quoted usage examples.
std::string gloss_of(std::string_view line) {
  const auto bar = line.find(" | ");
  if (bar == std::string::npos) return {};
  std::string g(line.substr(bar + 3));
  const auto quote = g.find('"');
  if (quote != std::string::npos) g.erase(quote);
  g = trim(g);
  while (!g.empty() && (g.back() == ';' || g.back() == ':')) g = trim(g.substr(0, g.size() - 1));
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build a lexicon file from a WordNet dict directory"};
  fs::path dict, out;
  std::size_t max_senses = 1;
  app.add_option("--dict", dict, "Directory holding index.noun, data.noun, ...")->required()->check(CLI::ExistingDirectory);
  app.add_option("--out", out, "Output .jsonl file")->required();
  app.add_option("--max-senses", max_senses, "Glosses kept per term across all parts of speech")
      ->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    std::map<std::string, std::vector<std::string>> glosses;
    for (const char* pos : {"noun", "verb", "adj", "adv"}) {
      const std::string data = slurp(dict / (std::string("data.") + pos));
      const auto lines = index_data(data);
      std::ifstream index(dict / (std::string("index.") + pos));
      if (!index) throw edge::IoError("cannot open index." + std::string(pos));
      std::string line;
      while (std::getline(index, line)) {
        if (line.empty() || line[0] == ' ') continue;
        std::istringstream ss(line);
        std::string lemma, p;
        std::size_t synsets = 0, pointers = 0;
        ss >> lemma >> p >> synsets >> pointers;
        for (std::size_t k = 0; k < pointers; ++k) ss >> p;
        std::size_t sense_cnt = 0, tagged = 0;
        ss >> sense_cnt >> tagged;
        std::replace(lemma.begin(), lemma.end(), '_', ' ');
        auto& list = glosses[lemma];
        for (std::size_t k = 0; k < synsets && list.size() < max_senses; ++k) {
          std::size_t offset = 0;
          if (!(ss >> offset)) throw edge::ParseError("index." + std::string(pos) + ": short synset list for " + lemma);
          const auto it = lines.find(offset);
          if (it == lines.end()) throw edge::ParseError("data." + std::string(pos) + ": no synset " + std::to_string(offset));
          auto g = gloss_of(it->second);
          if (!g.empty() && std::find(list.begin(), list.end(), g) == list.end()) list.push_back(std::move(g));
        }
      }
    }
    edge::Lexicon lex;
    for (auto& [term, g] : glosses)
      if (!g.empty()) lex.add(term, std::move(g));
    lex.save_jsonl(out);
    std::cerr << "wrote " << lex.size() << " terms to " << out << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
