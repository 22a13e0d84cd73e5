#include <doctest.h>

#include <numeric>

#include "edge/augment/augmenter.hpp"
#include "edge/core/errors.hpp"
#include "edge/core/kernels.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace edge;

namespace {

Lexicon toy_lexicon() {
  Lexicon lex;
  lex.add("bite", {"a wound resulting from biting by an animal or a person"});
  lex.add("insect", {"small air-breathing arthropod"});
  lex.add("skin", {"a natural protective body covering"});
  return lex;
}

SparseGraph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return SparseGraph::from_edges(n, e);
}

double cos_rows(const Matrix& m, std::size_t a, std::size_t b) { return oracle::cosine(m.row(a), m.row(b)); }

}  // namespace

TEST_SUITE("augmentation") {
  TEST_CASE("tokenizer keeps internal hyphens and lowercases") {
    CHECK(tokenize("Small AIR-breathing arthropod; and/or x") ==
          std::vector<std::string>{"small", "air-breathing", "arthropod", "and", "or", "x"});
    CHECK(is_stopword("the"));
    CHECK_FALSE(is_stopword("wound"));
    CHECK(canonical_term("  Protective   Body ") == "protective body");
  }

  TEST_CASE("normalizer maps inflections onto lexicon terms") {
    const Lexicon lex = toy_lexicon();
    Lexicon more = lex;
    more.add("infect", {"contaminate with a disease or microorganism"});
    const TermNormalizer norm([&](const std::string& t) { return more.contains(t); });
    CHECK(norm("infected") == "infect");
    CHECK(norm("infection") == "infect");
    CHECK(norm("bites") == "bite");
    CHECK(norm("insects") == "insect");
    CHECK(norm("thigh") == "thigh");
  }

  TEST_CASE("idf is smoothed") {
    const std::vector<std::string> texts{"bite bite", "bite insect", "tick"};
    const auto c = TextCorpus::build(texts);
    CHECK(c.idf(*c.term_index("bite")) == doctest::Approx(std::log(4.0 / 3.0) + 1.0));
    CHECK(c.idf(*c.term_index("tick")) == doctest::Approx(std::log(2.0) + 1.0));
  }

  TEST_CASE("identical texts give identical semantic vectors") {
    const std::vector<std::string> texts{"insect bite of foot", "tick bite", "insect bite of foot"};
    const auto e = semantic_embeddings(TextCorpus::build(texts), 16, 3);
    CHECK(cos_rows(e, 0, 2) == doctest::Approx(1.0));
  }

  TEST_CASE("disjoint vocabularies are orthogonal") {
    const std::vector<std::string> texts{"insect bite", "skin rash"};
    const auto c = TextCorpus::build(texts);
    const auto tf = tfidf_vectors(c).to_dense();
    CHECK(oracle::cosine(tf.row(0), tf.row(1)) == 0.0);
    const auto e = semantic_embeddings(c, 8, 1);
    CHECK(std::abs(cos_rows(e, 0, 1)) < 1e-12);
  }

  TEST_CASE("semantic top-1 matches the brute-force tf-idf cosine ranking") {
    const std::vector<std::string> texts{"insect bite of the foot with infection", "tick bite on the foot",
                                         "crushing injury of hip", "superficial injury of lip",
                                         "infected insect bite of hand"};
    const auto c = TextCorpus::build(texts);
    // Oracle: cosine over raw count * idf vectors.
    std::vector<std::vector<double>> v(texts.size(), std::vector<double>(c.vocab_size(), 0.0));
    for (std::size_t d = 0; d < texts.size(); ++d)
      for (std::size_t t : c.docs[d]) v[d][t] += c.idf(t);
    std::size_t best = 0;
    double best_cos = -2.0;
    for (std::size_t d = 1; d < texts.size(); ++d) {
      const double cs = oracle::cosine(v[0], v[d]);
      if (cs > best_cos) {
        best_cos = cs;
        best = d;
      }
    }
    const auto e = semantic_embeddings(c, 64, 9);
    std::vector<char> eligible(texts.size(), 1);
    CHECK(kernels::top_k_dot(e, 0, 1, eligible) == std::vector<std::size_t>{best});
  }

  TEST_CASE("empty vocabulary is a configuration error") {
    const std::vector<std::string> texts{"the of", ""};
    CHECK_THROWS_AS(semantic_embeddings(TextCorpus::build(texts), 4), ConfigError);
  }

  TEST_CASE("structural embeddings on a 4-cycle favour the symmetric node") {
    const auto g = SparseGraph::from_edges(4, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    double sym = 0.0, other = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto e = structural_embeddings(g, {}, seed);
      sym += cos_rows(e, 0, 2) + cos_rows(e, 1, 3);
      other += cos_rows(e, 0, 1) + cos_rows(e, 0, 3);
    }
    CHECK(sym >= other);
  }

  TEST_CASE("structural embeddings separate the two halves of a barbell") {
    const auto g = SparseGraph::from_edges(
        6, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
    int wins = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto e = structural_embeddings(g, {}, seed);
      double within = 0.0, cross = 0.0;
      int nw = 0, nc = 0;
      for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = a + 1; b < 6; ++b) {
          if ((a < 3) == (b < 3)) {
            within += cos_rows(e, a, b);
            ++nw;
          } else {
            cross += cos_rows(e, a, b);
            ++nc;
          }
        }
      wins += within / nw > cross / nc;
    }
    CHECK(wins >= 8);
  }

  TEST_CASE("structural embedding edge cases") {
    const auto single = SparseGraph::from_edges(3, std::vector<Edge>{{0, 1}});
    const auto e = structural_embeddings(single, {}, 4);
    std::vector<char> eligible{1, 1, 0};
    CHECK(kernels::top_k_dot(e, 0, 1, eligible) == std::vector<std::size_t>{1});
    for (double v : e.row(2)) CHECK(v == 0.0);
    CHECK(e == structural_embeddings(single, {}, 4));
    CHECK_THROWS_AS(structural_embeddings(SparseGraph::from_edges(2, {}), {}), ConfigError);
  }

  TEST_CASE("top similar entities on a 3-node graph") {
    Matrix sem(3, 2), st(3, 2);
    sem(0, 0) = 1;
    sem(1, 0) = 0.6;
    sem(1, 1) = 0.8;
    sem(2, 1) = 1;
    st(0, 1) = 1;
    st(1, 0) = 1;
    st(2, 0) = 0.6;
    st(2, 1) = 0.8;
    CHECK(top_similar_entities(0, sem, st, 2) == std::vector<std::size_t>{1, 2});
    CHECK_THROWS_AS(top_similar_entities(0, sem, st, 3), ConfigError);
  }

  TEST_CASE("eight similar entities split four and four") {
    std::mt19937_64 rng(11);
    Matrix sem = oracle::random_matrix(30, 5, rng), st = oracle::random_matrix(30, 5, rng);
    kernels::normalize_rows(sem);
    kernels::normalize_rows(st);
    std::vector<char> all(30, 1);
    const auto a = kernels::top_k_dot(sem, 0, 4, all);
    const auto b = kernels::top_k_dot(st, 0, 4, all);
    CHECK(a.size() == 4);
    CHECK(b.size() == 4);
    std::set<std::size_t> u(a.begin(), a.end());
    u.insert(b.begin(), b.end());
    const auto got = top_similar_entities(0, sem, st, 8);
    CHECK(std::vector<std::size_t>(u.begin(), u.end()) == got);
  }

  TEST_CASE("top similar entities match an exhaustive cosine ranking") {
    for (unsigned seed = 0; seed < 20; ++seed) {
      std::mt19937_64 rng(seed);
      Matrix sem = oracle::random_matrix(10, 4, rng), st = oracle::random_matrix(10, 3, rng);
      kernels::normalize_rows(sem);
      kernels::normalize_rows(st);
      const std::size_t target = seed % 10;
      std::set<std::size_t> want;
      for (const Matrix* m : {&sem, &st}) {
        std::vector<std::pair<double, std::size_t>> all;
        for (std::size_t j = 0; j < 10; ++j)
          if (j != target) all.emplace_back(-oracle::cosine(m->row(target), m->row(j)), j);
        std::sort(all.begin(), all.end());
        for (std::size_t k = 0; k < 3; ++k) want.insert(all[k].second);
      }
      CHECK(top_similar_entities(target, sem, st, 5) == std::vector<std::size_t>(want.begin(), want.end()));
    }
  }

  TEST_CASE("keyword extraction") {
    SUBCASE("maximum frequency with uniform idf") {
      const std::vector<std::string> texts{"bite insect bite", "other"};
      const auto c = TextCorpus::build(texts);
      const std::vector<std::size_t> ents{0};
      CHECK(extract_keywords(ents, c, 1) == std::vector<std::string>{"bite"});
    }
    SUBCASE("hand-scored pool of three documents") {
      // df: bite 3, tick 2, rash 1, skin 2, foot 1 over N = 4 documents.
      const std::vector<std::string> texts{"tick bite foot", "tick bite bite", "skin rash bite", "skin"};
      const auto c = TextCorpus::build(texts);
      // pooled over docs 0-2: bite 4 * (ln(5/4)+1) = 4.8926, tick 2 * (ln(5/3)+1) = 3.0217,
      // rash 1 * (ln(5/2)+1) = 1.9163, foot 1.9163, skin 1 * 1.5108
      const std::vector<std::size_t> ents{0, 1, 2};
      CHECK(extract_keywords(ents, c, 2) == std::vector<std::string>{"bite", "tick"});
      CHECK(extract_keywords(ents, c, 4) == std::vector<std::string>{"bite", "tick", "foot", "rash"});
    }
    SUBCASE("similar-entity texts of the insect bite example") {
      const std::vector<std::string> texts{
          "Nonvenomous insect bite of hip without infection",
          "Nonvenomous insect bite of foot with infection",
          "Crushing injury of hip and/or thigh",
          "Superficial injury of lip with infection",
          "Infected insect bite of hand",
          "Insect bite, nonvenomous, of back",
          "Tick bite",
          "Animal bite of calf",
          "Inset bite, nonvenomous, of foot and toe"};
      Lexicon lex;
      for (const char* t : {"bite", "insect", "nonvenomous", "infect", "injury", "foot", "hip"}) lex.add(t, {"x"});
      const TermNormalizer norm([&](const std::string& t) { return lex.contains(t); });
      const auto c = TextCorpus::build(texts, &norm);
      std::vector<std::size_t> ents(8);
      std::iota(ents.begin(), ents.end(), 1);
      auto kw = extract_keywords(ents, c, 4);
      std::sort(kw.begin(), kw.end());
      CHECK(kw == std::vector<std::string>{"bite", "infect", "insect", "nonvenomous"});
    }
    SUBCASE("empty pool") {
      const std::vector<std::string> texts{"", "word"};
      const auto c = TextCorpus::build(texts);
      const std::vector<std::size_t> ents{0};
      CHECK(extract_keywords(ents, c, 3).empty());
    }
  }

  TEST_CASE("lexicon queries") {
    Lexicon lex = toy_lexicon();
    const std::vector<std::string> bite{"bite"};
    CHECK(query_lexicon(bite, lex) ==
          std::vector<std::string>{"a wound resulting from biting by an animal or a person"});
    const std::vector<std::string> absent{"zebra"};
    CHECK(query_lexicon(absent, lex).empty());
    lex.add("nip", {"a wound resulting from biting by an animal or a person", "a small drink"});
    const std::vector<std::string> two{"bite", "nip"};
    CHECK(query_lexicon(two, lex).size() == 2);
    const std::vector<std::string> upper{"BITE"};
    CHECK(query_lexicon(upper, lex).size() == 1);
  }

  TEST_CASE("lexicon file round trip and parse errors") {
    TempDir dir;
    const Lexicon lex = toy_lexicon();
    lex.save_jsonl(dir / "lex.jsonl");
    const Lexicon back = Lexicon::load_jsonl(dir / "lex.jsonl");
    CHECK(back.size() == 3);
    CHECK(*back.find("Skin") == *lex.find("skin"));
    const auto bad = dir.write("bad.jsonl", "{\"term\": \"a\", \"glosses\": [\"x\"]}\n{broken\n");
    try {
      Lexicon::load_jsonl(bad);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }

  TEST_CASE("textual entity extraction") {
    const std::vector<std::string> s1{"a wound resulting from biting by an animal or a person"};
    const auto e1 = extract_textual_entities(s1, 4);
    CHECK(std::find(e1.begin(), e1.end(), "wound") != e1.end());
    const std::vector<std::string> s2{"small air-breathing arthropod"};
    const auto e2 = extract_textual_entities(s2, 4);
    CHECK(std::find(e2.begin(), e2.end(), "arthropod") != e2.end());
    CHECK(extract_textual_entities({}, 4).empty());
    const std::vector<std::string> s3{"a natural protective body covering", "not producing or resulting from poison"};
    CHECK(extract_textual_entities(s3, 4) == std::vector<std::string>{"protective body", "poison"});
    CHECK(extract_textual_entities(s3, 1).size() == 1);
  }

  TEST_CASE("empty lexicon leaves the graph unchanged") {
    const auto g = path_graph(5);
    const std::vector<std::string> texts(5, "insect bite");
    const auto ag = construct_augmented_graph(g, TextCorpus::build(texts), Lexicon{}, {});
    CHECK(ag.textual_count() == 0);
    CHECK(ag.graph.adjacency() == g.adjacency());
  }

  TEST_CASE("hand-traced six-node augmentation") {
    const auto g = path_graph(6);
    const std::vector<std::string> texts{"insect bite", "insect bite", "tick bite", "skin rash", "skin rash", ""};
    AugmentationConfig cfg;
    cfg.similar = 5;
    cfg.keywords = 2;
    cfg.entities = 1;
    cfg.semantic_share = 1.0;
    cfg.seed = 2;
    const auto corpus = TextCorpus::build(texts);
    for (auto exec : {Execution::serial, Execution::parallel}) {
      const auto ag = construct_augmented_graph(g, corpus, toy_lexicon(), cfg, exec);
      ag.validate(g);
      REQUIRE(ag.node_count() == 9);
      CHECK(ag.graph.edge_count() == 10);
      CHECK(ag.provenance[6].name == "arthropod");
      CHECK(ag.provenance[7].name == "protective body");
      CHECK(ag.provenance[8].name == "wound");
      CHECK(ag.graph.has_edge(0, 7));
      CHECK(ag.graph.has_edge(1, 7));
      CHECK(ag.graph.has_edge(2, 6));
      CHECK(ag.graph.has_edge(3, 8));
      CHECK(ag.graph.has_edge(4, 8));
      CHECK(ag.graph.degree(8) == 2);
      CHECK(ag.graph.degree(5) == 1);
    }
  }

  TEST_CASE("targets sharing a term share one textual node") {
    const auto g = SparseGraph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}});
    const std::vector<std::vector<std::string>> terms{{"wound"}, {}, {"wound", "arthropod"}};
    const auto ag = assemble_augmented_graph(g, terms);
    CHECK(ag.textual_count() == 2);
    const std::size_t wound = ag.provenance[3].name == "wound" ? 3 : 4;
    CHECK(ag.graph.degree(wound) == 2);
    ag.validate(g);
  }

  TEST_CASE("serialization round trip is byte-identical") {
    const auto g = path_graph(6);
    const std::vector<std::string> texts{"insect bite", "insect bite", "tick bite", "skin rash", "skin rash", ""};
    AugmentationConfig cfg;
    cfg.semantic_share = 1.0;
    cfg.similar = 5;
    const auto ag = construct_augmented_graph(g, TextCorpus::build(texts), toy_lexicon(), cfg);
    TempDir dir;
    ag.save(dir / "a.edges", dir / "a.prov");
    const auto back = AugmentedGraph::load(dir / "a.edges", dir / "a.prov");
    CHECK(back.graph.adjacency() == ag.graph.adjacency());
    CHECK(back.provenance == ag.provenance);
    back.save(dir / "b.edges", dir / "b.prov");
    CHECK(read_file(dir / "a.edges") == read_file(dir / "b.edges"));
    CHECK(read_file(dir / "a.prov") == read_file(dir / "b.prov"));
  }

  TEST_CASE("augmented features are padded one-hots") {
    const auto g = SparseGraph::from_edges(2, std::vector<Edge>{{0, 1}});
    const std::vector<std::vector<std::string>> terms{{"b"}, {"a"}};
    const auto ag = assemble_augmented_graph(g, terms);
    Matrix xk(2, 3);
    xk(0, 0) = 1.0;
    xk(1, 2) = 2.0;
    const auto xt = augmented_features(ag, FeatureMatrix::from_dense(xk), ag.selection(g)).dense();
    CHECK(xt.rows() == 4);
    CHECK(xt.cols() == 5);
    CHECK(xt(0, 0) == 1.0);
    CHECK(xt(1, 2) == 2.0);
    CHECK(xt(2, 3) == 1.0);
    CHECK(xt(3, 4) == 1.0);
  }

  TEST_CASE("invariant violations are detected") {
    const auto g = SparseGraph::from_edges(2, std::vector<Edge>{{0, 1}});
    AugmentedGraph bad;
    bad.graph = SparseGraph::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}, {0, 2}});
    bad.provenance = {{NodeOrigin::Kind::original, "0"},
                      {NodeOrigin::Kind::original, "1"},
                      {NodeOrigin::Kind::textual, "a"},
                      {NodeOrigin::Kind::textual, "b"}};
    CHECK_THROWS_AS(bad.validate(g), ValidationError);
    bad.graph = SparseGraph::from_edges(3, std::vector<Edge>{{0, 2}});
    bad.provenance.pop_back();
    CHECK_THROWS_AS(bad.validate(g), ValidationError);
  }

  TEST_CASE("co-occurrence augmentation matches lexicon terms in the node's own text") {
    const auto g = path_graph(3);
    Lexicon lex = toy_lexicon();
    lex.add("insect bite", {"bite of an insect"});
    const std::vector<std::string> texts{"Insect bite of skin", "skin skin rash", "nothing here"};
    const auto ag = construct_cooccurrence_graph(g, texts, lex, 4);
    ag.validate(g);
    CHECK(ag.textual_count() == 2);
    std::vector<std::string> names;
    for (auto i : ag.textual_nodes()) names.push_back(ag.provenance[i].name);
    CHECK(names == std::vector<std::string>{"insect bite", "skin"});
    CHECK(ag.graph.degree(2) == 1);
  }

  TEST_CASE("configuration validation") {
    AugmentationConfig cfg;
    cfg.keywords = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
}
