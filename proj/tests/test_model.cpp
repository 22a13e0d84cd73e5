#include <doctest.h>

#include <cmath>
#include <random>

#include "edge/core/errors.hpp"
#include "edge/model/checkpoint.hpp"
#include "edge/model/trainer.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace edge;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.values()[k] - b.values()[k]));
  return m;
}

NormalizedAdjacency identity_adjacency(std::size_t n) {
  return normalize_adjacency(SparseGraph::from_edges(n, std::vector<Edge>{}), true);
}

// Random original graph plus an augmentation with a few shared textual nodes.
struct ToyPair {
  SparseGraph kg;
  AugmentedGraph akg;
  FeatureMatrix x_k;
  FeatureMatrix x_t;
};

ToyPair make_toy(std::uint64_t seed, std::size_t n_k = 6, std::size_t n_terms = 3) {
  std::mt19937_64 rng(seed);
  auto edges = oracle::random_edges(n_k, 0.4, rng);
  for (std::size_t i = 0; i + 1 < n_k; i += 2) edges.emplace_back(i, i + 1);
  ToyPair t;
  t.kg = SparseGraph::from_edges(n_k, edges);
  std::vector<std::vector<std::string>> terms(n_k);
  std::uniform_int_distribution<std::size_t> term(0, n_terms - 1);
  for (std::size_t i = 0; i < n_k; ++i)
    if (i % 3 != 2) terms[i].push_back("t" + std::to_string(term(rng)));
  terms[0].push_back("t0");
  terms[1].push_back("t" + std::to_string(n_terms - 1));
  t.akg = assemble_augmented_graph(t.kg, terms);
  t.x_k = FeatureMatrix::from_dense(oracle::random_matrix(n_k, 3, rng, 0.5));
  t.x_t = augmented_features(t.akg, t.x_k, t.akg.selection(t.kg));
  return t;
}

TrainConfig small_config(std::uint64_t seed) {
  TrainConfig cfg;
  cfg.hidden = 4;
  cfg.embedding = 3;
  cfg.seed = seed;
  cfg.learning_rate = 0.01;
  return cfg;
}

// Central differences of the full objective, checked entry by entry.
void check_gradients(const JointObjective& obj, GcnWeights wk, GcnWeights wt, double tol) {
  const auto analytic = obj.evaluate(wk, wt, 0);
  const double h = 1e-5;
  std::size_t checked = 0;
  const auto probe = [&](Matrix& w, const Matrix& g) {
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double keep = w.values()[k];
      w.values()[k] = keep + h;
      const double up = obj.evaluate(wk, wt, 0, false).loss.total;
      w.values()[k] = keep - h;
      const double down = obj.evaluate(wk, wt, 0, false).loss.total;
      w.values()[k] = keep;
      const double fd = (up - down) / (2 * h);
      const double a = g.values()[k];
      const double scale = std::max({std::abs(a), std::abs(fd), 1e-3});
      CHECK_MESSAGE(std::abs(a - fd) / scale < tol, "entry " << k << " analytic " << a << " fd " << fd);
      ++checked;
    }
  };
  probe(wk.w0, analytic.grad_k.w0);
  probe(wk.w1, analytic.grad_k.w1);
  probe(wt.w0, analytic.grad_t.w0);
  probe(wt.w1, analytic.grad_t.w1);
  CHECK(checked > 0);
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("encoder with zero first layer outputs zero") {
    GcnWeights w{Matrix(3, 2), Matrix::identity(2)};
    const auto z = gcn_encode(identity_adjacency(3), FeatureMatrix::identity(3), w);
    for (double v : z.values()) CHECK(v == 0.0);
  }

  TEST_CASE("encoder with a tiny first layer is close to linear") {
    Matrix w0(3, 3);
    for (std::size_t i = 0; i < 3; ++i) w0(i, i) = 1e-6 * static_cast<double>(i + 1);
    GcnWeights w{w0, Matrix::identity(3)};
    const auto z = gcn_encode(identity_adjacency(3), FeatureMatrix::identity(3), w);
    CHECK(max_abs_diff(z, w0) < 1e-15);
  }

  TEST_CASE("encoder matches the dense forward oracle") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      std::mt19937_64 rng(seed);
      const auto edges = oracle::random_edges(4, 0.5, rng);
      const auto g = SparseGraph::from_edges(4, edges);
      const Matrix x = oracle::random_matrix(4, 5, rng);
      const auto w = glorot_weights(5, 3, 2, seed);
      for (bool loops : {true, false}) {
        const Matrix adj = oracle::dense_normalize(oracle::dense_adjacency(4, edges), loops);
        const auto z = gcn_encode(normalize_adjacency(g, loops), FeatureMatrix::from_dense(x), w);
        CHECK(max_abs_diff(z, oracle::gcn(adj, x, w.w0, w.w1)) < 1e-10);
      }
    }
  }

  TEST_CASE("encoder rejects mismatched shapes") {
    GcnWeights w{Matrix(4, 2), Matrix(2, 2)};
    CHECK_THROWS_AS(gcn_encode(identity_adjacency(3), FeatureMatrix::identity(3), w), DimensionError);
  }

  TEST_CASE("glorot initialisation is bounded and seeded") {
    const auto a = glorot_weights(10, 6, 4, 3);
    const double lim = std::sqrt(6.0 / 16.0);
    for (double v : a.w0.values()) CHECK(std::abs(v) <= lim);
    CHECK(a.w0 == glorot_weights(10, 6, 4, 3).w0);
    CHECK_FALSE(a.w0 == glorot_weights(10, 6, 4, 4).w0);
  }

  TEST_CASE("decoder examples") {
    const auto zero = decode_adjacency(Matrix(3, 2));
    for (double v : zero.values()) CHECK(v == 0.5);
    Matrix unit(1, 3);
    unit(0, 1) = 1.0;
    CHECK(decode_adjacency(unit)(0, 0) == doctest::Approx(0.73106).epsilon(1e-5));
    Matrix orth(2, 2);
    orth(0, 0) = 1.0;
    orth(1, 1) = 1.0;
    CHECK(decode_entry(orth, 0, 1) == 0.5);
  }

  TEST_CASE("reconstruction loss examples") {
    const ReconstructionOptions opt;
    CsrMatrix half = CsrMatrix::from_dense(Matrix(3, 3, 0.5));
    CHECK(loss_reconstruction(half, Matrix(3, 2), opt).value == doctest::Approx(0.0));
    CHECK(loss_reconstruction(CsrMatrix::identity(2), Matrix(2, 2), opt).value == doctest::Approx(1.0));
  }

  TEST_CASE("reconstruction loss matches the dense oracle") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      std::mt19937_64 rng(seed);
      const std::size_t n = 2 + seed % 40;
      const auto edges = oracle::random_edges(n, 0.2, rng);
      const auto g = SparseGraph::from_edges(n, edges);
      const Matrix z = oracle::random_matrix(n, 3, rng, 0.7);
      const double want = oracle::recon_loss(oracle::dense_adjacency(n, edges), z);
      CHECK(std::abs(loss_reconstruction(g.adjacency(), z, {}).value - want) < 1e-10);
      ReconstructionOptions sq;
      sq.norm = NormKind::squared;
      CHECK(std::abs(loss_reconstruction(g.adjacency(), z, sq).value - want * want) < 1e-9);
    }
  }

  TEST_CASE("sampled reconstruction is an unbiased estimate of the squared norm") {
    std::mt19937_64 rng(5);
    const std::size_t n = 60;
    const auto edges = oracle::random_edges(n, 0.1, rng);
    const auto g = SparseGraph::from_edges(n, edges);
    const Matrix z = oracle::random_matrix(n, 4, rng, 0.6);
    const double exact = std::pow(oracle::recon_loss(oracle::dense_adjacency(n, edges), z), 2);
    ReconstructionOptions opt;
    opt.norm = NormKind::squared;
    opt.dense_threshold = 10;
    opt.sample_budget = 500;
    double mean = 0.0;
    const int reps = 400;
    for (int r = 0; r < reps; ++r) {
      opt.seed = static_cast<std::uint64_t>(r);
      mean += loss_reconstruction(g.adjacency(), z, opt).value / reps;
    }
    CHECK(std::abs(mean - exact) / exact < 0.01);
  }

  TEST_CASE("reconstruction gradient matches finite differences") {
    std::mt19937_64 rng(8);
    const auto edges = oracle::random_edges(7, 0.3, rng);
    const auto a = SparseGraph::from_edges(7, edges).adjacency();
    Matrix z = oracle::random_matrix(7, 3, rng, 0.5);
    for (auto norm : {NormKind::frobenius, NormKind::squared}) {
      ReconstructionOptions opt;
      opt.norm = norm;
      const auto g = loss_reconstruction(a, z, opt).grad;
      for (std::size_t k = 0; k < z.size(); ++k) {
        const double keep = z.values()[k];
        z.values()[k] = keep + 1e-6;
        const double up = loss_reconstruction(a, z, opt, false).value;
        z.values()[k] = keep - 1e-6;
        const double down = loss_reconstruction(a, z, opt, false).value;
        z.values()[k] = keep;
        CHECK(g.values()[k] == doctest::Approx((up - down) / 2e-6).epsilon(1e-5));
      }
    }
  }

  TEST_CASE("alignment loss examples") {
    const SelectionMap r({2, 0, 3}, 5);
    std::mt19937_64 rng(1);
    const Matrix z_t = oracle::random_matrix(5, 4, rng);
    const auto perfect = loss_alignment(r.select(z_t), z_t, r);
    CHECK(perfect.value == 0.0);
    for (double v : perfect.grad_k.values()) CHECK(v == 0.0);
    for (double v : perfect.grad_t.values()) CHECK(v == 0.0);

    Matrix ones(5, 4, 0.0);
    for (std::size_t i : {0, 2, 3})
      for (std::size_t j = 0; j < 4; ++j) ones(i, j) = 1.0;
    CHECK(loss_alignment(Matrix(3, 4), ones, r).value == doctest::Approx(std::sqrt(12.0)));
    CHECK_THROWS_AS(loss_alignment(Matrix(2, 4), ones, r), DimensionError);
  }

  TEST_CASE("alignment loss matches an explicit selection-matrix product") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      std::mt19937_64 rng(seed);
      std::vector<std::size_t> idx(9);
      std::iota(idx.begin(), idx.end(), 0);
      std::shuffle(idx.begin(), idx.end(), rng);
      idx.resize(5);
      const SelectionMap r(idx, 9);
      const Matrix z_t = oracle::random_matrix(9, 3, rng), z_k = oracle::random_matrix(5, 3, rng);
      const Matrix rz = oracle::mul(r.to_dense(), z_t);
      double s = 0.0;
      for (std::size_t k = 0; k < rz.size(); ++k) s += std::pow(z_k.values()[k] - rz.values()[k], 2);
      CHECK(std::abs(loss_alignment(z_k, z_t, r).value - std::sqrt(s)) < 1e-12);
    }
  }

  TEST_CASE("locality sampling examples") {
    const auto g = SparseGraph::from_edges(1, std::vector<Edge>{});
    const std::vector<std::vector<std::string>> terms{{"a"}};
    AugmentedGraph ag = assemble_augmented_graph(g, terms);
    // A detached textual node "b".
    ag.graph = SparseGraph::from_edges(3, std::vector<Edge>{{0, 1}});
    ag.provenance.push_back({NodeOrigin::Kind::textual, "b"});
    const auto s = sample_locality_pairs(ag, 1, 0);
    CHECK(s.pos == std::vector<NodePair>{{0, 1}});
    CHECK(s.neg == std::vector<NodePair>{{0, 2}});

    const auto none = sample_locality_pairs(trivial_augmentation(SparseGraph::from_edges(3, std::vector<Edge>{{0, 1}})), 2, 0);
    CHECK(none.pos.empty());
    CHECK(none.neg.empty());
    CHECK(loss_locality(Matrix(3, 2), none).value == 0.0);
  }

  TEST_CASE("negatives never hit an attached textual node") {
    const auto g = SparseGraph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}});
    const std::vector<std::vector<std::string>> terms{{"a", "b"}, {"c"}, {"a", "b", "c", "d"}};
    const auto ag = assemble_augmented_graph(g, terms);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto s = sample_locality_pairs(ag, 3, seed);
      CHECK(s.pos.size() == 7);
      // target 2 is attached to everything.
      CHECK(s.neg.size() == 3 * 3);
      for (std::size_t k = 0; k < s.neg.size(); ++k) {
        const auto [e, t] = s.neg[k];
        CHECK(ag.provenance[t].is_textual());
        CHECK_FALSE(ag.graph.has_edge(e, t));
        CHECK(s.pos[s.neg_owner[k]].first == e);
      }
    }
  }

  TEST_CASE("locality loss examples") {
    LocalitySampleSet s;
    s.pos = {{0, 1}};
    s.neg = {{0, 2}};
    s.neg_owner = {0};
    CHECK(loss_locality(Matrix(3, 2), s).value == doctest::Approx(2.0 * std::log(2.0)));

    Matrix unit(3, 2);
    unit(0, 0) = 1.0;
    unit(1, 0) = 1.0;
    unit(2, 1) = 1.0;
    CHECK(loss_locality(unit, s).value == doctest::Approx(1.00641).epsilon(1e-5));

    Matrix sat(3, 1);
    sat(0, 0) = 10.0;
    sat(1, 0) = 10.0;
    sat(2, 0) = -10.0;
    CHECK(loss_locality(sat, s).value < 1e-10);
    sat(2, 0) = 1e6;
    const auto clamped = loss_locality(sat, s);
    CHECK(std::isfinite(clamped.value));
    CHECK(clamped.grad.all_finite());
  }

  TEST_CASE("locality gradient matches finite differences") {
    std::mt19937_64 rng(12);
    Matrix z = oracle::random_matrix(6, 3, rng, 0.8);
    LocalitySampleSet s;
    s.pos = {{0, 3}, {1, 4}, {1, 5}};
    s.neg = {{0, 4}, {0, 5}, {1, 3}, {1, 3}, {1, 3}, {1, 3}};
    s.neg_owner = {0, 0, 1, 1, 2, 2};
    s.k_neg = 2;
    const auto g = loss_locality(z, s).grad;
    for (std::size_t k = 0; k < z.size(); ++k) {
      const double keep = z.values()[k];
      z.values()[k] = keep + 1e-6;
      const double up = loss_locality(z, s, false).value;
      z.values()[k] = keep - 1e-6;
      const double down = loss_locality(z, s, false).value;
      z.values()[k] = keep;
      CHECK(g.values()[k] == doctest::Approx((up - down) / 2e-6).epsilon(1e-5));
    }
  }

  TEST_CASE("total loss weighting") {
    CHECK(total_loss({1, 1, 1, 1}, {}) == doctest::Approx(12.001));
    CHECK(total_loss({3, 1, 1, 1}, {0, 0, 0}) == 3.0);
    LossWeights bad;
    bad.beta = -1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
  }

  TEST_CASE("default-weight total equals the individually computed terms") {
    const auto t = make_toy(4);
    const auto cfg = small_config(4);
    const JointObjective obj(t.kg, t.x_k, t.akg, t.x_t, cfg);
    const auto st = init_model(t.x_k.cols(), t.x_t.cols(), cfg);
    const auto step = obj.evaluate(st.original.weights, st.augmented.weights, 0, false);
    const auto zk = gcn_encode(normalize_adjacency(t.kg), t.x_k, st.original.weights);
    const auto zt = gcn_encode(normalize_adjacency(t.akg.graph), t.x_t, st.augmented.weights);
    const double lk = oracle::recon_loss(t.kg.adjacency().to_dense(), zk);
    const double lt = oracle::recon_loss(t.akg.graph.adjacency().to_dense(), zt);
    const double lj = loss_alignment(zk, zt, t.akg.selection(t.kg)).value;
    CHECK(step.loss.parts.l_k == doctest::Approx(lk).epsilon(1e-12));
    CHECK(step.loss.parts.l_t == doctest::Approx(lt).epsilon(1e-12));
    CHECK(step.loss.parts.l_j == doctest::Approx(lj).epsilon(1e-12));
    CHECK(step.loss.total ==
          doctest::Approx(lk + 0.001 * lt + 10 * lj + step.loss.parts.l_n).epsilon(1e-12));
  }

  TEST_CASE("full objective gradients match finite differences") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      CAPTURE(seed);
      const auto t = make_toy(seed, 5 + seed % 4, 2 + seed % 3);
      REQUIRE(t.akg.node_count() <= 12);
      auto cfg = small_config(seed);
      cfg.norm = seed % 2 ? NormKind::squared : NormKind::frobenius;
      cfg.negatives = 1 + seed % 2;
      const JointObjective obj(t.kg, t.x_k, t.akg, t.x_t, cfg);
      const auto st = init_model(t.x_k.cols(), t.x_t.cols(), cfg);
      check_gradients(obj, st.original.weights, st.augmented.weights, 1e-4);
    }
  }

  TEST_CASE("alignment-only gradient with zero weights and symmetric inputs") {
    const auto t = make_toy(3);
    auto cfg = small_config(3);
    cfg.weights = {0.0, 1.0, 0.0};
    const JointObjective obj(t.kg, t.x_k, t.akg, t.x_t, cfg);
    auto st = init_model(t.x_k.cols(), t.x_t.cols(), cfg);
    st.augmented.weights.w0.fill(0.0);
    check_gradients(obj, st.original.weights, st.augmented.weights, 1e-4);
  }

  TEST_CASE("disabled locality term passes no gradient") {
    const auto t = make_toy(2);
    auto cfg = small_config(2);
    cfg.weights = {0.0, 0.0, 0.0};
    const JointObjective obj(t.kg, t.x_k, t.akg, t.x_t, cfg);
    const auto st = init_model(t.x_k.cols(), t.x_t.cols(), cfg);
    const auto step = obj.evaluate(st.original.weights, st.augmented.weights, 0);
    for (double v : step.grad_t.w0.values()) CHECK(v == 0.0);
    for (double v : step.grad_t.w1.values()) CHECK(v == 0.0);
  }

  TEST_CASE("adam updates") {
    Matrix w(1, 1, 2.0);
    auto m = AdamMoments::zeros_like(w);
    m.m(0, 0) = 0.5;
    m.v(0, 0) = 0.25;
    adam_step(w, Matrix(1, 1), m, 3, 0.1);
    CHECK(m.m(0, 0) == doctest::Approx(0.45));
    CHECK(m.v(0, 0) == doctest::Approx(0.24975));

    Matrix zero(1, 1, 0.0);
    auto fresh = AdamMoments::zeros_like(zero);
    Matrix still(1, 1, 2.0);
    adam_step(still, zero, fresh, 1, 0.1);
    CHECK(still(0, 0) == 2.0);

    Matrix one(1, 1, 0.0);
    auto mo = AdamMoments::zeros_like(one);
    adam_step(one, Matrix(1, 1, 3.0), mo, 1, 0.01);
    CHECK(one(0, 0) == doctest::Approx(-0.01).epsilon(1e-6));

    Matrix x(1, 1, 1.0);
    auto mx = AdamMoments::zeros_like(x);
    for (std::size_t s = 1; s <= 100; ++s) adam_step(x, Matrix(1, 1, 2.0 * x(0, 0)), mx, s, 0.1);
    CHECK(std::abs(x(0, 0)) < 0.1);
  }

  TEST_CASE("zero epochs returns the initial embeddings") {
    const auto t = make_toy(1);
    auto cfg = small_config(1);
    cfg.epochs = 0;
    const auto r = train(t.kg, t.x_k, t.akg, t.x_t, cfg);
    CHECK(r.history.empty());
    const auto init = init_model(t.x_k.cols(), t.x_t.cols(), cfg);
    CHECK(r.z_k == gcn_encode(normalize_adjacency(t.kg), t.x_k, init.original.weights));
  }

  TEST_CASE("training lowers the loss on a small pair") {
    const auto t = make_toy(6, 6, 3);
    REQUIRE(t.akg.node_count() == 9);
    auto cfg = small_config(6);
    cfg.hidden = 16;
    cfg.embedding = 8;
    cfg.learning_rate = 0.001;
    const auto r = train(t.kg, t.x_k, t.akg, t.x_t, cfg);
    REQUIRE(r.history.size() == 200);
    CHECK(r.history.back().total < r.history.front().total);
    for (const auto& h : r.history) CHECK(std::isfinite(h.total));
  }

  TEST_CASE("training is deterministic") {
    const auto t = make_toy(7);
    auto cfg = small_config(7);
    cfg.epochs = 30;
    const auto a = train(t.kg, t.x_k, t.akg, t.x_t, cfg);
    const auto b = train(t.kg, t.x_k, t.akg, t.x_t, cfg);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t e = 0; e < a.history.size(); ++e) CHECK(a.history[e].total == b.history[e].total);
    CHECK(a.z_k == b.z_k);
  }

  TEST_CASE("zero auxiliary weights reduce to the single-graph auto-encoder") {
    const auto t = make_toy(9);
    auto cfg = small_config(9);
    cfg.epochs = 40;
    cfg.weights = {0.0, 0.0, 0.0};
    const auto joint = train(t.kg, t.x_k, t.akg, t.x_t, cfg);
    const auto gae = train_autoencoder(t.kg, t.x_k, cfg);
    REQUIRE(joint.history.size() == gae.history.size());
    for (std::size_t e = 0; e < gae.history.size(); ++e)
      CHECK(std::abs(joint.history[e].total - gae.history[e].total) < 1e-10);
    CHECK(max_abs_diff(joint.z_k, gae.z_k) < 1e-10);
  }

  TEST_CASE("early selection returns the best-scoring epoch") {
    const auto t = make_toy(5);
    auto cfg = small_config(5);
    cfg.epochs = 10;
    int calls = 0;
    TrainOptions opts;
    opts.select = [&](const Matrix&) { return calls++ == 3 ? 1.0 : 0.0; };
    const auto r = train_autoencoder(t.kg, t.x_k, cfg, opts);
    CHECK(r.selected_epoch == 3);
  }

  TEST_CASE("checkpoint round trip and bit-identical resume") {
    const auto t = make_toy(11);
    auto cfg = small_config(11);
    cfg.epochs = 12;
    const auto full = train(t.kg, t.x_k, t.akg, t.x_t, cfg);

    auto half_cfg = cfg;
    half_cfg.epochs = 5;
    const auto half = train(t.kg, t.x_k, t.akg, t.x_t, half_cfg);
    TempDir dir;
    save_checkpoint({half_cfg, half.state, half.history}, dir / "ckpt.bin");
    const auto back = load_checkpoint(dir / "ckpt.bin");
    CHECK(back.state.epoch == 5);
    CHECK(back.state.augmented.w1.v == half.state.augmented.w1.v);
    CHECK(to_json(back.config) == to_json(half_cfg));

    TrainOptions opts;
    opts.resume = &back.state;
    opts.resume_history = back.history;
    const auto resumed = train(t.kg, t.x_k, t.akg, t.x_t, cfg, opts);
    REQUIRE(resumed.history.size() == full.history.size());
    for (std::size_t e = 0; e < full.history.size(); ++e)
      CHECK(resumed.history[e].total == full.history[e].total);
    CHECK(resumed.z_k == full.z_k);
    CHECK(resumed.z_t == full.z_t);
  }

  TEST_CASE("corrupt checkpoints are rejected") {
    TempDir dir;
    const auto p = dir.write("bad.bin", "NOTACKPT");
    CHECK_THROWS(load_checkpoint(p));
  }

  TEST_CASE("train config parsing") {
    const auto cfg = train_config_from_json(nlohmann::json{{"epochs", 3}, {"norm", "squared"}, {"alpha", 0.5}});
    CHECK(cfg.epochs == 3);
    CHECK(cfg.norm == NormKind::squared);
    CHECK(cfg.weights.alpha == 0.5);
    CHECK(train_config_from_json(to_json(cfg)).weights.alpha == 0.5);
    CHECK_THROWS_AS(train_config_from_json(nlohmann::json{{"epoch", 3}}), ConfigError);
    TrainConfig bad;
    bad.learning_rate = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
  }

  TEST_CASE("exploding inputs raise a numerical error") {
    const auto t = make_toy(13);
    auto cfg = small_config(13);
    cfg.epochs = 5;
    cfg.learning_rate = 1e300;
    CHECK_THROWS_AS(train(t.kg, t.x_k, t.akg, t.x_t, cfg), NumericalError);
  }
}
