#include "edge/model/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "edge/core/errors.hpp"

namespace edge {
namespace {

constexpr std::array<char, 8> kMagic = {'E', 'D', 'G', 'E', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little, "checkpoint format assumes little-endian");

class Writer {
 public:
  explicit Writer(const std::filesystem::path& p) : out_(p, std::ios::binary) {
    if (!out_) throw IoError("cannot write " + p.string());
  }
  void bytes(const void* p, std::size_t n) { out_.write(static_cast<const char*>(p), static_cast<std::streamsize>(n)); }
  void u64(std::uint64_t v) { bytes(&v, sizeof v); }
  void f64(double v) { bytes(&v, sizeof v); }
  void matrix(const Matrix& m) {
    u64(m.rows());
    u64(m.cols());
    bytes(m.data(), m.size() * sizeof(double));
  }
  void finish(const std::filesystem::path& p) {
    out_.flush();
    if (!out_) throw IoError("failed writing " + p.string());
  }

 private:
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const std::filesystem::path& p) : in_(p, std::ios::binary), path_(p) {
    if (!in_) throw IoError("cannot open " + p.string());
  }
  void bytes(void* p, std::size_t n) {
    in_.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (!in_) throw ParseError(path_.string() + ": truncated checkpoint");
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    bytes(&v, sizeof v);
    return v;
  }
  double f64() {
    double v = 0;
    bytes(&v, sizeof v);
    return v;
  }
  Matrix matrix() {
    const auto r = u64();
    const auto c = u64();
    if (r > (1u << 28) || c > (1u << 28) || r * c > (1ull << 32))
      throw ParseError(path_.string() + ": implausible matrix shape in checkpoint");
    Matrix m(r, c);
    bytes(m.data(), m.size() * sizeof(double));
    return m;
  }

 private:
  std::ifstream in_;
  std::filesystem::path path_;
};

void write_encoder(Writer& w, const EncoderState& e) {
  for (const Matrix* m : {&e.weights.w0, &e.weights.w1, &e.w0.m, &e.w0.v, &e.w1.m, &e.w1.v}) w.matrix(*m);
}

EncoderState read_encoder(Reader& r) {
  EncoderState e;
  for (Matrix* m : {&e.weights.w0, &e.weights.w1, &e.w0.m, &e.w0.v, &e.w1.m, &e.w1.v}) *m = r.matrix();
  return e;
}

}  // namespace

nlohmann::json to_json(const TrainConfig& c) {
  return {{"epochs", c.epochs},
          {"learning_rate", c.learning_rate},
          {"hidden", c.hidden},
          {"embedding", c.embedding},
          {"alpha", c.weights.alpha},
          {"beta", c.weights.beta},
          {"gamma", c.weights.gamma},
          {"negatives", c.negatives},
          {"seed", c.seed},
          {"self_loops", c.self_loops},
          {"norm", c.norm == NormKind::squared ? "squared" : "frobenius"},
          {"dense_threshold", c.dense_threshold},
          {"sample_budget", c.sample_budget},
          {"adam_beta1", c.adam.beta1},
          {"adam_beta2", c.adam.beta2},
          {"adam_epsilon", c.adam.epsilon}};
}

TrainConfig train_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("training config must be a JSON object");
  TrainConfig c;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "epochs") c.epochs = v.get<std::size_t>();
      else if (key == "learning_rate") c.learning_rate = v.get<double>();
      else if (key == "hidden") c.hidden = v.get<std::size_t>();
      else if (key == "embedding") c.embedding = v.get<std::size_t>();
      else if (key == "alpha") c.weights.alpha = v.get<double>();
      else if (key == "beta") c.weights.beta = v.get<double>();
      else if (key == "gamma") c.weights.gamma = v.get<double>();
      else if (key == "negatives") c.negatives = v.get<std::size_t>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "self_loops") c.self_loops = v.get<bool>();
      else if (key == "norm") {
        const auto s = v.get<std::string>();
        if (s == "frobenius") c.norm = NormKind::frobenius;
        else if (s == "squared") c.norm = NormKind::squared;
        else throw ConfigError("norm must be 'frobenius' or 'squared', got '" + s + "'");
      } else if (key == "dense_threshold") c.dense_threshold = v.get<std::size_t>();
      else if (key == "sample_budget") c.sample_budget = v.get<std::size_t>();
      else if (key == "adam_beta1") c.adam.beta1 = v.get<double>();
      else if (key == "adam_beta2") c.adam.beta2 = v.get<double>();
      else if (key == "adam_epsilon") c.adam.epsilon = v.get<double>();
      else throw ConfigError("unknown training option '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("training config: ") + e.what());
  }
  return c;
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  Writer w(path);
  w.bytes(kMagic.data(), kMagic.size());
  const std::uint32_t version = kVersion;
  w.bytes(&version, sizeof version);
  const std::string cfg = to_json(ckpt.config).dump();
  w.u64(cfg.size());
  w.bytes(cfg.data(), cfg.size());
  w.u64(ckpt.state.epoch);
  w.u64(ckpt.state.joint() ? 1 : 0);
  write_encoder(w, ckpt.state.original);
  if (ckpt.state.joint()) write_encoder(w, ckpt.state.augmented);
  w.u64(ckpt.history.size());
  for (const auto& h : ckpt.history)
    for (double v : {h.total, h.parts.l_k, h.parts.l_t, h.parts.l_j, h.parts.l_n}) w.f64(v);
  w.finish(path);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  Reader r(path);
  std::array<char, 8> magic{};
  r.bytes(magic.data(), magic.size());
  if (magic != kMagic) throw ParseError(path.string() + ": not a checkpoint file");
  std::uint32_t version = 0;
  r.bytes(&version, sizeof version);
  if (version != kVersion)
    throw ParseError(path.string() + ": unsupported checkpoint version " + std::to_string(version));
  const auto len = r.u64();
  if (len > (1u << 20)) throw ParseError(path.string() + ": implausible config length");
  std::string cfg(len, '\0');
  r.bytes(cfg.data(), len);
  Checkpoint c;
  try {
    c.config = train_config_from_json(nlohmann::json::parse(cfg));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": bad embedded config: " + e.what());
  }
  c.state.epoch = r.u64();
  const bool joint = r.u64() != 0;
  c.state.original = read_encoder(r);
  if (joint) c.state.augmented = read_encoder(r);
  const auto n = r.u64();
  if (n > 10'000'000) throw ParseError(path.string() + ": implausible history length");
  c.history.resize(n);
  for (auto& h : c.history) {
    h.total = r.f64();
    h.parts.l_k = r.f64();
    h.parts.l_t = r.f64();
    h.parts.l_j = r.f64();
    h.parts.l_n = r.f64();
  }
  return c;
}

}  // namespace edge
