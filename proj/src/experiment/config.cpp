#include "cyclic/experiment/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace cyclic {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  fail(ErrorCode::ConfigError, "config." + path + ": " + what);
}

class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) bad(path_.empty() ? "<root>" : path_, "expected an object");
  }

  void allow_only(std::initializer_list<const char*> keys) const {
    for (const auto& [key, value] : j_.items()) {
      bool known = false;
      for (const char* k : keys) known = known || key == k;
      if (!known) bad(field(key), "unknown key");
    }
  }

  bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }
  const json& at(const char* key) const { return j_.at(key); }
  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void read(const char* key, double& out) const {
    if (!has(key)) return;
    if (!at(key).is_number()) bad(field(key), "expected a number");
    out = at(key).get<double>();
  }
  void read(const char* key, std::size_t& out) const {
    if (!has(key)) return;
    if (!at(key).is_number_integer() || at(key).get<long long>() < 0) {
      bad(field(key), "expected a non-negative integer");
    }
    out = at(key).get<std::size_t>();
  }
  void read(const char* key, std::uint64_t& out, bool) const {
    if (!has(key)) return;
    if (!at(key).is_number_unsigned() && !at(key).is_number_integer()) {
      bad(field(key), "expected an integer");
    }
    out = at(key).get<std::uint64_t>();
  }
  void read(const char* key, int& out) const {
    if (!has(key)) return;
    if (!at(key).is_number_integer()) bad(field(key), "expected an integer");
    out = at(key).get<int>();
  }
  void read(const char* key, std::string& out) const {
    if (!has(key)) return;
    if (!at(key).is_string()) bad(field(key), "expected a string");
    out = at(key).get<std::string>();
  }

 private:
  const json& j_;
  std::string path_;
};

SamplerKind parse_sampler(const std::string& s, const std::string& path) {
  if (s == "curve") return SamplerKind::curve;
  if (s == "lmm") return SamplerKind::lmm;
  if (s == "flip") return SamplerKind::flip;
  bad(path, "unknown sampler '" + s + "' (curve|lmm|flip)");
}

Mode parse_mode(const std::string& s, const std::string& path) {
  if (s == "fixed") return Mode::fixed;
  if (s == "stop") return Mode::stop;
  bad(path, "unknown mode '" + s + "' (fixed|stop)");
}

Scaling parse_scaling(const std::string& s, const std::string& path) {
  if (s == "unit") return Scaling::unit;
  if (s == "det_psi") return Scaling::det_psi;
  bad(path, "unknown scaling '" + s + "' (unit|det_psi)");
}

}  // namespace

std::string to_string(SamplerKind k) {
  switch (k) {
    case SamplerKind::curve: return "curve";
    case SamplerKind::lmm: return "lmm";
    case SamplerKind::flip: return "flip";
  }
  return "?";
}

std::string to_string(Mode m) { return m == Mode::fixed ? "fixed" : "stop"; }

void ExperimentConfig::validate() const {
  if (replications < 1) bad("replications", "must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) bad("alpha", "must lie in (0,1)");
  if (!(kappa > 0.0 && kappa < 1.0)) bad("kappa", "must lie in (0,1)");
  if (workers < 1) bad("workers", "must be >= 1");
  if (mode == Mode::fixed && n < 10) bad("n", "must be >= 10");
  if (sampler != SamplerKind::flip && k1 < 1) {
    bad(sampler == SamplerKind::curve ? "curve.k1" : "lmm.k1", "must be >= 1");
  }
  if (sampler == SamplerKind::curve && curve_h != "exp") bad("curve.h", "only 'exp' is available");
  if (sampler == SamplerKind::flip) {
    if (!(flip_a > 0.0 && flip_a < 1.0)) bad("flip.a", "must lie in (0,1)");
    if (!(flip_b > 0.0 && flip_b < 1.0)) bad("flip.b", "must lie in (0,1)");
  }
  if (sampler == SamplerKind::lmm && data_path.empty()) bad("lmm.data", "must name a CSV file");
  if (truth) {
    const std::size_t d = sampler == SamplerKind::lmm ? 2 : 1;
    if (truth->size() != d) bad("truth", "expected " + std::to_string(d) + " component(s)");
  } else if (truth_length < 100) {
    bad("truth.long_run", "must be >= 100");
  }
  if (!(stop.epsilon > 0.0)) bad("stop.epsilon", "must be > 0");
  if (stop.n0 < 1) bad("stop.n0", "must be >= 1");
  if (!(stop.check_growth > 1.0)) bad("stop.check_growth", "must be > 1");
}

StopConfig ExperimentConfig::stop_config() const {
  StopConfig s = stop;
  s.alpha = alpha;
  s.kappa = kappa;
  return s;
}

ExperimentConfig config_from_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ConfigError, std::string("config: invalid JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  const Section top(root, "");
  top.allow_only({"sampler", "mode", "n", "replications", "seed", "kappa", "alpha", "curve", "lmm",
                  "flip", "stop", "truth", "workers", "cache_dir"});
  std::string s;
  if (top.has("sampler")) {
    top.read("sampler", s);
    cfg.sampler = parse_sampler(s, "sampler");
  }
  if (top.has("mode")) {
    top.read("mode", s);
    cfg.mode = parse_mode(s, "mode");
  }
  top.read("n", cfg.n);
  top.read("replications", cfg.replications);
  top.read("seed", cfg.seed, true);
  top.read("kappa", cfg.kappa);
  top.read("alpha", cfg.alpha);
  top.read("workers", cfg.workers);
  top.read("cache_dir", cfg.cache_dir);
  if (top.has("curve")) {
    const Section c(top.at("curve"), "curve");
    c.allow_only({"k1", "h"});
    if (cfg.sampler == SamplerKind::curve) c.read("k1", cfg.k1);
    c.read("h", cfg.curve_h);
  }
  if (top.has("lmm")) {
    const Section c(top.at("lmm"), "lmm");
    c.allow_only({"k1", "data"});
    if (cfg.sampler == SamplerKind::lmm) c.read("k1", cfg.k1);
    c.read("data", cfg.data_path);
  }
  if (top.has("flip")) {
    const Section c(top.at("flip"), "flip");
    c.allow_only({"a", "b"});
    c.read("a", cfg.flip_a);
    c.read("b", cfg.flip_b);
  }
  if (top.has("stop")) {
    const Section c(top.at("stop"), "stop");
    c.allow_only({"epsilon", "n0", "scaling", "check_growth", "n_start", "max_n"});
    c.read("epsilon", cfg.stop.epsilon);
    c.read("n0", cfg.stop.n0);
    c.read("check_growth", cfg.stop.check_growth);
    c.read("n_start", cfg.stop.n_start);
    if (c.has("scaling")) {
      c.read("scaling", s);
      cfg.stop.scaling = parse_scaling(s, "stop.scaling");
    }
    if (c.has("max_n")) {
      std::size_t m = 0;
      c.read("max_n", m);
      cfg.stop.max_n = m;
    }
  }
  if (top.has("truth")) {
    const json& t = top.at("truth");
    if (t.is_array()) {
      Vector v;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (!t[i].is_number()) bad("truth[" + std::to_string(i) + "]", "expected a number");
        v.push_back(t[i].get<double>());
      }
      cfg.truth = v;
    } else {
      const Section c(t, "truth");
      c.allow_only({"long_run"});
      c.read("long_run", cfg.truth_length);
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigError, "config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["sampler"] = to_string(cfg.sampler);
  j["mode"] = to_string(cfg.mode);
  j["n"] = cfg.n;
  j["replications"] = cfg.replications;
  j["seed"] = cfg.seed;
  j["kappa"] = cfg.kappa;
  j["alpha"] = cfg.alpha;
  j["curve"] = {{"k1", cfg.k1}, {"h", cfg.curve_h}};
  j["lmm"] = {{"k1", cfg.k1}, {"data", cfg.data_path}};
  j["flip"] = {{"a", cfg.flip_a}, {"b", cfg.flip_b}};
  json stop = {{"epsilon", cfg.stop.epsilon},
               {"n0", cfg.stop.n0},
               {"scaling", cfg.stop.scaling == Scaling::unit ? "unit" : "det_psi"},
               {"check_growth", cfg.stop.check_growth},
               {"n_start", cfg.stop.n_start}};
  stop["max_n"] = cfg.stop.max_n ? json(*cfg.stop.max_n) : json(nullptr);
  j["stop"] = stop;
  if (cfg.truth) {
    j["truth"] = *cfg.truth;
  } else {
    j["truth"] = {{"long_run", cfg.truth_length}};
  }
  j["workers"] = cfg.workers;
  j["cache_dir"] = cfg.cache_dir;
  return j.dump(2);
}

}  // namespace cyclic
