// Command-line front end: run-fixed, run-stop, run, truth, regen-demo.
// Exit codes: 0 success, 2 configuration error, 3 numerical degeneracy.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cyclic/experiment/commands.hpp"
#include "cyclic/experiment/config.hpp"
#include "cyclic/text.hpp"
#include "json.hpp"

namespace {

using namespace cyclic;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Overrides {
  std::string config;
  std::optional<std::string> mode;
  std::optional<std::string> sampler;
  std::optional<std::size_t> n;
  std::optional<std::size_t> reps;
  std::optional<std::uint64_t> seed;
  std::optional<double> kappa;
  std::optional<double> alpha;
  std::optional<double> epsilon;
  std::optional<int> k1;
  std::optional<std::string> data;
  std::optional<double> flip_a;
  std::optional<double> flip_b;
  std::vector<double> truth;
  std::optional<std::size_t> truth_length;
  std::optional<std::size_t> workers;
  std::optional<std::string> cache_dir;
  std::optional<std::string> scaling;
  std::optional<std::size_t> n0;
  std::optional<std::size_t> max_n;
  std::string out;
  std::string svg;
};

void add_experiment_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON experiment file");
  cmd->add_option("--mode", o.mode, "fixed | stop");
  cmd->add_option("--sampler", o.sampler, "curve | lmm | flip");
  cmd->add_option("--n", o.n, "chain length for fixed-length runs");
  cmd->add_option("--reps", o.reps, "replications");
  cmd->add_option("--seed", o.seed, "base seed; replication i uses stream i");
  cmd->add_option("--kappa", o.kappa, "batch size exponent");
  cmd->add_option("--alpha", o.alpha, "1 - confidence level");
  cmd->add_option("--epsilon", o.epsilon, "volume parameter of the stopping rule");
  cmd->add_option("--k1", o.k1, "cheap updates per cycle");
  cmd->add_option("--data", o.data, "Orthodont CSV for the lmm sampler");
  cmd->add_option("--flip-a", o.flip_a, "flip probability of kernel 1");
  cmd->add_option("--flip-b", o.flip_b, "flip probability of kernel 2");
  cmd->add_option("--truth", o.truth, "true mean, comma separated")->delimiter(',');
  cmd->add_option("--truth-length", o.truth_length, "length of the long truth run");
  cmd->add_option("--workers", o.workers, "worker threads");
  cmd->add_option("--cache-dir", o.cache_dir, "directory for cached truth runs");
  cmd->add_option("--scaling", o.scaling, "unit | det_psi");
  cmd->add_option("--n0", o.n0, "minimum iterations before stopping");
  cmd->add_option("--max-n", o.max_n, "cap on the chain length in stop mode");
  cmd->add_option("--out", o.out, "CSV output path (JSON summary goes to <out>.json)");
  cmd->add_option("--svg", o.svg, "SVG plot of the first stop replication");
}

ExperimentConfig build_config(const Overrides& o) {
  ExperimentConfig cfg = o.config.empty() ? ExperimentConfig{} : config_from_file(o.config);
  // Re-serialize with the overrides applied so the same validation runs.
  nlohmann::json j = nlohmann::json::parse(config_to_json(cfg));
  if (o.mode) j["mode"] = *o.mode;
  if (o.sampler) j["sampler"] = *o.sampler;
  if (o.n) j["n"] = *o.n;
  if (o.reps) j["replications"] = *o.reps;
  if (o.seed) j["seed"] = *o.seed;
  if (o.kappa) j["kappa"] = *o.kappa;
  if (o.alpha) j["alpha"] = *o.alpha;
  if (o.epsilon) j["stop"]["epsilon"] = *o.epsilon;
  if (o.scaling) j["stop"]["scaling"] = *o.scaling;
  if (o.n0) j["stop"]["n0"] = *o.n0;
  if (o.max_n) j["stop"]["max_n"] = *o.max_n;
  if (o.k1) {
    j["curve"]["k1"] = *o.k1;
    j["lmm"]["k1"] = *o.k1;
  }
  if (o.data) j["lmm"]["data"] = *o.data;
  if (o.flip_a) j["flip"]["a"] = *o.flip_a;
  if (o.flip_b) j["flip"]["b"] = *o.flip_b;
  if (!o.truth.empty()) j["truth"] = o.truth;
  if (o.truth_length) j["truth"] = {{"long_run", *o.truth_length}};
  if (o.workers) j["workers"] = *o.workers;
  if (o.cache_dir) j["cache_dir"] = *o.cache_dir;
  return config_from_json(j.dump());
}

void emit(const Overrides& o, const ExperimentConfig& cfg, const Vector& truth, const Table& t) {
  if (o.out.empty()) {
    write_table(std::cout, t);
    return;
  }
  std::ofstream csv(o.out);
  if (!csv) fail(ErrorCode::IoError, "cannot write '" + o.out + "'");
  write_table(csv, t);
  std::ofstream json(o.out + ".json");
  json << summary_json(cfg, truth, t) << '\n';
  const Aggregate a = aggregate(t);
  const std::size_t cov = t.column("covered") - 1;
  std::cout << "replications " << t.rows.size() << ", coverage " << text::format_double(a.mean[cov])
            << " (" << text::format_double(a.se[cov]) << ")\n";
}

void run_fixed(const Overrides& o, ExperimentConfig cfg) {
  cfg.mode = Mode::fixed;
  const FixedResult r = cmd_run_fixed(cfg);
  emit(o, cfg, r.truth, r.table());
}

void run_stop(const Overrides& o, ExperimentConfig cfg) {
  cfg.mode = Mode::stop;
  const StopResult r = cmd_run_stop(cfg);
  emit(o, cfg, r.truth, r.table());
  if (!o.svg.empty() && !r.rows.empty()) {
    std::ofstream svg(o.svg);
    if (!svg) fail(ErrorCode::IoError, "cannot write '" + o.svg + "'");
    write_stop_svg(svg, cfg, r.rows.front());
  }
}

void run_truth(const ExperimentConfig& cfg) {
  const TruthResult t = cmd_truth(cfg);
  nlohmann::json j;
  j["sampler"] = to_string(cfg.sampler);
  j["mean"] = t.mean;
  j["se"] = t.se;
  j["n"] = t.n;
  j["exact"] = t.exact;
  j["from_cache"] = t.from_cache;
  j["cache_key"] = t.cache_key;
  std::cout << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Output analysis for cyclic MCMC samplers"};
  app.require_subcommand(1);

  Overrides fixed_o, stop_o, run_o, truth_o;
  auto* fixed = app.add_subcommand("run-fixed", "fixed-length replications with coverage");
  add_experiment_options(fixed, fixed_o);
  auto* stop = app.add_subcommand("run-stop", "replications of the sequential stopping rule");
  add_experiment_options(stop, stop_o);
  auto* run = app.add_subcommand("run", "fixed or stop replications per the configured mode");
  add_experiment_options(run, run_o);
  auto* truth = app.add_subcommand("truth", "long-run estimate of the target mean");
  add_experiment_options(truth, truth_o);

  RegenDemoConfig regen_cfg;
  std::string regen_out;
  auto* regen = app.add_subcommand("regen-demo", "split-chain regeneration checks");
  regen->add_option("--chain", regen_cfg.chain, "three-state | iid | flip");
  regen->add_option("--n", regen_cfg.n, "transitions");
  regen->add_option("--seed", regen_cfg.seed, "seed");
  regen->add_option("--flip-a", regen_cfg.flip_a, "flip probability of kernel 1");
  regen->add_option("--flip-b", regen_cfg.flip_b, "flip probability of kernel 2");
  regen->add_option("--out", regen_out, "tour CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*fixed) run_fixed(fixed_o, build_config(fixed_o));
    if (*stop) run_stop(stop_o, build_config(stop_o));
    if (*run) {
      const ExperimentConfig cfg = build_config(run_o);
      if (cfg.mode == Mode::fixed) {
        run_fixed(run_o, cfg);
      } else {
        run_stop(run_o, cfg);
      }
    }
    if (*truth) run_truth(build_config(truth_o));
    if (*regen) {
      const RegenDemoReport r = cmd_regen_demo(regen_cfg);
      std::cout << to_json(r) << '\n';
      if (!regen_out.empty()) {
        std::ofstream csv(regen_out);
        if (!csv) fail(ErrorCode::IoError, "cannot write '" + regen_out + "'");
        write_tours_csv(csv, r.tours);
      }
    }
  } catch (const StepFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_numerical(e.code()) ? kExitNumerical : kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
