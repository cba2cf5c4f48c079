#include "cyclic/experiment/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "cyclic/chain/cyclic_sampler.hpp"
#include "cyclic/estimators/region.hpp"
#include "cyclic/estimators/report.hpp"
#include "cyclic/experiment/pool.hpp"
#include "cyclic/experiment/svg.hpp"
#include "cyclic/samplers/curve.hpp"
#include "cyclic/samplers/lmm.hpp"
#include "cyclic/samplers/synthetic.hpp"
#include "cyclic/text.hpp"
#include "json.hpp"

namespace cyclic {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Builds the configured sampler and calls fn(sampler, initial_state).
template <class F>
auto visit_sampler(const ExperimentConfig& cfg, F&& fn) {
  switch (cfg.sampler) {
    case SamplerKind::curve: {
      const CurveSampler s = make_curve_sampler(exp_curve_spec(cfg.k1));
      return fn(s, s.initial_state());
    }
    case SamplerKind::lmm: {
      const LmmSampler s = make_lmm_sampler(load_orthodont(cfg.data_path, cfg.k1));
      return fn(s, s.initial_state());
    }
    case SamplerKind::flip:
      break;
  }
  const FlipSampler s = make_flip_chain(FlipChainSpec{cfg.flip_a, cfg.flip_b});
  return fn(s, s.initial_state());
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string truth_cache_key(const ExperimentConfig& cfg) {
  std::ostringstream desc;
  desc << "sampler=" << to_string(cfg.sampler) << ";length=" << cfg.truth_length
       << ";seed=" << cfg.seed << ";kappa=" << text::format_double(cfg.kappa);
  switch (cfg.sampler) {
    case SamplerKind::curve: desc << ";k1=" << cfg.k1 << ";h=" << cfg.curve_h; break;
    case SamplerKind::lmm: desc << ";k1=" << cfg.k1 << ";data=" << read_file(cfg.data_path); break;
    case SamplerKind::flip:
      desc << ";a=" << text::format_double(cfg.flip_a) << ";b=" << text::format_double(cfg.flip_b);
      break;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(desc.str())));
  return buf;
}

TruthResult cmd_truth(const ExperimentConfig& cfg) {
  cfg.validate();
  TruthResult res;
  if (cfg.sampler == SamplerKind::flip) {
    res.mean = {0.0};
    res.se = {0.0};
    res.exact = true;
    return res;
  }
  res.cache_key = truth_cache_key(cfg);
  std::filesystem::path cache_file;
  if (!cfg.cache_dir.empty()) {
    cache_file = std::filesystem::path(cfg.cache_dir) / ("truth-" + res.cache_key + ".json");
    if (std::filesystem::exists(cache_file)) {
      const json j = json::parse(read_file(cache_file.string()));
      if (j.value("key", std::string{}) == res.cache_key) {
        res.mean = j.at("mean").get<Vector>();
        res.se = j.at("se").get<Vector>();
        res.n = j.at("n").get<std::size_t>();
        res.from_cache = true;
        return res;
      }
    }
  }
  Rng rng(cfg.seed, kTruthStream);
  const SampleMatrix s = visit_sampler(cfg, [&](const auto& sampler, auto init) {
    return run_chain(sampler, std::move(init), cfg.truth_length, 0, rng);
  });
  const MeanCov mc = sample_mean_cov(s);
  const CovEstimate sigma = batch_means_cov(s, BatchPlan::for_samples(s.rows(), cfg.kappa));
  res.mean = mc.mean;
  res.n = s.rows();
  for (std::size_t j = 0; j < s.dim(); ++j) {
    res.se.push_back(std::sqrt(sigma.value(j, j) / static_cast<double>(s.rows())));
  }
  if (!cache_file.empty()) {
    std::filesystem::create_directories(cache_file.parent_path());
    json j;
    j["key"] = res.cache_key;
    j["sampler"] = to_string(cfg.sampler);
    j["n"] = res.n;
    j["mean"] = res.mean;
    j["se"] = res.se;
    std::ofstream out(cache_file);
    out << j.dump(2) << '\n';
  }
  return res;
}

Vector resolve_truth(const ExperimentConfig& cfg) {
  if (cfg.truth) return *cfg.truth;
  return cmd_truth(cfg).mean;
}

FixedResult cmd_run_fixed(const ExperimentConfig& cfg) {
  cfg.validate();
  FixedResult res;
  res.truth = resolve_truth(cfg);
  res.rows.resize(cfg.replications);
  visit_sampler(cfg, [&](const auto& sampler, auto init) {
    parallel_for(cfg.replications, cfg.workers, [&](std::size_t i) {
      Rng rng(cfg.seed, i);
      const auto t0 = std::chrono::steady_clock::now();
      const SampleMatrix s = run_chain(sampler, init, cfg.n, 0, rng);
      const EstimatorReport rep = summarize(s, cfg.kappa);
      const ConfidenceRegion region =
          confidence_region(s, BatchPlan::for_samples(s.rows(), cfg.kappa), cfg.alpha);
      FixedRow& row = res.rows[i];
      row.wall = seconds_since(t0);
      row.rep = i;
      row.n = s.rows();
      row.mean = rep.mean;
      row.ess = rep.ess.value_or(kNaN);
      row.tess = rep.tess.value_or(kNaN);
      row.covered = region.contains(res.truth);
    });
    return 0;
  });
  return res;
}

Table FixedResult::table() const {
  Table t;
  const std::size_t d = truth.size();
  t.header = {"rep", "n", "wall"};
  for (std::size_t j = 0; j < d; ++j) t.header.push_back("mean_" + std::to_string(j + 1));
  for (const char* h : {"ess", "tess", "esspm", "tesspm", "covered"}) t.header.emplace_back(h);
  for (const auto& r : rows) {
    std::vector<double> v = {static_cast<double>(r.rep), static_cast<double>(r.n), r.wall};
    v.insert(v.end(), r.mean.begin(), r.mean.end());
    const double minutes = r.wall / 60.0;
    v.push_back(r.ess);
    v.push_back(r.tess);
    v.push_back(minutes > 0.0 ? r.ess / minutes : kNaN);
    v.push_back(minutes > 0.0 ? r.tess / minutes : kNaN);
    v.push_back(r.covered ? 1.0 : 0.0);
    t.rows.push_back(std::move(v));
  }
  return t;
}

StopResult cmd_run_stop(const ExperimentConfig& cfg) {
  cfg.validate();
  StopResult res;
  res.truth = resolve_truth(cfg);
  res.rows.resize(cfg.replications);
  const StopConfig scfg = cfg.stop_config();
  visit_sampler(cfg, [&](const auto& sampler, auto init) {
    parallel_for(cfg.replications, cfg.workers, [&](std::size_t i) {
      Rng rng(cfg.seed, i);
      const auto t0 = std::chrono::steady_clock::now();
      StopReport rep;
      try {
        rep = run_until_stop(sampler, init, scfg, rng);
      } catch (const BudgetExceeded& e) {
        rep = e.partial();
      }
      StopRow& row = res.rows[i];
      row.wall = seconds_since(t0);
      row.rep = i;
      row.stopped = rep.stopped;
      row.n_eps = rep.n_eps;
      if (!rep.phase_counts.empty()) {
        row.last_phase = rep.phase_counts.back();
        for (std::size_t p = 0; p + 1 < rep.phase_counts.size(); ++p) {
          row.other_phases += rep.phase_counts[p];
        }
      }
      row.covered = rep.stopped && rep.region && rep.region->contains(res.truth);
      row.ess = rep.ess_at_stop;
      row.estimate = rep.estimate;
      row.checks = std::move(rep.checks);
    });
    return 0;
  });
  return res;
}

Table StopResult::table() const {
  Table t;
  const std::size_t d = truth.size();
  t.header = {"rep", "stopped", "n_eps", "wall", "last_phase", "other_phases", "covered", "ess"};
  for (std::size_t j = 0; j < d; ++j) t.header.push_back("mean_" + std::to_string(j + 1));
  for (const auto& r : rows) {
    std::vector<double> v = {static_cast<double>(r.rep),
                             r.stopped ? 1.0 : 0.0,
                             static_cast<double>(r.n_eps),
                             r.wall,
                             static_cast<double>(r.last_phase),
                             static_cast<double>(r.other_phases),
                             r.covered ? 1.0 : 0.0,
                             r.ess};
    for (std::size_t j = 0; j < d; ++j) v.push_back(j < r.estimate.size() ? r.estimate[j] : kNaN);
    t.rows.push_back(std::move(v));
  }
  return t;
}

std::string summary_json(const ExperimentConfig& cfg, const Vector& truth, const Table& table) {
  json j;
  j["config"] = json::parse(config_to_json(cfg));
  j["truth"] = truth;
  j["replications"] = table.rows.size();
  const Aggregate a = aggregate(table);
  json cols;
  for (std::size_t c = 1; c < table.header.size(); ++c) {
    cols[table.header[c]] = {{"mean", number_or_null(a.mean[c - 1])},
                             {"se", number_or_null(a.se[c - 1])}};
  }
  j["aggregate"] = cols;
  return j.dump(2);
}

void write_stop_svg(std::ostream& os, const ExperimentConfig& cfg, const StopRow& row) {
  PlotSeries lhs{"volume^(1/d) + s(n, eps)", {}, {}, "#1f77b4"};
  PlotSeries rhs{"eps * M", {}, {}, "#d62728"};
  PlotSeries ess_series{"ESS", {}, {}, "#2ca02c"};
  PlotSeries threshold{"threshold", {}, {}, "#7f7f7f"};
  const std::size_t d = cfg.sampler == SamplerKind::lmm ? 2 : 1;
  const double thr = ess_threshold(cfg.alpha, d, cfg.stop.epsilon);
  for (const auto& c : row.checks) {
    const double n = static_cast<double>(c.n);
    lhs.x.push_back(n);
    lhs.y.push_back(c.lhs);
    rhs.x.push_back(n);
    rhs.y.push_back(c.rhs);
    ess_series.x.push_back(n);
    ess_series.y.push_back(c.ess);
    threshold.x.push_back(n);
    threshold.y.push_back(thr);
  }
  write_svg(os, {PlotPanel{"Stopping rule, replication " + std::to_string(row.rep), "n",
                           "size", {lhs, rhs}},
                 PlotPanel{"Effective sample size", "n", "ESS", {ess_series, threshold}}});
}

RegenDemoReport cmd_regen_demo(const RegenDemoConfig& cfg) {
  RegenDemoReport rep;
  rep.chain = cfg.chain;
  Rng rng(cfg.seed, 0);
  double pi_h = 0.0;
  Vector theta;
  int k = 1;
  if (cfg.chain == "three-state") {
    const auto p = reference_three_state_matrix();
    const auto kernel = three_state_kernel(p);
    const auto run = run_split_chain(kernel, 0, cfg.n, rng);
    pi_h = mean_h(kernel, run);
    theta = {three_state_stationary(p)[1]};
    const BlockFunction<int> blockf = [](const int&, const int& v, std::span<double> out) {
      out[0] = v == 1 ? 1.0 : 0.0;
    };
    rep.tours = tours(run, blockf, 1, k, theta);
    rep.transitions = run.transitions();
    for (auto b : run.bells) rep.bells += b;
  } else if (cfg.chain == "iid") {
    const auto kernel = iid_normal_kernel();
    const auto run = run_split_chain(kernel, 0.0, cfg.n, rng);
    pi_h = mean_h(kernel, run);
    theta = {0.0};
    const BlockFunction<double> blockf = [](const double&, const double& v,
                                            std::span<double> out) { out[0] = v; };
    rep.tours = tours(run, blockf, 1, k, theta);
    rep.transitions = run.transitions();
    for (auto b : run.bells) rep.bells += b;
  } else if (cfg.chain == "flip") {
    k = 2;
    const auto kernel = flip_block_kernel(cfg.flip_a, cfg.flip_b);
    const auto run = run_split_chain(kernel, FlipBlockState{}, cfg.n, rng);
    pi_h = mean_h(kernel, run);
    theta = {0.0};
    rep.tours = tours(run, BlockFunction<FlipBlockState>(flip_block_value), 1, k, theta);
    rep.transitions = run.transitions();
    for (auto b : run.bells) rep.bells += b;
  } else {
    fail(ErrorCode::ConfigError, "regen.chain: unknown chain '" + cfg.chain +
                                     "' (three-state|iid|flip)");
  }
  rep.kac = kac_check(rep.tours, pi_h);
  if (rep.tours.size() >= kMinToursForCheck) {
    rep.identity = tour_identity_check(rep.tours, k, theta);
  }
  const std::vector<double> taus = tour_lengths(rep.tours);
  rep.tau_lag1 = taus.size() > 2 ? lag_autocorrelation(taus, 1) : kNaN;
  rep.all_length_one = true;
  for (const auto& t : rep.tours) rep.all_length_one = rep.all_length_one && t.tau == 1;
  return rep;
}

std::string to_json(const RegenDemoReport& r) {
  json j;
  j["chain"] = r.chain;
  j["transitions"] = r.transitions;
  j["bells"] = r.bells;
  j["tours"] = r.tours.size();
  j["all_length_one"] = r.all_length_one;
  j["tau_lag1_autocorrelation"] = number_or_null(r.tau_lag1);
  j["kac"] = {{"mean_tau", r.kac.mean_tau},
              {"se", number_or_null(r.kac.se)},
              {"pi_h", r.kac.pi_h},
              {"expected", r.kac.expected},
              {"z", number_or_null(r.kac.z)}};
  if (r.identity) {
    const auto& id = *r.identity;
    json ij;
    ij["mean_tau"] = id.mean_tau;
    ij["ratio"] = id.ratio;
    ij["theta"] = id.theta;
    ij["se"] = id.se;
    auto z = json::array();
    for (double v : id.z) z.push_back(number_or_null(v));
    ij["z"] = z;
    ij["flagged"] = id.flagged;
    ij["lag2_correlation"] = id.lag2_corr;
    j["tour_identity"] = ij;
  } else {
    j["tour_identity"] = nullptr;
  }
  return j.dump(2);
}

}  // namespace cyclic
