#pragma once

// Experiment drivers behind the CLI. Replication i of a run with seed S uses
// Rng(S, i), so per-replication results do not depend on the worker count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclic/experiment/config.hpp"
#include "cyclic/experiment/table.hpp"
#include "cyclic/regen/tours.hpp"
#include "cyclic/stopping/stopping.hpp"

namespace cyclic {

/// Stream reserved for the long truth run.
inline constexpr std::uint64_t kTruthStream = 0xFFFFFFFFFFFFFFFFULL;

struct TruthResult {
  Vector mean;
  Vector se;           ///< batch-means standard errors; zero when exact
  std::size_t n = 0;   ///< long-run length; 0 when exact
  bool exact = false;
  bool from_cache = false;
  std::string cache_key;
};

/// Long-run mean of the configured sampler (exact 0 for the flip chain),
/// cached under cfg.cache_dir keyed by a hash of the sampler description.
TruthResult cmd_truth(const ExperimentConfig& cfg);
/// cfg.truth if given, else cmd_truth(cfg).mean.
Vector resolve_truth(const ExperimentConfig& cfg);
/// FNV-1a 64 of the fields that determine the truth run.
std::string truth_cache_key(const ExperimentConfig& cfg);

struct FixedRow {
  std::size_t rep = 0;
  std::size_t n = 0;
  double wall = 0.0;  ///< seconds
  Vector mean;
  double ess = 0.0;   ///< NaN if degenerate
  double tess = 0.0;
  bool covered = false;
};

struct FixedResult {
  Vector truth;
  std::vector<FixedRow> rows;
  /// rep,n,wall,mean_1..mean_d,ess,tess,esspm,tesspm,covered
  Table table() const;
};

FixedResult cmd_run_fixed(const ExperimentConfig& cfg);

struct StopRow {
  std::size_t rep = 0;
  bool stopped = false;
  std::size_t n_eps = 0;
  double wall = 0.0;
  /// Updates by the last kernel of the cycle and by the others.
  std::size_t last_phase = 0;
  std::size_t other_phases = 0;
  bool covered = false;
  double ess = 0.0;
  Vector estimate;
  std::vector<StopCheck> checks;
};

struct StopResult {
  Vector truth;
  std::vector<StopRow> rows;
  /// rep,stopped,n_eps,wall,last_phase,other_phases,covered,ess,mean_1..mean_d
  Table table() const;
};

StopResult cmd_run_stop(const ExperimentConfig& cfg);

/// JSON with the config, the truth and per-column mean/se.
std::string summary_json(const ExperimentConfig& cfg, const Vector& truth, const Table& table);

/// Two panels for one replication: V^{1/d}+s and ε·M̂ against n, and ESS
/// against n with the a-priori threshold.
void write_stop_svg(std::ostream& os, const ExperimentConfig& cfg, const StopRow& row);

struct RegenDemoConfig {
  std::string chain = "three-state";  ///< three-state | iid | flip
  std::size_t n = 1'000'000;
  std::uint64_t seed = 1;
  double flip_a = 0.25;
  double flip_b = 0.5;
};

struct RegenDemoReport {
  std::string chain;
  std::size_t transitions = 0;
  std::size_t bells = 0;
  KacReport kac;
  std::optional<TourIdentityReport> identity;  ///< empty below the tour minimum
  double tau_lag1 = 0.0;
  bool all_length_one = false;
  std::vector<TourRecord> tours;
};

RegenDemoReport cmd_regen_demo(const RegenDemoConfig& cfg);
std::string to_json(const RegenDemoReport& r);

}  // namespace cyclic
