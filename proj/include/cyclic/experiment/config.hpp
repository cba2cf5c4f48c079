#pragma once

// Experiment description shared by the CLI subcommands. The JSON schema:
//
//   {
//     "sampler": "curve" | "lmm" | "flip",
//     "mode": "fixed" | "stop",
//     "n": 30000,                 // fixed-length chain length
//     "replications": 1,
//     "seed": 1,
//     "kappa": 0.51,
//     "alpha": 0.1,
//     "curve": {"k1": 3, "h": "exp"},
//     "lmm":   {"k1": 3, "data": "data/orthodont.csv"},
//     "flip":  {"a": 0.25, "b": 0.5},
//     "stop":  {"epsilon": 0.05, "n0": 1000, "scaling": "det_psi",
//               "check_growth": 1.2, "n_start": 0, "max_n": null},
//     "truth": [0.1026] | {"long_run": 3000000},
//     "workers": 1,
//     "cache_dir": ".cyclic-cache"
//   }
//
// Every key is optional. Unknown keys are rejected.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "cyclic/numkit/matrix.hpp"
#include "cyclic/stopping/stopping.hpp"

namespace cyclic {

enum class SamplerKind { curve, lmm, flip };
enum class Mode { fixed, stop };

std::string to_string(SamplerKind k);
std::string to_string(Mode m);

struct ExperimentConfig {
  SamplerKind sampler = SamplerKind::curve;
  Mode mode = Mode::fixed;
  std::size_t n = 30000;
  std::size_t replications = 1;
  std::uint64_t seed = 1;
  double kappa = kDefaultBatchExponent;
  double alpha = 0.10;

  int k1 = 3;
  std::string curve_h = "exp";
  std::string data_path = "data/orthodont.csv";
  double flip_a = 0.25;
  double flip_b = 0.5;

  StopConfig stop;

  /// Explicit truth; otherwise a long run of `truth_length` rows (the flip
  /// chain's truth is 0 by symmetry).
  std::optional<Vector> truth;
  std::size_t truth_length = 3'000'000;

  std::size_t workers = 1;
  std::string cache_dir = ".cyclic-cache";

  /// Throws ConfigError naming the offending field.
  void validate() const;
  /// The StopConfig with this experiment's alpha and kappa applied.
  StopConfig stop_config() const;
};

/// Throws ConfigError ("config.<path>: ...") on schema violations.
ExperimentConfig config_from_json(std::string_view text);
ExperimentConfig config_from_file(const std::string& path);
std::string config_to_json(const ExperimentConfig& cfg);

}  // namespace cyclic
