#pragma once

// Fixed-volume sequential termination. The chain stops at the first check
// point n with
//
//   V(S_α(n))^{1/d} + s(n, ε) ≤ ε·M̂_n,   s(n, ε) = ε·M̂_n·1{n < n0} + 1/n,
//
// where M̂_n is 1 (unit scaling) or |Ψ̂_n|^{1/(2d)} (det_psi scaling).

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cyclic/chain/cyclic_sampler.hpp"
#include "cyclic/estimators/covariance.hpp"
#include "cyclic/estimators/region.hpp"

namespace cyclic {

enum class Scaling { unit, det_psi };

struct StopConfig {
  double alpha = 0.10;
  double epsilon = 0.05;
  std::size_t n0 = 1000;
  Scaling scaling = Scaling::det_psi;
  double check_growth = 1.2;
  /// First check point; 0 means max(n0, 1000).
  std::size_t n_start = 0;
  double kappa = kDefaultBatchExponent;
  /// Optional cap on the chain length.
  std::optional<std::size_t> max_n;

  /// Throws ConfigError.
  void validate() const;
  std::size_t first_check() const;
  /// ⌈n·check_growth⌉, always > n.
  std::size_t next_check(std::size_t n) const;
};

struct StopCheck {
  std::size_t n = 0;
  double lhs = 0.0;  ///< V^{1/d} + s(n, ε); +inf when the region is degenerate
  double rhs = 0.0;  ///< ε·M̂_n
  bool holds = false;
  double volume = 0.0;
  double ess = 0.0;  ///< NaN when not computable
  std::string reason;  ///< why the rule could not be evaluated, if so
};

/// Evaluates the rule on all rows of s. Degenerate estimates never satisfy
/// the rule; the reason is recorded instead of thrown.
StopCheck stop_rule_holds(const SampleMatrix& s, const StopConfig& cfg);

struct StopReport {
  std::size_t n_eps = 0;
  Vector estimate;
  std::optional<ConfidenceRegion> region;
  double volume = 0.0;
  double ess_at_stop = 0.0;
  std::vector<StopCheck> checks;
  /// Rows produced by each phase 1..k up to termination.
  std::vector<std::size_t> phase_counts;
  bool stopped = false;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(StopReport partial, const std::string& what)
      : Error(ErrorCode::BudgetExceeded, what), partial_(std::move(partial)) {}
  const StopReport& partial() const noexcept { return partial_; }

 private:
  StopReport partial_;
};

namespace detail {
/// Fills estimate/region/volume/ESS/phase counts from the final sample.
void finish_report(const SampleMatrix& s, const StopConfig& cfg, StopReport& report);
}  // namespace detail

/// Runs the sampler, checking the rule at first_check() and then at
/// geometrically spaced points, without restarting the chain between checks.
/// Throws BudgetExceeded (carrying the partial report) if max_n is hit first.
template <CyclicSampler S>
StopReport run_until_stop(const S& sampler, typename S::State init, const StopConfig& cfg,
                          Rng& rng) {
  cfg.validate();
  ChainRunner<S> runner(sampler, std::move(init), rng);
  StopReport report;
  std::size_t n = cfg.first_check();
  for (;;) {
    if (cfg.max_n && n > *cfg.max_n) {
      if (runner.samples().rows() > 0) detail::finish_report(runner.samples(), cfg, report);
      throw BudgetExceeded(std::move(report), "no stop before max_n = " + std::to_string(*cfg.max_n));
    }
    runner.advance_to(n);
    report.checks.push_back(stop_rule_holds(runner.samples(), cfg));
    if (report.checks.back().holds) break;
    n = cfg.next_check(n);
  }
  report.stopped = true;
  detail::finish_report(runner.samples(), cfg, report);
  return report;
}

/// A-priori minimum ESS: unit_ball_volume(d)^{2/d} · χ²_{1−α,d} / ε².
double ess_threshold(double alpha, std::size_t d, double epsilon);

std::string to_json(const StopReport& r);
/// `n,lhs,rhs,holds`, one row per check.
void write_checks_csv(std::ostream& os, const std::vector<StopCheck>& checks);

}  // namespace cyclic
