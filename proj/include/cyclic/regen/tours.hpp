#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "cyclic/numkit/matrix.hpp"
#include "cyclic/regen/split_chain.hpp"

namespace cyclic {

inline constexpr std::size_t kMinToursForCheck = 1000;
inline constexpr double kIdentityFlagSe = 4.0;

struct TourRecord {
  std::size_t start = 0;  ///< T_i
  std::size_t tau = 0;    ///< T_{i+1} − T_i ≥ 1
  Vector y;               ///< Y_i
  Vector ytilde;          ///< Y_i − k·θ·τ_i; empty without θ
};

/// Complete tours between consecutive regeneration times. T_0 = 0 and
/// T_{i+1} = inf{t > T_i : δ_{t−1} = 1}; tour i sums rows T_i … T_{i+1}−1 of
/// `blocks`. The segments before the first bell and after the last are
/// dropped. Throws NoRegeneration if no bell rang.
std::vector<TourRecord> tours(std::span<const std::uint8_t> bells, const Matrix& blocks, int k,
                              const std::optional<Vector>& theta = std::nullopt);

template <class State>
std::vector<TourRecord> tours(const SplitRun<State>& run, const BlockFunction<State>& blockf,
                              std::size_t dim, int k,
                              const std::optional<Vector>& theta = std::nullopt) {
  return tours(run.bells, block_values(run, blockf, dim), k, theta);
}

struct TourIdentityReport {
  std::size_t tours = 0;
  double mean_tau = 0.0;
  Vector ratio;        ///< mean(Y)/mean(τ)/k
  Vector theta;
  Vector se;           ///< standard error of ratio, 1-dependent variance
  Vector z;            ///< (ratio − θ)/se
  bool flagged = false;  ///< some |z| > 4
  Vector lag2_corr;    ///< lag-2 autocorrelation of Ỹ
};

/// Throws InsufficientTours below kMinToursForCheck tours.
TourIdentityReport tour_identity_check(const std::vector<TourRecord>& records, int k,
                                       std::span<const double> theta);

struct KacReport {
  double mean_tau = 0.0;
  double se = 0.0;        ///< i.i.d. standard error of mean(τ)
  double pi_h = 0.0;      ///< long-run average of h(U_t)
  double expected = 0.0;  ///< 1/pi_h
  double z = 0.0;
};

KacReport kac_check(const std::vector<TourRecord>& records, double pi_h);

/// Sample autocorrelation at the given lag.
double lag_autocorrelation(std::span<const double> x, std::size_t lag);
std::vector<double> tour_lengths(const std::vector<TourRecord>& records);
/// Two-sample Kolmogorov–Smirnov statistic.
double ks_distance(std::vector<double> a, std::vector<double> b);
/// 1% critical value of the two-sample KS statistic.
double ks_critical_1pct(std::size_t n, std::size_t m);

/// `i,T_i,tau_i,Y_1..Y_d`.
void write_tours_csv(std::ostream& os, const std::vector<TourRecord>& records);

}  // namespace cyclic
