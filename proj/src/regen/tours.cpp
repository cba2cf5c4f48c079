#include "cyclic/regen/tours.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "cyclic/text.hpp"

namespace cyclic {

std::vector<TourRecord> tours(std::span<const std::uint8_t> bells, const Matrix& blocks, int k,
                              const std::optional<Vector>& theta) {
  if (blocks.rows() != bells.size()) {
    fail(ErrorCode::DomainError, "one block value per transition is required");
  }
  if (k < 1) fail(ErrorCode::DomainError, "cycle length must be >= 1");
  const std::size_t d = blocks.cols();
  if (theta && theta->size() != d) fail(ErrorCode::DomainError, "theta dimension mismatch");

  std::vector<std::size_t> times;
  for (std::size_t t = 0; t < bells.size(); ++t) {
    if (bells[t] != 0) times.push_back(t + 1);
  }
  if (times.empty()) {
    fail(ErrorCode::NoRegeneration, "no regeneration observed; pi_U(h) is too small for this n");
  }

  std::vector<TourRecord> out;
  out.reserve(times.size() - 1);
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    TourRecord rec;
    rec.start = times[i];
    rec.tau = times[i + 1] - times[i];
    rec.y.assign(d, 0.0);
    for (std::size_t t = times[i]; t < times[i + 1]; ++t) {
      for (std::size_t c = 0; c < d; ++c) rec.y[c] += blocks(t, c);
    }
    if (theta) {
      rec.ytilde.resize(d);
      const double scale = static_cast<double>(k) * static_cast<double>(rec.tau);
      for (std::size_t c = 0; c < d; ++c) rec.ytilde[c] = rec.y[c] - scale * (*theta)[c];
    }
    out.push_back(std::move(rec));
  }
  return out;
}

namespace {

double mean_of(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double autocov_at(std::span<const double> x, double mean, std::size_t lag) {
  double s = 0.0;
  for (std::size_t i = 0; i + lag < x.size(); ++i) s += (x[i] - mean) * (x[i + lag] - mean);
  return s / static_cast<double>(x.size());
}

}  // namespace

double lag_autocorrelation(std::span<const double> x, std::size_t lag) {
  if (x.size() <= lag + 1) fail(ErrorCode::InsufficientLag, "series shorter than lag");
  const double m = mean_of(x);
  const double g0 = autocov_at(x, m, 0);
  if (g0 == 0.0) return 0.0;
  return autocov_at(x, m, lag) / g0;
}

std::vector<double> tour_lengths(const std::vector<TourRecord>& records) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(static_cast<double>(r.tau));
  return out;
}

TourIdentityReport tour_identity_check(const std::vector<TourRecord>& records, int k,
                                       std::span<const double> theta) {
  if (records.size() < kMinToursForCheck) {
    fail(ErrorCode::InsufficientTours, "need at least " + std::to_string(kMinToursForCheck) +
                                           " complete tours, got " +
                                           std::to_string(records.size()));
  }
  const std::size_t m = records.size();
  const std::size_t d = records.front().y.size();
  if (theta.size() != d) fail(ErrorCode::DomainError, "theta dimension mismatch");

  TourIdentityReport rep;
  rep.tours = m;
  rep.theta.assign(theta.begin(), theta.end());
  const std::vector<double> taus = tour_lengths(records);
  rep.mean_tau = mean_of(taus);
  const double denom = static_cast<double>(k) * rep.mean_tau;

  std::vector<double> y(m);
  std::vector<double> yt(m);
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t i = 0; i < m; ++i) {
      y[i] = records[i].y[c];
      yt[i] = y[i] - static_cast<double>(k) * taus[i] * theta[c];
    }
    const double ratio = mean_of(y) / denom;
    const double yt_mean = mean_of(yt);
    // Ỹ is 1-dependent: long-run variance γ0 + 2γ1; a negative estimate
    // falls back to γ0.
    const double g0 = autocov_at(yt, yt_mean, 0);
    double lrv = g0 + 2.0 * autocov_at(yt, yt_mean, 1);
    if (!(lrv > 0.0)) lrv = g0;
    const double se = std::sqrt(lrv / static_cast<double>(m)) / denom;
    const double z = se > 0.0 ? (ratio - theta[c]) / se : (ratio == theta[c] ? 0.0 : INFINITY);
    rep.ratio.push_back(ratio);
    rep.se.push_back(se);
    rep.z.push_back(z);
    rep.lag2_corr.push_back(lag_autocorrelation(yt, 2));
    if (std::abs(z) > kIdentityFlagSe) rep.flagged = true;
  }
  return rep;
}

KacReport kac_check(const std::vector<TourRecord>& records, double pi_h) {
  if (records.size() < 2) fail(ErrorCode::InsufficientTours, "need at least two tours");
  if (!(pi_h > 0.0)) fail(ErrorCode::DomainError, "pi_U(h) must be > 0");
  const std::vector<double> taus = tour_lengths(records);
  KacReport rep;
  rep.mean_tau = mean_of(taus);
  double ss = 0.0;
  for (double t : taus) ss += (t - rep.mean_tau) * (t - rep.mean_tau);
  const double m = static_cast<double>(taus.size());
  rep.se = std::sqrt(ss / (m - 1.0) / m);
  rep.pi_h = pi_h;
  rep.expected = 1.0 / pi_h;
  rep.z = rep.se > 0.0 ? (rep.mean_tau - rep.expected) / rep.se
                       : (rep.mean_tau == rep.expected ? 0.0 : INFINITY);
  return rep;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) fail(ErrorCode::DomainError, "KS needs two non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double dmax = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    dmax = std::max(dmax, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return dmax;
}

double ks_critical_1pct(std::size_t n, std::size_t m) {
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return 1.628 * std::sqrt((nn + mm) / (nn * mm));
}

void write_tours_csv(std::ostream& os, const std::vector<TourRecord>& records) {
  const std::size_t d = records.empty() ? 0 : records.front().y.size();
  os << "i,T_i,tau_i";
  for (std::size_t c = 0; c < d; ++c) os << ",Y_" << (c + 1);
  os << '\n';
  for (std::size_t i = 0; i < records.size(); ++i) {
    os << (i + 1) << ',' << records[i].start << ',' << records[i].tau;
    for (double v : records[i].y) os << ',' << text::format_double(v);
    os << '\n';
  }
}

}  // namespace cyclic
