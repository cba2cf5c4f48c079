#include "cyclic/numkit/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cyclic/error.hpp"

namespace cyclic {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kBetaTolerance = 1e-12;
constexpr int kBetaMaxIterations = 300;

void check_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) fail(ErrorCode::DomainError, "probability must lie in (0,1)");
}

double gamma_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 10000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper tail Q(a, x) by modified Lentz.
double gamma_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double beta_continued_fraction(double x, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kBetaMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kBetaTolerance) return h;
  }
  fail(ErrorCode::DomainError, "incomplete beta continued fraction did not converge");
}

// Bisection for a monotone increasing cdf on [lo, hi] until the bracket is
// relatively tight.
template <class Cdf>
double invert_increasing(Cdf&& cdf, double p, double lo, double hi) {
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * hi) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0)) fail(ErrorCode::DomainError, "incomplete gamma needs a > 0");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return gamma_series(a, x);
  return 1.0 - gamma_continued_fraction(a, x);
}

double regularized_beta(double x, double a, double b) {
  if (!(a > 0.0 && b > 0.0)) fail(ErrorCode::DomainError, "incomplete beta needs a, b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(x, a, b) / a;
  return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double chisq_cdf(double x, double dof) { return regularized_gamma_p(0.5 * dof, 0.5 * x); }

double f_cdf(double x, double dof1, double dof2) {
  if (x <= 0.0) return 0.0;
  const double y = dof1 * x / (dof1 * x + dof2);
  return regularized_beta(y, 0.5 * dof1, 0.5 * dof2);
}

double chisq_quantile(double p, double dof) {
  check_probability(p);
  if (!(dof >= 1.0)) fail(ErrorCode::DomainError, "chi-square dof must be >= 1");
  double hi = dof + 10.0 * std::sqrt(2.0 * dof) + 10.0;
  while (chisq_cdf(hi, dof) < p) hi *= 2.0;
  return invert_increasing([dof](double x) { return chisq_cdf(x, dof); }, p, 0.0, hi);
}

double f_quantile(double p, double dof1, double dof2) {
  check_probability(p);
  if (!(dof1 > 0.0 && dof2 > 0.0)) fail(ErrorCode::DomainError, "F dof must be positive");
  // Invert in the beta variable y = d1 x / (d1 x + d2) ∈ (0, 1).
  const double a = 0.5 * dof1;
  const double b = 0.5 * dof2;
  const double y = invert_increasing([a, b](double t) { return regularized_beta(t, a, b); }, p,
                                     0.0, 1.0);
  return dof2 * y / (dof1 * (1.0 - y));
}

double hotelling_t2_quantile(double p, double dim, double dof) {
  check_probability(p);
  if (!(dim >= 1.0)) fail(ErrorCode::DomainError, "Hotelling dimension must be >= 1");
  if (!(dof > dim)) {
    fail(ErrorCode::DegenerateDof, "Hotelling T2 needs dof > d (dof = " + std::to_string(dof) +
                                       ", d = " + std::to_string(dim) + "); grow the chain");
  }
  const double dof2 = dof - dim + 1.0;
  return dof * dim / dof2 * f_quantile(p, dim, dof2);
}

}  // namespace cyclic
