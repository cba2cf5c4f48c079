#pragma once

// Incomplete gamma/beta functions and the distribution quantiles needed for
// confidence regions: χ², F and Hotelling T².

namespace cyclic {

/// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);

/// Regularized incomplete beta I_x(a, b), evaluated by a Lentz continued
/// fraction (tolerance 1e-12, at most 300 iterations).
double regularized_beta(double x, double a, double b);

double chisq_cdf(double x, double dof);
double f_cdf(double x, double dof1, double dof2);

/// p-quantile of χ²_d. Throws DomainError unless 0 < p < 1 and d ≥ 1.
double chisq_quantile(double p, double dof);

/// p-quantile of F(d1, d2), by bisection on the incomplete beta CDF.
double f_quantile(double p, double dof1, double dof2);

/// p-quantile of Hotelling's T²(d, df) = df·d/(df−d+1) · F(d, df−d+1).
/// Throws DegenerateDof when df ≤ d.
double hotelling_t2_quantile(double p, double dim, double dof);

}  // namespace cyclic
