#pragma once

// Special functions backing the distribution families and their likelihoods.
// All functions are pure and thread-safe; arguments outside the domain throw
// ratiofit::DomainError.

namespace ratiofit::special {

/// ln Gamma(x) for x > 0. Lanczos (g = 7, 9 terms) with reflection below 1/2.
double log_gamma(double x);

/// ln B(p, q) = ln Gamma(p) + ln Gamma(q) - ln Gamma(p + q). Symmetric in
/// its arguments bit-for-bit.
double log_beta(double p, double q);

/// Regularized incomplete beta I_z(p, q), 0 <= z <= 1.
///
/// Continued fraction (modified Lentz, 300 iterations, 1e-14 threshold),
/// switching to 1 - I_{1-z}(q, p) for z above (p + 1) / (p + q + 2).
/// Throws ConvergenceError if the fraction does not settle.
double reg_inc_beta(double p, double q, double z);

/// Same as reg_inc_beta(p, q, z) but with 1 - z supplied by the caller,
/// which keeps full relative accuracy when z is within rounding of 1.
double reg_inc_beta(double p, double q, double z, double one_minus_z);

/// Digamma psi(x) for x > 0: recurrence up to x >= 10, then the asymptotic
/// series.
double digamma(double x);

/// Trigamma psi'(x) for x > 0. Same scheme as digamma.
double trigamma(double x);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double reg_lower_gamma(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed
/// directly so small tails keep their relative accuracy.
double reg_upper_gamma(double a, double x);

/// log Phi(t) for the standard normal CDF, accurate deep in the left tail.
double log_normal_cdf(double t);

}  // namespace ratiofit::special
