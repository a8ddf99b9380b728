#pragma once

// Maximum-likelihood fits of the seven candidate families.
//
// Normal, LogNormal and Inverse Gaussian have closed forms. Gamma solves
// ln k - psi(k) = ln(mean) - mean(ln x) by safeguarded Newton; the inverse
// gamma is the gamma fit of the reciprocals mapped back, so the two fits are
// exact duals. Weibull solves the profile-likelihood equation for the shape.
// Beta Prime minimizes the negative log-likelihood over (ln p, ln q, ln beta)
// with Nelder-Mead, started from a moment match and re-run from perturbed
// copies of the best point.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ratiofit/distributions.hpp"

namespace ratiofit {

struct FitConfig {
  int max_iterations = 2000;      // per Nelder-Mead run
  double convergence_tol = 1e-10;  // simplex spread of the negative log-likelihood
  int restarts = 3;
  /// Overrides the moment-matched Beta Prime start (e.g. the inverted
  /// parameters of a fit on the reciprocal data).
  std::optional<BetaPrimeParams> bp_start;
};

struct FitResult {
  DistributionSpec spec;
  double loglik = 0.0;
  double ks = 1.0;
  std::size_t n = 0;
  bool converged = false;
  /// Empty on success; otherwise why the fit is unusable.
  std::string message;
};

/// Fits one family. Throws DomainError for fewer than two points, non-finite
/// data, or non-positive data with a positive-support family. Degenerate
/// samples (all values equal) and optimizer failures come back with
/// converged == false and a message instead of a misleading estimate.
FitResult fit_mle(std::span<const double> data, Family family, const FitConfig& config = {});

/// Fits all seven families (concurrently), in kAllFamilies order. Families
/// whose support excludes the data are reported as not converged.
std::vector<FitResult> fit_all(std::span<const double> data, const FitConfig& config = {});

/// Moment-matched Beta Prime starting point from the mean, variance and mean
/// reciprocal. Falls back to (2, 3, mean) when the moment system has no
/// admissible solution; never throws for positive data.
BetaPrimeParams bp_moment_init(std::span<const double> data);

/// -sum log f(x_i); +inf when any point has zero density.
double neg_loglik(const DistributionSpec& spec, std::span<const double> data);

/// Order of increasing KS (ties by family order); non-converged fits last.
std::vector<std::size_t> rank_by_ks(std::span<const FitResult> fits);

}  // namespace ratiofit
