#pragma once

// Goodness-of-fit and association statistics.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ratiofit/distributions.hpp"

namespace ratiofit {

struct KSStat {
  double d = 0.0;
  std::size_t n = 0;
};

struct TwoSampleKSStat {
  double d = 0.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

/// Exact one-sample KS distance from already sorted data and the model CDF
/// evaluated at each point. Tied values are scanned as one group, comparing
/// F against the empirical CDF just below and at the tied value.
KSStat ks_from_sorted(std::span<const double> sorted, std::span<const double> cdf_at_sorted);

/// One-sample KS distance D = sup |F_n - F| against an arbitrary CDF.
KSStat ks_one_sample(std::span<const double> data, const std::function<double(double)>& cdf);

/// One-sample KS distance against a distribution; CDF evaluation runs on the
/// OpenMP kernel.
KSStat ks_one_sample(std::span<const double> data, const DistributionSpec& spec);

/// Two-sample KS distance by a merged sweep of the sorted samples. Symmetric
/// in its arguments.
TwoSampleKSStat ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Pearson product-moment correlation. Throws DataError on unequal or too
/// short inputs and on zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

}  // namespace ratiofit
