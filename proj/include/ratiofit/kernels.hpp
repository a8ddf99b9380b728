#pragma once

// Data-parallel inner loops of the fitting pipeline.
//
// The OpenMP versions split the input into fixed blocks of kBlockSize
// elements, reduce each block serially and then add the block partials in
// block order. The partition does not depend on the thread count, so results
// are bit-identical for any OMP_NUM_THREADS. The serial:: versions are the
// straightforward single loops, kept as the reference for tests and the
// benchmark.

#include <cstddef>
#include <span>

#include "ratiofit/distributions.hpp"

namespace ratiofit::kernels {

inline constexpr std::size_t kBlockSize = 1024;

/// -sum log f(x_i); +inf as soon as one point has zero density.
double neg_log_likelihood(const DistributionSpec& spec, std::span<const double> xs);

/// out[i] = F(xs[i]). Sizes must match.
void cdf_values(const DistributionSpec& spec, std::span<const double> xs, std::span<double> out);

/// sum log(1 + xs[i] * inv_scale): the data-dependent part of the Beta Prime
/// log-likelihood once sum log x is cached.
double sum_log1p_scaled(std::span<const double> xs, double inv_scale);

/// sum log(xs[i]).
double sum_log(std::span<const double> xs);

namespace serial {

double neg_log_likelihood(const DistributionSpec& spec, std::span<const double> xs);
void cdf_values(const DistributionSpec& spec, std::span<const double> xs, std::span<double> out);
double sum_log1p_scaled(std::span<const double> xs, double inv_scale);
double sum_log(std::span<const double> xs);

}  // namespace serial

}  // namespace ratiofit::kernels
