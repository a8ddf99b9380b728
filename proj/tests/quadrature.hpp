#pragma once

// Adaptive Gauss-Kronrod integral of a density over its whole support, split
// at a ladder of quantiles so narrow peaks are always resolved. Positive laws
// are integrated in u = ln x, which keeps very wide ones well conditioned.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "ratiofit/distributions.hpp"

namespace testutil {

inline double integrate_pdf(const ratiofit::DistributionSpec& spec) {
  using boost::math::quadrature::gauss_kronrod;
  const bool positive = ratiofit::has_positive_support(spec.family());
  auto to_x = [&](double u) { return positive ? std::exp(u) : u; };
  auto g = [&](double u) {
    const double x = to_x(u);
    if (!std::isfinite(x) || (positive && x == 0.0)) return 0.0;
    return std::exp(ratiofit::log_pdf(spec, x) + (positive ? u : 0.0));
  };
  auto quantile = [&](double prob) {
    const double span = positive ? 700.0 : 1e6;
    double lo = -span, hi = span;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (ratiofit::cdf(spec, to_x(mid)) < prob ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  std::vector<double> cuts;
  for (double p : {1e-6, 1e-3, 0.05, 0.25, 0.5, 0.75, 0.95, 0.999, 1 - 1e-6}) {
    const double c = quantile(p);
    if (cuts.empty() || c > cuts.back()) cuts.push_back(c);
  }
  const double inf = std::numeric_limits<double>::infinity();
  double total = gauss_kronrod<double, 61>::integrate(g, -inf, cuts.front(), 15, 1e-13);
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    total += gauss_kronrod<double, 61>::integrate(g, cuts[i - 1], cuts[i], 15, 1e-13);
  }
  return total + gauss_kronrod<double, 61>::integrate(g, cuts.back(), inf, 15, 1e-13);
}

}  // namespace testutil
