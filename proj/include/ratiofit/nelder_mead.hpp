#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ratiofit {

struct NelderMeadOptions {
  int max_iterations = 2000;
  /// Stop once f(worst) - f(best) over the simplex is at most this.
  double f_tolerance = 1e-10;
  /// Reflection, expansion, contraction, shrink coefficients.
  double reflect = 1.0;
  double expand = 2.0;
  double contract = 0.5;
  double shrink = 0.5;
};

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Minimizes f starting from the simplex {x0, x0 + steps[i] e_i}.
///
/// The best vertex value never increases from one iteration to the next and
/// x0 is a starting vertex, so the returned point is never worse than x0.
/// Non-finite objective values are treated as +inf.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> x0, std::span<const double> steps,
                             const NelderMeadOptions& options = {});

}  // namespace ratiofit
