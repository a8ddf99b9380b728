#include "ratiofit/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ratiofit {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> x0, std::span<const double> steps,
                             const NelderMeadOptions& opt) {
  const std::size_t dim = x0.size();
  if (dim == 0 || steps.size() != dim) {
    throw std::invalid_argument("nelder_mead: x0 and steps must be non-empty and equal-sized");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();

  NelderMeadResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : kInf;
  };

  std::vector<std::vector<double>> pts(dim + 1, std::vector<double>(x0.begin(), x0.end()));
  for (std::size_t i = 0; i < dim; ++i) pts[i + 1][i] += steps[i];
  std::vector<double> fv(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) fv[i] = eval(pts[i]);

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), xr(dim), xe(dim), xc(dim);

  auto along = [&](std::vector<double>& out, double t, const std::vector<double>& from) {
    // out = centroid + t (centroid - from)
    for (std::size_t j = 0; j < dim; ++j) out[j] = centroid[j] + t * (centroid[j] - from[j]);
  };

  for (;;) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    // stable on ties so the starting vertex keeps precedence
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[dim - 1];

    if (fv[worst] - fv[best] <= opt.f_tolerance) {
      res.converged = true;
      break;
    }
    if (res.iterations >= opt.max_iterations) break;
    ++res.iterations;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += pts[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    along(xr, opt.reflect, pts[worst]);
    const double fr = eval(xr);

    if (fr < fv[best]) {
      along(xe, opt.reflect * opt.expand, pts[worst]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        fv[worst] = fe;
      } else {
        pts[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      pts[worst] = xr;
      fv[worst] = fr;
      continue;
    }
    // contraction: outside when the reflected point beats the worst vertex
    const bool outside = fr < fv[worst];
    if (outside) {
      along(xc, opt.reflect * opt.contract, pts[worst]);
    } else {
      along(xc, -opt.contract, pts[worst]);
    }
    const double fc = eval(xc);
    if (fc < (outside ? fr : fv[worst])) {
      pts[worst] = xc;
      fv[worst] = fc;
      continue;
    }
    // shrink towards the best vertex, which itself stays put
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      std::vector<double> cand(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        cand[j] = pts[best][j] + opt.shrink * (pts[i][j] - pts[best][j]);
      }
      pts[i] = std::move(cand);
      fv[i] = eval(pts[i]);
    }
  }

  const auto best_it = std::min_element(fv.begin(), fv.end());
  const auto best = static_cast<std::size_t>(best_it - fv.begin());
  res.x = pts[best];
  res.fx = fv[best];
  return res;
}

}  // namespace ratiofit
