#include "ratiofit/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "ratiofit/error.hpp"
#include "ratiofit/gof.hpp"
#include "ratiofit/kernels.hpp"
#include "ratiofit/nelder_mead.hpp"
#include "ratiofit/special_fn.hpp"

namespace ratiofit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// shapes beyond this are indistinguishable from the nested limit law
constexpr double kBetaPrimeShapeLimit = 1e6;

struct Moments {
  double mean = 0.0;
  double var = 0.0;  // 1/n normalization
};

Moments moments(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  const double m = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return {m, ss / n};
}

bool all_equal(std::span<const double> xs) {
  return std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); });
}

void check_sample(std::span<const double> data) {
  if (data.size() < 2) {
    throw DomainError("fit_mle: need at least 2 observations, got " + std::to_string(data.size()));
  }
  for (double x : data) {
    if (!std::isfinite(x)) throw DomainError("fit_mle: data contains a non-finite value");
  }
}

void check_positive(std::span<const double> data, Family family) {
  if (!has_positive_support(family)) return;
  for (double x : data) {
    if (!(x > 0.0)) {
      throw DomainError("fit_mle: " + std::string(family_name(family)) +
                        " requires strictly positive data, found " + std::to_string(x));
    }
  }
}

FitResult failed(Family family, std::size_t n, std::string why) {
  FitResult r;
  r.spec = default_spec(family);
  r.loglik = -kInf;
  r.ks = 1.0;
  r.n = n;
  r.converged = false;
  r.message = std::move(why);
  return r;
}

FitResult finish(DistributionSpec spec, std::span<const double> data, bool converged,
                 std::string message = {}) {
  FitResult r;
  r.spec = std::move(spec);
  r.n = data.size();
  r.loglik = -neg_loglik(r.spec, data);
  r.ks = ks_one_sample(data, r.spec).d;
  r.converged = converged && std::isfinite(r.loglik);
  r.message = std::move(message);
  if (!r.converged && r.message.empty()) r.message = "log-likelihood is not finite at the estimate";
  return r;
}

// Gamma shape from s = ln(mean) - mean(ln x) > 0: ln k - psi(k) = s.
// The left side falls monotonically from +inf to 0, so the root is unique.
std::optional<GammaParams> gamma_mle(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  const double m = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double mean_log = kernels::sum_log(xs) / n;
  const double s = std::log(m) - mean_log;
  if (!(s > 0.0) || !std::isfinite(s)) return std::nullopt;

  auto h = [s](double k) { return std::log(k) - special::digamma(k) - s; };
  // Minka's closed-form start
  double k = (3.0 - s + std::sqrt((s - 3.0) * (s - 3.0) + 24.0 * s)) / (12.0 * s);
  double lo = 0.0, hi = kInf;  // bracket on k
  for (int it = 0; it < 200; ++it) {
    const double hk = h(k);
    if (hk == 0.0) break;
    if (hk > 0.0) lo = k; else hi = k;
    // Newton in u = ln k: dh/du = 1 - k psi'(k)
    const double slope = 1.0 - k * special::trigamma(k);
    double next = k * std::exp(-hk / slope);
    if (!(next > lo && next < hi) || !std::isfinite(next)) {
      next = std::isfinite(hi) ? (lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * hi) : 2.0 * lo;
    }
    const bool done = std::fabs(next - k) <= 1e-15 * k;
    k = next;
    if (done) break;
  }
  if (!(k > 0.0) || !std::isfinite(k)) return std::nullopt;
  return GammaParams{k, m / k};
}

// Weibull shape solves g(k) = sum w y / sum w - 1/k - mean(y) = 0 with
// y = ln x and w = x^k; g is strictly increasing in k.
std::optional<WeibullParams> weibull_mle(std::span<const double> xs) {
  const std::size_t n = xs.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = std::log(xs[i]);
  const double ymax = *std::max_element(y.begin(), y.end());
  const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sd = 0.0;
  for (double v : y) sd += (v - ybar) * (v - ybar);
  sd = std::sqrt(sd / static_cast<double>(n));
  if (!(sd > 0.0)) return std::nullopt;

  struct Eval {
    double g, dg, sum_w;
  };
  auto eval = [&](double k) {
    double sw = 0.0, swy = 0.0, swyy = 0.0;
    for (double v : y) {
      const double w = std::exp(k * (v - ymax));
      sw += w;
      swy += w * v;
      swyy += w * v * v;
    }
    const double wm = swy / sw;
    const double wvar = std::max(0.0, swyy / sw - wm * wm);
    return Eval{wm - 1.0 / k - ybar, wvar + 1.0 / (k * k), sw};
  };

  double k = 1.2825 / sd;
  double lo = k, hi = k;
  while (eval(lo).g > 0.0) {
    lo *= 0.5;
    if (lo < 1e-12) return std::nullopt;
  }
  while (eval(hi).g < 0.0) {
    hi *= 2.0;
    if (hi > 1e12) return std::nullopt;
  }
  Eval e = eval(k);
  for (int it = 0; it < 200; ++it) {
    if (e.g > 0.0) hi = k; else lo = k;
    double next = k - e.g / e.dg;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const bool done = std::fabs(next - k) <= 1e-15 * k || lo == hi;
    k = next;
    e = eval(k);
    if (done || e.g == 0.0) break;
  }
  const double scale = std::exp(ymax + std::log(e.sum_w / static_cast<double>(n)) / k);
  if (!std::isfinite(scale) || !(scale > 0.0)) return std::nullopt;
  return WeibullParams{k, scale};
}

// Negative Beta Prime log-likelihood in log-parameter coordinates, with the
// data entering only through n, sum ln x and sum ln(1 + x/beta).
class BetaPrimeObjective {
 public:
  explicit BetaPrimeObjective(std::span<const double> xs)
      : xs_(xs), n_(static_cast<double>(xs.size())), sum_log_(kernels::sum_log(xs)) {}

  double operator()(std::span<const double> theta) const {
    for (double t : theta) {
      if (!(std::fabs(t) < 40.0)) return kInf;
    }
    const double p = std::exp(theta[0]);
    const double q = std::exp(theta[1]);
    const double log_beta_scale = theta[2];
    const double l1p = kernels::sum_log1p_scaled(xs_, std::exp(-log_beta_scale));
    return -(p - 1.0) * sum_log_ + p * n_ * log_beta_scale + (p + q) * l1p +
           n_ * special::log_beta(p, q);
  }

 private:
  std::span<const double> xs_;
  double n_;
  double sum_log_;
};

// Newton iterations on theta = (ln p, ln q, ln beta) with the analytic
// gradient and Hessian. Steps are halved until the objective does not
// increase; the loop stops at a non-positive-definite Hessian. Returns true
// when the step shrank below 1e-10.
bool newton_polish(std::span<const double> xs, const BetaPrimeObjective& objective, std::vector<double>& theta,
                   double& f) {
  const double n = static_cast<double>(xs.size());
  const double sum_log = kernels::sum_log(xs);
  for (int iter = 0; iter < 50; ++iter) {
    const double p = std::exp(theta[0]), q = std::exp(theta[1]), b = std::exp(theta[2]);
    double t = 0.0, u = 0.0, w = 0.0;
    for (double x : xs) {
      const double r = x / (x + b);
      t += std::log1p(x / b);
      u += r;
      w += r * (b / (x + b));
    }
    const double dpq = special::digamma(p + q), tpq = special::trigamma(p + q);
    // natural-parameter derivatives of the negative log-likelihood
    const double gp = -sum_log + n * theta[2] + t + n * (special::digamma(p) - dpq);
    const double gq = t + n * (special::digamma(q) - dpq);
    const double gb = (p * n - (p + q) * u) / b;
    const double hpp = n * (special::trigamma(p) - tpq);
    const double hqq = n * (special::trigamma(q) - tpq);
    const double hpq = -n * tpq;
    const double hpb = (n - u) / b;
    const double hqb = -u / b;
    const double hbb = (-p * n + (p + q) * (u + w)) / (b * b);
    // chain rule to log coordinates
    const double v[3] = {p, q, b};
    const double g[3] = {gp * p, gq * q, gb * b};
    double h[3][3] = {{hpp, hpq, hpb}, {hpq, hqq, hqb}, {hpb, hqb, hbb}};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) h[i][j] *= v[i] * v[j];
      h[i][i] += g[i];
    }
    // Cholesky solve of h d = -g
    double l[3][3] = {};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j <= i; ++j) {
        double s = h[i][j];
        for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
        if (i == j) {
          if (!(s > 0.0)) return false;
          l[i][i] = std::sqrt(s);
        } else {
          l[i][j] = s / l[j][j];
        }
      }
    }
    double y[3], d[3];
    for (int i = 0; i < 3; ++i) {
      double s = -g[i];
      for (int k = 0; k < i; ++k) s -= l[i][k] * y[k];
      y[i] = s / l[i][i];
    }
    for (int i = 2; i >= 0; --i) {
      double s = y[i];
      for (int k = i + 1; k < 3; ++k) s -= l[k][i] * d[k];
      d[i] = s / l[i][i];
    }
    const double size = std::max({std::fabs(d[0]), std::fabs(d[1]), std::fabs(d[2])});
    if (!std::isfinite(size)) return false;
    // once the predicted decrease is below the rounding of f, comparing f
    // values is noise; the quadratic model is trusted instead
    const double decrease = -(g[0] * d[0] + g[1] * d[1] + g[2] * d[2]);
    if (decrease < 1e-10 * std::max(1.0, std::fabs(f))) {
      std::vector<double> trial = {theta[0] + d[0], theta[1] + d[1], theta[2] + d[2]};
      const double ft = objective(trial);
      if (!std::isfinite(ft)) return false;
      theta = std::move(trial);
      f = std::min(f, ft);
      if (size < 1e-10) return true;
      continue;
    }
    bool moved = false;
    for (double scale = 1.0; scale > 1e-3; scale *= 0.5) {
      std::vector<double> trial = {theta[0] + scale * d[0], theta[1] + scale * d[1], theta[2] + scale * d[2]};
      const double ft = objective(trial);
      if (ft <= f) {
        theta = std::move(trial);
        f = ft;
        moved = true;
        break;
      }
    }
    if (size < 1e-10) return true;
    if (!moved) return false;
  }
  return false;
}

FitResult fit_beta_prime(std::span<const double> data, const FitConfig& config) {
  const BetaPrimeParams start = config.bp_start ? *config.bp_start : bp_moment_init(data);
  validate(start);
  const BetaPrimeObjective objective(data);
  const std::function<double(std::span<const double>)> f = std::cref(objective);

  NelderMeadOptions opt;
  opt.max_iterations = config.max_iterations;
  opt.f_tolerance = config.convergence_tol;

  const double step = std::log(1.2);
  std::vector<double> best = {std::log(start.p), std::log(start.q), std::log(start.beta)};
  double best_f = objective(best);
  bool converged = false;

  for (int run = 0; run <= config.restarts; ++run) {
    // first run: forward steps from the start; restarts alternate the sign
    // of the +-20% perturbation around the incumbent
    const double s = (run % 2 == 0) ? step : -step;
    const std::vector<double> steps = {s, s, s};
    const auto res = nelder_mead(f, best, steps, opt);
    if (res.fx <= best_f) {
      best = res.x;
      best_f = res.fx;
    }
    converged = res.converged;
  }

  if (!std::isfinite(best_f)) {
    return failed(Family::BetaPrime, data.size(), "Beta Prime likelihood is not finite near the start");
  }
  // the simplex stops anywhere in a flat valley; Newton pins the stationary
  // point, so fits of x and of c/x land on exact images of each other
  if (newton_polish(data, objective, best, best_f)) converged = true;
  const BetaPrimeParams fitted{std::exp(best[0]), std::exp(best[1]), std::exp(best[2])};
  // q -> inf is the Gamma limit and p -> inf the inverse Gamma one; the
  // likelihood keeps rising toward them and there is no finite maximizer
  if (std::max(fitted.p, fitted.q) > kBetaPrimeShapeLimit) {
    return finish(DistributionSpec{fitted}, data, false,
                  fitted.q > fitted.p ? "Beta Prime fit runs to the Gamma limit (q -> inf)"
                                      : "Beta Prime fit runs to the inverse Gamma limit (p -> inf)");
  }
  return finish(DistributionSpec{fitted}, data, converged,
                converged ? std::string{} : "Nelder-Mead reached the iteration cap");
}

}  // namespace

double neg_loglik(const DistributionSpec& spec, std::span<const double> data) {
  return kernels::neg_log_likelihood(spec, data);
}

BetaPrimeParams bp_moment_init(std::span<const double> data) {
  const auto [m, v] = moments(data);
  double h = 0.0;
  for (double x : data) h += 1.0 / x;
  h /= static_cast<double>(data.size());
  const BetaPrimeParams fallback{2.0, 3.0, (m > 0.0 && std::isfinite(m)) ? m : 1.0};
  if (!(m > 0.0) || !(v > 0.0) || !(h > 0.0) || !std::isfinite(m + v + h)) return fallback;

  // m = beta p/(q-1), v = m^2 (p+q-1)/(p(q-2)), E[1/X] = q/(beta (p-1)).
  // With C = v/m^2 the variance equation gives p(q) = (q-1)/(C(q-2) - 1) for
  // q > 2 + 1/C; the mean and reciprocal-mean equations combine to
  // m h = p q / ((p-1)(q-1)).
  const double c = v / (m * m);
  const double a = m * h;
  auto p_of = [c](double q) { return (q - 1.0) / (c * (q - 2.0) - 1.0); };
  auto residual = [&](double q) {
    const double p = p_of(q);
    if (!(p > 1.0) || !std::isfinite(p)) return std::numeric_limits<double>::quiet_NaN();
    return p * q / ((p - 1.0) * (q - 1.0)) - a;
  };

  const double q_min = 2.0 + 1.0 / c;
  const double q_max = 1e4;
  constexpr int kGrid = 400;
  double q_root = -1.0;
  double q_prev = q_min * (1.0 + 1e-9);
  double r_prev = residual(q_prev);
  for (int i = 1; i <= kGrid && q_root < 0.0; ++i) {
    const double q = q_prev * std::pow(q_max / q_prev, 1.0 / (kGrid - i + 1));
    const double r = residual(q);
    if (std::isfinite(r) && std::isfinite(r_prev) && (r == 0.0 || (r > 0.0) != (r_prev > 0.0))) {
      double lo = q_prev, hi = q;
      double rlo = r_prev;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double rm = residual(mid);
        if ((rm > 0.0) == (rlo > 0.0)) {
          lo = mid;
          rlo = rm;
        } else {
          hi = mid;
        }
      }
      q_root = 0.5 * (lo + hi);
    }
    q_prev = q;
    r_prev = r;
  }
  if (q_root < 0.0) return fallback;

  double q = q_root;
  if (q <= 2.1) q = 2.5;
  const double p = p_of(q);
  if (!(p > 0.0) || !std::isfinite(p)) return fallback;
  const double beta = m * (q - 1.0) / p;
  if (!(beta > 0.0) || !std::isfinite(beta)) return fallback;
  return {p, q, beta};
}

FitResult fit_mle(std::span<const double> data, Family family, const FitConfig& config) {
  check_sample(data);
  check_positive(data, family);
  if (all_equal(data)) {
    return failed(family, data.size(), "degenerate sample: all values are equal, MLE undefined");
  }

  switch (family) {
    case Family::Normal: {
      const auto [m, v] = moments(data);
      if (!(v > 0.0)) return failed(family, data.size(), "zero sample variance");
      return finish(DistributionSpec{NormalParams{m, std::sqrt(v)}}, data, true);
    }
    case Family::LogNormal: {
      std::vector<double> logs(data.size());
      std::transform(data.begin(), data.end(), logs.begin(), [](double x) { return std::log(x); });
      const auto [m, v] = moments(logs);
      if (!(v > 0.0)) return failed(family, data.size(), "zero variance of log data");
      return finish(DistributionSpec{LogNormalParams{m, std::sqrt(v)}}, data, true);
    }
    case Family::Gamma: {
      const auto g = gamma_mle(data);
      if (!g) return failed(family, data.size(), "gamma shape equation has no admissible root");
      return finish(DistributionSpec{*g}, data, true);
    }
    case Family::InverseGamma: {
      std::vector<double> recip(data.size());
      std::transform(data.begin(), data.end(), recip.begin(), [](double x) { return 1.0 / x; });
      const auto g = gamma_mle(recip);
      if (!g) return failed(family, data.size(), "gamma shape equation has no admissible root");
      return finish(DistributionSpec{inverted(*g)}, data, true);
    }
    case Family::Weibull: {
      const auto w = weibull_mle(data);
      if (!w) return failed(family, data.size(), "Weibull shape equation has no admissible root");
      return finish(DistributionSpec{*w}, data, true);
    }
    case Family::InverseGaussian: {
      const double n = static_cast<double>(data.size());
      const double mu = std::accumulate(data.begin(), data.end(), 0.0) / n;
      double denom = 0.0;
      for (double x : data) denom += 1.0 / x - 1.0 / mu;
      if (!(denom > 0.0)) return failed(family, data.size(), "inverse Gaussian shape is unbounded");
      return finish(DistributionSpec{InverseGaussianParams{mu, n / denom}}, data, true);
    }
    case Family::BetaPrime:
      return fit_beta_prime(data, config);
  }
  return failed(family, data.size(), "unknown family");
}

std::vector<FitResult> fit_all(std::span<const double> data, const FitConfig& config) {
  check_sample(data);
  std::vector<FitResult> out(kAllFamilies.size());
  const auto count = static_cast<std::int64_t>(kAllFamilies.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const Family family = kAllFamilies[idx];
    try {
      out[idx] = fit_mle(data, family, config);
    } catch (const std::exception& e) {
      out[idx] = failed(family, data.size(), e.what());
    }
  }
  return out;
}

std::vector<std::size_t> rank_by_ks(std::span<const FitResult> fits) {
  std::vector<std::size_t> order(fits.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (fits[a].converged != fits[b].converged) return fits[a].converged;
    return fits[a].ks < fits[b].ks;
  });
  return order;
}

}  // namespace ratiofit
