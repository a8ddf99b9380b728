#include "ratiofit/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ratiofit/error.hpp"
#include "ratiofit/rng.hpp"
#include "ratiofit/special_fn.hpp"

namespace ratiofit {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kHalfLog2Pi = 0.91893853320467274178;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const char* family, const char* what) {
  if (!ok) throw DomainError(std::string(family) + ": " + what);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void require_not_nan(double x) {
  if (std::isnan(x)) throw DomainError("density argument is NaN");
}

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

// Naming ---------------------------------------------------------------------

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Normal: return "Normal";
    case Family::LogNormal: return "LogNormal";
    case Family::InverseGamma: return "InverseGamma";
    case Family::Gamma: return "Gamma";
    case Family::Weibull: return "Weibull";
    case Family::InverseGaussian: return "InverseGaussian";
    case Family::BetaPrime: return "BetaPrime";
  }
  return "?";
}

std::string_view family_short_name(Family f) {
  switch (f) {
    case Family::Normal: return "N";
    case Family::LogNormal: return "LN";
    case Family::InverseGamma: return "IGa";
    case Family::Gamma: return "Gamma";
    case Family::Weibull: return "Weibul";
    case Family::InverseGaussian: return "IG";
    case Family::BetaPrime: return "BP";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  const std::string key = lower(name);
  for (Family f : kAllFamilies) {
    if (key == lower(family_name(f)) || key == lower(family_short_name(f))) return f;
  }
  if (key == "weibull") return Family::Weibull;
  if (key == "igamma" || key == "invgamma") return Family::InverseGamma;
  if (key == "invgauss" || key == "wald") return Family::InverseGaussian;
  if (key == "betaprime" || key == "beta-prime" || key == "beta_prime") return Family::BetaPrime;
  throw DomainError("unknown distribution family '" + std::string(name) + "'");
}

bool has_positive_support(Family f) { return f != Family::Normal; }

std::size_t parameter_count(Family f) { return f == Family::BetaPrime ? 3 : 2; }

std::vector<std::string> parameter_names(Family f) {
  switch (f) {
    case Family::Normal: return {"mu", "sigma"};
    case Family::LogNormal: return {"mu", "sigma"};
    case Family::InverseGamma: return {"alpha", "scale"};
    case Family::Gamma: return {"k", "theta"};
    case Family::Weibull: return {"shape", "scale"};
    case Family::InverseGaussian: return {"mu", "lambda"};
    case Family::BetaPrime: return {"p", "q", "beta"};
  }
  return {};
}

std::vector<double> parameter_vector(const DistributionSpec& spec) {
  return std::visit(
      Overloaded{
          [](const NormalParams& d) { return std::vector<double>{d.mu, d.sigma}; },
          [](const LogNormalParams& d) { return std::vector<double>{d.mu, d.sigma}; },
          [](const InverseGammaParams& d) { return std::vector<double>{d.alpha, d.scale}; },
          [](const GammaParams& d) { return std::vector<double>{d.k, d.theta}; },
          [](const WeibullParams& d) { return std::vector<double>{d.shape, d.scale}; },
          [](const InverseGaussianParams& d) { return std::vector<double>{d.mu, d.lambda}; },
          [](const BetaPrimeParams& d) { return std::vector<double>{d.p, d.q, d.beta}; },
      },
      spec.params);
}

std::vector<double> display_parameters(const DistributionSpec& spec) {
  auto v = parameter_vector(spec);
  if (spec.family() == Family::Weibull) std::swap(v[0], v[1]);
  return v;
}

DistributionSpec make_spec(Family f, std::span<const double> v) {
  if (v.size() != parameter_count(f)) {
    throw DomainError(std::string(family_name(f)) + ": expected " +
                      std::to_string(parameter_count(f)) + " parameters, got " +
                      std::to_string(v.size()));
  }
  DistributionSpec spec;
  switch (f) {
    case Family::Normal: spec.params = NormalParams{v[0], v[1]}; break;
    case Family::LogNormal: spec.params = LogNormalParams{v[0], v[1]}; break;
    case Family::InverseGamma: spec.params = InverseGammaParams{v[0], v[1]}; break;
    case Family::Gamma: spec.params = GammaParams{v[0], v[1]}; break;
    case Family::Weibull: spec.params = WeibullParams{v[0], v[1]}; break;
    case Family::InverseGaussian: spec.params = InverseGaussianParams{v[0], v[1]}; break;
    case Family::BetaPrime: spec.params = BetaPrimeParams{v[0], v[1], v[2]}; break;
  }
  validate(spec);
  return spec;
}

DistributionSpec default_spec(Family f) {
  switch (f) {
    case Family::Normal: return {NormalParams{}};
    case Family::LogNormal: return {LogNormalParams{}};
    case Family::InverseGamma: return {InverseGammaParams{}};
    case Family::Gamma: return {GammaParams{}};
    case Family::Weibull: return {WeibullParams{}};
    case Family::InverseGaussian: return {InverseGaussianParams{}};
    case Family::BetaPrime: return {BetaPrimeParams{}};
  }
  return {};
}

// Validation -----------------------------------------------------------------

void validate(const NormalParams& p) {
  require(std::isfinite(p.mu), "Normal", "mu must be finite");
  require(positive_finite(p.sigma), "Normal", "sigma must be finite and > 0");
}
void validate(const LogNormalParams& p) {
  require(std::isfinite(p.mu), "LogNormal", "mu must be finite");
  require(positive_finite(p.sigma), "LogNormal", "sigma must be finite and > 0");
}
void validate(const InverseGammaParams& p) {
  require(positive_finite(p.alpha) && positive_finite(p.scale), "InverseGamma",
          "alpha and scale must be finite and > 0");
}
void validate(const GammaParams& p) {
  require(positive_finite(p.k) && positive_finite(p.theta), "Gamma",
          "k and theta must be finite and > 0");
}
void validate(const WeibullParams& p) {
  require(positive_finite(p.shape) && positive_finite(p.scale), "Weibull",
          "shape and scale must be finite and > 0");
}
void validate(const InverseGaussianParams& p) {
  require(positive_finite(p.mu) && positive_finite(p.lambda), "InverseGaussian",
          "mu and lambda must be finite and > 0");
}
void validate(const BetaPrimeParams& p) {
  require(positive_finite(p.p) && positive_finite(p.q) && positive_finite(p.beta), "BetaPrime",
          "p, q and beta must be finite and > 0");
}
void validate(const DistributionSpec& spec) {
  std::visit([](const auto& d) { validate(d); }, spec.params);
}

// Log densities --------------------------------------------------------------

double log_pdf(const NormalParams& d, double x) {
  validate(d);
  require_not_nan(x);
  const double z = (x - d.mu) / d.sigma;
  return -0.5 * z * z - std::log(d.sigma) - kHalfLog2Pi;
}

double log_pdf(const LogNormalParams& d, double x) {
  validate(d);
  require_not_nan(x);
  if (!(x > 0.0) || std::isinf(x)) return kNegInf;
  const double lx = std::log(x);
  const double z = (lx - d.mu) / d.sigma;
  return -0.5 * z * z - std::log(d.sigma) - kHalfLog2Pi - lx;
}

double log_pdf(const InverseGammaParams& d, double x) {
  validate(d);
  require_not_nan(x);
  if (!(x > 0.0) || std::isinf(x)) return kNegInf;
  return d.alpha * std::log(d.scale) - special::log_gamma(d.alpha) -
         (d.alpha + 1.0) * std::log(x) - d.scale / x;
}

double log_pdf(const GammaParams& d, double x) {
  validate(d);
  require_not_nan(x);
  if (!(x > 0.0) || std::isinf(x)) return kNegInf;
  return (d.k - 1.0) * std::log(x) - x / d.theta - d.k * std::log(d.theta) -
         special::log_gamma(d.k);
}

double log_pdf(const WeibullParams& d, double x) {
  validate(d);
  require_not_nan(x);
  if (!(x > 0.0) || std::isinf(x)) return kNegInf;
  const double lz = std::log(x / d.scale);
  return std::log(d.shape / d.scale) + (d.shape - 1.0) * lz - std::exp(d.shape * lz);
}

double log_pdf(const InverseGaussianParams& d, double x) {
  validate(d);
  require_not_nan(x);
  if (!(x > 0.0) || std::isinf(x)) return kNegInf;
  const double dev = x - d.mu;
  return 0.5 * std::log(d.lambda) - kHalfLog2Pi - 1.5 * std::log(x) -
         d.lambda * dev * dev / (2.0 * d.mu * d.mu * x);
}

double log_pdf(const BetaPrimeParams& d, double x) {
  validate(d);
  require_not_nan(x);
  if (!(x > 0.0) || std::isinf(x)) return kNegInf;
  const double u = x / d.beta;
  return (d.p - 1.0) * std::log(u) - (d.p + d.q) * std::log1p(u) - std::log(d.beta) -
         special::log_beta(d.p, d.q);
}

double log_pdf(const DistributionSpec& d, double x) {
  return std::visit([x](const auto& p) { return log_pdf(p, x); }, d.params);
}

// CDFs -----------------------------------------------------------------------

double cdf(const NormalParams& d, double x) {
  validate(d);
  require_not_nan(x);
  return std_normal_cdf((x - d.mu) / d.sigma);
}

double cdf(const LogNormalParams& d, double x) {
  validate(d);
  require_not_nan(x);
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  return std_normal_cdf((std::log(x) - d.mu) / d.sigma);
}

double cdf(const InverseGammaParams& d, double x) {
  validate(d);
  require_not_nan(x);
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  return special::reg_upper_gamma(d.alpha, d.scale / x);
}

double cdf(const GammaParams& d, double x) {
  validate(d);
  require_not_nan(x);
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  return special::reg_lower_gamma(d.k, x / d.theta);
}

double cdf(const WeibullParams& d, double x) {
  validate(d);
  require_not_nan(x);
  if (!(x > 0.0)) return 0.0;
  return -std::expm1(-std::pow(x / d.scale, d.shape));
}

double cdf(const InverseGaussianParams& d, double x) {
  validate(d);
  require_not_nan(x);
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double s = std::sqrt(d.lambda / x);
  const double first = std_normal_cdf(s * (x / d.mu - 1.0));
  // exp(2 lambda / mu) Phi(-s (x/mu + 1)), combined in log space
  const double second =
      std::exp(2.0 * d.lambda / d.mu + special::log_normal_cdf(-s * (x / d.mu + 1.0)));
  return std::min(1.0, first + second);
}

double cdf(const BetaPrimeParams& d, double x) {
  validate(d);
  require_not_nan(x);
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  // z = x / (x + beta), 1 - z = beta / (x + beta)
  const double denom = x + d.beta;
  return special::reg_inc_beta(d.p, d.q, x / denom, d.beta / denom);
}

double cdf(const DistributionSpec& d, double x) {
  return std::visit([x](const auto& p) { return cdf(p, x); }, d.params);
}

// Moments --------------------------------------------------------------------

std::optional<double> mean(const DistributionSpec& spec) {
  validate(spec);
  return std::visit(
      Overloaded{
          [](const NormalParams& d) -> std::optional<double> { return d.mu; },
          [](const LogNormalParams& d) -> std::optional<double> {
            return std::exp(d.mu + 0.5 * d.sigma * d.sigma);
          },
          [](const InverseGammaParams& d) -> std::optional<double> {
            if (d.alpha <= 1.0) return std::nullopt;
            return d.scale / (d.alpha - 1.0);
          },
          [](const GammaParams& d) -> std::optional<double> { return d.k * d.theta; },
          [](const WeibullParams& d) -> std::optional<double> {
            return d.scale * std::exp(special::log_gamma(1.0 + 1.0 / d.shape));
          },
          [](const InverseGaussianParams& d) -> std::optional<double> { return d.mu; },
          [](const BetaPrimeParams& d) -> std::optional<double> {
            if (d.q <= 1.0) return std::nullopt;
            return d.beta * d.p / (d.q - 1.0);
          },
      },
      spec.params);
}

std::optional<double> variance(const DistributionSpec& spec) {
  validate(spec);
  return std::visit(
      Overloaded{
          [](const NormalParams& d) -> std::optional<double> { return d.sigma * d.sigma; },
          [](const LogNormalParams& d) -> std::optional<double> {
            const double s2 = d.sigma * d.sigma;
            return std::expm1(s2) * std::exp(2.0 * d.mu + s2);
          },
          [](const InverseGammaParams& d) -> std::optional<double> {
            if (d.alpha <= 2.0) return std::nullopt;
            const double am1 = d.alpha - 1.0;
            return d.scale * d.scale / (am1 * am1 * (d.alpha - 2.0));
          },
          [](const GammaParams& d) -> std::optional<double> { return d.k * d.theta * d.theta; },
          [](const WeibullParams& d) -> std::optional<double> {
            const double g1 = std::exp(special::log_gamma(1.0 + 1.0 / d.shape));
            const double g2 = std::exp(special::log_gamma(1.0 + 2.0 / d.shape));
            return d.scale * d.scale * (g2 - g1 * g1);
          },
          [](const InverseGaussianParams& d) -> std::optional<double> {
            return d.mu * d.mu * d.mu / d.lambda;
          },
          [](const BetaPrimeParams& d) -> std::optional<double> {
            if (d.q <= 2.0) return std::nullopt;
            const double qm1 = d.q - 1.0;
            return d.beta * d.beta * d.p * (d.p + d.q - 1.0) / ((d.q - 2.0) * qm1 * qm1);
          },
      },
      spec.params);
}

// Sampling -------------------------------------------------------------------

std::vector<double> sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
  validate(spec);
  Rng rng(seed);
  std::vector<double> out(n);
  std::visit(
      Overloaded{
          [&](const NormalParams& d) {
            for (auto& v : out) v = d.mu + d.sigma * rng.normal();
          },
          [&](const LogNormalParams& d) {
            for (auto& v : out) v = std::exp(d.mu + d.sigma * rng.normal());
          },
          [&](const InverseGammaParams& d) {
            for (auto& v : out) v = d.scale / rng.standard_gamma(d.alpha);
          },
          [&](const GammaParams& d) {
            for (auto& v : out) v = d.theta * rng.standard_gamma(d.k);
          },
          [&](const WeibullParams& d) {
            for (auto& v : out) v = d.scale * std::pow(-std::log(rng.uniform_open()), 1.0 / d.shape);
          },
          [&](const InverseGaussianParams& d) {
            // Michael, Schucany & Haas transformation with a cancellation-free
            // smaller root: x1 = mu^2 / x2.
            for (auto& v : out) {
              const double nu = rng.normal();
              const double y = nu * nu;
              const double my = d.mu * y;
              const double x2 = d.mu + d.mu * my / (2.0 * d.lambda) +
                                d.mu / (2.0 * d.lambda) * std::sqrt(4.0 * d.lambda * my + my * my);
              const double x1 = d.mu * d.mu / x2;
              v = rng.uniform() <= d.mu / (d.mu + x1) ? x1 : x2;
            }
          },
          [&](const BetaPrimeParams& d) {
            for (auto& v : out) {
              const double gp = rng.standard_gamma(d.p);
              const double gq = rng.standard_gamma(d.q);
              v = d.beta * gp / gq;
            }
          },
      },
      spec.params);
  return out;
}

// Beta Prime specifics -------------------------------------------------------

TailExponents tail_exponents(const BetaPrimeParams& d) {
  validate(d);
  return {d.p - 1.0, -d.q - 1.0};
}

BetaPrimeParams inverted(const BetaPrimeParams& d) {
  validate(d);
  return {d.q, d.p, 1.0 / d.beta};
}

LogNormalParams inverted(const LogNormalParams& d) {
  validate(d);
  return {-d.mu, d.sigma};
}

InverseGammaParams inverted(const GammaParams& d) {
  validate(d);
  return {d.k, 1.0 / d.theta};
}

GammaParams inverted(const InverseGammaParams& d) {
  validate(d);
  return {d.alpha, 1.0 / d.scale};
}

std::optional<DistributionSpec> reciprocal_law(const DistributionSpec& spec) {
  return std::visit(
      Overloaded{
          [](const BetaPrimeParams& d) -> std::optional<DistributionSpec> {
            return DistributionSpec{inverted(d)};
          },
          [](const LogNormalParams& d) -> std::optional<DistributionSpec> {
            return DistributionSpec{inverted(d)};
          },
          [](const GammaParams& d) -> std::optional<DistributionSpec> {
            return DistributionSpec{inverted(d)};
          },
          [](const InverseGammaParams& d) -> std::optional<DistributionSpec> {
            return DistributionSpec{inverted(d)};
          },
          [](const auto&) -> std::optional<DistributionSpec> { return std::nullopt; },
      },
      spec.params);
}

}  // namespace ratiofit
