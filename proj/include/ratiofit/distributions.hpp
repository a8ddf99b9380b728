#pragma once

// The seven candidate laws for variance ratios.
//
// Each family is a plain parameter record with free functions log_pdf, pdf,
// cdf, sample, mean and variance. DistributionSpec is a closed variant over the
// records; its alternative order is the display order of the result tables
// (Normal, LogNormal, IGa, Gamma, Weibull, IG, BP).
//
// Densities are evaluated in log space; pdf = exp(log_pdf). For the
// positive-support families log_pdf(x <= 0) is -inf and cdf(x <= 0) is 0.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ratiofit {

struct NormalParams {
  double mu = 0.0;
  double sigma = 1.0;
  bool operator==(const NormalParams&) const = default;
};

struct LogNormalParams {
  double mu = 0.0;     // mean of ln X
  double sigma = 1.0;  // sd of ln X
  bool operator==(const LogNormalParams&) const = default;
};

/// Density proportional to x^{-alpha-1} exp(-scale / x).
struct InverseGammaParams {
  double alpha = 1.0;
  double scale = 1.0;
  bool operator==(const InverseGammaParams&) const = default;
};

/// Density proportional to x^{k-1} exp(-x / theta).
struct GammaParams {
  double k = 1.0;
  double theta = 1.0;
  bool operator==(const GammaParams&) const = default;
};

/// Stored as (shape, scale); reports print (scale, shape).
struct WeibullParams {
  double shape = 1.0;
  double scale = 1.0;
  bool operator==(const WeibullParams&) const = default;
};

struct InverseGaussianParams {
  double mu = 1.0;      // mean
  double lambda = 1.0;  // shape
  bool operator==(const InverseGaussianParams&) const = default;
};

/// Beta Prime:
///   f(x) = (1 + x/beta)^{-p-q} (x/beta)^{p-1} / (beta B(p, q)).
/// Behaves like x^{p-1} for x << beta and like x^{-q-1} for x >> beta.
struct BetaPrimeParams {
  double p = 1.0;
  double q = 1.0;
  double beta = 1.0;
  bool operator==(const BetaPrimeParams&) const = default;
};

enum class Family : std::uint8_t {
  Normal = 0,
  LogNormal,
  InverseGamma,
  Gamma,
  Weibull,
  InverseGaussian,
  BetaPrime,
};

inline constexpr std::array<Family, 7> kAllFamilies = {
    Family::Normal,  Family::LogNormal,       Family::InverseGamma, Family::Gamma,
    Family::Weibull, Family::InverseGaussian, Family::BetaPrime};

using FamilyParams = std::variant<NormalParams, LogNormalParams, InverseGammaParams, GammaParams,
                                  WeibullParams, InverseGaussianParams, BetaPrimeParams>;

/// A family together with its parameters. The family is the active variant
/// alternative, so the two cannot disagree.
struct DistributionSpec {
  FamilyParams params;

  Family family() const { return static_cast<Family>(params.index()); }
};

// Naming and parameter-vector plumbing -------------------------------------

std::string_view family_name(Family f);       // "Normal", "LogNormal", ...
std::string_view family_short_name(Family f);  // "N", "LN", "IGa", "Gamma", "Weibul", "IG", "BP"
Family parse_family(std::string_view name);    // accepts either form, case-insensitive
bool has_positive_support(Family f);
std::size_t parameter_count(Family f);
std::vector<std::string> parameter_names(Family f);  // internal storage order

/// Parameters in internal storage order.
std::vector<double> parameter_vector(const DistributionSpec& spec);
/// Parameters in the order printed by the result tables (Weibull: scale, shape).
std::vector<double> display_parameters(const DistributionSpec& spec);
/// Inverse of parameter_vector; validates the result.
DistributionSpec make_spec(Family f, std::span<const double> params);
DistributionSpec default_spec(Family f);

// Validation: throw DomainError on non-finite or out-of-range parameters.
void validate(const NormalParams& p);
void validate(const LogNormalParams& p);
void validate(const InverseGammaParams& p);
void validate(const GammaParams& p);
void validate(const WeibullParams& p);
void validate(const InverseGaussianParams& p);
void validate(const BetaPrimeParams& p);
void validate(const DistributionSpec& spec);

// Densities and CDFs --------------------------------------------------------

double log_pdf(const NormalParams& d, double x);
double log_pdf(const LogNormalParams& d, double x);
double log_pdf(const InverseGammaParams& d, double x);
double log_pdf(const GammaParams& d, double x);
double log_pdf(const WeibullParams& d, double x);
double log_pdf(const InverseGaussianParams& d, double x);
double log_pdf(const BetaPrimeParams& d, double x);
double log_pdf(const DistributionSpec& d, double x);

double cdf(const NormalParams& d, double x);
double cdf(const LogNormalParams& d, double x);
double cdf(const InverseGammaParams& d, double x);
double cdf(const GammaParams& d, double x);
double cdf(const WeibullParams& d, double x);
double cdf(const InverseGaussianParams& d, double x);
double cdf(const BetaPrimeParams& d, double x);
double cdf(const DistributionSpec& d, double x);

template <class Params>
double pdf(const Params& d, double x) {
  return std::exp(log_pdf(d, x));
}

// Moments, where finite -----------------------------------------------------

std::optional<double> mean(const DistributionSpec& d);
std::optional<double> variance(const DistributionSpec& d);

// Sampling ------------------------------------------------------------------

/// n i.i.d. draws; deterministic for a fixed seed. Beta Prime draws are
/// beta * G_p / G_q with independent standard gammas.
std::vector<double> sample(const DistributionSpec& d, std::size_t n, std::uint64_t seed);

// Beta Prime specifics ------------------------------------------------------

struct TailExponents {
  double small_x;  // p - 1: density ~ x^{p-1} near 0
  double tail;     // -q - 1: density ~ x^{-q-1} for large x
};

TailExponents tail_exponents(const BetaPrimeParams& d);

/// Law of 1/X for X ~ BP(p, q, beta): BP(q, p, 1/beta).
BetaPrimeParams inverted(const BetaPrimeParams& d);
/// Law of 1/X for X ~ LN(mu, sigma): LN(-mu, sigma).
LogNormalParams inverted(const LogNormalParams& d);
/// Law of 1/X for X ~ Gamma(k, theta): IGa(k, 1/theta).
InverseGammaParams inverted(const GammaParams& d);
/// Law of 1/X for X ~ IGa(alpha, scale): Gamma(alpha, 1/scale).
GammaParams inverted(const InverseGammaParams& d);

/// Law of 1/X when it belongs to the seven families, otherwise nullopt
/// (Normal, Weibull and Inverse Gaussian are not closed under inversion).
std::optional<DistributionSpec> reciprocal_law(const DistributionSpec& d);

}  // namespace ratiofit
