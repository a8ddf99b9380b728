#include "ratiofit/gof.hpp"

#include <cmath>
#include <string>

#include "ratiofit/error.hpp"
#include "ratiofit/kernels.hpp"

namespace ratiofit {
namespace {

std::vector<double> sorted_copy(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  for (double x : s) {
    if (std::isnan(x)) throw DomainError("KS statistic: data contains NaN");
  }
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

KSStat ks_from_sorted(std::span<const double> sorted, std::span<const double> cdf_at_sorted) {
  const std::size_t n = sorted.size();
  if (n == 0) throw DataError("ks_one_sample: empty sample");
  if (cdf_at_sorted.size() != n) throw DataError("ks_one_sample: size mismatch");
  const double nn = static_cast<double>(n);
  double d = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
    const double f = cdf_at_sorted[i];
    const double below = static_cast<double>(i) / nn;      // F_n just below the value
    const double at = static_cast<double>(j + 1) / nn;     // F_n at the value
    d = std::max({d, at - f, f - below});
    i = j + 1;
  }
  return {std::clamp(d, 0.0, 1.0), n};
}

KSStat ks_one_sample(std::span<const double> data, const std::function<double(double)>& cdf) {
  const auto s = sorted_copy(data);
  std::vector<double> f(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) f[i] = cdf(s[i]);
  return ks_from_sorted(s, f);
}

KSStat ks_one_sample(std::span<const double> data, const DistributionSpec& spec) {
  const auto s = sorted_copy(data);
  std::vector<double> f(s.size());
  kernels::cdf_values(spec, s, f);
  return ks_from_sorted(s, f);
}

TwoSampleKSStat ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DataError("ks_two_sample: both samples must be non-empty");
  const auto sa = sorted_copy(a);
  const auto sb = sorted_copy(b);
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double t = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == t) ++i;
    while (j < sb.size() && sb[j] == t) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  // once one sample is exhausted the gap only shrinks
  return {d, sa.size(), sb.size()};
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DataError("pearson: inputs differ in length");
  if (x.size() < 2) throw DataError("pearson: need at least two pairs");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw DataError("pearson: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace ratiofit
