#include "ratiofit/volatility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ratiofit/error.hpp"
#include "ratiofit/rng.hpp"

namespace ratiofit {
namespace {

struct Aligned {
  std::vector<Date> dates;
  std::vector<double> num;
  std::vector<double> den;
};

Aligned intersect(const std::vector<Date>& da, const std::vector<double>& va,
                  const std::vector<Date>& db, const std::vector<double>& vb) {
  Aligned out;
  std::size_t i = 0, j = 0;
  while (i < da.size() && j < db.size()) {
    if (da[i] < db[j]) {
      ++i;
    } else if (db[j] < da[i]) {
      ++j;
    } else {
      out.dates.push_back(da[i]);
      out.num.push_back(va[i]);
      out.den.push_back(vb[j]);
      ++i;
      ++j;
    }
  }
  if (out.dates.empty()) {
    throw DataError("ratio series: numerator and denominator share no dates");
  }
  return out;
}

void require_positive_variance(const std::vector<Date>& dates, const std::vector<double>& v,
                               const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0) || !std::isfinite(v[i])) {
      throw DataError(std::string("zero or invalid ") + what + " at " + format_date(dates[i]) +
                      "; the window has no price movement");
    }
  }
}

RatioSeries divide(Aligned a, RatioMode mode, bool unit_mean, const char* num_what,
                   const char* den_what) {
  require_positive_variance(a.dates, a.num, num_what);
  require_positive_variance(a.dates, a.den, den_what);
  RatioSeries r;
  r.mode = mode;
  r.dates = std::move(a.dates);
  r.values.resize(r.dates.size());
  for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] = a.num[i] / a.den[i];
  if (unit_mean) scale_to_unit_mean(r.values);
  r.scaled_to_unit_mean = unit_mean;
  return r;
}

}  // namespace

std::string_view ratio_mode_name(RatioMode m) {
  switch (m) {
    case RatioMode::Predicted: return "predicted";
    case RatioMode::Preceding: return "preceding";
    case RatioMode::AdjacentRV: return "adjacent";
    case RatioMode::RandomPairing: return "random";
  }
  return "?";
}

RatioMode parse_ratio_mode(std::string_view name) {
  for (RatioMode m : {RatioMode::Predicted, RatioMode::Preceding, RatioMode::AdjacentRV,
                      RatioMode::RandomPairing}) {
    if (name == ratio_mode_name(m)) return m;
  }
  throw UsageError("unknown ratio mode '" + std::string(name) +
                   "' (expected predicted, preceding, adjacent or random)");
}

bool default_unit_mean_scaling(RatioMode m) { return m != RatioMode::AdjacentRV; }

std::vector<double> log_returns(const PriceSeries& prices) {
  if (prices.size() < 2) throw DataError("log_returns: need at least two prices");
  std::vector<double> r(prices.size() - 1);
  for (std::size_t i = 1; i < prices.size(); ++i) {
    if (!(prices.values[i] > 0.0) || !(prices.values[i - 1] > 0.0)) {
      throw DataError("log_returns: non-positive price at " + format_date(prices.dates[i]));
    }
    r[i - 1] = std::log(prices.values[i] / prices.values[i - 1]);
  }
  return r;
}

double realized_variance_at(std::span<const double> returns, std::size_t anchor, Window window,
                            int horizon, double annualization) {
  if (horizon < 1) throw DomainError("realized_variance: horizon must be >= 1");
  const auto h = static_cast<std::size_t>(horizon);
  std::size_t first = 0;
  if (window == Window::Forward) {
    // returns[t .. t+h-1] are the moves of days t+1 .. t+h
    if (anchor + h > returns.size()) {
      throw DataError("realized_variance: forward window runs past the last date");
    }
    first = anchor;
  } else {
    if (anchor < h || anchor > returns.size()) {
      throw DataError("realized_variance: backward window runs past the first date");
    }
    first = anchor - h;
  }
  double s = 0.0;
  for (std::size_t i = first; i < first + h; ++i) s += returns[i] * returns[i];
  return annualization / static_cast<double>(horizon) * s;
}

RVSeries realized_variance(const PriceSeries& prices, Window window, const VolatilityConfig& cfg) {
  validate_positive_series(prices, "price series");
  if (cfg.horizon < 1) throw DomainError("realized_variance: horizon must be >= 1");
  const auto returns = log_returns(prices);
  const auto h = static_cast<std::size_t>(cfg.horizon);
  const std::size_t stride = cfg.rolling ? 1 : h;

  RVSeries out;
  out.window = window;
  out.window_trading_days = cfg.horizon;
  const std::size_t n = prices.size();
  const std::size_t first = window == Window::Forward ? 0 : h;
  for (std::size_t t = first; t < n; t += stride) {
    if (window == Window::Forward && t + h > n - 1) break;
    const double rv2 = realized_variance_at(returns, t, window, cfg.horizon, cfg.annualization);
    const int cal = window == Window::Forward ? days_between(prices.dates[t], prices.dates[t + h])
                                              : days_between(prices.dates[t - h], prices.dates[t]);
    out.dates.push_back(prices.dates[t]);
    out.rv2.push_back(cfg.rescale == Rescale::Calendar ? trading_day_rescale(rv2, cal, cfg.horizon)
                                                       : rv2);
    out.window_calendar_days.push_back(cal);
  }
  return out;
}

DailySeries implied_variance(const IndexSeries& index) {
  validate_positive_series(index, "volatility index");
  DailySeries out;
  out.dates = index.dates;
  out.values.resize(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    const double v = index.values[i] / 100.0;
    out.values[i] = v * v;
  }
  return out;
}

double trading_day_factor(int calendar_days, int trading_days) {
  if (calendar_days < 1 || trading_days < 1) {
    throw DomainError("trading_day_rescale: window lengths must be >= 1");
  }
  return static_cast<double>(trading_days) * (365.0 / 252.0) / static_cast<double>(calendar_days);
}

double trading_day_rescale(double rv2, int calendar_days, int trading_days) {
  return rv2 * trading_day_factor(calendar_days, trading_days);
}

RealizedVariances realized_variances(const PriceSeries& prices, const VolatilityConfig& config) {
  return {realized_variance(prices, Window::Forward, config),
          realized_variance(prices, Window::Backward, config)};
}

RatioSeries build_ratio_series(const RealizedVariances& rv, const DailySeries& implied,
                               RatioMode mode, bool unit_mean, std::uint64_t seed) {
  switch (mode) {
    case RatioMode::Predicted:
      return divide(intersect(rv.forward.dates, rv.forward.rv2, implied.dates, implied.values), mode,
                    unit_mean, "next-month realized variance", "implied variance");
    case RatioMode::Preceding:
      return divide(intersect(rv.backward.dates, rv.backward.rv2, implied.dates, implied.values),
                    mode, unit_mean, "preceding-month realized variance", "implied variance");
    case RatioMode::AdjacentRV:
      return divide(intersect(rv.forward.dates, rv.forward.rv2, rv.backward.dates, rv.backward.rv2),
                    mode, unit_mean, "next-month realized variance",
                    "preceding-month realized variance");
    case RatioMode::RandomPairing: {
      auto a = intersect(rv.forward.dates, rv.forward.rv2, implied.dates, implied.values);
      const auto perm = shuffled_indices(a.num.size(), seed);
      std::vector<double> shuffled(a.num.size());
      for (std::size_t i = 0; i < perm.size(); ++i) shuffled[i] = a.num[perm[i]];
      a.num = std::move(shuffled);
      return divide(std::move(a), mode, unit_mean, "random-month realized variance",
                    "implied variance");
    }
  }
  throw DomainError("build_ratio_series: unknown mode");
}

RatioSeries build_random_rv_ratio(const RealizedVariances& rv, bool unit_mean, std::uint64_t seed) {
  auto a = intersect(rv.forward.dates, rv.forward.rv2, rv.backward.dates, rv.backward.rv2);
  const auto perm = shuffled_indices(a.num.size(), seed);
  std::vector<double> shuffled(a.num.size());
  for (std::size_t i = 0; i < perm.size(); ++i) shuffled[i] = a.num[perm[i]];
  a.num = std::move(shuffled);
  return divide(std::move(a), RatioMode::RandomPairing, unit_mean, "random-month realized variance",
                "preceding-month realized variance");
}

RatioSeries invert_series(const RatioSeries& r) {
  RatioSeries out = r;
  for (double& v : out.values) v = 1.0 / v;
  if (out.scaled_to_unit_mean) scale_to_unit_mean(out.values);
  return out;
}

void scale_to_unit_mean(std::vector<double>& values) {
  if (values.empty()) return;
  const double m = std::accumulate(values.begin(), values.end(), 0.0) /
                   static_cast<double>(values.size());
  if (!(m > 0.0) || !std::isfinite(m)) throw DataError("unit-mean scaling: mean is not positive");
  for (double& v : values) v /= m;
}

}  // namespace ratiofit
