#pragma once

// Realized variance from daily closes, implied variance from index levels,
// and the aligned variance-ratio series.
//
// A "month" is a window of `horizon` trading days (21 by default). For an
// anchor date t the forward window holds the returns of days t+1..t+h (the
// month a volatility index quotes on day t), the backward window the returns
// of days t-h+1..t. The forward window at t and the backward window at t+h
// are the same returns.

#include <cstdint>
#include <span>
#include <vector>

#include "ratiofit/series.hpp"

namespace ratiofit {

enum class Window : std::uint8_t { Forward, Backward };

enum class Rescale : std::uint8_t {
  None,
  /// Multiply each RV^2 by trading_days * (365/252) / calendar_days.
  Calendar,
};

struct VolatilityConfig {
  int horizon = 21;
  double annualization = 252.0;
  Rescale rescale = Rescale::None;
  /// One ratio per trading day; when false, anchors step by `horizon`
  /// (non-overlapping months).
  bool rolling = true;
};

/// Annualized realized variance per anchor date.
struct RVSeries {
  std::vector<Date> dates;
  std::vector<double> rv2;
  int window_trading_days = 21;
  std::vector<int> window_calendar_days;
  Window window = Window::Forward;

  std::size_t size() const { return dates.size(); }
};

enum class RatioMode : std::uint8_t {
  Predicted,      // nRV^2 / IV^2: next month's RV against today's index
  Preceding,      // RV^2 / IV^2: past month's RV against today's index
  AdjacentRV,     // nRV^2 / RV^2
  RandomPairing,  // rRV^2 / IV^2: next-month RV taken from shuffled dates
};

struct RatioSeries {
  std::vector<Date> dates;
  std::vector<double> values;
  RatioMode mode = RatioMode::Predicted;
  bool scaled_to_unit_mean = false;

  std::size_t size() const { return values.size(); }
};

std::string_view ratio_mode_name(RatioMode m);  // predicted, preceding, adjacent, random
RatioMode parse_ratio_mode(std::string_view name);
/// Unit-mean scaling used unless switched off: on for the index ratios, off
/// for the RV-over-RV ratio.
bool default_unit_mean_scaling(RatioMode m);

/// r_i = ln(C_i / C_{i-1}); entry i-1 belongs to date i.
std::vector<double> log_returns(const PriceSeries& prices);

/// Annualized RV^2 of one window: (annualization / horizon) * sum r^2.
/// `returns` is log_returns() output; `anchor` indexes the price dates.
/// Throws DataError when the window runs past either end.
double realized_variance_at(std::span<const double> returns, std::size_t anchor, Window window,
                            int horizon, double annualization = 252.0);

/// RV^2 for every anchor with a full window, rescaled if configured.
RVSeries realized_variance(const PriceSeries& prices, Window window,
                           const VolatilityConfig& config = {});

/// (level / 100)^2 per date.
DailySeries implied_variance(const IndexSeries& index);

/// trading_days * (365/252) / calendar_days; 1 exactly when the window spans
/// trading_days * 365/252 calendar days.
double trading_day_factor(int calendar_days, int trading_days);
double trading_day_rescale(double rv2, int calendar_days, int trading_days);

/// Both RV windows of one aligned price series.
struct RealizedVariances {
  RVSeries forward;
  RVSeries backward;
};
RealizedVariances realized_variances(const PriceSeries& prices, const VolatilityConfig& config = {});

/// Builds the ratio series for `mode` on the dates common to numerator and
/// denominator. RandomPairing permutes the forward RV^2 values across dates
/// with a seeded Fisher-Yates shuffle before dividing. With `unit_mean` the
/// series is divided by its mean. Throws DataError on an empty intersection
/// or a zero realized variance.
RatioSeries build_ratio_series(const RealizedVariances& rv, const DailySeries& implied,
                               RatioMode mode, bool unit_mean, std::uint64_t seed = 0);

/// Random-month RV baseline: shuffled forward RV^2 over the backward RV^2 of
/// the same date. Tagged RandomPairing.
RatioSeries build_random_rv_ratio(const RealizedVariances& rv, bool unit_mean, std::uint64_t seed);

/// Pointwise reciprocal; unit-mean scaling re-applied when flagged.
RatioSeries invert_series(const RatioSeries& r);

/// Divides by the sample mean.
void scale_to_unit_mean(std::vector<double>& values);

}  // namespace ratiofit
