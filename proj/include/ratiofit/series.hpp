#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ratiofit {

/// Timezone-free calendar date of a daily close.
using Date = std::chrono::year_month_day;

/// Parses YYYY-MM-DD; throws ParseError (line 0) on anything else.
Date parse_date(std::string_view text);
std::string format_date(Date d);
/// Whole days from a to b.
int days_between(Date a, Date b);

/// Date-stamped daily values with strictly increasing dates.
struct DailySeries {
  std::vector<Date> dates;
  std::vector<double> values;

  std::size_t size() const { return dates.size(); }
  bool empty() const { return dates.empty(); }
};

/// Daily closes of the underlying index (index points).
struct PriceSeries : DailySeries {};

/// Daily volatility-index levels: annualized volatility in percent.
struct IndexSeries : DailySeries {};

/// Throws DataError unless sizes match, dates strictly increase and every
/// value is finite and > 0.
void validate_positive_series(const DailySeries& s, std::string_view what);

/// Keeps observations with from <= date <= to.
template <class Series>
Series restrict_dates(const Series& s, Date from, Date to) {
  Series out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.dates[i] >= from && s.dates[i] <= to) {
      out.dates.push_back(s.dates[i]);
      out.values.push_back(s.values[i]);
    }
  }
  return out;
}

}  // namespace ratiofit
