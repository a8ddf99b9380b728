#include "ratiofit/series.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "ratiofit/error.hpp"

namespace ratiofit {

Date parse_date(std::string_view text) {
  auto bad = [&] { return ParseError("invalid date '" + std::string(text) + "', expected YYYY-MM-DD", 0); };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw bad();
  int y = 0;
  unsigned m = 0, d = 0;
  auto num = [&](std::size_t pos, std::size_t len, auto& out) {
    const char* first = text.data() + pos;
    const auto [ptr, ec] = std::from_chars(first, first + len, out);
    if (ec != std::errc{} || ptr != first + len) throw bad();
  };
  num(0, 4, y);
  num(5, 2, m);
  num(8, 2, d);
  const Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!date.ok()) throw bad();
  return date;
}

std::string format_date(Date d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

int days_between(Date a, Date b) {
  return static_cast<int>((std::chrono::sys_days{b} - std::chrono::sys_days{a}).count());
}

void validate_positive_series(const DailySeries& s, std::string_view what) {
  if (s.dates.size() != s.values.size()) {
    throw DataError(std::string(what) + ": dates and values differ in length");
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0 && !(s.dates[i - 1] < s.dates[i])) {
      throw DataError(std::string(what) + ": dates not strictly increasing at " +
                      format_date(s.dates[i]));
    }
    if (!(s.values[i] > 0.0) || !std::isfinite(s.values[i])) {
      throw DataError(std::string(what) + ": non-positive value at " + format_date(s.dates[i]));
    }
  }
}

}  // namespace ratiofit
