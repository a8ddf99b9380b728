#pragma once

// Daily CSV loading, calendar alignment and the run manifest.
//
// CSV schema: a header row, the date (YYYY-MM-DD) in the first column and the
// value in the named column. Empty, "." (FRED) and "NA"/"NaN" values are
// dropped and counted. Output is sorted by date; for repeated dates the last
// row wins.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "ratiofit/series.hpp"

namespace ratiofit {

struct LoadStats {
  std::size_t rows = 0;             // data rows seen
  std::size_t dropped_missing = 0;  // placeholder / empty values
  std::size_t duplicates = 0;       // repeated dates collapsed
};

struct CsvLoad {
  DailySeries series;
  LoadStats stats;
};

/// Reads `column` (case-insensitive header match). Throws ParseError with the
/// line number on malformed rows and DataError if nothing usable remains.
CsvLoad read_daily_csv(std::istream& in, std::string_view column, std::string_view source = "<stream>");
CsvLoad read_daily_csv(const std::filesystem::path& path, std::string_view column);

/// Loaders that report dropped rows on std::clog and validate positivity.
PriceSeries load_price_csv(const std::filesystem::path& path, std::string_view column = "close");
IndexSeries load_index_csv(const std::filesystem::path& path, std::string_view column = "close");

/// Canonical form: "date,<column>" header, shortest round-trip decimals.
void write_daily_csv(std::ostream& out, const DailySeries& s, std::string_view column = "close");

template <class A, class B>
struct Alignment {
  A a;
  B b;
  std::size_t dropped_a = 0;
  std::size_t dropped_b = 0;
};

/// Restricts both series to their common dates. Throws DataError when the
/// intersection is empty.
template <class A, class B>
Alignment<A, B> align(const A& a, const B& b);

/// key=value run description. Relative paths resolve against the manifest's
/// directory; '#' starts a comment.
struct Manifest {
  std::filesystem::path spx;
  std::optional<std::filesystem::path> vix;
  std::optional<std::filesystem::path> vxo;
  std::string spx_column = "close";
  std::string index_column = "close";
  Date from = Date{std::chrono::year{1990}, std::chrono::January, std::chrono::day{2}};
  Date to = Date{std::chrono::year{2016}, std::chrono::December, std::chrono::day{30}};
};

/// Throws UsageError for an empty manifest, unknown keys or a missing spx
/// entry.
Manifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir);
Manifest load_manifest(const std::filesystem::path& path);

// --- template implementation ---

void throw_empty_alignment();

template <class A, class B>
Alignment<A, B> align(const A& a, const B& b) {
  Alignment<A, B> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a.dates[i] < b.dates[j]) {
      ++i;
      ++out.dropped_a;
    } else if (b.dates[j] < a.dates[i]) {
      ++j;
      ++out.dropped_b;
    } else {
      out.a.dates.push_back(a.dates[i]);
      out.a.values.push_back(a.values[i]);
      out.b.dates.push_back(b.dates[j]);
      out.b.values.push_back(b.values[j]);
      ++i;
      ++j;
    }
  }
  out.dropped_a += a.size() - i;
  out.dropped_b += b.size() - j;
  if (out.a.empty()) throw_empty_alignment();
  return out;
}

}  // namespace ratiofit
