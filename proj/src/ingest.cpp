#include "ratiofit/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ratiofit/error.hpp"
#include "ratiofit/format.hpp"

namespace ratiofit {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (std::isspace(static_cast<unsigned char>(s.front())) || s.front() == '"')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (std::isspace(static_cast<unsigned char>(s.back())) || s.back() == '"')) {
    s.remove_suffix(1);
  }
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool is_missing(std::string_view token) {
  const auto t = lower(token);
  return t.empty() || t == "." || t == "na" || t == "n/a" || t == "#n/a" || t == "nan" ||
         t == "null";
}

struct Row {
  Date date;
  double value;
  std::size_t order;
};

}  // namespace

void throw_empty_alignment() {
  throw DataError("align: the two series have no dates in common");
}

CsvLoad read_daily_csv(std::istream& in, std::string_view column, std::string_view source) {
  const std::string src(source);
  std::string line;
  std::size_t lineno = 0;
  // header
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    for (auto h : split(line)) header.push_back(lower(h));
    break;
  }
  if (header.empty()) throw ParseError(src + ": missing header row", lineno);
  const std::string want = lower(column);
  const auto col_it = std::find(header.begin(), header.end(), want);
  if (col_it == header.end()) {
    throw ParseError(src + ":" + std::to_string(lineno) + ": no column named '" +
                         std::string(column) + "' in header",
                     lineno);
  }
  const auto value_col = static_cast<std::size_t>(col_it - header.begin());
  const auto date_it = std::find(header.begin(), header.end(), "date");
  const std::size_t date_col =
      date_it == header.end() ? 0 : static_cast<std::size_t>(date_it - header.begin());

  CsvLoad out;
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    ++out.stats.rows;
    const auto fields = split(line);
    const auto where = src + ":" + std::to_string(lineno);
    if (fields.size() <= std::max(value_col, date_col)) {
      throw ParseError(where + ": expected at least " + std::to_string(std::max(value_col, date_col) + 1) +
                           " fields",
                       lineno);
    }
    Date date;
    try {
      date = parse_date(fields[date_col]);
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what(), lineno);
    }
    const auto token = fields[value_col];
    if (is_missing(token)) {
      ++out.stats.dropped_missing;
      continue;
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(v)) {
      throw ParseError(where + ": cannot parse value '" + std::string(token) + "'", lineno);
    }
    rows.push_back({date, v, rows.size()});
  }

  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.date < b.date; });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i + 1 < rows.size() && rows[i + 1].date == rows[i].date) {
      ++out.stats.duplicates;  // a later row for the same date replaces this one
      continue;
    }
    out.series.dates.push_back(rows[i].date);
    out.series.values.push_back(rows[i].value);
  }
  if (out.series.empty()) throw DataError(src + ": no usable rows");
  return out;
}

CsvLoad read_daily_csv(const std::filesystem::path& path, std::string_view column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return read_daily_csv(in, column, path.string());
}

namespace {

template <class Series>
Series load_checked(const std::filesystem::path& path, std::string_view column, const char* what) {
  auto load = read_daily_csv(path, column);
  if (load.stats.dropped_missing > 0 || load.stats.duplicates > 0) {
    std::clog << "warning: " << path.string() << ": dropped " << load.stats.dropped_missing
              << " missing-value rows, collapsed " << load.stats.duplicates << " duplicate dates\n";
  }
  Series s;
  s.dates = std::move(load.series.dates);
  s.values = std::move(load.series.values);
  validate_positive_series(s, what);
  return s;
}

}  // namespace

PriceSeries load_price_csv(const std::filesystem::path& path, std::string_view column) {
  return load_checked<PriceSeries>(path, column, "price series");
}

IndexSeries load_index_csv(const std::filesystem::path& path, std::string_view column) {
  return load_checked<IndexSeries>(path, column, "volatility index");
}

void write_daily_csv(std::ostream& out, const DailySeries& s, std::string_view column) {
  out << "date," << column << '\n';
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << format_date(s.dates[i]) << ',' << format_number(s.values[i]) << '\n';
  }
}

Manifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir) {
  Manifest m;
  bool any = false;
  bool have_spx = false;
  std::string line;
  std::size_t lineno = 0;
  auto resolve = [&](std::string_view v) {
    std::filesystem::path p{std::string(v)};
    return p.is_absolute() ? p : base_dir / p;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("manifest line " + std::to_string(lineno) + ": expected key=value");
    }
    const auto key = lower(trim(body.substr(0, eq)));
    const auto value = trim(body.substr(eq + 1));
    any = true;
    try {
      if (key == "spx") {
        m.spx = resolve(value);
        have_spx = true;
      } else if (key == "vix") {
        m.vix = resolve(value);
      } else if (key == "vxo") {
        m.vxo = resolve(value);
      } else if (key == "spx_column") {
        m.spx_column = std::string(value);
      } else if (key == "index_column") {
        m.index_column = std::string(value);
      } else if (key == "from") {
        m.from = parse_date(value);
      } else if (key == "to") {
        m.to = parse_date(value);
      } else {
        throw UsageError("manifest line " + std::to_string(lineno) + ": unknown key '" + key + "'");
      }
    } catch (const ParseError& e) {
      throw UsageError("manifest line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!any) throw UsageError("manifest is empty");
  if (!have_spx) throw UsageError("manifest does not name an spx file");
  if (m.to < m.from) throw UsageError("manifest date range is empty");
  return m;
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open manifest " + path.string());
  return parse_manifest(in, path.parent_path());
}

}  // namespace ratiofit
