#include <catch_amalgamated.hpp>

#include <sstream>

#include "ratiofit/error.hpp"
#include "ratiofit/ingest.hpp"
#include "test_util.hpp"

using namespace ratiofit;

TEST_CASE("dates") {
  const Date d = parse_date("2016-12-30");
  CHECK(format_date(d) == "2016-12-30");
  CHECK(days_between(parse_date("2016-02-28"), parse_date("2016-03-01")) == 2);
  CHECK_THROWS_AS(parse_date("2016-13-01"), ParseError);
  CHECK_THROWS_AS(parse_date("2016-02-30"), ParseError);
  CHECK_THROWS_AS(parse_date("16-02-01"), ParseError);
  CHECK_THROWS_AS(parse_date("2016/02/01"), ParseError);
}

TEST_CASE("FRED export with placeholders") {
  const auto load = read_daily_csv(testutil::data_path("fred_placeholder.csv"), "sp500");
  CHECK(load.stats.rows == 6);
  CHECK(load.stats.dropped_missing == 2);
  REQUIRE(load.series.size() == 4);
  CHECK(format_date(load.series.dates.front()) == "2016-12-23");
  CHECK(format_date(load.series.dates.back()) == "2016-12-30");
  for (std::size_t i = 1; i < load.series.size(); ++i) CHECK(load.series.dates[i - 1] < load.series.dates[i]);
  CHECK(load.series.values[1] == 2268.88);
}

TEST_CASE("small files") {
  std::istringstream two("date,close\n2010-01-04,10\n2010-01-05,11\n");
  CHECK(read_daily_csv(two, "close").series.size() == 2);

  std::istringstream dup("Date,Close\n2010-01-05,11\n2010-01-04,10\n2010-01-05,12\n");
  const auto d = read_daily_csv(dup, "close");
  CHECK(d.stats.duplicates == 1);
  CHECK(d.series.values == std::vector<double>{10.0, 12.0});

  std::istringstream bad("date,close\n2010-01-04,10\n2010-01-05,abc\n");
  try {
    read_daily_csv(bad, "close", "bad.csv");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("bad.csv:3") != std::string::npos);
  }
  std::istringstream nocol("date,open\n2010-01-04,10\n");
  CHECK_THROWS_AS(read_daily_csv(nocol, "close"), ParseError);
  std::istringstream empty("date,close\n2010-01-04,.\n");
  CHECK_THROWS_AS(read_daily_csv(empty, "close"), DataError);
}

TEST_CASE("load, write, load is idempotent") {
  const auto first = read_daily_csv(testutil::data_path("fred_placeholder.csv"), "SP500").series;
  std::ostringstream out;
  write_daily_csv(out, first, "close");
  std::istringstream in(out.str());
  const auto second = read_daily_csv(in, "close").series;
  CHECK(second.dates == first.dates);
  CHECK(second.values == first.values);
  std::ostringstream again;
  write_daily_csv(again, second, "close");
  CHECK(again.str() == out.str());
}

TEST_CASE("alignment") {
  const auto spx = load_price_csv(testutil::data_path("spx_fixture.csv"));
  const auto vix = load_index_csv(testutil::data_path("vix_fixture.csv"));
  const auto a = align(spx, vix);
  CHECK(a.a.dates == a.b.dates);
  CHECK(a.a.size() == 63);
  CHECK(a.dropped_a == 1);
  CHECK(a.dropped_b == 1);
  const auto b = align(vix, spx);
  CHECK(b.a.dates == a.a.dates);
  const auto same = align(spx, spx);
  CHECK(same.a.values == spx.values);
  CHECK(same.dropped_a == 0);

  PriceSeries other;
  other.dates = {parse_date("1999-01-04")};
  other.values = {1.0};
  CHECK_THROWS_AS(align(spx, other), DataError);
}

TEST_CASE("non-positive prices are rejected") {
  const auto dir = testutil::fresh_dir("ingest");
  {
    std::ofstream f(dir / "neg.csv");
    f << "date,close\n2010-01-04,10\n2010-01-05,-1\n";
  }
  CHECK_THROWS_AS(load_price_csv(dir / "neg.csv"), DataError);
  CHECK_THROWS_AS(load_price_csv(dir / "missing.csv"), DataError);
}

TEST_CASE("manifest") {
  std::istringstream in("# data\nspx = spx.csv\nvix=/abs/vix.csv\nfrom=2000-01-03\n");
  const auto m = parse_manifest(in, "/data");
  CHECK(m.spx == std::filesystem::path("/data/spx.csv"));
  CHECK(m.vix == std::filesystem::path("/abs/vix.csv"));
  CHECK_FALSE(m.vxo.has_value());
  CHECK(format_date(m.from) == "2000-01-03");
  CHECK(format_date(m.to) == "2016-12-30");

  std::istringstream empty("");
  CHECK_THROWS_AS(parse_manifest(empty, "."), UsageError);
  std::istringstream unknown("spx=a.csv\ncolour=blue\n");
  CHECK_THROWS_AS(parse_manifest(unknown, "."), UsageError);
  std::istringstream nospx("vix=a.csv\n");
  CHECK_THROWS_AS(parse_manifest(nospx, "."), UsageError);
}
