#include <catch_amalgamated.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "ratiofit/commands.hpp"
#include "ratiofit/error.hpp"
#include "ratiofit/report.hpp"
#include "test_util.hpp"

using namespace ratiofit;
using Catch::Approx;

namespace {

std::filesystem::path fixture_manifest(const std::filesystem::path& dir, bool shuffled = false) {
  auto copy = [&](const std::string& name) {
    std::ifstream in(testutil::data_path(name));
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    if (shuffled) {
      std::mt19937 gen(5);
      std::shuffle(lines.begin() + 1, lines.end(), gen);
    }
    std::ofstream out(dir / name);
    for (const auto& l : lines) out << l << '\n';
  };
  copy("spx_fixture.csv");
  copy("vix_fixture.csv");
  std::ofstream m(dir / "manifest.txt");
  m << "spx=spx_fixture.csv\nvix=vix_fixture.csv\nfrom=2008-01-01\nto=2008-12-31\n";
  return dir / "manifest.txt";
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(RATIOFIT_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("histogram densities integrate to one") {
  const auto xs = sample(DistributionSpec{BetaPrimeParams{5.8771, 3.4893, 0.5556}}, 6800, 3);
  const auto h = freedman_diaconis_histogram(xs);
  REQUIRE(h.edges.size() == h.counts.size() + 1);
  CHECK(h.counts.size() <= 200);
  double area = 0.0;
  std::size_t total = 0;
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    area += h.density[i] * (h.edges[i + 1] - h.edges[i]);
    total += h.counts[i];
  }
  CHECK(std::abs(area - 1.0) < 1e-9);
  CHECK(total == xs.size());
  CHECK(h.edges.front() == *std::min_element(xs.begin(), xs.end()));
  CHECK(h.edges.back() == *std::max_element(xs.begin(), xs.end()));

  // heavy tail: the cap applies
  std::vector<double> wide(1000);
  for (std::size_t i = 0; i < wide.size(); ++i) wide[i] = 1.0 + 0.001 * i;
  wide.back() = 1e6;
  CHECK(freedman_diaconis_histogram(wide).counts.size() == 200);
  CHECK(freedman_diaconis_histogram(std::vector<double>(5, 2.0)).counts.size() == 1);
}

TEST_CASE("curves equal the distribution pdf exactly") {
  const auto xs = sample(DistributionSpec{GammaParams{3.0, 0.5}}, 2000, 4);
  const auto fits = fit_all(xs);
  const auto c = fitted_curves(fits, 0.1, 4.0, 50);
  for (std::size_t f = 0; f < fits.size(); ++f) {
    // Gamma data sends the BP fit toward q -> inf, where it may not converge
    if (!fits[f].converged) {
      CHECK(c.pdf[f].empty());
      continue;
    }
    REQUIRE(c.pdf[f].size() == 50);
    for (std::size_t i = 0; i < c.x.size(); ++i) CHECK(c.pdf[f][i] == std::exp(log_pdf(fits[f].spec, c.x[i])));
  }
}

TEST_CASE("text table lists families in fixed order") {
  const auto xs = sample(DistributionSpec{BetaPrimeParams{5.8771, 3.4893, 0.5556}}, 1000, 6);
  std::vector<double> inv(xs.size());
  std::transform(xs.begin(), xs.end(), inv.begin(), [](double v) { return 1.0 / v; });
  const auto b = build_report(xs, inv, "x", "1/x", FitConfig{}, ReportMetadata{});
  std::ostringstream out;
  write_table_text(out, b);
  const auto text = out.str();
  std::size_t pos = 0;
  for (Family f : kAllFamilies) {
    const auto at = text.find(std::string(family_short_name(f)) + "(", pos);
    REQUIRE(at != std::string::npos);
    pos = at + 1;
  }
  CHECK(text.find("best by KS") != std::string::npos);
  // inverse-side BP seeded at the image of the primary fit
  CHECK(std::abs(b.table.fits[6].ks - b.inverse_table.fits[6].ks) < 1e-9);
}

TEST_CASE("fit on a sample file is deterministic and ranks BP first") {
  const auto dir = testutil::fresh_dir("fit");
  SyntheticCommand syn;
  syn.family = Family::BetaPrime;
  syn.params = {5.8771, 3.4893, 0.5556};
  syn.n = 6800;
  syn.seed = 11;
  syn.out_dir = dir / "syn";
  run_synthetic(syn);

  FitCommand cmd;
  cmd.data = dir / "syn" / "sample.csv";
  cmd.mode = RatioMode::AdjacentRV;
  cmd.timestamp = "t0";
  cmd.out_dir = dir / "a";
  const auto b = run_fit(cmd);
  CHECK(b.table.rank[static_cast<std::size_t>(Family::BetaPrime)] == 1);
  cmd.out_dir = dir / "b";
  run_fit(cmd);
  for (const char* f : {"table.json", "table.txt", "hist.csv", "curves.csv"}) {
    INFO(f);
    CHECK(testutil::slurp(dir / "a" / f) == testutil::slurp(dir / "b" / f));
  }
  const auto j = nlohmann::json::parse(testutil::slurp(dir / "a" / "table.json"));
  CHECK(j["series"]["rows"].size() == 7);
  CHECK(j["series"]["best"] == "BetaPrime");
  CHECK(j["metadata"]["n"] == 6800);
  CHECK(j["metadata"]["generated_at"] == "t0");
}

TEST_CASE("synthetic command") {
  const auto dir = testutil::fresh_dir("syn");
  SyntheticCommand syn;
  syn.family = Family::BetaPrime;
  syn.params = {2, 3, 1};
  syn.n = 1000;
  syn.seed = 7;
  syn.out_dir = dir / "a";
  const auto v = run_synthetic(syn);
  CHECK(read_sample_csv(dir / "a" / "sample.csv") == v);
  syn.out_dir = dir / "b";
  run_synthetic(syn);
  CHECK(testutil::slurp(dir / "a" / "sample.csv") == testutil::slurp(dir / "b" / "sample.csv"));
  CHECK(testutil::slurp(dir / "a" / "spec.json") == testutil::slurp(dir / "b" / "spec.json"));
  syn.n = 0;
  CHECK_THROWS_AS(run_synthetic(syn), UsageError);
  syn.n = 5;
  syn.params = {2, -3, 1};
  CHECK_THROWS_AS(run_synthetic(syn), DomainError);
}

TEST_CASE("matrices on the fixture") {
  const auto dir = testutil::fresh_dir("matrix");
  std::filesystem::create_directories(dir / "plain");
  std::filesystem::create_directories(dir / "shuffled");
  const auto plain = fixture_manifest(dir / "plain");
  const auto shuffled = fixture_manifest(dir / "shuffled", true);

  MatrixCommand cmd;
  cmd.manifest = plain;
  cmd.pipeline.seed = 3;
  cmd.out_dir = dir / "out1";
  const auto pcc = run_corr(cmd);
  REQUIRE(pcc.labels.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(*pcc.cells[i][i] == 1.0);
    for (std::size_t j = 0; j < 4; ++j) CHECK(*pcc.cells[i][j] == *pcc.cells[j][i]);
  }

  const auto ks = run_ksmatrix(cmd);
  REQUIRE(ks.labels.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(*ks.cells[i][i] == 0.0);
  CHECK_FALSE(ks.cells[0][5].has_value());
  CHECK_FALSE(ks.cells[2][1].has_value());
  CHECK(ks.cells[0][1].has_value());

  cmd.manifest = shuffled;
  cmd.out_dir = dir / "out2";
  run_ksmatrix(cmd);
  run_corr(cmd);
  CHECK(testutil::slurp(dir / "out1" / "ksmatrix.csv") == testutil::slurp(dir / "out2" / "ksmatrix.csv"));
  CHECK(testutil::slurp(dir / "out1" / "pcc.csv") == testutil::slurp(dir / "out2" / "pcc.csv"));

  FitCommand fit;
  fit.manifest = plain;
  fit.out_dir = dir / "fit";
  const auto b = run_fit(fit);
  CHECK(b.metadata.index == "VIX");
  CHECK(b.metadata.n == 42);
  CHECK(b.table.label == "nRV^2/VIX^2");
  CHECK(b.inverse_table.label == "VIX^2/nRV^2");
}

TEST_CASE("command-line exit codes") {
  const auto dir = testutil::fresh_dir("cli");
  { std::ofstream(dir / "empty.txt"); }
  const std::string out = " --out " + (dir / "o").string();
  CHECK(run_cli("fit --manifest " + (dir / "empty.txt").string() + out) == 2);
  CHECK(run_cli("") == 2);
  CHECK(run_cli("fit --mode sideways --data x.csv") == 2);
  CHECK(run_cli("synthetic --family BP --params 2,3,1 -n 0" + out) == 2);
  CHECK(run_cli("synthetic --family BP --params 2,-3,1 -n 5" + out) == 1);
  CHECK(run_cli("fit --data " + (dir / "nope.csv").string() + out) == 1);
  CHECK(run_cli("synthetic --family BP --params 2,3,1 -n 500 --seed 7" + out) == 0);
  CHECK(run_cli("fit --data " + (dir / "o" / "sample.csv").string() + out) == 0);
  CHECK(std::filesystem::exists(dir / "o" / "table.json"));
  CHECK(run_cli("--help") == 0);
}
