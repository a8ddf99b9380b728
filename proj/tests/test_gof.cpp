#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "ratiofit/distributions.hpp"
#include "ratiofit/error.hpp"
#include "ratiofit/gof.hpp"
#include "test_util.hpp"

using namespace ratiofit;
using Catch::Approx;

namespace {

// sup over all pooled points of |F_a - F_b|, each ECDF counted directly
double brute_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
  auto ecdf = [](const std::vector<double>& s, double t) {
    return static_cast<double>(std::count_if(s.begin(), s.end(), [&](double v) { return v <= t; })) / s.size();
  };
  double d = 0.0;
  for (const auto* s : {&a, &b}) {
    for (double t : *s) d = std::max(d, std::abs(ecdf(a, t) - ecdf(b, t)));
  }
  return d;
}

double brute_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= n, my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

double brute_one_sample(const std::vector<double>& xs, const std::function<double(double)>& F) {
  double d = 0.0;
  const double n = xs.size();
  for (double x : xs) {
    const auto below = std::count_if(xs.begin(), xs.end(), [&](double v) { return v < x; });
    const auto at = std::count_if(xs.begin(), xs.end(), [&](double v) { return v <= x; });
    d = std::max({d, std::abs(at / n - F(x)), std::abs(F(x) - below / n)});
  }
  return d;
}

}  // namespace

TEST_CASE("small worked values") {
  CHECK(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 4}) == Approx(0.9819805060619657).epsilon(1e-14));
  CHECK(ks_two_sample(std::vector<double>{1, 2}, std::vector<double>{1.5}).d == 0.5);
  CHECK(ks_two_sample(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}).d == 0.0);
  CHECK(ks_one_sample(std::vector<double>{0.5}, [](double x) { return x; }).d == 0.5);
}

TEST_CASE("two-sample KS and Pearson against brute force") {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> len(2, 50);
    const int n1 = len(gen), n2 = len(gen);
    // coarse values so ties occur
    std::uniform_int_distribution<int> val(0, 30);
    std::vector<double> a(n1), b(n2);
    for (auto& v : a) v = val(gen) * 0.1;
    for (auto& v : b) v = val(gen) * 0.1 + 0.05 * (trial % 2);
    REQUIRE(std::abs(ks_two_sample(a, b).d - brute_two_sample(a, b)) <= 1e-12);
    REQUIRE(ks_two_sample(a, b).d == ks_two_sample(b, a).d);

    std::normal_distribution<double> nd;
    std::vector<double> x(n1), y(n1);
    for (int i = 0; i < n1; ++i) {
      x[i] = nd(gen);
      y[i] = 0.5 * x[i] + nd(gen);
    }
    REQUIRE(std::abs(pearson(x, y) - brute_pearson(x, y)) <= 1e-12);
  }
}

TEST_CASE("one-sample KS against brute force, with ties") {
  std::mt19937_64 gen(12);
  const DistributionSpec spec{GammaParams{2.0, 1.0}};
  auto F = [&](double x) { return cdf(spec, x); };
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs(40);
    std::uniform_int_distribution<int> v(1, 25);
    for (auto& x : xs) x = v(gen) * 0.2;
    REQUIRE(std::abs(ks_one_sample(xs, F).d - brute_one_sample(xs, F)) <= 1e-12);
    REQUIRE(ks_one_sample(xs, spec).d == ks_one_sample(xs, F).d);
  }
}

TEST_CASE("frozen one-sample KS on the BP fixture") {
  std::vector<double> xs;
  for (const auto& r : testutil::read_numeric_csv(testutil::data_path("bp_table1_sample.csv"))) xs.push_back(r[0]);
  const DistributionSpec spec{BetaPrimeParams{27.2279, 3.8055, 0.1014}};
  CHECK(std::abs(ks_one_sample(xs, spec).d - 0.035004810238203706784) < 1e-10);
}

TEST_CASE("invariances") {
  const DistributionSpec spec{BetaPrimeParams{5.8771, 3.4893, 0.5556}};
  const auto xs = sample(spec, 3000, 4);
  std::vector<double> inv(xs.size());
  std::transform(xs.begin(), xs.end(), inv.begin(), [](double v) { return 1.0 / v; });
  const DistributionSpec ispec{inverted(std::get<BetaPrimeParams>(spec.params))};
  CHECK(std::abs(ks_one_sample(xs, spec).d - ks_one_sample(inv, ispec).d) <= 1e-12);

  std::vector<double> y(xs.size()), ya(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) y[i] = std::sin(static_cast<double>(i)) + xs[i];
  std::transform(y.begin(), y.end(), ya.begin(), [](double v) { return 3.5 * v + 100.0; });
  CHECK(std::abs(pearson(xs, y) - pearson(xs, ya)) <= 1e-12);

  const double r = pearson(xs, y);
  CHECK(r >= -1.0);
  CHECK(r <= 1.0);
  CHECK(pearson(xs, xs) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("pearson errors") {
  CHECK_THROWS_AS(pearson(std::vector<double>{1, 2}, std::vector<double>{1}), DataError);
  CHECK_THROWS_AS(pearson(std::vector<double>{1}, std::vector<double>{1}), DataError);
  CHECK_THROWS_AS(pearson(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), DataError);
  CHECK_THROWS(ks_two_sample(std::vector<double>{}, std::vector<double>{1}));
}
