#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "wsynth/ecdf.hpp"
#include "wsynth/rng.hpp"
#include "wsynth/stats.hpp"

using namespace wsynth;

TEST_CASE("raw ecdf counting definition") {
  const auto cdf = EmpiricalCdf::fit(std::vector<double>{1, 2, 3, 4});
  CHECK(cdf.raw(2.0) == doctest::Approx(0.5));
  CHECK(cdf.raw(4.0) == doctest::Approx(1.0));
  CHECK(cdf.raw(0.5) == doctest::Approx(0.0));

  const auto ties = EmpiricalCdf::fit(std::vector<double>{5, 5, 5});
  CHECK(ties.raw(5.0) == doctest::Approx(1.0));
  CHECK(ties.raw(4.9) == doctest::Approx(0.0));

  const auto sorted = EmpiricalCdf::fit(std::vector<double>{3, 1, 2});
  for (double x : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5}) {
    CHECK(sorted.raw(x) == EmpiricalCdf::fit(std::vector<double>{1, 2, 3}).raw(x));
  }

  CHECK_THROWS(EmpiricalCdf::fit(std::vector<double>{}));
  CHECK_THROWS(EmpiricalCdf::fit(std::vector<double>{1.0, std::nan("")}));
}

TEST_CASE("gaussianize with plotting positions") {
  const std::vector<double> series{1, 2, 3, 4};
  const auto cdf = EmpiricalCdf::fit(series);
  const auto z = cdf.gaussianize(series);
  CHECK(z[0] == doctest::Approx(-1.1503493803760079).epsilon(1e-14));
  CHECK(z[1] == doctest::Approx(-0.31863936396437514).epsilon(1e-14));
  CHECK(z[2] == doctest::Approx(0.31863936396437514).epsilon(1e-14));
  CHECK(z[3] == doctest::Approx(1.1503493803760079).epsilon(1e-14));

  // Constant series: mid-rank puts everything at the median.
  const std::vector<double> c{7, 7, 7, 7};
  const auto zc = EmpiricalCdf::fit(c).gaussianize(c);
  for (double v : zc) CHECK(v == 0.0);

  // Out-of-support queries clamp instead of blowing up.
  CHECK(std::isfinite(cdf.gaussianize_value(-100.0)));
  CHECK(std::isfinite(cdf.gaussianize_value(100.0)));
}

TEST_CASE("gaussianized standard normal sample passes a KS test") {
  Rng rng(99);
  std::vector<double> x(8760);
  for (auto& v : x) v = 5.0 + 2.0 * rng.next_normal();
  const auto cdf = EmpiricalCdf::fit(x);
  const auto z = cdf.gaussianize(x);
  // 1% critical value for n = 8760.
  CHECK(ks_distance_normal(z) < 0.0174);
}

TEST_CASE("gaussianized lognormal sample passes a KS test") {
  Rng rng(7);
  std::vector<double> x(8760);
  for (auto& v : x) v = std::exp(rng.next_normal());
  const auto z = EmpiricalCdf::fit(x).gaussianize(x);
  CHECK(ks_distance_normal(z) < 0.02);
}

TEST_CASE("degaussianize interpolation and clamping") {
  const auto cdf = EmpiricalCdf::fit(std::vector<double>{1, 2, 3, 4});
  // Phi(0) = 0.5 lands midway between the 2nd and 3rd order statistic.
  CHECK(cdf.degaussianize_value(0.0) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(cdf.degaussianize_value(10.0) == 4.0);
  CHECK(cdf.degaussianize_value(-10.0) == 1.0);
}

TEST_CASE("round trip is exact at observed values of a tie-free series") {
  Rng rng(13);
  std::vector<double> x(500);
  for (auto& v : x) v = 100.0 * rng.next_uniform();
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());

  const auto cdf = EmpiricalCdf::fit(x);
  const auto z = cdf.gaussianize(x);
  const auto back = cdf.degaussianize(z);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(back[i] == x[i]);  // bitwise
  }
}

TEST_CASE("monotonicity and rank preservation") {
  Rng rng(31);
  std::vector<double> sample(300);
  for (auto& v : sample) v = 10.0 * rng.next_normal();
  const auto cdf = EmpiricalCdf::fit(sample);

  std::vector<double> q(1000);
  for (auto& v : q) v = 40.0 * rng.next_uniform() - 20.0;
  std::sort(q.begin(), q.end());
  const auto gz = cdf.gaussianize(q);
  CHECK(std::is_sorted(gz.begin(), gz.end()));
  const auto dg = cdf.degaussianize(gz);
  CHECK(std::is_sorted(dg.begin(), dg.end()));

  // The permutation sorting the input sorts the gaussianized output.
  std::vector<double> raw(200);
  for (auto& v : raw) v = rng.next_normal();
  const auto z = cdf.gaussianize(raw);
  std::vector<std::size_t> perm_raw(raw.size()), perm_z(raw.size());
  std::iota(perm_raw.begin(), perm_raw.end(), 0u);
  perm_z = perm_raw;
  std::stable_sort(perm_raw.begin(), perm_raw.end(),
                   [&](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });
  std::stable_sort(perm_z.begin(), perm_z.end(),
                   [&](std::size_t a, std::size_t b) { return z[a] < z[b]; });
  CHECK(perm_raw == perm_z);
}
