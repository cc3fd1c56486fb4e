#include <doctest.h>

#include <cmath>
#include <vector>

#include "support/oracles.hpp"
#include "wsynth/rng.hpp"
#include "wsynth/stats.hpp"

using namespace wsynth;

TEST_CASE("pairwise covariance worked examples") {
  const std::vector<double> a{1.0, 2.0, 3.0};
  CHECK(pairwise_covariance(a, a) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  const std::vector<double> ones{1.0, 1.0, 1.0};
  const std::vector<double> b{4.0, -2.0, 9.0};
  CHECK(pairwise_covariance(ones, b) == 0.0);
}

TEST_CASE("pairwise covariance equals divisor-n covariance") {
  Rng rng(11);
  for (int n = 2; n <= 50; ++n) {
    std::vector<double> a(static_cast<std::size_t>(n)), b(a);
    for (auto& v : a) v = 10.0 * rng.next_normal();
    for (auto& v : b) v = 3.0 + 2.0 * rng.next_normal();
    const double pw = pairwise_covariance(a, b);
    const double tp = oracles::covariance_two_pass(a, b);
    const double scale = std::max({1e-30, std::fabs(pw), std::fabs(tp)});
    CHECK(std::fabs(pw - tp) / scale < 1e-12);
  }
}

TEST_CASE("welford streaming stats") {
  OnlineStats s;
  s.update(2.0);
  CHECK(s.n == 1);
  CHECK(s.mean == 2.0);

  OnlineStats t;
  for (double v : {1.0, 2.0, 3.0}) t.update(v);
  CHECK(t.mean == doctest::Approx(2.0));
  CHECK(t.variance() == doctest::Approx(1.0));

  // Large stream against the independent two-pass route.
  Rng rng(5);
  std::vector<double> xs(1000000);
  OnlineStats big;
  for (auto& v : xs) {
    v = 100.0 + 5.0 * rng.next_normal();
    big.update(v);
  }
  double m = 0.0;
  for (double v : xs) m += v;
  m /= static_cast<double>(xs.size());
  double m2 = 0.0;
  for (double v : xs) m2 += (v - m) * (v - m);
  const double var = m2 / static_cast<double>(xs.size() - 1);
  CHECK(std::fabs(big.mean - m) / std::fabs(m) < 1e-9);
  CHECK(std::fabs(big.variance() - var) / var < 1e-9);
}

TEST_CASE("autocorrelation basics") {
  std::vector<double> alt(1000);
  for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = (i % 2 == 0) ? 1.0 : -1.0;
  const auto acf = autocorrelation(alt, 2);
  CHECK(acf[0] == doctest::Approx(1.0));
  CHECK(acf[1] == doctest::Approx(-1.0).epsilon(1e-3));

  Rng rng(3);
  std::vector<double> noise(10000);
  for (auto& v : noise) v = rng.next_normal();
  const auto nacf = autocorrelation(noise, 50);
  const double bound = 3.0 / std::sqrt(10000.0);
  int ok = 0;
  for (int lag = 1; lag <= 50; ++lag) {
    if (std::fabs(nacf[static_cast<std::size_t>(lag)]) < bound) ++ok;
  }
  CHECK(ok >= 48);  // >= 95% of lags inside the white-noise band
}

TEST_CASE("circular mean") {
  std::vector<double> a{0.1, -0.1, 0.05, -0.05};
  CHECK(circular_mean(a) == doctest::Approx(0.0).epsilon(1e-12));
  // Angles straddling the wrap-around.
  std::vector<double> b{M_PI - 0.1, -M_PI + 0.1};
  CHECK(std::fabs(std::fabs(circular_mean(b)) - M_PI) < 1e-9);
}

TEST_CASE("ks distance") {
  Rng rng(17);
  std::vector<double> a(4000), b(4000);
  for (auto& v : a) v = rng.next_normal();
  for (auto& v : b) v = rng.next_normal();
  CHECK(ks_distance(a, b) < 0.05);
  CHECK(ks_distance_normal(a) < 0.03);

  for (auto& v : b) v += 2.0;
  CHECK(ks_distance(a, b) > 0.5);
}

TEST_CASE("anderson-darling normality") {
  Rng rng(23);
  int reject_normal = 0, reject_uniform = 0;
  const int reps = 400, n = 50;
  std::vector<double> x(n);
  for (int r = 0; r < reps; ++r) {
    for (auto& v : x) v = rng.next_normal();
    if (anderson_darling_normality(x).p_value < 0.05) ++reject_normal;
  }
  for (int r = 0; r < reps; ++r) {
    for (auto& v : x) v = rng.next_uniform();
    if (anderson_darling_normality(x).p_value < 0.05) ++reject_uniform;
  }
  // Size near the nominal level for normal data, strong power on uniform.
  CHECK(reject_normal >= reps / 100);
  CHECK(reject_normal <= reps / 10);
  CHECK(reject_uniform > reps / 2);
}
