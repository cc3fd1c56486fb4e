#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "support/oracles.hpp"
#include "wsynth/calendar.hpp"
#include "wsynth/dft.hpp"
#include "wsynth/rng.hpp"

using namespace wsynth;

TEST_CASE("constant series is DC only") {
  std::vector<double> x(kHoursPerYear, 3.5);
  const auto c = dft_year(x);
  REQUIRE(static_cast<int>(c.size()) == kHoursPerYear / 2 + 1);
  CHECK(c[0].real() == doctest::Approx(8760.0 * 3.5).epsilon(1e-12));
  CHECK(std::fabs(c[0].imag()) < 1e-9);
  double worst = 0.0;
  for (std::size_t k = 1; k < c.size(); ++k) worst = std::max(worst, std::abs(c[k]));
  CHECK(worst < 1e-6 * std::abs(c[0]));
}

TEST_CASE("single tone lands in one bin") {
  std::vector<double> x(kHoursPerYear);
  for (int j = 0; j < kHoursPerYear; ++j) {
    x[static_cast<std::size_t>(j)] = std::cos(2.0 * M_PI * j / kHoursPerYear);
  }
  const auto c = dft_year(x);
  CHECK(std::abs(c[1]) == doctest::Approx(8760.0 / 2.0).epsilon(1e-9));
  double rest = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k != 1) rest = std::max(rest, std::abs(c[k]));
  }
  CHECK(rest < 1e-6 * std::abs(c[1]));
}

TEST_CASE("matches the direct summation oracle") {
  Rng rng(55);
  // Several odd-ball lengths, then one full-size year.
  for (int n : {16, 120, 730}) {
    RealDft dft(n);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = rng.next_normal();
    const auto fast = dft.forward(x);
    const auto slow = oracles::naive_dft_half(x);
    REQUIRE(fast.size() == slow.size());
    double scale = 0.0;
    for (const auto& v : slow) scale = std::max(scale, std::abs(v));
    for (std::size_t k = 0; k < fast.size(); ++k) {
      CHECK(std::abs(fast[k] - slow[k]) <= 1e-9 * scale);
    }
  }

  std::vector<double> x(kHoursPerYear);
  for (auto& v : x) v = rng.next_normal();
  const auto fast = dft_year(x);
  const auto slow = oracles::naive_dft_half(x);
  double scale = 0.0;
  for (const auto& v : slow) scale = std::max(scale, std::abs(v));
  for (std::size_t k = 0; k < fast.size(); ++k) {
    CHECK(std::abs(fast[k] - slow[k]) <= 1e-9 * scale);
  }
}

TEST_CASE("inverse reconstructs the signal") {
  Rng rng(77);
  std::vector<double> x(kHoursPerYear);
  for (auto& v : x) v = 10.0 * rng.next_normal();
  const auto back = inverse_dft_year(dft_year(x));
  double worst = 0.0;
  for (int t = 0; t < kHoursPerYear; ++t) {
    worst = std::max(worst, std::fabs(back[static_cast<std::size_t>(t)] - x[static_cast<std::size_t>(t)]));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("inverse of a lone coefficient is a cosine") {
  std::vector<std::complex<double>> half(static_cast<std::size_t>(kHoursPerYear / 2 + 1), 0.0);
  half[1] = 4380.0;
  const auto x = inverse_dft_year(half);
  double worst = 0.0;
  for (int t = 0; t < kHoursPerYear; ++t) {
    worst = std::max(worst, std::fabs(x[static_cast<std::size_t>(t)] -
                                      std::cos(2.0 * M_PI * t / kHoursPerYear)));
  }
  CHECK(worst < 1e-9);

  std::vector<std::complex<double>> zeros(half.size(), 0.0);
  for (double v : inverse_dft_year(zeros)) CHECK(v == 0.0);
}

TEST_CASE("inverse agrees with the explicit conjugate-symmetric sum") {
  Rng rng(91);
  const int n = 240;
  RealDft dft(n);
  std::vector<std::complex<double>> half(static_cast<std::size_t>(n / 2 + 1));
  for (auto& v : half) v = {rng.next_normal(), rng.next_normal()};
  half[0] = half[0].real();           // DC purely real
  half.back() = half.back().real();   // Nyquist purely real

  const auto fast = dft.inverse(half);
  const auto slow = oracles::naive_inverse_full(half, n);
  for (int t = 0; t < n; ++t) {
    CHECK(std::fabs(slow[static_cast<std::size_t>(t)].imag()) < 1e-9);
    CHECK(fast[static_cast<std::size_t>(t)] ==
          doctest::Approx(slow[static_cast<std::size_t>(t)].real()).epsilon(1e-9));
  }
}
