#include <doctest.h>

#include <cmath>

#include "wsynth/normal.hpp"
#include "wsynth/rng.hpp"

using namespace wsynth;

TEST_CASE("normal quantile reference values") {
  // Frozen from an independent high-precision implementation.
  CHECK(norm_ppf(0.5) == 0.0);
  CHECK(norm_ppf(0.125) == doctest::Approx(-1.1503493803760079).epsilon(1e-14));
  CHECK(norm_ppf(0.375) == doctest::Approx(-0.31863936396437514).epsilon(1e-14));
  CHECK(norm_ppf(0.875) == doctest::Approx(1.1503493803760079).epsilon(1e-14));
  CHECK(norm_ppf(0.02425) == doctest::Approx(-1.972961051311885).epsilon(1e-14));
  CHECK(norm_ppf(1e-12) == doctest::Approx(-7.034483825301131).epsilon(1e-13));
  CHECK(norm_ppf(1e-300) == doctest::Approx(-37.0470962993612).epsilon(1e-12));
  CHECK(norm_ppf(0.5 / 8760.0) == doctest::Approx(-3.85834966472019).epsilon(1e-13));
  CHECK(std::isinf(norm_ppf(0.0)));
  CHECK(std::isinf(norm_ppf(1.0)));
}

TEST_CASE("cdf and quantile are inverse") {
  for (double p = 0.001; p < 0.9995; p += 0.0007) {
    CHECK(norm_cdf(norm_ppf(p)) == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK(norm_cdf(0.0) == doctest::Approx(0.5));
  CHECK(norm_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
}

TEST_CASE("rng streams are deterministic and split cleanly") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  CHECK(derive_stream_seed(7, 0) == derive_stream_seed(7, 0));
  CHECK(derive_stream_seed(7, 0) != derive_stream_seed(7, 1));
  CHECK(derive_stream_seed(7, 0) != derive_stream_seed(8, 0));

  // Normal draws land in (0,1) quantile space: finite, roughly centred.
  Rng r(1);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double z = r.next_normal();
    REQUIRE(std::isfinite(z));
    sum += z;
  }
  CHECK(std::fabs(sum / 20000.0) < 0.03);
}
