#pragma once

namespace wsynth {

// Standard normal quantile function (Wichura's AS 241, double precision).
// Accurate to ~1e-15 relative over p in (0,1); returns +/-inf at the ends.
double norm_ppf(double p);

// Standard normal CDF via erfc; full double range.
double norm_cdf(double x);

}  // namespace wsynth
