#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace wsynth {

// Half-spectrum real DFT of a fixed length n.
//
// Forward matches the unnormalized analysis convention
//   c_k = sum_{j=1..n} x_j * exp(-2*pi*i*(j-1)*(k-1)/n),
// returned for bins k = 1 .. n/2 + 1 (DC through Nyquist inclusive,
// n/2 + 1 complex values). The inverse rebuilds the upper half by conjugate
// symmetry and applies the 1/n factor, so inverse(forward(x)) == x.
//
// One RealDft instance must not be used from two threads at once; plan
// creation is internally serialized, so constructing one per worker is fine.
class RealDft {
 public:
  explicit RealDft(int n);
  ~RealDft();
  RealDft(const RealDft&) = delete;
  RealDft& operator=(const RealDft&) = delete;

  int size() const { return n_; }
  int spectrum_size() const { return n_ / 2 + 1; }

  std::vector<std::complex<double>> forward(std::span<const double> x) const;
  std::vector<double> inverse(std::span<const std::complex<double>> spectrum) const;

 private:
  struct Impl;
  int n_;
  std::unique_ptr<Impl> impl_;
};

// Convenience single-shot transforms of one model year (8760 samples,
// 4381 coefficients).
std::vector<std::complex<double>> dft_year(std::span<const double> series);
std::vector<double> inverse_dft_year(std::span<const std::complex<double>> spectrum);

}  // namespace wsynth
