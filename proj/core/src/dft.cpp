#include "wsynth/dft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

#include "wsynth/calendar.hpp"

namespace wsynth {

namespace {
// FFTW's planner is not thread safe; execution of existing plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct RealDft::Impl {
  double* real_buf = nullptr;
  fftw_complex* cplx_buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
  mutable std::mutex exec_mutex;
};

RealDft::RealDft(int n) : n_(n), impl_(std::make_unique<Impl>()) {
  if (n <= 1) throw std::invalid_argument("RealDft: length must be > 1");
  std::lock_guard<std::mutex> lock(planner_mutex());
  impl_->real_buf = fftw_alloc_real(static_cast<std::size_t>(n));
  impl_->cplx_buf = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
  impl_->fwd = fftw_plan_dft_r2c_1d(n, impl_->real_buf, impl_->cplx_buf, FFTW_ESTIMATE);
  impl_->inv = fftw_plan_dft_c2r_1d(n, impl_->cplx_buf, impl_->real_buf, FFTW_ESTIMATE);
  if (!impl_->fwd || !impl_->inv) throw std::runtime_error("RealDft: fftw plan failed");
}

RealDft::~RealDft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (impl_->fwd) fftw_destroy_plan(impl_->fwd);
  if (impl_->inv) fftw_destroy_plan(impl_->inv);
  if (impl_->real_buf) fftw_free(impl_->real_buf);
  if (impl_->cplx_buf) fftw_free(impl_->cplx_buf);
}

std::vector<std::complex<double>> RealDft::forward(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) {
    throw std::invalid_argument("RealDft::forward: wrong input length");
  }
  std::lock_guard<std::mutex> lock(impl_->exec_mutex);
  for (int i = 0; i < n_; ++i) impl_->real_buf[i] = x[static_cast<std::size_t>(i)];
  fftw_execute(impl_->fwd);
  const int m = spectrum_size();
  std::vector<std::complex<double>> out(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    out[static_cast<std::size_t>(k)] =
        std::complex<double>(impl_->cplx_buf[k][0], impl_->cplx_buf[k][1]);
  }
  return out;
}

std::vector<double> RealDft::inverse(std::span<const std::complex<double>> spectrum) const {
  const int m = spectrum_size();
  if (static_cast<int>(spectrum.size()) != m) {
    throw std::invalid_argument("RealDft::inverse: wrong spectrum length");
  }
  std::lock_guard<std::mutex> lock(impl_->exec_mutex);
  for (int k = 0; k < m; ++k) {
    impl_->cplx_buf[k][0] = spectrum[static_cast<std::size_t>(k)].real();
    impl_->cplx_buf[k][1] = spectrum[static_cast<std::size_t>(k)].imag();
  }
  fftw_execute(impl_->inv);
  std::vector<double> out(static_cast<std::size_t>(n_));
  const double scale = 1.0 / static_cast<double>(n_);
  for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = impl_->real_buf[i] * scale;
  return out;
}

namespace {
const RealDft& year_dft() {
  static RealDft dft(kHoursPerYear);
  return dft;
}
}  // namespace

std::vector<std::complex<double>> dft_year(std::span<const double> series) {
  return year_dft().forward(series);
}

std::vector<double> inverse_dft_year(std::span<const std::complex<double>> spectrum) {
  return year_dft().inverse(spectrum);
}

}  // namespace wsynth
