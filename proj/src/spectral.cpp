#include "fkdv/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace fkdv::spectral {
namespace {

// The FFTW planner is not re-entrant; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("RealFft: length must be even and >= 2");
  std::lock_guard lock(planner_mutex());
  real_ = fftw_alloc_real(n_);
  auto* c = fftw_alloc_complex(modes());
  complex_ = c;
  forward_plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n_), real_, c, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r_1d(static_cast<int>(n_), c, real_, FFTW_ESTIMATE);
}

RealFft::~RealFft() { release(); }

RealFft::RealFft(RealFft&& other) noexcept
    : n_(std::exchange(other.n_, 0)),
      real_(std::exchange(other.real_, nullptr)),
      complex_(std::exchange(other.complex_, nullptr)),
      forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      inverse_plan_(std::exchange(other.inverse_plan_, nullptr)) {}

RealFft& RealFft::operator=(RealFft&& other) noexcept {
  if (this != &other) {
    release();
    n_ = std::exchange(other.n_, 0);
    real_ = std::exchange(other.real_, nullptr);
    complex_ = std::exchange(other.complex_, nullptr);
    forward_plan_ = std::exchange(other.forward_plan_, nullptr);
    inverse_plan_ = std::exchange(other.inverse_plan_, nullptr);
  }
  return *this;
}

void RealFft::release() noexcept {
  if (!real_ && !complex_) return;
  std::lock_guard lock(planner_mutex());
  if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (inverse_plan_) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  fftw_free(real_);
  fftw_free(complex_);
  real_ = nullptr;
  complex_ = nullptr;
  forward_plan_ = inverse_plan_ = nullptr;
}

void RealFft::forward(std::span<const double> x, std::span<cplx> hat) {
  std::copy(x.begin(), x.end(), real_);
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  const auto* c = static_cast<const fftw_complex*>(complex_);
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t k = 0; k < modes(); ++k) hat[k] = cplx(c[k][0], c[k][1]) * scale;
}

void RealFft::inverse(std::span<const cplx> hat, std::span<double> x) {
  auto* c = static_cast<fftw_complex*>(complex_);
  for (std::size_t k = 0; k < modes(); ++k) {
    c[k][0] = hat[k].real();
    c[k][1] = hat[k].imag();
  }
  fftw_execute(static_cast<fftw_plan>(inverse_plan_));
  std::copy(real_, real_ + n_, x.begin());
}

std::vector<double> wavenumbers(std::size_t n, double length) {
  std::vector<double> kappa(n / 2 + 1);
  for (std::size_t k = 0; k < kappa.size(); ++k) {
    kappa[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / length;
  }
  return kappa;
}

std::vector<double> derivative(std::span<const double> samples, double length,
                               int order) {
  const std::size_t n = samples.size();
  RealFft fft(n);
  std::vector<cplx> hat(fft.modes());
  fft.forward(samples, hat);
  const auto kappa = wavenumbers(n, length);
  for (std::size_t k = 0; k < hat.size(); ++k) {
    cplx factor(1.0, 0.0);
    for (int i = 0; i < order; ++i) factor *= cplx(0.0, kappa[k]);
    hat[k] *= factor;
  }
  hat.back() = 0.0;
  std::vector<double> out(n);
  fft.inverse(hat, out);
  return out;
}

}  // namespace fkdv::spectral
