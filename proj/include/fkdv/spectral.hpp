#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fkdv::spectral {

using cplx = std::complex<double>;

// Real-to-half-complex transform of fixed length backed by FFTW.
// Convention: forward() returns hat_k = (1/n) sum_j x_j e^{-2 pi i j k / n},
// k = 0..n/2, so hat_0 is the grid mean; inverse() is the exact inverse.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;
  RealFft(RealFft&& other) noexcept;
  RealFft& operator=(RealFft&& other) noexcept;

  std::size_t size() const { return n_; }
  std::size_t modes() const { return n_ / 2 + 1; }

  void forward(std::span<const double> x, std::span<cplx> hat);
  void inverse(std::span<const cplx> hat, std::span<double> x);

 private:
  void release() noexcept;

  std::size_t n_ = 0;
  double* real_ = nullptr;
  void* complex_ = nullptr;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

// kappa_k = 2 pi k / length for k = 0..n/2.
std::vector<double> wavenumbers(std::size_t n, double length);

// d^order/dx^order of periodic samples over one period of the given length.
// The Nyquist mode is dropped for every order.
std::vector<double> derivative(std::span<const double> samples, double length,
                               int order);

}  // namespace fkdv::spectral
