#pragma once

// Data-parallel inner loops. Each kernel exists twice with the same
// signature: `omp::` is what the library calls, `serial::` is the reference
// kept for tests and for the benchmark. Reductions in `omp::` accumulate one
// partial per thread under a static schedule and combine them in thread
// order, so a fixed thread count gives bit-identical results run to run.

#include <complex>
#include <cstddef>
#include <span>

namespace fkdv::kernels {

using cplx = std::complex<double>;

// Most negative 2x2 Toeplitz minor over a symmetric window, normalized by
// the larger of its two products.
struct MinorScan {
  double min_normalized = 0.0;
  int p = 0;   // a(p) a(p+dx-dy) - a(p-dy) a(p+dx)
  int dx = 0;
  int dy = 0;
  long long count = 0;
};

// C(y) = Re sum_k w_k f_k conj(g_k e^{i kappa y}) and its first two y-derivatives.
struct ShiftMoments {
  double value = 0.0;
  double slope = 0.0;
  double curvature = 0.0;
};

namespace serial {

void square(std::span<double> values);

// moments[n] = (1/N) sum_j samples[j] cos_table[(n j) mod N]
template <class Real>
void cosine_moments(std::span<const Real> samples,
                    std::span<const Real> cos_table, std::span<Real> moments);

// window holds a(-M..M) at offsets 0..2M
MinorScan toeplitz_minor_scan(std::span<const double> window);

// sum_k weight_k |hat_k|^2
double weighted_energy(std::span<const cplx> hat,
                       std::span<const double> weight);

// sum_k weight_k |f_k - g_k e^{i kappa_k y}|^2
double weighted_distance_sq(std::span<const cplx> f, std::span<const cplx> g,
                            std::span<const double> weight,
                            std::span<const double> kappa, double y);

// cross_k = weight_k f_k conj(g_k), weights already applied
ShiftMoments shift_moments(std::span<const cplx> cross,
                           std::span<const double> kappa, double y);

// out = d (.) x + s y
void diag_fma(std::span<const cplx> d, std::span<const cplx> x, double s,
              std::span<const cplx> y, std::span<cplx> out);

// u <- e2 u + (e2 a + 2 e (b + c) + d) / 6
void ifrk4_combine(std::span<const cplx> e, std::span<const cplx> e2,
                   std::span<cplx> u, std::span<const cplx> a,
                   std::span<const cplx> b, std::span<const cplx> c,
                   std::span<const cplx> d);

// Pointwise first- and second-law expressions from u and its derivatives,
// plus the sum of absolute values of their terms (the local cancellation scale).
void conservation_laws(double speed, double gamma, double alpha, double beta,
                       std::span<const double> u, std::span<const double> u1,
                       std::span<const double> u2, std::span<const double> u3,
                       std::span<const double> u4, std::span<double> first,
                       std::span<double> second, std::span<double> first_scale,
                       std::span<double> second_scale);

}  // namespace serial

namespace omp {

void square(std::span<double> values);

// moments[n] = (1/N) sum_j samples[j] cos_table[(n j) mod N]
template <class Real>
void cosine_moments(std::span<const Real> samples,
                    std::span<const Real> cos_table, std::span<Real> moments);

// window holds a(-M..M) at offsets 0..2M
MinorScan toeplitz_minor_scan(std::span<const double> window);

// sum_k weight_k |hat_k|^2
double weighted_energy(std::span<const cplx> hat,
                       std::span<const double> weight);

// sum_k weight_k |f_k - g_k e^{i kappa_k y}|^2
double weighted_distance_sq(std::span<const cplx> f, std::span<const cplx> g,
                            std::span<const double> weight,
                            std::span<const double> kappa, double y);

// cross_k = weight_k f_k conj(g_k), weights already applied
ShiftMoments shift_moments(std::span<const cplx> cross,
                           std::span<const double> kappa, double y);

// out = d (.) x + s y
void diag_fma(std::span<const cplx> d, std::span<const cplx> x, double s,
              std::span<const cplx> y, std::span<cplx> out);

// u <- e2 u + (e2 a + 2 e (b + c) + d) / 6
void ifrk4_combine(std::span<const cplx> e, std::span<const cplx> e2,
                   std::span<cplx> u, std::span<const cplx> a,
                   std::span<const cplx> b, std::span<const cplx> c,
                   std::span<const cplx> d);

// Pointwise first- and second-law expressions from u and its derivatives,
// plus the sum of absolute values of their terms (the local cancellation scale).
void conservation_laws(double speed, double gamma, double alpha, double beta,
                       std::span<const double> u, std::span<const double> u1,
                       std::span<const double> u2, std::span<const double> u3,
                       std::span<const double> u4, std::span<double> first,
                       std::span<double> second, std::span<double> first_scale,
                       std::span<double> second_scale);

}  // namespace omp

}  // namespace fkdv::kernels
