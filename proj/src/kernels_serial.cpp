#include <algorithm>
#include <cmath>
#include <complex>

#include "fkdv/kernels.hpp"
#include "fkdv/precision.hpp"

namespace fkdv::kernels::serial {

void square(std::span<double> values) {
  for (double& v : values) v *= v;
}

template <class Real>
void cosine_moments(std::span<const Real> samples,
                    std::span<const Real> cos_table, std::span<Real> moments) {
  const std::size_t n_samples = samples.size();
  for (std::size_t n = 0; n < moments.size(); ++n) {
    Real acc = 0;
    std::size_t phase = 0;
    const std::size_t step = n % n_samples;
    for (std::size_t j = 0; j < n_samples; ++j) {
      acc += samples[j] * cos_table[phase];
      phase += step;
      if (phase >= n_samples) phase -= n_samples;
    }
    moments[n] = acc / Real(n_samples);
  }
}

template void cosine_moments<double>(std::span<const double>,
                                     std::span<const double>,
                                     std::span<double>);
template void cosine_moments<quad>(std::span<const quad>,
                                   std::span<const quad>, std::span<quad>);

MinorScan toeplitz_minor_scan(std::span<const double> window) {
  const int m = static_cast<int>(window.size() / 2);
  auto a = [&](int i) { return window[static_cast<std::size_t>(i + m)]; };
  MinorScan best;
  best.min_normalized = 0.0;
  bool first = true;
  for (int p = -m; p <= m; ++p) {
    for (int dy = 1; p - dy >= -m; ++dy) {
      for (int dx = 1; p + dx <= m; ++dx) {
        const int q = p + dx - dy;
        if (q < -m || q > m) continue;
        const double lhs = a(p) * a(q);
        const double rhs = a(p - dy) * a(p + dx);
        const double scale = std::max(std::abs(lhs), std::abs(rhs));
        const double value = scale > 0.0 ? (lhs - rhs) / scale : 0.0;
        ++best.count;
        if (first || value < best.min_normalized) {
          best.min_normalized = value;
          best.p = p;
          best.dx = dx;
          best.dy = dy;
          first = false;
        }
      }
    }
  }
  return best;
}

double weighted_energy(std::span<const cplx> hat,
                       std::span<const double> weight) {
  double acc = 0.0;
  for (std::size_t k = 0; k < hat.size(); ++k) acc += weight[k] * std::norm(hat[k]);
  return acc;
}

double weighted_distance_sq(std::span<const cplx> f, std::span<const cplx> g,
                            std::span<const double> weight,
                            std::span<const double> kappa, double y) {
  double acc = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const cplx shifted = g[k] * std::polar(1.0, kappa[k] * y);
    acc += weight[k] * std::norm(f[k] - shifted);
  }
  return acc;
}

ShiftMoments shift_moments(std::span<const cplx> cross,
                           std::span<const double> kappa, double y) {
  ShiftMoments m;
  for (std::size_t k = 0; k < cross.size(); ++k) {
    const cplx t = cross[k] * std::polar(1.0, -kappa[k] * y);
    m.value += t.real();
    m.slope += kappa[k] * t.imag();
    m.curvature -= kappa[k] * kappa[k] * t.real();
  }
  return m;
}

void diag_fma(std::span<const cplx> d, std::span<const cplx> x, double s,
              std::span<const cplx> y, std::span<cplx> out) {
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = d[k] * x[k] + s * y[k];
}

void ifrk4_combine(std::span<const cplx> e, std::span<const cplx> e2,
                   std::span<cplx> u, std::span<const cplx> a,
                   std::span<const cplx> b, std::span<const cplx> c,
                   std::span<const cplx> d) {
  for (std::size_t k = 0; k < u.size(); ++k) {
    u[k] = e2[k] * u[k] +
           (e2[k] * a[k] + 2.0 * e[k] * (b[k] + c[k]) + d[k]) / 6.0;
  }
}

void conservation_laws(double speed, double gamma, double alpha, double beta,
                       std::span<const double> u, std::span<const double> u1,
                       std::span<const double> u2, std::span<const double> u3,
                       std::span<const double> u4, std::span<double> first,
                       std::span<double> second, std::span<double> first_scale,
                       std::span<double> second_scale) {
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double v = u[j];
    const double t1[] = {-speed * v, 0.5 * gamma * v * v, alpha * u2[j],
                         -beta * u4[j]};
    const double t2[] = {-0.5 * speed * v * v,
                         gamma * v * v * v / 3.0,
                         alpha * v * u2[j],
                         -0.5 * alpha * u1[j] * u1[j],
                         -beta * v * u4[j],
                         beta * u1[j] * u3[j],
                         -0.5 * beta * u2[j] * u2[j]};
    double s1 = 0.0, a1 = 0.0, s2 = 0.0, a2 = 0.0;
    for (double t : t1) {
      s1 += t;
      a1 += std::abs(t);
    }
    for (double t : t2) {
      s2 += t;
      a2 += std::abs(t);
    }
    first[j] = s1;
    first_scale[j] = a1;
    second[j] = s2;
    second_scale[j] = a2;
  }
}

}  // namespace fkdv::kernels::serial
