#include <omp.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "fkdv/kernels.hpp"
#include "fkdv/precision.hpp"

namespace fkdv::kernels::omp {
namespace {

using Index = long long;

// One partial per thread under schedule(static), combined in thread order.
template <class T, class Term>
T ordered_sum(Index n, Term term) {
  const int threads = omp_get_max_threads();
  std::vector<T> partial(static_cast<std::size_t>(threads), T(0));
#pragma omp parallel num_threads(threads)
  {
    T acc(0);
#pragma omp for schedule(static)
    for (Index i = 0; i < n; ++i) acc += term(i);
    partial[static_cast<std::size_t>(omp_get_thread_num())] = acc;
  }
  T total(0);
  for (const T& p : partial) total += p;
  return total;
}

}  // namespace

void square(std::span<double> values) {
  const Index n = static_cast<Index>(values.size());
  double* v = values.data();
#pragma omp parallel for simd schedule(static)
  for (Index i = 0; i < n; ++i) v[i] *= v[i];
}

template <class Real>
void cosine_moments(std::span<const Real> samples,
                    std::span<const Real> cos_table, std::span<Real> moments) {
  const Index n_samples = static_cast<Index>(samples.size());
  for (std::size_t n = 0; n < moments.size(); ++n) {
    const Index step = static_cast<Index>(n) % n_samples;
    const Real acc = ordered_sum<Real>(n_samples, [&](Index j) {
      return samples[static_cast<std::size_t>(j)] *
             cos_table[static_cast<std::size_t>((step * j) % n_samples)];
    });
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
  const int rows = 2 * m + 1;
  std::vector<MinorScan> per_row(static_cast<std::size_t>(rows));
#pragma omp parallel for schedule(dynamic)
  for (int row = 0; row < rows; ++row) {
    const int p = row - m;
    MinorScan best;
    bool first = true;
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
    per_row[static_cast<std::size_t>(row)] = best;
  }
  // Same tie-breaking as the serial scan: first minimum in (p, dy, dx) order.
  MinorScan best;
  bool first = true;
  for (const MinorScan& r : per_row) {
    if (r.count == 0) continue;
    best.count += r.count;
    if (first || r.min_normalized < best.min_normalized) {
      best.min_normalized = r.min_normalized;
      best.p = r.p;
      best.dx = r.dx;
      best.dy = r.dy;
      first = false;
    }
  }
  return best;
}

double weighted_energy(std::span<const cplx> hat,
                       std::span<const double> weight) {
  return ordered_sum<double>(static_cast<Index>(hat.size()), [&](Index k) {
    const auto i = static_cast<std::size_t>(k);
    return weight[i] * std::norm(hat[i]);
  });
}

double weighted_distance_sq(std::span<const cplx> f, std::span<const cplx> g,
                            std::span<const double> weight,
                            std::span<const double> kappa, double y) {
  return ordered_sum<double>(static_cast<Index>(f.size()), [&](Index k) {
    const auto i = static_cast<std::size_t>(k);
    const cplx shifted = g[i] * std::polar(1.0, kappa[i] * y);
    return weight[i] * std::norm(f[i] - shifted);
  });
}

ShiftMoments shift_moments(std::span<const cplx> cross,
                           std::span<const double> kappa, double y) {
  struct Triple {
    double v = 0.0, s = 0.0, c = 0.0;
    explicit Triple(int) {}
    Triple(double v_, double s_, double c_) : v(v_), s(s_), c(c_) {}
    Triple& operator+=(const Triple& o) {
      v += o.v;
      s += o.s;
      c += o.c;
      return *this;
    }
  };
  const Triple t = ordered_sum<Triple>(static_cast<Index>(cross.size()), [&](Index k) {
    const auto i = static_cast<std::size_t>(k);
    const cplx z = cross[i] * std::polar(1.0, -kappa[i] * y);
    return Triple(z.real(), kappa[i] * z.imag(), -kappa[i] * kappa[i] * z.real());
  });
  return {t.v, t.s, t.c};
}

void diag_fma(std::span<const cplx> d, std::span<const cplx> x, double s,
              std::span<const cplx> y, std::span<cplx> out) {
  const Index n = static_cast<Index>(out.size());
#pragma omp parallel for schedule(static)
  for (Index k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    out[i] = d[i] * x[i] + s * y[i];
  }
}

void ifrk4_combine(std::span<const cplx> e, std::span<const cplx> e2,
                   std::span<cplx> u, std::span<const cplx> a,
                   std::span<const cplx> b, std::span<const cplx> c,
                   std::span<const cplx> d) {
  const Index n = static_cast<Index>(u.size());
#pragma omp parallel for schedule(static)
  for (Index k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    u[i] = e2[i] * u[i] +
           (e2[i] * a[i] + 2.0 * e[i] * (b[i] + c[i]) + d[i]) / 6.0;
  }
}

void conservation_laws(double speed, double gamma, double alpha, double beta,
                       std::span<const double> u, std::span<const double> u1,
                       std::span<const double> u2, std::span<const double> u3,
                       std::span<const double> u4, std::span<double> first,
                       std::span<double> second, std::span<double> first_scale,
                       std::span<double> second_scale) {
  const Index n = static_cast<Index>(u.size());
#pragma omp parallel for schedule(static)
  for (Index k = 0; k < n; ++k) {
    const auto j = static_cast<std::size_t>(k);
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

}  // namespace fkdv::kernels::omp
