#include "fkdv/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "fkdv/csv.hpp"
#include "fkdv/elliptic.hpp"
#include "fkdv/kernels.hpp"
#include "fkdv/precision.hpp"

namespace fkdv::fourier {
namespace {

constexpr double pi = std::numbers::pi;

void require_order(int N) {
  if (N < 1) throw DomainError("truncation order N must be at least 1");
}

// csch(x), or 0 with the flag raised once x is past the cutoff.
double csch_guarded(double x, bool& underflow) {
  if (x > kCschCutoff) {
    underflow = true;
    return 0.0;
  }
  return 1.0 / std::sinh(x);
}

void finish(CoeffSequence& seq) {
  seq.strictlyPositive =
      std::all_of(seq.values.begin(), seq.values.end(), [](double v) { return v > 0.0; });
}

}  // namespace

double CoeffSequence::coeff(int n) const {
  const int m = n < 0 ? -n : n;
  if (m > order()) throw DomainError("coefficient index beyond the stored order");
  return values[static_cast<std::size_t>(m)];
}

std::vector<double> CoeffSequence::window(int M) const {
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(2 * M + 1));
  for (int n = -M; n <= M; ++n) w.push_back(coeff(n));
  return w;
}

double CoeffSequence::evaluate(double xi) const {
  double sum = values.empty() ? 0.0 : values[0];
  for (int n = 1; n <= order(); ++n) {
    sum += 2.0 * values[static_cast<std::size_t>(n)] * std::cos(n * pi * xi / halfPeriod);
  }
  return sum;
}

CoeffSequence cn2_coeffs(const waves::CnoidalParams& params, int N) {
  require_order(N);
  const elliptic::EllipticContext ctx(params.modulus);
  const double L = params.halfPeriod;
  const double k = ctx.k();
  CoeffSequence seq;
  seq.halfPeriod = L;
  seq.values.resize(static_cast<std::size_t>(N) + 1);
  seq.values[0] = 2.0 * params.emm * ctx.K() / (L * L) * (ctx.K() - ctx.D());
  const double prefactor = params.emm * pi * pi / (L * L * k * k);
  for (int n = 1; n <= N; ++n) {
    seq.values[static_cast<std::size_t>(n)] =
        prefactor * n * csch_guarded(n * ctx.decay(), seq.underflow);
  }
  finish(seq);
  return seq;
}

CoeffSequence cn4_coeffs_halfmodulus(const waves::WaveProfile& profile, int N) {
  if (profile.family() != waves::Family::FifthOrderCnoidal) {
    throw DomainError("cn4_coeffs_halfmodulus needs a fifth-order cnoidal profile");
  }
  return cn4_coeffs_halfmodulus(profile.params().gamma, profile.params().speed,
                                profile.cnoidal()->halfPeriod, N);
}

CoeffSequence cn4_coeffs_halfmodulus(double gamma, double c, double halfPeriod, int N) {
  require_order(N);
  if (gamma == 0.0) throw DomainError("gamma must be nonzero");
  const double K = elliptic::complete_K(std::numbers::sqrt2 / 2);
  CoeffSequence seq;
  seq.halfPeriod = halfPeriod;
  seq.values.resize(static_cast<std::size_t>(N) + 1);
  seq.values[0] = 5.0 * c / (6.0 * gamma);
  const double prefactor = 5.0 * c * std::pow(pi / K, 4) / (6.0 * gamma);
  for (int n = 1; n <= N; ++n) {
    seq.values[static_cast<std::size_t>(n)] =
        prefactor * std::pow(n, 3) * csch_guarded(n * pi, seq.underflow);
  }
  finish(seq);
  return seq;
}

CoeffSequence cn4_series_general_k(double k, int N) {
  require_order(N);
  if (!(k > 0.0 && k < 1.0)) throw DomainError("cn4_series_general_k: need 0 < k < 1");
  const elliptic::EllipticContext ctx(k);
  const double K = ctx.K();
  const double k2 = k * k;
  const double kp2 = ctx.kprime() * ctx.kprime();
  const double diff = k2 - kp2;
  CoeffSequence seq;
  seq.halfPeriod = K;
  seq.values.resize(static_cast<std::size_t>(N) + 1);
  // E/K - k'^2 = k^2 (K - D)/K
  seq.values[0] = (2.0 * diff * (K - ctx.D()) / K + kp2) / (3.0 * k2);
  const double r = pi * pi / (K * K);
  for (int n = 1; n <= N; ++n) {
    // (1/2)(2 pi^2/K^2) n q^n/(1-q^{2n}) (1/3)(2(k^2-k'^2) + n^2 pi^2/(2K^2)) / k^4
    const double half_csch = 0.5 * csch_guarded(n * ctx.decay(), seq.underflow);
    seq.values[static_cast<std::size_t>(n)] =
        r * n * half_csch * (2.0 * diff + 0.5 * n * n * r) / (3.0 * k2 * k2);
  }
  finish(seq);
  return seq;
}

CoeffSequence dft_coeffs(const waves::WaveProfile& profile, int N, std::size_t samples) {
  require_order(N);
  if (!profile.periodic()) throw DomainError("dft_coeffs needs a periodic profile");
  if (samples < 8 * static_cast<std::size_t>(N)) {
    throw DomainError("dft_coeffs needs at least 8N samples");
  }
  const auto eval = profile.evaluator<quad>();
  const quad L = eval.half_period();
  const quad qpi = elliptic::pi_v<quad>();
  std::vector<quad> u(samples), table(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    const quad t = quad(j) / quad(samples);
    u[j] = eval(-L + 2 * L * t);
    table[j] = cos(2 * qpi * t);
  }
  std::vector<quad> moments(static_cast<std::size_t>(N) + 1);
  kernels::omp::cosine_moments<quad>(u, table, moments);
  quad nyquist = 0;
  for (std::size_t j = 0; j < samples; ++j) nyquist += (j % 2 == 0) ? u[j] : -u[j];
  nyquist /= quad(samples);

  CoeffSequence seq;
  seq.halfPeriod = profile.period() / 2;
  seq.values.resize(moments.size());
  // The grid starts at -L, which contributes e^{-i n pi} = (-1)^n.
  for (std::size_t n = 0; n < moments.size(); ++n) {
    const quad v = (n % 2 == 0) ? moments[n] : -moments[n];
    seq.values[n] = static_cast<double>(v);
  }
  seq.aliasingWarning = abs(nyquist) > quad(1e-12) * abs(moments[0]);
  finish(seq);
  return seq;
}

CoeffSequence dft_coeffs(std::span<const double> samples, double halfPeriod, int N) {
  require_order(N);
  const std::size_t S = samples.size();
  if (S < 8 * static_cast<std::size_t>(N)) throw DomainError("dft_coeffs needs at least 8N samples");
  std::vector<double> table(S);
  for (std::size_t j = 0; j < S; ++j) table[j] = std::cos(2.0 * pi * static_cast<double>(j) / static_cast<double>(S));
  std::vector<double> moments(static_cast<std::size_t>(N) + 1);
  kernels::omp::cosine_moments<double>(samples, table, moments);
  double nyquist = 0.0;
  for (std::size_t j = 0; j < S; ++j) nyquist += (j % 2 == 0) ? samples[j] : -samples[j];
  nyquist /= static_cast<double>(S);

  CoeffSequence seq;
  seq.halfPeriod = halfPeriod;
  seq.values.resize(moments.size());
  for (std::size_t n = 0; n < moments.size(); ++n) {
    seq.values[n] = (n % 2 == 0) ? moments[n] : -moments[n];
  }
  seq.aliasingWarning = std::abs(nyquist) > 1e-12 * std::abs(moments[0]);
  finish(seq);
  return seq;
}

double parseval_sum(const CoeffSequence& seq) {
  double sum = 0.0;
  for (int n = seq.order(); n >= 1; --n) {
    const double v = seq.values[static_cast<std::size_t>(n)];
    sum += 2.0 * v * v;
  }
  return sum + seq.values[0] * seq.values[0];
}

std::string Pf2Report::location() const {
  std::ostringstream s;
  s << "a(" << p << ")a(" << p + dx - dy << ") - a(" << p - dy << ")a(" << p + dx
    << ") = " << format_number(minMinor) << " (normalized)";
  return s.str();
}

Pf2Report pf2_check(const CoeffSequence& seq, int M) {
  if (M < 1) throw DomainError("pf2_check: window M must be at least 1");
  if (M > seq.order()) throw DomainError("pf2_check: window exceeds the stored coefficients");
  const auto w = seq.window(M);
  return pf2_check(w);
}

Pf2Report pf2_check(std::span<const double> window) {
  if (window.size() < 3 || window.size() % 2 == 0) {
    throw DomainError("pf2_check: window must be a(-M..M) with M >= 1");
  }
  for (double v : window) {
    if (!(v > 0.0)) throw DomainError("pf2_check: sequence must be strictly positive");
  }
  const int M = static_cast<int>(window.size() / 2);
  const auto scan = kernels::omp::toeplitz_minor_scan(window);
  Pf2Report r;
  r.window = M;
  r.minorsChecked = scan.count;
  r.minMinor = scan.min_normalized;
  r.p = scan.p;
  r.dx = scan.dx;
  r.dy = scan.dy;

  r.minLogConcavity = INFINITY;
  for (int n = -M + 1; n <= M - 1; ++n) {
    const auto i = static_cast<std::size_t>(n + M);
    const double a = window[i];
    const double v = (a * a - window[i - 1] * window[i + 1]) / (a * a);
    if (v < r.minLogConcavity) {
      r.minLogConcavity = v;
      r.logConcavityAt = n;
    }
  }
  r.logConcave = r.minLogConcavity >= -kPf2Tolerance;
  r.passed = r.minMinor >= -kPf2Tolerance && r.logConcave;
  return r;
}

void write_csv(std::ostream& out, const CoeffSequence& seq) {
  out << "# " << seq.normalization << ", L=" << format_number(seq.halfPeriod) << "\n";
  out << "n,coeff\n";
  for (int n = -seq.order(); n <= seq.order(); ++n) {
    out << n << ',' << format_number(seq.coeff(n)) << '\n';
  }
}

}  // namespace fkdv::fourier
