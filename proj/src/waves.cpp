#include "fkdv/waves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "fkdv/csv.hpp"
#include "fkdv/kernels.hpp"
#include "fkdv/spectral.hpp"

namespace fkdv::waves {
namespace {

constexpr double kResolutionTolerance = 1e-4;

void require(bool condition, const std::string& message) {
  if (!condition) throw DomainError(message);
}

void require_finite(std::initializer_list<double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + ": parameters must be finite");
  }
}

void check_modulus(double k) {
  if (!(k <= kModulusUpperGuard)) {
    throw DegenerateModulusError(
        "cnoidal modulus k = " + format_number(k) +
        " is at or beyond 1 - 1e-10 (the cn^2 wave degenerates into a soliton); "
        "increase |A| so that A*gamma > 0 moves k away from 1");
  }
  if (!(k >= kModulusLowerGuard)) {
    throw DegenerateModulusError(
        "cnoidal modulus k = " + format_number(k) +
        " is below 1e-8 (zero-amplitude wave); choose A*gamma > 0");
  }
}

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double stddev(std::span<const double> v, double m) {
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return v.empty() ? 0.0 : std::sqrt(s / static_cast<double>(v.size()));
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

struct Derivatives {
  std::vector<double> xi, u, d1, d2, d3, d4;
};

Derivatives spectral_derivatives(const SampledField& field) {
  Derivatives d;
  d.xi = field.xi;
  d.u = field.u;
  d.d1 = spectral::derivative(field.u, field.period, 1);
  d.d2 = spectral::derivative(field.u, field.period, 2);
  d.d3 = spectral::derivative(field.u, field.period, 3);
  d.d4 = spectral::derivative(field.u, field.period, 4);

  const std::size_t n = field.u.size();
  spectral::RealFft fft(n);
  std::vector<spectral::cplx> hat(fft.modes());
  fft.forward(field.u, hat);
  const auto kappa = spectral::wavenumbers(n, field.period);
  double top = 0.0, all = 0.0;
  const std::size_t tail_start = 3 * (hat.size() - 1) / 4;
  for (std::size_t k = 1; k < hat.size(); ++k) {
    const double w = std::pow(kappa[k], 4) * std::abs(hat[k]);
    all = std::max(all, w);
    if (k >= tail_start) top = std::max(top, w);
  }
  if (all > 0.0 && top > kResolutionTolerance * all) {
    throw ResolutionError("fourth derivative not resolved: spectral tail is " +
                          format_number(top / all) + " of the peak; use more samples");
  }
  return d;
}

std::vector<double> apply_stencil(std::span<const double> u, std::span<const double> w,
                                  int half, double h, int order, int margin) {
  const int n = static_cast<int>(u.size());
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(0, n - 2 * margin)));
  const double scale = 1.0 / std::pow(h, order);
  for (int j = margin; j < n - margin; ++j) {
    double acc = 0.0;
    for (int s = -half; s <= half; ++s) {
      acc += w[static_cast<std::size_t>(s + half)] * u[static_cast<std::size_t>(j + s)];
    }
    out.push_back(acc * scale);
  }
  return out;
}

Derivatives finite_difference_derivatives(const SampledField& field) {
  constexpr int kMargin = 5;
  const int n = static_cast<int>(field.u.size());
  if (n <= 2 * kMargin + 1) throw ResolutionError("too few samples for 8th-order differences");
  const double h = field.xi[1] - field.xi[0];
  Derivatives d;
  d.xi.assign(field.xi.begin() + kMargin, field.xi.end() - kMargin);
  d.u.assign(field.u.begin() + kMargin, field.u.end() - kMargin);
  const int halves[] = {4, 4, 5, 5};
  std::vector<double>* outs[] = {&d.d1, &d.d2, &d.d3, &d.d4};
  for (int order = 1; order <= 4; ++order) {
    const int half = halves[order - 1];
    const auto w = central_difference_weights(order, half);
    *outs[order - 1] = apply_stencil(field.u, w, half, h, order, kMargin);
  }
  // 6th-order estimate of u'''' as a noise/truncation probe.
  const auto w6 = central_difference_weights(4, 4);
  const auto low = apply_stencil(field.u, w6, 4, h, 4, kMargin);
  double diff = 0.0;
  for (std::size_t j = 0; j < low.size(); ++j) diff = std::max(diff, std::abs(low[j] - d.d4[j]));
  const double size = max_abs(d.d4);
  if (size > 0.0 && diff > kResolutionTolerance * size) {
    throw ResolutionError("fourth derivative not resolved: 6th/8th-order differences disagree by " +
                          format_number(diff / size) + " of its size; use more samples");
  }
  return d;
}

void fill_samples(const ProfileEvaluator<double>& eval, double start, double length,
                  std::size_t n, std::vector<double>& xi, std::vector<double>& u) {
  xi.resize(n);
  u.resize(n);
  const double h = length / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    xi[j] = start + h * static_cast<double>(j);
    u[j] = eval(xi[j]);
  }
}

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::FifthOrderSoliton: return "fifth-soliton";
    case Family::KdVSoliton: return "kdv-soliton";
    case Family::KdVCnoidal: return "kdv-cnoidal";
    case Family::FifthOrderCnoidal: return "fifth-cnoidal";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::FifthOrderSoliton, Family::KdVSoliton, Family::KdVCnoidal,
                   Family::FifthOrderCnoidal}) {
    if (family_name(f) == name) return f;
  }
  throw DomainError("unknown family '" + std::string(name) +
                    "' (expected fifth-soliton, kdv-soliton, kdv-cnoidal or fifth-cnoidal)");
}

bool is_periodic(Family family) {
  return family == Family::KdVCnoidal || family == Family::FifthOrderCnoidal;
}

CnoidalParams kdv_cnoidal_params(double gamma, double alpha, double c, double fluxA) {
  require_finite({gamma, alpha, c, fluxA}, "kdv-cnoidal");
  require(gamma != 0.0, "kdv-cnoidal: gamma must be nonzero");
  require(alpha > 0.0, "kdv-cnoidal: alpha must be positive");
  CnoidalParams p;
  p.delta = 9.0 * c * c + 24.0 * fluxA * gamma;
  if (!(p.delta > 0.0)) {
    throw DomainError("kdv-cnoidal: Delta = 9c^2 + 24 A gamma = " + format_number(p.delta) +
                      " must be positive");
  }
  const double root = std::sqrt(p.delta);
  p.amplitude = (3.0 * c + root) / (2.0 * gamma);
  const double k2 = 0.5 * (1.0 + 3.0 * c / root);
  if (!(k2 > 0.0)) check_modulus(0.0);
  p.modulus = std::sqrt(k2);
  check_modulus(p.modulus);
  p.emm = 6.0 * alpha * p.amplitude / root;
  p.wavelength = 4.0 * std::sqrt(3.0 * alpha) * elliptic::complete_K(p.modulus) /
                 std::sqrt(root);
  p.halfPeriod = p.wavelength / 2.0;
  return p;
}

CnoidalParams fifth_order_cnoidal_params(double gamma, double beta, double c) {
  require_finite({gamma, beta, c}, "fifth-cnoidal");
  require(gamma != 0.0, "fifth-cnoidal: gamma must be nonzero");
  require(beta != 0.0 && c / beta > 0.0, "fifth-cnoidal: c/beta must be positive");
  CnoidalParams p;
  p.amplitude = 5.0 * c / (2.0 * gamma);
  p.modulus = std::numbers::sqrt2 / 2.0;
  p.wavelength = 2.0 * std::numbers::sqrt2 * std::pow(42.0 * beta / c, 0.25) *
                 elliptic::complete_K(p.modulus);
  p.halfPeriod = p.wavelength / 2.0;
  return p;
}

WaveProfile::WaveProfile(Family family, MediumParams params,
                         std::optional<CnoidalParams> cnoidal, std::size_t samples)
    : family_(family),
      params_(params),
      cnoidal_(cnoidal),
      evaluator_(family, params) {
  if (samples < 16) throw DomainError("profile needs at least 16 samples");
  if (periodic()) {
    if (!cnoidal_) throw DomainError("periodic profile requires cnoidal parameters");
    period_ = cnoidal_->wavelength;
  } else {
    period_ = 2.0 * kSolitonWindowWidths / evaluator_.wavenumber();
  }
  fill_samples(evaluator_, window_start(), period_, samples, xi_, u_);
}

double WaveProfile::characteristic_width() const {
  return periodic() ? cnoidal_->wavelength : 1.0 / evaluator_.wavenumber();
}

WaveProfile WaveProfile::resampled(std::size_t samples) const {
  return WaveProfile(family_, params_, cnoidal_, samples);
}

WaveProfile build_fifth_order_soliton(double gamma, double alpha, double beta,
                                      std::size_t samples) {
  require_finite({gamma, alpha, beta}, "fifth-soliton");
  require(gamma != 0.0, "fifth-soliton: gamma must be nonzero");
  require(alpha > 0.0, "fifth-soliton: alpha must be positive");
  require(beta > 0.0, "fifth-soliton: beta must be positive");
  MediumParams p;
  p.gamma = gamma;
  p.alpha = alpha;
  p.beta = beta;
  p.speed = 36.0 * alpha * alpha / (169.0 * beta);
  return WaveProfile(Family::FifthOrderSoliton, p, std::nullopt, samples);
}

WaveProfile build_kdv_soliton(double gamma, double alpha, double c, std::size_t samples) {
  require_finite({gamma, alpha, c}, "kdv-soliton");
  require(gamma != 0.0, "kdv-soliton: gamma must be nonzero");
  require(alpha != 0.0 && c / alpha > 0.0,
          "kdv-soliton: c/alpha must be positive (c > 0 for alpha > 0, c < 0 for alpha < 0)");
  MediumParams p;
  p.gamma = gamma;
  p.alpha = alpha;
  p.speed = c;
  return WaveProfile(Family::KdVSoliton, p, std::nullopt, samples);
}

WaveProfile build_kdv_cnoidal(double gamma, double alpha, double c, double fluxA,
                              std::size_t samples) {
  const CnoidalParams cp = kdv_cnoidal_params(gamma, alpha, c, fluxA);
  MediumParams p;
  p.gamma = gamma;
  p.alpha = alpha;
  p.speed = c;
  p.fluxA = fluxA;
  p.fluxB = 0.0;  // the profile and its first derivative vanish together at the trough
  return WaveProfile(Family::KdVCnoidal, p, cp, samples);
}

WaveProfile build_fifth_order_cnoidal(double gamma, double beta, double c,
                                      std::size_t samples) {
  const CnoidalParams cp = fifth_order_cnoidal_params(gamma, beta, c);
  MediumParams p;
  p.gamma = gamma;
  p.beta = beta;
  p.speed = c;
  // At the trough u = u' = u'' = u''' = 0 and u'''' = 6 A kappa^4.
  p.fluxA = -5.0 * c * c / (56.0 * gamma);
  p.fluxB = 0.0;
  return WaveProfile(Family::FifthOrderCnoidal, p, cp, samples);
}

double ConservationResiduals::max_abs_residualA() const { return max_abs(residualA); }
double ConservationResiduals::max_abs_residualB() const { return max_abs(residualB); }

ConservationResiduals conservation_residuals(const WaveProfile& profile) {
  SampledField field;
  field.xi.assign(profile.xi().begin(), profile.xi().end());
  field.u.assign(profile.u().begin(), profile.u().end());
  field.period = profile.periodic() ? profile.period() : 0.0;
  return conservation_residuals(field, profile.params());
}

ConservationResiduals conservation_residuals(const SampledField& field,
                                             const MediumParams& params) {
  if (field.u.size() != field.xi.size() || field.u.size() < 16) {
    throw DomainError("conservation_residuals: need at least 16 matching samples");
  }
  const Derivatives d = field.period > 0.0 ? spectral_derivatives(field)
                                           : finite_difference_derivatives(field);
  const std::size_t n = d.u.size();
  std::vector<double> first(n), second(n), first_scale(n), second_scale(n);
  kernels::omp::conservation_laws(params.speed, params.gamma, params.alpha, params.beta, d.u,
                                  d.d1, d.d2, d.d3, d.d4, first, second, first_scale,
                                  second_scale);
  ConservationResiduals r;
  r.xi = d.xi;
  r.meanA = mean(first);
  r.meanB = mean(second);
  r.stdA = stddev(first, r.meanA);
  r.stdB = stddev(second, r.meanB);
  r.scaleA = max_abs(first_scale);
  r.scaleB = max_abs(second_scale);
  r.residualA.resize(n);
  r.residualB.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    r.residualA[j] = first[j] - r.meanA;
    r.residualB[j] = second[j] - r.meanB;
  }
  return r;
}

// Fornberg's recursion restricted to a symmetric uniform stencil around 0.
std::vector<double> central_difference_weights(int derivative, int half_width) {
  const int n = 2 * half_width + 1;
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = i - half_width;
  const int m = derivative;
  std::vector<std::vector<double>> c(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(m + 1), 0.0));
  double c1 = 1.0;
  double c4 = x[0];
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[ui];
    for (int j = 0; j < i; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      const double c3 = x[ui] - x[uj];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          const auto uk = static_cast<std::size_t>(k);
          c[ui][uk] = c1 * (k * c[ui - 1][uk - 1] - c5 * c[ui - 1][uk]) / c2;
        }
        c[ui][0] = -c1 * c5 * c[ui - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        const auto uk = static_cast<std::size_t>(k);
        c[uj][uk] = (c4 * c[uj][uk] - k * c[uj][uk - 1]) / c3;
      }
      c[uj][0] = c4 * c[uj][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
  return w;
}

std::string describe(const WaveProfile& profile) {
  const auto& p = profile.params();
  std::ostringstream s;
  s << "family=" << family_name(profile.family()) << " gamma=" << format_number(p.gamma)
    << " alpha=" << format_number(p.alpha) << " beta=" << format_number(p.beta)
    << " C=" << format_number(p.cee) << " c=" << format_number(p.speed)
    << " A=" << format_number(p.fluxA) << " B=" << format_number(p.fluxB)
    << " amplitude=" << format_number(profile.amplitude());
  if (const auto& cp = profile.cnoidal()) {
    if (profile.family() == Family::KdVCnoidal) {
      s << " Delta=" << format_number(cp->delta) << " M=" << format_number(cp->emm);
    }
    s << " k=" << format_number(cp->modulus) << " wavelength=" << format_number(cp->wavelength);
  } else {
    s << " width=" << format_number(profile.characteristic_width());
  }
  return s.str();
}

void write_csv(std::ostream& out, const WaveProfile& profile) {
  out << "# " << describe(profile) << "\n";
  out << "xi,u\n";
  const auto xi = profile.xi();
  const auto u = profile.u();
  for (std::size_t j = 0; j < u.size(); ++j) {
    out << format_number(xi[j]) << ',' << format_number(u[j]) << '\n';
  }
}

}  // namespace fkdv::waves
