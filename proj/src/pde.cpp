#include "fkdv/pde.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include "fkdv/csv.hpp"
#include "fkdv/errors.hpp"
#include "fkdv/kernels.hpp"

namespace fkdv::pde {
namespace {

constexpr double pi = std::numbers::pi;
constexpr double kGolden = 0.6180339887498949;

bool finite_params(const waves::MediumParams& p) {
  return std::isfinite(p.gamma) && std::isfinite(p.alpha) && std::isfinite(p.beta) &&
         std::isfinite(p.cee);
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Half-spectrum energy sum |h_0|^2 + 2 sum |h_k|^2 + |h_{N/2}|^2.
double spectral_energy(std::span<const cplx> hat) {
  std::vector<double> ones(hat.size(), 2.0);
  ones.front() = 1.0;
  ones.back() = 1.0;
  return kernels::omp::weighted_energy(hat, ones);
}

// Uniform in [0, 1) from the top 53 bits, identical on every platform.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

SpectralState make_state(const waves::MediumParams& params, double domainLength,
                         std::vector<double> field, double time) {
  const std::size_t n = field.size();
  if (n < 8 || !std::has_single_bit(n)) {
    throw DomainError("gridN must be a power of two and at least 8 (got " + std::to_string(n) + ")");
  }
  if (params.beta != 0.0 && n < kMinFifthOrderGrid) {
    throw DomainError("gridN must be at least 256 when beta != 0");
  }
  if (!(domainLength > 0.0) || !std::isfinite(domainLength)) {
    throw DomainError("domain length must be positive and finite");
  }
  if (!finite_params(params)) throw DomainError("equation coefficients must be finite");
  for (double v : field) {
    if (!std::isfinite(v)) throw DomainError("initial field must be finite");
  }
  SpectralState s;
  s.gridN = n;
  s.domainLength = domainLength;
  s.field = std::move(field);
  s.time = time;
  s.params = params;
  return s;
}

std::vector<double> grid(std::size_t n, double domainLength) {
  std::vector<double> x(n);
  const double h = domainLength / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = -0.5 * domainLength + h * static_cast<double>(j);
  return x;
}

double mass(const SpectralState& s) {
  double sum = 0.0;
  for (double v : s.field) sum += v;
  return sum * s.domainLength / static_cast<double>(s.gridN);
}

double momentum(const SpectralState& s) {
  double sum = 0.0;
  for (double v : s.field) sum += v * v;
  return sum * s.domainLength / static_cast<double>(s.gridN);
}

// ---- solver ----

PseudospectralSolver::PseudospectralSolver(const waves::MediumParams& params, std::size_t gridN,
                                           double domainLength, double dt, std::size_t bandLimit)
    : params_(params),
      n_(gridN),
      padded_(3 * gridN / 2),
      length_(domainLength),
      dt_(dt),
      fft_(gridN),
      padded_fft_(3 * gridN / 2) {
  if (gridN < 8 || !std::has_single_bit(gridN)) throw DomainError("gridN must be a power of two");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("time step must be positive");
  band_ = bandLimit == 0 ? n_ / 2 - 1 : std::min(bandLimit, n_ / 2 - 1);
  kappa_ = spectral::wavenumbers(n_, length_);
  const std::size_t m = n_ / 2 + 1;
  half_.resize(m);
  full_.resize(m);
  set_background(0.0);
  padded_hat_.resize(padded_ / 2 + 1);
  padded_field_.resize(padded_);
  ka_.resize(m);
  kb_.resize(m);
  kc_.resize(m);
  kd_.resize(m);
  stage_.resize(m);
}

void PseudospectralSolver::to_spectral(std::span<const double> field, std::span<cplx> hat) {
  fft_.forward(field, hat);
  std::fill(hat.begin() + static_cast<std::ptrdiff_t>(band_ + 1), hat.end(), cplx(0.0));
}

void PseudospectralSolver::to_physical(std::span<const cplx> hat, std::span<double> field) {
  fft_.inverse(hat, field);
}

// The mean is conserved exactly, so advection by it is linear and goes into
// the integrating factor along with C.
void PseudospectralSolver::set_background(double mean) {
  background_ = mean;
  const double drift = params_.cee + params_.gamma * mean;
  for (std::size_t k = 0; k < half_.size(); ++k) {
    const double q = kappa_[k];
    const double omega = -drift * q + params_.alpha * q * q * q + params_.beta * q * q * q * q * q;
    half_[k] = std::polar(1.0, 0.5 * omega * dt_);
    full_[k] = std::polar(1.0, omega * dt_);
  }
}

double PseudospectralSolver::nonlinear(std::span<const cplx> hat, std::span<cplx> out) {
  const std::size_t keep = band_ + 1;
  std::fill(padded_hat_.begin(), padded_hat_.end(), cplx(0.0));
  std::copy(hat.begin(), hat.begin() + static_cast<std::ptrdiff_t>(keep), padded_hat_.begin());
  padded_hat_[0] = 0.0;
  padded_fft_.inverse(padded_hat_, padded_field_);
  const double peak = max_abs(padded_field_) + std::abs(background_);
  kernels::omp::square(padded_field_);
  padded_fft_.forward(padded_field_, padded_hat_);
  const double g = -0.5 * params_.gamma * dt_;
  for (std::size_t k = 0; k < keep; ++k) out[k] = cplx(0.0, g * kappa_[k]) * padded_hat_[k];
  std::fill(out.begin() + static_cast<std::ptrdiff_t>(keep), out.end(), cplx(0.0));
  return peak;
}

double PseudospectralSolver::advance(std::span<cplx> hat) {
  const std::size_t m = hat.size();
  if (hat[0].real() != background_) set_background(hat[0].real());
  const double peak = nonlinear(hat, ka_);
  for (std::size_t k = 0; k < m; ++k) stage_[k] = half_[k] * (hat[k] + 0.5 * ka_[k]);
  nonlinear(stage_, kb_);
  kernels::omp::diag_fma(half_, hat, 0.5, kb_, stage_);
  nonlinear(stage_, kc_);
  for (std::size_t k = 0; k < m; ++k) stage_[k] = full_[k] * hat[k] + half_[k] * kc_[k];
  nonlinear(stage_, kd_);
  kernels::omp::ifrk4_combine(half_, full_, hat, ka_, kb_, kc_, kd_);
  return peak;
}

SpectralState step(const SpectralState& state, double dt) {
  PseudospectralSolver solver(state.params, state.gridN, state.domainLength, dt);
  std::vector<cplx> hat(state.gridN / 2 + 1);
  solver.to_spectral(state.field, hat);
  solver.advance(hat);
  SpectralState next = state;
  solver.to_physical(hat, next.field);
  next.time += dt;
  return next;
}

// ---- orbital distance ----

OrbitalMetric::OrbitalMetric(std::span<const double> reference, double domainLength)
    : n_(reference.size()), length_(domainLength), fft_(reference.size()) {
  if (n_ < 8 || n_ % 2 != 0) throw DomainError("orbital distance needs an even grid of at least 8");
  kappa_ = spectral::wavenumbers(n_, length_);
  const std::size_t m = n_ / 2 + 1;
  for (int s = 0; s <= 2; ++s) {
    auto& w = weights_[s];
    w.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      const double multiplicity = (k == 0 || k == m - 1) ? 1.0 : 2.0;
      w[k] = multiplicity * std::pow(1.0 + kappa_[k] * kappa_[k], s);
    }
  }
  reference_hat_.resize(m);
  fft_.forward(reference, reference_hat_);
  hat_.resize(m);
  cross_.resize(m);
  correlation_.resize(n_);
}

std::span<const double> OrbitalMetric::weights(int sobolevOrder) const {
  if (sobolevOrder < 0 || sobolevOrder > 2) throw DomainError("Sobolev order must be 0, 1 or 2");
  return weights_[sobolevOrder];
}

double OrbitalMetric::norm(std::span<const double> field, int sobolevOrder) {
  if (field.size() != n_) throw DomainError("field and reference grids differ");
  fft_.forward(field, hat_);
  return std::sqrt(length_ * kernels::omp::weighted_energy(hat_, weights(sobolevOrder)));
}

OrbitalDistance OrbitalMetric::distance(std::span<const double> field, int sobolevOrder) {
  if (field.size() != n_) throw DomainError("field and reference grids differ");
  fft_.forward(field, hat_);
  std::vector<cplx> hat(hat_);
  return distance_from_spectrum(hat, sobolevOrder);
}

OrbitalDistance OrbitalMetric::distance_from_spectrum(std::span<const cplx> hat,
                                                      int sobolevOrder) {
  const auto w = weights(sobolevOrder);
  const std::size_t m = n_ / 2 + 1;
  for (std::size_t k = 0; k < m; ++k) cross_[k] = w[k] * hat[k] * std::conj(reference_hat_[k]);
  const double ef = kernels::omp::weighted_energy(hat, w);
  const double eg = kernels::omp::weighted_energy(reference_hat_, w);

  // C(y_j) = Re sum_k X_k e^{-i kappa_k y_j} at every grid shift, by one inverse transform.
  std::vector<cplx> h(m);
  h[0] = cross_[0].real();
  for (std::size_t k = 1; k + 1 < m; ++k) h[k] = 0.5 * std::conj(cross_[k]);
  h[m - 1] = cross_[m - 1].real();
  fft_.inverse(h, correlation_);

  const double dx = length_ / static_cast<double>(n_);
  auto sq = [&](std::size_t j) { return std::max(0.0, ef + eg - 2.0 * correlation_[j]); };
  std::size_t best = 0;
  for (std::size_t j = 1; j < n_; ++j) {
    if (correlation_[j] > correlation_[best]) best = j;
  }
  // Second-deepest local minimum of the squared distance over the grid shifts.
  double second = INFINITY;
  for (std::size_t j = 0; j < n_; ++j) {
    if (j == best) continue;
    const double v = sq(j);
    if (v < sq((j + n_ - 1) % n_) && v <= sq((j + 1) % n_)) second = std::min(second, v);
  }

  auto moments = [&](double y) { return kernels::omp::shift_moments(cross_, kappa_, y); };
  double lo = (static_cast<double>(best) - 1.0) * dx;
  double hi = (static_cast<double>(best) + 1.0) * dx;
  double a = hi - kGolden * (hi - lo);
  double b = lo + kGolden * (hi - lo);
  double ca = moments(a).value;
  double cb = moments(b).value;
  while (hi - lo > 1e-9 * dx) {
    if (ca > cb) {
      hi = b;
      b = a;
      cb = ca;
      a = hi - kGolden * (hi - lo);
      ca = moments(a).value;
    } else {
      lo = a;
      a = b;
      ca = cb;
      b = lo + kGolden * (hi - lo);
      cb = moments(b).value;
    }
  }
  double y = 0.5 * (lo + hi);
  // Newton on C'(y) = 0 removes the sqrt(eps) floor of the bracket search.
  for (int it = 0; it < 8; ++it) {
    const auto mo = moments(y);
    if (!(mo.curvature < 0.0)) break;
    const double step = -mo.slope / mo.curvature;
    if (!(std::abs(step) < dx)) break;
    y += step;
    if (std::abs(step) < 1e-15 * length_) break;
  }

  OrbitalDistance out;
  const double d2 = length_ * kernels::omp::weighted_distance_sq(hat, reference_hat_, w, kappa_, y);
  out.distance = std::sqrt(std::max(0.0, d2));
  y = std::remainder(y, length_);
  out.shift = y;
  if (std::isfinite(second)) {
    const double d1 = std::sqrt(length_ * sq(best));
    const double dd = std::sqrt(length_ * second);
    out.multipleMinima = dd - d1 <= 0.01 * dd;
  }
  return out;
}

OrbitalDistance orbital_distance(std::span<const double> field,
                                 const waves::WaveProfile& reference, int sobolevOrder) {
  const auto ref = reference.resampled(field.size());
  OrbitalMetric metric(ref.u(), ref.period());
  return metric.distance(field, sobolevOrder);
}

// ---- evolution ----

std::vector<DiagnosticsRecord> evolve(SpectralState& state, double tEnd, double dt,
                                      int recordEvery, std::span<const double> reference,
                                      std::size_t bandLimit) {
  if (!(tEnd > state.time)) throw DomainError("end time must lie after the current time");
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  if (recordEvery < 1) throw DomainError("recordEvery must be at least 1");
  if (!reference.empty() && reference.size() != state.gridN) {
    throw DomainError("reference must be sampled on the simulation grid");
  }
  const double span = tEnd - state.time;
  const long long steps = std::max(1LL, static_cast<long long>(std::ceil(span / dt - 1e-9)));
  const double h = span / static_cast<double>(steps);
  const double t0 = state.time;

  PseudospectralSolver solver(state.params, state.gridN, state.domainLength, h, bandLimit);
  std::vector<cplx> hat(state.gridN / 2 + 1);
  solver.to_spectral(state.field, hat);
  std::optional<OrbitalMetric> metric;
  if (!reference.empty()) metric.emplace(reference, state.domainLength);

  const double peak0 = max_abs(state.field);
  const double limit = peak0 > 0.0 ? kBlowUpFactor * peak0 : INFINITY;

  std::vector<DiagnosticsRecord> records;
  auto record = [&](double t) {
    DiagnosticsRecord r;
    r.time = t;
    r.mass = state.domainLength * hat[0].real();
    r.momentum = state.domainLength * spectral_energy(hat);
    if (metric) {
      r.distH1 = metric->distance_from_spectrum(hat, 1).distance;
      const auto d2 = metric->distance_from_spectrum(hat, 2);
      r.distH2 = d2.distance;
      r.shift = d2.shift;
    }
    records.push_back(r);
  };

  record(t0);
  for (long long i = 1; i <= steps; ++i) {
    const double peak = solver.advance(hat);
    if (!std::isfinite(peak) || peak > limit) {
      const double t = t0 + h * static_cast<double>(i - 1);
      solver.to_physical(hat, state.field);
      state.time = t;
      throw BlowUpError("solution blew up: max |u| = " + format_number(peak) + " at t = " +
                            format_number(t),
                        t);
    }
    const double t = i == steps ? tEnd : t0 + h * static_cast<double>(i);
    if (i % recordEvery == 0 || i == steps) record(t);
  }
  solver.to_physical(hat, state.field);
  state.time = tEnd;
  const double peak = max_abs(state.field);
  if (!std::isfinite(peak) || peak > limit) {
    throw BlowUpError("solution blew up by t = " + format_number(tEnd), tEnd);
  }
  return records;
}

// ---- experiments ----

Perturbation parse_perturbation(std::string_view text) {
  Perturbation p;
  if (text.empty() || text == "none") return p;
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw DomainError("perturbation must look like kind:eps (scale, mode or noise)");
  }
  const auto kind = text.substr(0, colon);
  const auto value = text.substr(colon + 1);
  if (kind == "scale") {
    p.kind = PerturbationKind::Scale;
  } else if (kind == "mode") {
    p.kind = PerturbationKind::Mode;
  } else if (kind == "noise") {
    p.kind = PerturbationKind::Noise;
  } else {
    throw DomainError("unknown perturbation kind '" + std::string(kind) + "'");
  }
  const auto res = std::from_chars(value.data(), value.data() + value.size(), p.epsilon);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size() || !std::isfinite(p.epsilon)) {
    throw DomainError("perturbation size '" + std::string(value) + "' is not a number");
  }
  return p;
}

std::string describe(const Perturbation& p) {
  switch (p.kind) {
    case PerturbationKind::None: return "none";
    case PerturbationKind::Scale: return "scale:" + format_number(p.epsilon);
    case PerturbationKind::Mode:
      return "mode:" + format_number(p.epsilon) + " m=" + std::to_string(p.mode);
    case PerturbationKind::Noise:
      return "noise:" + format_number(p.epsilon) + " seed=" + std::to_string(p.seed);
  }
  return "unknown";
}

std::vector<double> apply_perturbation(std::span<const double> field, double domainLength,
                                       const Perturbation& p, double amplitude) {
  std::vector<double> u(field.begin(), field.end());
  const std::size_t n = u.size();
  const auto x = grid(n, domainLength);
  switch (p.kind) {
    case PerturbationKind::None:
      break;
    case PerturbationKind::Scale:
      for (double& v : u) v *= 1.0 + p.epsilon;
      break;
    case PerturbationKind::Mode:
      for (std::size_t j = 0; j < n; ++j) {
        u[j] += p.epsilon * amplitude * std::cos(2.0 * pi * p.mode * x[j] / domainLength);
      }
      break;
    case PerturbationKind::Noise: {
      std::mt19937_64 rng(p.seed);
      const std::size_t band = std::max<std::size_t>(1, n / 8);
      std::vector<double> eta(n, 0.0);
      for (std::size_t k = 1; k <= band; ++k) {
        const double a = 2.0 * unit_uniform(rng) - 1.0;
        const double phase = 2.0 * pi * unit_uniform(rng);
        const double q = 2.0 * pi * static_cast<double>(k) / domainLength;
        for (std::size_t j = 0; j < n; ++j) eta[j] += a * std::cos(q * x[j] + phase);
      }
      const double peak = max_abs(eta);
      if (peak > 0.0) {
        for (std::size_t j = 0; j < n; ++j) u[j] += p.epsilon * amplitude * eta[j] / peak;
      }
      break;
    }
  }
  return u;
}

double characteristic_time(const waves::WaveProfile& profile) {
  const double c = profile.params().speed;
  if (c == 0.0) throw DomainError("characteristic time undefined for a wave at rest");
  return profile.characteristic_width() / std::abs(c);
}

double dispersion(const waves::MediumParams& p, double q) {
  return -p.cee * q + p.alpha * q * q * q + p.beta * q * q * q * q * q;
}

std::size_t content_band(std::span<const double> field) {
  const std::size_t n = field.size();
  spectral::RealFft fft(n);
  std::vector<cplx> hat(n / 2 + 1);
  fft.forward(field, hat);
  double peak = 0.0;
  for (const auto& h : hat) peak = std::max(peak, std::abs(h));
  std::size_t last = 0;
  for (std::size_t k = 1; k < n / 2; ++k) {
    if (std::abs(hat[k]) > kContentThreshold * peak) last = k;
  }
  return last;
}

double default_dt(std::span<const double> field, const waves::MediumParams& params,
                  double domainLength, double cap, std::size_t bandLimit) {
  const std::size_t n = field.size();
  const double dx = domainLength / static_cast<double>(n);
  const double speed = std::abs(params.gamma) * max_abs(field);
  double dt = speed > 0.0 ? std::min(0.5 * dx / speed, cap) : cap;
  if (params.gamma == 0.0) return dt;
  const std::size_t top = bandLimit == 0 ? n / 2 - 1 : std::min(bandLimit, n / 2 - 1);

  // Dominant non-mean mode of the field.
  spectral::RealFft fft(n);
  std::vector<cplx> hat(n / 2 + 1);
  fft.forward(field, hat);
  std::size_t dominant = 0;
  for (std::size_t k = 1; k <= top; ++k) {
    if (dominant == 0 || std::abs(hat[k]) > std::abs(hat[dominant])) dominant = k;
  }
  if (dominant == 0 || std::abs(hat[dominant]) == 0.0) return dt;
  // Keep the phase slip against that mode below kMaxSlip per step on every retained mode.
  const double q = 2.0 * pi * static_cast<double>(dominant) / domainLength;
  double slip = 0.0;
  for (std::size_t k = dominant; k <= top; ++k) {
    const double kappa = 2.0 * pi * static_cast<double>(k) / domainLength;
    slip = std::max(slip, std::abs(dispersion(params, kappa) - dispersion(params, kappa - q)));
  }
  return slip > 0.0 ? std::min(dt, kMaxSlip / slip) : dt;
}

std::size_t default_grid(waves::Family family) {
  switch (family) {
    case waves::Family::FifthOrderSoliton: return 1024;
    case waves::Family::KdVSoliton: return 512;
    case waves::Family::KdVCnoidal: return 128;
    case waves::Family::FifthOrderCnoidal: return 256;
  }
  return 1024;
}

int default_periods(waves::Family) { return 1; }

ExperimentReport stability_experiment(const waves::WaveProfile& profile,
                                      const Perturbation& perturbation,
                                      const ExperimentOptions& options) {
  if (options.records < 1) throw DomainError("records must be at least 1");
  if (options.periods < 0) throw DomainError("periods must not be negative");
  if (!(options.horizon >= 0.0) || !std::isfinite(options.horizon)) {
    throw DomainError("horizon must be a finite non-negative time (0 selects the default)");
  }
  if (!(options.dt >= 0.0) || !std::isfinite(options.dt)) {
    throw DomainError("dt must be a finite non-negative step (0 selects the default)");
  }
  if (!(options.dtCap > 0.0)) throw DomainError("dt cap must be positive");
  const std::size_t n = options.gridN > 0 ? options.gridN : default_grid(profile.family());
  const int periods = options.periods > 0 ? options.periods : default_periods(profile.family());
  if (periods > 1 && !profile.periodic()) {
    throw DomainError("a solitary wave occupies a single box; periods must be 1");
  }
  const double length = profile.period() * periods;
  const auto x = grid(n, length);
  std::vector<double> base(n);
  for (std::size_t j = 0; j < n; ++j) base[j] = profile(x[j]);
  auto field = apply_perturbation(base, length, perturbation, profile.amplitude());
  auto params = profile.params();
  params.cee = options.advection;
  SpectralState state = make_state(params, length, field);
  const std::size_t band =
      options.bandLimit > 0
          ? std::min(options.bandLimit, n / 2 - 1)
          : std::min(n / 2 - 1, std::max<std::size_t>(8, (3 * content_band(field) + 1) / 2));

  ExperimentReport rep;
  rep.family = profile.family();
  rep.perturbation = perturbation;
  rep.gridN = n;
  rep.periods = periods;
  rep.bandLimit = band;
  rep.domainLength = length;
  rep.amplitude = profile.amplitude();
  rep.characteristicTime = characteristic_time(profile);
  rep.horizon = options.horizon > 0.0 ? options.horizon : 10.0 * rep.characteristicTime;
  const double dt = options.dt > 0.0 ? options.dt
                                     : default_dt(state.field, state.params, length, options.dtCap, band);
  const long long steps = std::max(1LL, static_cast<long long>(std::ceil(rep.horizon / dt - 1e-9)));
  rep.dt = rep.horizon / static_cast<double>(steps);
  const int every = static_cast<int>(std::max(1LL, steps / options.records));

  rep.records = evolve(state, rep.horizon, dt, every, base, band);
  const auto& first = rep.records.front();
  rep.initialH1 = first.distH1;
  rep.initialH2 = first.distH2;
  for (const auto& r : rep.records) {
    rep.maxH1 = std::max(rep.maxH1, r.distH1);
    rep.maxH2 = std::max(rep.maxH2, r.distH2);
    const double m0 = std::abs(first.mass) > 0.0 ? std::abs(first.mass) : 1.0;
    const double p0 = std::abs(first.momentum) > 0.0 ? std::abs(first.momentum) : 1.0;
    rep.massDrift = std::max(rep.massDrift, std::abs(r.mass - first.mass) / m0);
    rep.momentumDrift = std::max(rep.momentumDrift, std::abs(r.momentum - first.momentum) / p0);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rep.ratioH1 = rep.initialH1 > 0.0 ? rep.maxH1 / rep.initialH1 : nan;
  rep.ratioH2 = rep.initialH2 > 0.0 ? rep.maxH2 / rep.initialH2 : nan;
  rep.final = std::move(state);
  return rep;
}

void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticsRecord> records) {
  out << "time,mass,momentum,distH1,distH2,shift\n";
  auto num = [](double v) { return std::isnan(v) ? std::string() : format_number(v); };
  for (const auto& r : records) {
    out << num(r.time) << ',' << num(r.mass) << ',' << num(r.momentum) << ',' << num(r.distH1)
        << ',' << num(r.distH2) << ',' << num(r.shift) << '\n';
  }
}

void write_snapshot_csv(std::ostream& out, const SpectralState& state) {
  out << "# time=" << format_number(state.time) << " gridN=" << state.gridN
      << " domainLength=" << format_number(state.domainLength) << "\n";
  out << "x,u\n";
  const auto x = grid(state.gridN, state.domainLength);
  for (std::size_t j = 0; j < state.gridN; ++j) {
    out << format_number(x[j]) << ',' << format_number(state.field[j]) << '\n';
  }
}

}  // namespace fkdv::pde
