#pragma once

// Periodic pseudospectral integration of
//   u_t + C u_x + gamma u u_x + alpha u_xxx = beta u_xxxxx
// on x in [-Ldom/2, Ldom/2). In transform space the linear part has the purely
// imaginary symbol i(-C kappa + alpha kappa^3 + beta kappa^5) and is propagated
// exactly by an integrating factor; gamma u u_x = (gamma/2)(u^2)_x is formed on
// a 3/2-padded grid. Time stepping is classical RK4 on the transformed variable.
//
// Sobolev norms use the discrete transform hat f_k = (1/N) sum_j f_j e^{-i kappa_k x_j}:
//   ||f||^2_{H^s} = Ldom sum_k (1 + kappa_k^2)^s |hat f_k|^2.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fkdv/spectral.hpp"
#include "fkdv/waves.hpp"

namespace fkdv::pde {

using spectral::cplx;

inline constexpr double kBlowUpFactor = 100.0;
inline constexpr std::size_t kMinFifthOrderGrid = 256;

struct SpectralState {
  std::size_t gridN = 0;
  double domainLength = 0.0;
  std::vector<double> field;
  double time = 0.0;
  waves::MediumParams params;
};

// Validates the grid: power of two, at least 256 points when beta != 0.
SpectralState make_state(const waves::MediumParams& params, double domainLength,
                         std::vector<double> field, double time = 0.0);

// x_j = -Ldom/2 + j Ldom/N
std::vector<double> grid(std::size_t n, double domainLength);

double mass(const SpectralState& s);
double momentum(const SpectralState& s);

class PseudospectralSolver {
 public:
  // Modes above bandLimit (0: all but Nyquist) are held at zero.
  PseudospectralSolver(const waves::MediumParams& params, std::size_t gridN,
                       double domainLength, double dt, std::size_t bandLimit = 0);

  std::size_t grid_size() const { return n_; }
  std::size_t band_limit() const { return band_; }
  double domain_length() const { return length_; }
  double dt() const { return dt_; }

  // Advance the transformed field by one step. Returns max |u| seen on the
  // padded grid at the start of the step.
  double advance(std::span<cplx> hat);

  void to_spectral(std::span<const double> field, std::span<cplx> hat);
  void to_physical(std::span<const cplx> hat, std::span<double> field);

 private:
  // out = -(i gamma kappa / 2) F[u^2], dealiased; returns max |u| on the padded grid.
  double nonlinear(std::span<const cplx> hat, std::span<cplx> out);
  void set_background(double mean);

  waves::MediumParams params_;
  std::size_t n_;
  std::size_t padded_;
  std::size_t band_;
  double length_;
  double dt_;
  std::vector<double> kappa_;
  double background_ = 0.0;
  std::vector<cplx> half_;  // exp(L dt/2)
  std::vector<cplx> full_;  // exp(L dt)
  spectral::RealFft fft_;
  spectral::RealFft padded_fft_;
  std::vector<cplx> padded_hat_;
  std::vector<double> padded_field_;
  std::vector<cplx> ka_, kb_, kc_, kd_, stage_;
};

// One step of size dt from a fresh solver.
SpectralState step(const SpectralState& state, double dt);

struct OrbitalDistance {
  double distance = 0.0;
  double shift = 0.0;  // y minimizing ||u - phi(. + y)||
  bool multipleMinima = false;
};

// Shift-minimized Sobolev distance to the translates of a fixed reference,
// sampled on the same grid. Caches the reference transform.
class OrbitalMetric {
 public:
  OrbitalMetric(std::span<const double> reference, double domainLength);

  OrbitalDistance distance(std::span<const double> field, int sobolevOrder);
  OrbitalDistance distance_from_spectrum(std::span<const cplx> hat, int sobolevOrder);
  double norm(std::span<const double> field, int sobolevOrder);

  std::span<const double> kappa() const { return kappa_; }

 private:
  std::span<const double> weights(int sobolevOrder) const;

  std::size_t n_;
  double length_;
  std::vector<double> kappa_;
  std::vector<double> weights_[3];  // (1 + kappa^2)^s times the half-spectrum multiplicity
  std::vector<cplx> reference_hat_;
  spectral::RealFft fft_;
  std::vector<cplx> hat_;
  std::vector<cplx> cross_;
  std::vector<double> correlation_;
};

// The reference is the profile sampled with field.size() points over its own window.
OrbitalDistance orbital_distance(std::span<const double> field,
                                 const waves::WaveProfile& reference, int sobolevOrder);

struct DiagnosticsRecord {
  double time = 0.0;
  double mass = 0.0;
  double momentum = 0.0;
  double distH1 = std::numeric_limits<double>::quiet_NaN();
  double distH2 = std::numeric_limits<double>::quiet_NaN();
  double shift = std::numeric_limits<double>::quiet_NaN();
};

// Advances `state` to tEnd in equal steps no longer than dt, recording every
// `recordEvery` steps and at the end. Distances are measured against
// `reference` when given. Throws BlowUpError.
std::vector<DiagnosticsRecord> evolve(SpectralState& state, double tEnd, double dt,
                                      int recordEvery,
                                      std::span<const double> reference = {},
                                      std::size_t bandLimit = 0);

enum class PerturbationKind { None, Scale, Mode, Noise };

struct Perturbation {
  PerturbationKind kind = PerturbationKind::None;
  double epsilon = 0.0;
  int mode = 1;
  std::uint64_t seed = 0;
};

// "none", "scale:eps", "mode:eps", "noise:eps"
Perturbation parse_perturbation(std::string_view text);
std::string describe(const Perturbation& p);

// scale: (1+eps) u; mode: u + eps A cos(2 pi m x / Ldom); noise: u + eps A eta,
// eta a seeded random combination of the lowest N/8 modes with max |eta| = 1.
std::vector<double> apply_perturbation(std::span<const double> field, double domainLength,
                                       const Perturbation& p, double amplitude);

// width/|c| for solitary waves, wavelength/|c| for cnoidal ones.
double characteristic_time(const waves::WaveProfile& profile);

// omega(kappa) = -C kappa + alpha kappa^3 + beta kappa^5
double dispersion(const waves::MediumParams& p, double kappa);

inline constexpr double kContentThreshold = 1e-14;

// Highest mode below Nyquist whose magnitude exceeds kContentThreshold times the largest.
std::size_t content_band(std::span<const double> field);

// min(0.5 dx / max|gamma u|, cap, kMaxSlip / S) with
// S = max_k |omega(kappa_k) - omega(kappa_k - q)| over the retained modes and q
// the dominant nonzero mode of the field. The integrating factor leaves modes
// coupled through q with a relative phase that advances by S dt per step; near
// 2 pi it aliases to a stationary forcing and RK4 amplifies it, even from
// round-off. Below pi the scheme is stable; pi/4 keeps momentum drift near 1e-9.
inline constexpr double kMaxSlip = 0.7853981633974483;
double default_dt(std::span<const double> field, const waves::MediumParams& params,
                  double domainLength, double cap, std::size_t bandLimit = 0);

// Grid and box (in wavelengths) used when the options leave them at 0.
std::size_t default_grid(waves::Family family);
int default_periods(waves::Family family);

struct ExperimentOptions {
  std::size_t gridN = 0;  // 0 selects default_grid
  int periods = 0;        // wavelengths in the box; 0 selects default_periods
  std::size_t bandLimit = 0;  // 0: 3/2 of the initial content_band, at least 8
  double dt = 0.0;        // 0 selects default_dt with dtCap
  double dtCap = 0.005;
  double advection = 0.0;  // C in the PDE; the wave then moves at c + C
  double horizon = 0.0;  // 0 selects 10 characteristic times
  int records = 100;
};

struct ExperimentReport {
  waves::Family family{};
  Perturbation perturbation;
  std::size_t gridN = 0;
  int periods = 1;
  std::size_t bandLimit = 0;
  double domainLength = 0.0;
  double dt = 0.0;
  double horizon = 0.0;
  double amplitude = 0.0;
  double characteristicTime = 0.0;
  std::vector<DiagnosticsRecord> records;
  double initialH1 = 0.0, initialH2 = 0.0;
  double maxH1 = 0.0, maxH2 = 0.0;
  double ratioH1 = 0.0, ratioH2 = 0.0;  // max / initial, NaN when initial is 0
  double massDrift = 0.0;               // max relative deviation from t = 0
  double momentumDrift = 0.0;
  SpectralState final;
};

ExperimentReport stability_experiment(const waves::WaveProfile& profile,
                                      const Perturbation& perturbation,
                                      const ExperimentOptions& options);

void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticsRecord> records);
void write_snapshot_csv(std::ostream& out, const SpectralState& state);

}  // namespace fkdv::pde
