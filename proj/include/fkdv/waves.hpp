#pragma once

// Traveling-wave solutions of u_t + C u_x + gamma u u_x + alpha u_xxx = beta u_xxxxx
// in the variable xi = x - c t:
//
//   fifth-soliton  u = 105 alpha^2/(169 gamma beta) sech^4(xi/2 sqrt(alpha/(13 beta))),
//                  c = 36 alpha^2/(169 beta)
//   kdv-soliton    u = 3c/gamma sech^2(xi/2 sqrt(c/alpha))                 (beta = 0)
//   kdv-cnoidal    u = A cn^2(Delta^{1/4} xi/(2 sqrt(3 alpha)); k)          (beta = 0)
//                  Delta = 9c^2 + 24 A_flux gamma, A = (3c + sqrt Delta)/(2 gamma),
//                  k^2 = (1 + 3c/sqrt Delta)/2
//   fifth-cnoidal  u = 5c/(2 gamma) cn^4(sqrt2/2 (c/(42 beta))^{1/4} xi; sqrt2/2)  (alpha = 0)
//
// Each satisfies the first conservation law
//   -c u + gamma/2 u^2 + alpha u'' - beta u'''' = A_flux
// and the second
//   -c/2 u^2 + gamma/3 u^3 + alpha (u u'' - u'^2/2) - beta (u u'''' - u' u''' + u''^2/2) = B_flux.

#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fkdv/elliptic.hpp"
#include "fkdv/errors.hpp"

namespace fkdv::waves {

enum class Family { FifthOrderSoliton, KdVSoliton, KdVCnoidal, FifthOrderCnoidal };

std::string_view family_name(Family family);
Family parse_family(std::string_view name);
bool is_periodic(Family family);

struct MediumParams {
  double gamma = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  double cee = 0.0;  // linear advection C
  double speed = 0.0;
  double fluxA = 0.0;
  double fluxB = 0.0;
};

// Derived quantities of a cnoidal wave. delta and emm are defined for the
// cn^2 family only and are zero for cn^4.
struct CnoidalParams {
  double delta = 0.0;
  double amplitude = 0.0;
  double modulus = 0.0;
  double emm = 0.0;  // M(c) = 6 alpha A / sqrt(Delta)
  double wavelength = 0.0;
  double halfPeriod = 0.0;
};

inline constexpr double kModulusUpperGuard = 1.0 - 1e-10;
inline constexpr double kModulusLowerGuard = 1e-8;
inline constexpr double kSolitonWindowWidths = 20.0;

CnoidalParams kdv_cnoidal_params(double gamma, double alpha, double c, double fluxA);
CnoidalParams fifth_order_cnoidal_params(double gamma, double beta, double c);

// u(xi) = amplitude * f(wavenumber * xi)^power, f = sech or cn(.; modulus).
template <class Real>
class ProfileEvaluator {
 public:
  ProfileEvaluator(Family family, const MediumParams& p) : family_(family) {
    using std::pow;
    using std::sqrt;
    const Real gamma = p.gamma, alpha = p.alpha, beta = p.beta, c = p.speed;
    Real modulus = 0;
    switch (family) {
      case Family::FifthOrderSoliton:
        amplitude_ = 105 * alpha * alpha / (169 * gamma * beta);
        wavenumber_ = sqrt(alpha / (13 * beta)) / 2;
        power_ = 4;
        break;
      case Family::KdVSoliton:
        amplitude_ = 3 * c / gamma;
        wavenumber_ = sqrt(c / alpha) / 2;
        power_ = 2;
        break;
      case Family::KdVCnoidal: {
        const Real delta = 9 * c * c + 24 * Real(p.fluxA) * gamma;
        const Real root = sqrt(delta);
        amplitude_ = (3 * c + root) / (2 * gamma);
        modulus = sqrt((1 + 3 * c / root) / 2);
        wavenumber_ = sqrt(root) / (2 * sqrt(3 * alpha));
        power_ = 2;
        break;
      }
      case Family::FifthOrderCnoidal:
        amplitude_ = 5 * c / (2 * gamma);
        modulus = sqrt(Real(2)) / 2;
        wavenumber_ = sqrt(Real(2)) / 2 * pow(c / (42 * beta), Real(0.25));
        power_ = 4;
        break;
    }
    if (is_periodic(family)) jacobi_.emplace(modulus);
  }

  Real operator()(Real xi) const {
    using std::cosh;
    const Real z = wavenumber_ * xi;
    const Real f = jacobi_ ? jacobi_->cn(z) : Real(1) / cosh(z);
    const Real f2 = f * f;
    return amplitude_ * (power_ == 4 ? f2 * f2 : f2);
  }

  Real amplitude() const { return amplitude_; }
  Real wavenumber() const { return wavenumber_; }
  // K / wavenumber for the periodic families, 0 otherwise.
  Real half_period() const { return jacobi_ ? jacobi_->quarter_period() / wavenumber_ : Real(0); }
  int power() const { return power_; }
  Family family() const { return family_; }

 private:
  Family family_;
  Real amplitude_ = 0;
  Real wavenumber_ = 0;
  int power_ = 2;
  std::optional<elliptic::JacobiEvaluator<Real>> jacobi_;
};

// An immutable traveling wave: family, parameters, closed-form evaluator and
// uniform samples. Periodic families are sampled on [-L, L) with L half the
// wavelength; solitary ones on [-W, W) with W twenty characteristic widths.
class WaveProfile {
 public:
  WaveProfile(Family family, MediumParams params,
              std::optional<CnoidalParams> cnoidal, std::size_t samples);

  Family family() const { return family_; }
  const MediumParams& params() const { return params_; }
  const std::optional<CnoidalParams>& cnoidal() const { return cnoidal_; }
  bool periodic() const { return is_periodic(family_); }

  double amplitude() const { return evaluator_.amplitude(); }
  double wavenumber() const { return evaluator_.wavenumber(); }
  // 1/wavenumber for solitary waves (the sech argument scale), the wavelength
  // for cnoidal ones.
  double characteristic_width() const;
  // Wavelength, or the full sampling window 2W for solitary waves.
  double period() const { return period_; }
  double window_start() const { return -period_ / 2; }

  double operator()(double xi) const { return evaluator_(xi); }

  template <class Real>
  ProfileEvaluator<Real> evaluator() const {
    return ProfileEvaluator<Real>(family_, params_);
  }

  std::span<const double> xi() const { return xi_; }
  std::span<const double> u() const { return u_; }
  std::size_t sample_count() const { return u_.size(); }

  // Same wave, different number of samples over the same window.
  WaveProfile resampled(std::size_t samples) const;

 private:
  Family family_;
  MediumParams params_;
  std::optional<CnoidalParams> cnoidal_;
  ProfileEvaluator<double> evaluator_;
  double period_ = 0.0;
  std::vector<double> xi_;
  std::vector<double> u_;
};

inline constexpr std::size_t kDefaultSolitonSamples = 2048;
inline constexpr std::size_t kDefaultCnoidalSamples = 1024;

WaveProfile build_fifth_order_soliton(double gamma, double alpha, double beta,
                                      std::size_t samples = kDefaultSolitonSamples);
WaveProfile build_kdv_soliton(double gamma, double alpha, double c,
                              std::size_t samples = kDefaultSolitonSamples);
WaveProfile build_kdv_cnoidal(double gamma, double alpha, double c, double fluxA,
                              std::size_t samples = kDefaultCnoidalSamples);
WaveProfile build_fifth_order_cnoidal(double gamma, double beta, double c,
                                      std::size_t samples = kDefaultCnoidalSamples);

// Uniform samples of some field; period == 0 marks a non-periodic window.
struct SampledField {
  std::vector<double> xi;
  std::vector<double> u;
  double period = 0.0;
};

struct ConservationResiduals {
  std::vector<double> xi;         // points where the laws were evaluated
  std::vector<double> residualA;  // first law minus its grid mean
  std::vector<double> residualB;  // second law minus its grid mean
  double meanA = 0.0;
  double meanB = 0.0;
  double stdA = 0.0;
  double stdB = 0.0;
  // Largest pointwise sum of |terms|: the size of what cancels in each law.
  double scaleA = 0.0;
  double scaleB = 0.0;

  double max_abs_residualA() const;
  double max_abs_residualB() const;
};

// Spectral derivatives for periodic fields, 8th-order central differences on
// interior points otherwise. Throws ResolutionError when the fourth
// derivative is not resolved to 1e-4 of its size.
ConservationResiduals conservation_residuals(const WaveProfile& profile);
ConservationResiduals conservation_residuals(const SampledField& field,
                                             const MediumParams& params);

// Central-difference weights for the given derivative on offsets -half..half.
std::vector<double> central_difference_weights(int derivative, int half_width);

// "# family=... gamma=..." line, then "xi,u" and one row per sample.
void write_csv(std::ostream& out, const WaveProfile& profile);
std::string describe(const WaveProfile& profile);

}  // namespace fkdv::waves
