#pragma once

// Complete elliptic integrals and the Jacobi functions sn, cn, dn.
//
// Everything is built on one arithmetic-geometric-mean sequence
//   a0 = 1, b0 = k', c0 = k,
//   a(n+1) = (a + b)/2,  b(n+1) = sqrt(a b),  c(n+1) = c(n)^2 / (4 a(n+1)),
// which gives K = pi / (2 a_N), K - E = K sum 2^(n-1) c_n^2, and the
// descending Landen recursion for the Jacobi functions. The routines are
// templates over the real type so that the Fourier oracle can sample the
// same closed forms in binary128.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include <boost/math/constants/constants.hpp>

#include "fkdv/errors.hpp"

namespace fkdv::elliptic {

// Moduli below this use the trigonometric limits cn = cos, sn = sin, dn = 1.
inline constexpr double kTrigonometricLimit = 1e-8;

template <class Real>
Real pi_v() {
  return boost::math::constants::pi<Real>();
}

// sqrt(1 - k^2) without the cancellation of 1 - k*k near k = 1.
template <class Real>
Real complementary(Real k) {
  using std::sqrt;
  return sqrt((Real(1) - k) * (Real(1) + k));
}

// AGM sequence for the pair (k, k'). The complementary modulus is passed in
// explicitly so that K(k') can be formed from an exact complementary pair.
template <class Real>
class AgmSequence {
 public:
  static constexpr std::size_t kMaxLevels = 64;

  AgmSequence(Real k, Real kprime) {
    using std::abs;
    using std::sqrt;
    const Real eps = std::numeric_limits<Real>::epsilon();
    a_[0] = Real(1);
    b_[0] = kprime;
    c_[0] = k;
    ratio_[0] = Real(1);
    levels_ = 0;
    while (abs(c_[levels_]) > eps * a_[levels_] && levels_ + 1 < kMaxLevels) {
      const std::size_t n = levels_;
      a_[n + 1] = (a_[n] + b_[n]) / 2;
      b_[n + 1] = sqrt(a_[n] * b_[n]);
      c_[n + 1] = c_[n] * c_[n] / (4 * a_[n + 1]);
      // c(n+1)/k, formed without dividing by k so that k -> 0 stays exact.
      ratio_[n + 1] = ratio_[n] * c_[n] / (4 * a_[n + 1]);
      ++levels_;
    }
  }

  std::size_t levels() const { return levels_; }
  Real a(std::size_t n) const { return a_[n]; }
  Real c(std::size_t n) const { return c_[n]; }

  Real K() const { return pi_v<Real>() / (2 * a_[levels_]); }

  // sum_{n>=0} 2^(n-1) c_n^2 / k^2, so that K - E = k^2 K * this.
  Real scaled_defect() const {
    Real sum = Real(0.5);
    Real weight = Real(0.5);
    for (std::size_t n = 1; n <= levels_; ++n) {
      weight *= 2;
      sum += weight * ratio_[n] * ratio_[n];
    }
    return sum;
  }

 private:
  std::array<Real, kMaxLevels> a_{};
  std::array<Real, kMaxLevels> b_{};
  std::array<Real, kMaxLevels> c_{};
  std::array<Real, kMaxLevels> ratio_{};
  std::size_t levels_ = 0;
};

template <class Real>
void require_modulus_below_one(Real k, const char* what) {
  if (!(k >= Real(0)) || !(k < Real(1))) {
    throw DomainError(std::string(what) + ": modulus must satisfy 0 <= k < 1");
  }
}

template <class Real>
Real complete_K(Real k) {
  require_modulus_below_one(k, "complete_K");
  return AgmSequence<Real>(k, complementary(k)).K();
}

template <class Real>
Real complete_E(Real k) {
  if (!(k >= Real(0)) || !(k <= Real(1))) {
    throw DomainError("complete_E: modulus must satisfy 0 <= k <= 1");
  }
  if (k == Real(1)) return Real(1);
  const AgmSequence<Real> agm(k, complementary(k));
  return agm.K() * (Real(1) - k * k * agm.scaled_defect());
}

// D(k) = (K - E)/k^2 = int_0^{pi/2} sin^2 / sqrt(1 - k^2 sin^2).
// Evaluated from the AGM defect directly, so D(0) = pi/4 with no special case.
template <class Real>
Real legendre_D(Real k) {
  require_modulus_below_one(k, "legendre_D");
  const AgmSequence<Real> agm(k, complementary(k));
  return agm.K() * agm.scaled_defect();
}

template <class Real>
struct JacobiTriple {
  Real sn;
  Real cn;
  Real dn;
};

// sn, cn, dn at fixed modulus. The AGM sequence and K are computed once; each
// evaluation reduces the argument to [0, K] by the quarter-period symmetries
// and runs the descending Landen recursion there.
template <class Real>
class JacobiEvaluator {
 public:
  explicit JacobiEvaluator(Real k)
      : k_(k), agm_(k, complementary(k)), quarter_(agm_.K()) {
    require_modulus_below_one(k, "jacobi");
  }

  Real modulus() const { return k_; }
  Real quarter_period() const { return quarter_; }

  JacobiTriple<Real> operator()(Real z) const {
    using std::abs;
    using std::cos;
    using std::fmod;
    using std::sin;
    if (k_ < Real(kTrigonometricLimit)) {
      return {sin(z), cos(z), Real(1)};
    }
    // cn and dn are even, sn is odd.
    Real sn_sign = z < 0 ? Real(-1) : Real(1);
    Real cn_sign = Real(1);
    Real w = fmod(abs(z), 4 * quarter_);
    if (w > 2 * quarter_) {  // shift by the half period 2K
      w -= 2 * quarter_;
      sn_sign = -sn_sign;
      cn_sign = -cn_sign;
    }
    if (w > quarter_) {  // reflect about K: sn(2K - w) = sn(w), cn flips
      w = 2 * quarter_ - w;
      cn_sign = -cn_sign;
    }
    const auto t = landen(w);
    return {sn_sign * t.sn, cn_sign * t.cn, t.dn};
  }

  Real cn(Real z) const { return (*this)(z).cn; }
  Real sn(Real z) const { return (*this)(z).sn; }
  Real dn(Real z) const { return (*this)(z).dn; }

 private:
  JacobiTriple<Real> landen(Real w) const {
    using std::asin;
    using std::cos;
    using std::sin;
    const std::size_t levels = agm_.levels();
    Real phi = agm_.a(levels) * w;
    for (std::size_t n = 0; n < levels; ++n) phi *= 2;
    Real phi_prev = phi;
    for (std::size_t n = levels; n > 0; --n) {
      phi_prev = phi;
      phi = (phi + asin(agm_.c(n) / agm_.a(n) * sin(phi))) / 2;
    }
    const Real s = sin(phi);
    const Real c = cos(phi);
    const Real d = levels > 0 ? c / cos(phi_prev - phi) : Real(1);
    return {s, c, d};
  }

  Real k_;
  AgmSequence<Real> agm_;
  Real quarter_;
};

template <class Real>
Real jacobi_cn(Real z, Real k) {
  using std::isfinite;
  if (!isfinite(z)) throw DomainError("jacobi_cn: argument must be finite");
  return JacobiEvaluator<Real>(k).cn(z);
}

template <class Real>
JacobiTriple<Real> jacobi_sncndn(Real z, Real k) {
  using std::isfinite;
  if (!isfinite(z)) throw DomainError("jacobi_sncndn: argument must be finite");
  return JacobiEvaluator<Real>(k)(z);
}

// Immutable bundle of everything the cnoidal formulas need at one modulus.
class EllipticContext {
 public:
  explicit EllipticContext(double k);

  double k() const { return k_; }
  double kprime() const { return kprime_; }
  double K() const { return K_; }
  double E() const { return E_; }
  double Kprime() const { return Kprime_; }
  double Eprime() const { return Eprime_; }
  double D() const { return D_; }
  double nome() const { return nome_; }
  // pi K'/K, the decay rate of the cn^p Fourier coefficients.
  double decay() const { return decay_; }

  double dK_dk() const;
  double dE_dk() const;
  double dKprime_dk() const;
  double dD_dk() const;

 private:
  double k_, kprime_, K_, E_, Kprime_, Eprime_, D_, nome_, decay_;
};

// Double-precision entry points.
double complete_K(double k);
double complete_E(double k);
double legendre_D(double k);
double jacobi_cn(double z, double k);

}  // namespace fkdv::elliptic
