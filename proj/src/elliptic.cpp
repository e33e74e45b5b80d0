#include "fkdv/elliptic.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace fkdv::elliptic {

EllipticContext::EllipticContext(double k) : k_(k) {
  require_modulus_below_one(k, "EllipticContext");
  kprime_ = complementary(k);
  const AgmSequence<double> agm(k, kprime_);
  K_ = agm.K();
  D_ = K_ * agm.scaled_defect();
  E_ = K_ - k * k * D_;
  if (k == 0.0) {
    Kprime_ = std::numeric_limits<double>::infinity();
    Eprime_ = 1.0;
    nome_ = 0.0;
    decay_ = std::numeric_limits<double>::infinity();
    return;
  }
  const AgmSequence<double> comp(kprime_, k);
  Kprime_ = comp.K();
  Eprime_ = Kprime_ * (1.0 - kprime_ * kprime_ * comp.scaled_defect());
  decay_ = std::numbers::pi * Kprime_ / K_;
  nome_ = std::exp(-decay_);
}

double EllipticContext::dK_dk() const {
  if (k_ == 0.0) return 0.0;
  // (E - k'^2 K)/(k k'^2), with E - k'^2 K = k^2 (K - D).
  return k_ * (K_ - D_) / (kprime_ * kprime_);
}

double EllipticContext::dE_dk() const {
  // (E - K)/k = -k D
  return -k_ * D_;
}

double EllipticContext::dKprime_dk() const {
  if (k_ == 0.0) return -std::numeric_limits<double>::infinity();
  return -(Eprime_ - k_ * k_ * Kprime_) / (k_ * kprime_ * kprime_);
}

double EllipticContext::dD_dk() const {
  if (k_ == 0.0) return 0.0;
  // D = (K - E)/k^2
  return (dK_dk() - dE_dk()) / (k_ * k_) - 2.0 * D_ / k_;
}

double complete_K(double k) { return complete_K<double>(k); }
double complete_E(double k) { return complete_E<double>(k); }
double legendre_D(double k) { return legendre_D<double>(k); }
double jacobi_cn(double z, double k) { return jacobi_cn<double>(z, k); }

}  // namespace fkdv::elliptic
