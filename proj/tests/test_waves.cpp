#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "fkdv/waves.hpp"
#include "oracles.hpp"

using namespace fkdv;
using namespace fkdv::waves;

namespace {

double max_asymmetry(const WaveProfile& p) {
  // Grid is -W + jh; the mirror of index j (j >= 1) is n - j.
  const auto u = p.u();
  const std::size_t n = u.size();
  double worst = 0;
  for (std::size_t j = 1; j < n; ++j) worst = std::max(worst, std::abs(u[j] - u[n - j]));
  return worst;
}

}  // namespace

TEST_CASE("fifth-order soliton closed form") {
  const auto p = build_fifth_order_soliton(1, 1, 1);
  CHECK(p(0.0) == doctest::Approx(105.0 / 169).epsilon(1e-15));
  CHECK(p.params().speed == doctest::Approx(36.0 / 169).epsilon(1e-15));
  CHECK(p.params().fluxA == 0.0);
  CHECK(p(50.0) < 1e-9);
  const double kappa = 0.5 * std::sqrt(1.0 / 13);
  CHECK(p(3.0) == doctest::Approx(105.0 / 169 * std::pow(1 / std::cosh(kappa * 3), 4)).epsilon(1e-14));
  CHECK(max_asymmetry(p) < 1e-12);
  CHECK(p.u()[0] < 1e-14 * p.amplitude());
  CHECK_THROWS_AS(build_fifth_order_soliton(1, -1, 1), DomainError);
  CHECK_THROWS_AS(build_fifth_order_soliton(1, 1, 0), DomainError);
  CHECK_THROWS_AS(build_fifth_order_soliton(0, 1, 1), DomainError);
}

TEST_CASE("kdv soliton closed form and norm") {
  const auto p = build_kdv_soliton(1, 1, 1);
  CHECK(p(0.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK_NOTHROW(build_kdv_soliton(1, -1, -1));
  CHECK_THROWS_AS(build_kdv_soliton(1, 1, -1), DomainError);
  CHECK_THROWS_AS(build_kdv_soliton(1, 1, 0), DomainError);

  // Trapezoid rule on the window is spectrally accurate for a decayed profile.
  const auto u = p.u();
  const double h = p.xi()[1] - p.xi()[0];
  double sum = 0;
  for (double v : u) sum += v * v;
  CHECK(std::abs(sum * h / 24.0 - 1) < 1e-6);
}

TEST_CASE("integral of sech^4 over the line is 4/3") {
  const double v = oracle::integrate([](double x) { return std::pow(1 / std::cosh(x), 4); }, -40, 40);
  CHECK(v == doctest::Approx(4.0 / 3).epsilon(1e-13));
}

TEST_CASE("kdv cnoidal parameters") {
  const auto cp = kdv_cnoidal_params(1, 1, 1, 1);
  CHECK(cp.delta == doctest::Approx(33.0));
  CHECK(cp.amplitude == doctest::Approx((3 + std::sqrt(33.0)) / 2).epsilon(1e-15));
  CHECK(std::abs(cp.modulus * cp.modulus - 0.5 * (1 + 3 / std::sqrt(33.0))) < 1e-13);
  CHECK(std::abs(cp.emm - 6 * cp.modulus * cp.modulus) < 1e-13);
  const double lambda = 4 * std::sqrt(3.0) * oracle::K(cp.modulus) / std::pow(33.0, 0.25);
  CHECK(cp.wavelength == doctest::Approx(lambda).epsilon(1e-13));
  // Modulus from the amplitude form sqrt(A gamma)/Delta^{1/4}.
  CHECK(cp.modulus == doctest::Approx(std::sqrt(cp.amplitude) / std::pow(33.0, 0.25)).epsilon(1e-14));

  CHECK_THROWS_AS(kdv_cnoidal_params(1, 1, 1, -1), DomainError);
  CHECK_THROWS_AS(kdv_cnoidal_params(1, -1, 1, 1), DomainError);
  CHECK_THROWS_AS(kdv_cnoidal_params(1, 1, 1, 0), DegenerateModulusError);
}

TEST_CASE("kdv cnoidal profile") {
  const auto p = build_kdv_cnoidal(1, 1, 1, 1);
  const auto& cp = *p.cnoidal();
  CHECK(p(0.0) == doctest::Approx(cp.amplitude).epsilon(1e-15));
  CHECK(std::abs(p(cp.halfPeriod)) < 1e-12);
  CHECK(p.period() == cp.wavelength);
  CHECK(max_asymmetry(p) < 1e-12);
  for (double v : p.u()) CHECK(v >= 0);
  for (double x : {0.0, 0.3, 1.7, 2.9}) CHECK(std::abs(p(x + cp.wavelength) - p(x)) < 1e-11);

  // Compact form 2 M K^2/L^2 cn^2(K xi / L).
  const double K = oracle::K(cp.modulus);
  const double L = cp.halfPeriod;
  for (double x : {0.0, 0.4, 1.1, 2.5}) {
    const double compact = 2 * cp.emm * K * K / (L * L) * std::pow(oracle::cn(K * x / L, cp.modulus), 2);
    CHECK(std::abs(compact - p(x)) < 1e-11);
  }
}

TEST_CASE("fifth-order cnoidal profile") {
  const auto p = build_fifth_order_cnoidal(1, 1, 1);
  CHECK(p(0.0) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(p.cnoidal()->modulus == doctest::Approx(std::numbers::sqrt2 / 2).epsilon(1e-16));
  CHECK(build_fifth_order_cnoidal(3, 0.2, 7).cnoidal()->modulus == p.cnoidal()->modulus);
  const double expected = 2 * std::numbers::sqrt2 * std::pow(42.0, 0.25) * oracle::K(std::numbers::sqrt2 / 2);
  CHECK(p.period() == doctest::Approx(expected).epsilon(1e-13));
  CHECK(p.period() == doctest::Approx(13.35).epsilon(1e-3));
  CHECK_THROWS_AS(build_fifth_order_cnoidal(1, -1, 1), DomainError);
}

TEST_CASE("family names round trip") {
  for (Family f : {Family::FifthOrderSoliton, Family::KdVSoliton, Family::KdVCnoidal,
                   Family::FifthOrderCnoidal}) {
    CHECK(parse_family(family_name(f)) == f);
  }
  CHECK_THROWS_AS(parse_family("sech"), DomainError);
}

TEST_CASE("central difference weights") {
  const auto w = central_difference_weights(1, 1);
  CHECK(w[0] == doctest::Approx(-0.5));
  CHECK(w[1] == doctest::Approx(0.0));
  CHECK(w[2] == doctest::Approx(0.5));
  const auto w2 = central_difference_weights(2, 1);
  CHECK(w2[0] == doctest::Approx(1.0));
  CHECK(w2[1] == doctest::Approx(-2.0));
  // Exact on x^4 for the fourth derivative with half-width 4.
  const auto w4 = central_difference_weights(4, 4);
  double acc = 0;
  for (int s = -4; s <= 4; ++s) acc += w4[static_cast<std::size_t>(s + 4)] * std::pow(s, 4);
  CHECK(acc == doctest::Approx(24.0));
}

TEST_CASE("conservation residuals of the fifth-order soliton") {
  const auto p = build_fifth_order_soliton(1, 1, 1, 2048);
  const auto r = conservation_residuals(p);
  CHECK(r.max_abs_residualA() < 1e-7);
  CHECK(std::abs(r.meanA) < 1e-7);
  CHECK(std::abs(r.meanB) < 1e-7);
  CHECK(r.stdA / r.scaleA < 1e-6);
}

TEST_CASE("conservation residuals of the kdv soliton") {
  const auto r = conservation_residuals(build_kdv_soliton(2, 0.5, 1.5));
  CHECK(r.stdA / r.scaleA < 1e-6);
  CHECK(std::abs(r.meanA) < 1e-6);
  CHECK(r.stdB / r.scaleB < 1e-6);
  CHECK(std::abs(r.meanB) < 1e-6);
}

TEST_CASE("conservation residuals of the cnoidal waves") {
  const auto kdv = conservation_residuals(build_kdv_cnoidal(1, 1, 1, 1));
  CHECK(kdv.meanA == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(kdv.stdA / kdv.scaleA < 1e-6);
  CHECK(std::abs(kdv.meanB) < 1e-6);

  const auto fifth = conservation_residuals(build_fifth_order_cnoidal(1, 1, 1));
  CHECK(fifth.meanA == doctest::Approx(-5.0 / 56).epsilon(1e-6));
  CHECK(fifth.stdA / fifth.scaleA < 1e-6);
  CHECK(std::abs(fifth.meanB) < 1e-6);
  CHECK(fifth.stdB / fifth.scaleB < 1e-6);
}

TEST_CASE("wrong speed breaks the first law") {
  auto p = build_fifth_order_soliton(1, 1, 1);
  auto params = p.params();
  params.speed *= 1.1;
  SampledField f{{p.xi().begin(), p.xi().end()}, {p.u().begin(), p.u().end()}, 0.0};
  const auto r = conservation_residuals(f, params);
  CHECK(r.max_abs_residualA() > 1e-3 * p.amplitude());
}

TEST_CASE("zero field satisfies both laws trivially") {
  SampledField f;
  for (int j = 0; j < 64; ++j) {
    f.xi.push_back(j * 0.1);
    f.u.push_back(0.0);
  }
  MediumParams params;
  params.alpha = params.beta = params.speed = 1;
  const auto r = conservation_residuals(f, params);
  CHECK(r.meanA == 0.0);
  CHECK(r.meanB == 0.0);
  CHECK(r.max_abs_residualA() == 0.0);
  f.period = 6.4;
  CHECK(conservation_residuals(f, params).max_abs_residualB() == 0.0);
}

TEST_CASE("under-resolved profile is rejected") {
  CHECK_THROWS_AS(conservation_residuals(build_fifth_order_soliton(1, 1, 1, 64)), ResolutionError);
}

TEST_CASE("csv output") {
  const auto p = build_kdv_soliton(1, 1, 1, 32);
  std::ostringstream out;
  write_csv(out, p);
  const std::string s = out.str();
  CHECK(s.rfind("# family=kdv-soliton", 0) == 0);
  CHECK(s.find("\nxi,u\n") != std::string::npos);
}
