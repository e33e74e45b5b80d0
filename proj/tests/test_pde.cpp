#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "fkdv/errors.hpp"
#include "fkdv/pde.hpp"
#include "fkdv/spectral.hpp"
#include "fkdv/waves.hpp"

using namespace fkdv;
using namespace fkdv::pde;

namespace {
constexpr double pi = std::numbers::pi;

// Closed-form profile at x - shift, wrapped into the sampling window.
std::vector<double> sample_shifted(const waves::WaveProfile& p, std::size_t n, double shift) {
  const double L = p.period();
  const auto x = grid(n, L);
  std::vector<double> u(n);
  for (std::size_t j = 0; j < n; ++j) u[j] = p(std::remainder(x[j] - shift, L));
  return u;
}

// f(x - y) by phase rotation of the transform.
std::vector<double> spectral_shift(std::span<const double> f, double L, double y) {
  const std::size_t n = f.size();
  spectral::RealFft fft(n);
  std::vector<spectral::cplx> hat(n / 2 + 1);
  fft.forward(f, hat);
  for (std::size_t k = 0; k < hat.size(); ++k) {
    hat[k] *= std::polar(1.0, -2.0 * pi * static_cast<double>(k) / L * y);
  }
  hat.back() = 0.0;
  std::vector<double> out(n);
  fft.inverse(hat, out);
  return out;
}

// Sobolev norm built from FFTW output directly, with a plain loop.
double sobolev_norm(std::span<const double> f, double L, int s) {
  const std::size_t n = f.size();
  spectral::RealFft fft(n);
  std::vector<spectral::cplx> hat(n / 2 + 1);
  fft.forward(f, hat);
  double sum = 0.0;
  for (std::size_t k = 0; k < hat.size(); ++k) {
    const double q = 2.0 * pi * static_cast<double>(k) / L;
    const double m = (k == 0 || k == n / 2) ? 1.0 : 2.0;
    sum += m * std::pow(1.0 + q * q, s) * std::norm(hat[k]);
  }
  return std::sqrt(L * sum);
}

double l2_error(std::span<const double> a, std::span<const double> b, double L) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(sum * L / static_cast<double>(a.size()));
}

double max_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

// Distance to phi(. + y) minimized by brute force over a fine shift grid.
double brute_force_distance(std::span<const double> f, std::span<const double> ref, double L, int s,
                            double centre, double halfWidth) {
  double best = INFINITY;
  for (int pass = 0; pass < 3; ++pass) {
    double bestY = centre;
    for (int i = -200; i <= 200; ++i) {
      const double y = centre + halfWidth * i / 200.0;
      const auto g = spectral_shift(ref, L, -y);
      std::vector<double> d(f.size());
      for (std::size_t j = 0; j < f.size(); ++j) d[j] = f[j] - g[j];
      const double v = sobolev_norm(d, L, s);
      if (v < best) {
        best = v;
        bestY = y;
      }
    }
    centre = bestY;
    halfWidth /= 100.0;
  }
  return best;
}

waves::MediumParams linear_params(double alpha, double beta, double cee) {
  waves::MediumParams p;
  p.gamma = 0.0;
  p.alpha = alpha;
  p.beta = beta;
  p.cee = cee;
  return p;
}

}  // namespace

TEST_CASE("grid validation") {
  waves::MediumParams p;
  p.alpha = 1;
  p.beta = 1;
  CHECK_THROWS_AS(make_state(p, 10.0, std::vector<double>(100)), DomainError);
  CHECK_THROWS_AS(make_state(p, 10.0, std::vector<double>(128)), DomainError);
  CHECK_NOTHROW(make_state(p, 10.0, std::vector<double>(256)));
  p.beta = 0;
  CHECK_NOTHROW(make_state(p, 10.0, std::vector<double>(128)));
  CHECK_THROWS_AS(make_state(p, -1.0, std::vector<double>(128)), DomainError);
  std::vector<double> bad(128, 0.0);
  bad[3] = NAN;
  CHECK_THROWS_AS(make_state(p, 1.0, bad), DomainError);
}

TEST_CASE("linear single mode rotates at the dispersion relation") {
  const double L = 20.0;
  const std::size_t n = 256;
  const auto params = linear_params(1.0, 0.5, 0.3);
  const auto x = grid(n, L);
  for (int m : {1, 3, 7}) {
    const double q = 2 * pi * m / L;
    const double omega = -0.3 * q + q * q * q + 0.5 * std::pow(q, 5);
    std::vector<double> u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = std::cos(q * x[j]);
    auto s = make_state(params, L, u);
    const double dt = 0.01;
    for (int i = 0; i < 10; ++i) s = step(s, dt);
    std::vector<double> exact(n);
    for (std::size_t j = 0; j < n; ++j) exact[j] = std::cos(q * x[j] + omega * 10 * dt);
    CHECK(max_diff(s.field, exact) < 1e-11);
  }
}

TEST_CASE("constant field is a fixed point when C = 0") {
  waves::MediumParams p;
  p.gamma = 2.0;
  p.alpha = 1.0;
  p.beta = 0.7;
  auto s = make_state(p, 30.0, std::vector<double>(256, 0.4));
  evolve(s, 1.0, 0.05, 5);
  for (double v : s.field) CHECK(v == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("zero field gives zero diagnostics") {
  waves::MediumParams p;
  p.alpha = 1;
  p.beta = 1;
  std::vector<double> zero(256, 0.0);
  auto s = make_state(p, 30.0, zero);
  const auto rec = evolve(s, 1.0, 0.1, 2, zero);
  REQUIRE(rec.size() == 6);
  for (const auto& r : rec) {
    CHECK(r.mass == 0.0);
    CHECK(r.momentum == 0.0);
    CHECK(r.distH1 == 0.0);
    CHECK(r.distH2 == 0.0);
  }
  for (double v : s.field) CHECK(v == 0.0);
}

TEST_CASE("record schedule covers start, every k steps and the end") {
  waves::MediumParams p;
  p.alpha = 1;
  auto s = make_state(p, 10.0, std::vector<double>(64, 0.0));
  const auto rec = evolve(s, 1.0, 0.1, 3);
  REQUIRE(rec.size() == 5);  // t = 0, 0.3, 0.6, 0.9, 1.0
  CHECK(rec[1].time == doctest::Approx(0.3));
  CHECK(rec.back().time == 1.0);
  CHECK(s.time == 1.0);
}

TEST_CASE("fifth-order soliton translates at its speed") {
  const auto prof = waves::build_fifth_order_soliton(1, 1, 1, 1024);
  const double L = prof.period();
  const double c = prof.params().speed;
  auto s = make_state(prof.params(), L, std::vector<double>(prof.u().begin(), prof.u().end()));
  const auto rec = evolve(s, 10.0, 0.02, 50, prof.u());
  const auto exact = sample_shifted(prof, 1024, c * 10.0);
  const double amp = prof.amplitude();
  CHECK(l2_error(s.field, exact, L) < 1e-5 * amp);
  const auto d0 = orbital_distance(s.field, prof, 0);
  CHECK(d0.distance < 1e-5 * amp);
  CHECK(d0.shift == doctest::Approx(-c * 10.0).epsilon(1e-6));
  CHECK(rec.back().distH2 < 1e-4 * amp);
  for (const auto& r : rec) {
    CHECK(std::abs(r.mass - rec[0].mass) < 1e-10 * std::abs(rec[0].mass));
    CHECK(std::abs(r.momentum - rec[0].momentum) < 1e-8 * rec[0].momentum);
  }
  // diagnostics agree with physical-space quadrature of the final field
  CHECK(mass(s) == doctest::Approx(rec.back().mass).epsilon(1e-12));
  CHECK(momentum(s) == doctest::Approx(rec.back().momentum).epsilon(1e-12));
}

TEST_CASE("spectral convergence in the grid size") {
  const double c = 1.0;
  const double t = 1.0;
  std::vector<double> err;
  for (std::size_t n : {64, 128, 256}) {
    const auto prof = waves::build_kdv_soliton(1, 1, c, n);
    auto s = make_state(prof.params(), prof.period(), std::vector<double>(prof.u().begin(), prof.u().end()));
    evolve(s, t, 1e-3, 1000);
    err.push_back(max_diff(s.field, sample_shifted(prof, n, c * t)));
  }
  MESSAGE("grid errors ", err[0], " ", err[1], " ", err[2]);
  CHECK(err[0] / err[1] > 100);
  CHECK((err[1] / err[2] > 100 || err[2] < 1e-11));
}

TEST_CASE("fourth-order convergence in the time step") {
  const auto prof = waves::build_kdv_soliton(1, 1, 1, 256);
  const std::vector<double> u0(prof.u().begin(), prof.u().end());
  auto run = [&](double dt) {
    auto s = make_state(prof.params(), prof.period(), u0);
    evolve(s, 2.0, dt, 1 << 20);
    return s.field;
  };
  const auto ref = run(0.0003125);
  const double e1 = max_diff(run(0.01), ref);
  const double e2 = max_diff(run(0.005), ref);
  const double e3 = max_diff(run(0.0025), ref);
  MESSAGE("dt errors ", e1, " ", e2, " ", e3);
  CHECK(e1 / e2 == doctest::Approx(16).epsilon(0.25));
  CHECK(e2 / e3 == doctest::Approx(16).epsilon(0.25));
}

TEST_CASE("linear advection equals a uniform shift by C t") {
  const auto prof = waves::build_fifth_order_soliton(1, 1, 1, 256);
  const std::vector<double> u0(prof.u().begin(), prof.u().end());
  auto moving = prof.params();
  moving.cee = 0.7;
  auto a = make_state(prof.params(), prof.period(), u0);
  auto b = make_state(moving, prof.period(), u0);
  evolve(a, 2.0, 0.02, 100);
  evolve(b, 2.0, 0.02, 100);
  const auto shifted = spectral_shift(a.field, prof.period(), 0.7 * 2.0);
  CHECK(max_diff(b.field, shifted) < 1e-11 * prof.amplitude());
}

TEST_CASE("orbital distance recovers a sub-cell shift") {
  const auto prof = waves::build_fifth_order_soliton(1, 1, 1, 1024);
  const double L = prof.period();
  const double dx = L / 1024;
  const auto f = spectral_shift(prof.u(), L, 3.7 * dx);
  for (int s : {0, 1, 2}) {
    const auto d = orbital_distance(f, prof, s);
    CHECK(d.distance < 1e-10);
    // f(x) = phi(x - 3.7 dx) = phi(x + y) with y = -3.7 dx
    CHECK(std::abs(-d.shift / dx - 3.7) < 1e-6);
    CHECK_FALSE(d.multipleMinima);
  }
}

TEST_CASE("orbital distance vanishes on random translates") {
  const auto prof = waves::build_fifth_order_soliton(1, 1, 1, 1024);
  const double L = prof.period();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pick(-0.4 * L, 0.4 * L);
  OrbitalMetric metric(prof.u(), L);
  for (int i = 0; i < 10; ++i) {
    const double y = pick(rng);
    const auto f = spectral_shift(prof.u(), L, y);
    const auto d = metric.distance(f, 2);
    CHECK(d.distance < 1e-10);
    CHECK(std::abs(std::remainder(d.shift + y, L)) < 1e-8);
  }
}

TEST_CASE("orbital distance of an additive cosine") {
  const auto prof = waves::build_fifth_order_soliton(1, 1, 1, 512);
  const double L = prof.period();
  const double eps = 1e-3;
  const auto x = grid(512, L);
  std::vector<double> f(prof.u().begin(), prof.u().end()), cosine(512);
  for (std::size_t j = 0; j < 512; ++j) {
    cosine[j] = std::cos(2 * pi * x[j] / L);
    f[j] += eps * cosine[j];
  }
  for (int s : {0, 1, 2}) {
    const auto d = orbital_distance(f, prof, s);
    const double expected = eps * sobolev_norm(cosine, L, s);
    CHECK(std::abs(d.distance - expected) < 0.05 * expected);
    const double brute = brute_force_distance(f, prof.u(), L, s, d.shift, 2 * L / 512);
    CHECK(d.distance <= brute * (1 + 1e-9));
    CHECK(d.distance == doctest::Approx(brute).epsilon(1e-6));
  }
}

TEST_CASE("orbital distance of a scaled profile") {
  const auto prof = waves::build_kdv_cnoidal(1, 1, 1, 0.5, 512);
  const double L = prof.period();
  std::vector<double> f(prof.u().begin(), prof.u().end());
  for (double& v : f) v *= 1.01;
  for (int s : {0, 1, 2}) {
    const auto d = orbital_distance(f, prof, s);
    const double phiNorm = sobolev_norm(prof.u(), L, s);
    CHECK(d.distance == doctest::Approx(0.01 * phiNorm).epsilon(1e-9));
    CHECK(std::abs(d.shift) < 1e-9 * L);
    const double brute = brute_force_distance(f, prof.u(), L, s, 0.0, 2 * L / 512);
    CHECK(d.distance == doctest::Approx(brute).epsilon(1e-6));
  }
}

TEST_CASE("orbital distance flags symmetric references") {
  const double L = 10.0;
  const auto x = grid(128, L);
  std::vector<double> ref(128), f(128);
  for (std::size_t j = 0; j < 128; ++j) {
    ref[j] = std::cos(4 * 2 * pi * x[j] / L);
    f[j] = ref[j] + 1e-3 * std::sin(2 * pi * x[j] / L);
  }
  OrbitalMetric metric(ref, L);
  CHECK(metric.distance(f, 1).multipleMinima);
  CHECK(metric.norm(ref, 0) == doctest::Approx(std::sqrt(L / 2)).epsilon(1e-13));
}

TEST_CASE("orbital metric rejects mismatched grids") {
  const auto prof = waves::build_kdv_soliton(1, 1, 1, 256);
  OrbitalMetric metric(prof.u(), prof.period());
  std::vector<double> f(128, 0.0);
  CHECK_THROWS_AS(metric.distance(f, 1), DomainError);
  CHECK_THROWS_AS(metric.distance(std::vector<double>(256, 0.0), 3), DomainError);
}

TEST_CASE("blow-up is reported with its time") {
  const auto prof = waves::build_kdv_soliton(1, 1, 4, 256);
  auto s = make_state(prof.params(), prof.period(), std::vector<double>(prof.u().begin(), prof.u().end()));
  try {
    evolve(s, 50.0, 0.5, 1);
    FAIL("expected blow-up");
  } catch (const BlowUpError& e) {
    CHECK(e.time() >= 0.0);
    CHECK(e.time() < 50.0);
    CHECK(std::string(e.what()).find("blew up") != std::string::npos);
  }
}

TEST_CASE("perturbation parsing and application") {
  CHECK(parse_perturbation("none").kind == PerturbationKind::None);
  const auto p = parse_perturbation("scale:0.01");
  CHECK(p.kind == PerturbationKind::Scale);
  CHECK(p.epsilon == 0.01);
  CHECK(parse_perturbation("noise:1e-3").kind == PerturbationKind::Noise);
  CHECK_THROWS_AS(parse_perturbation("scale"), DomainError);
  CHECK_THROWS_AS(parse_perturbation("wobble:1"), DomainError);
  CHECK_THROWS_AS(parse_perturbation("mode:abc"), DomainError);

  const std::vector<double> u(256, 2.0);
  const auto scaled = apply_perturbation(u, 10.0, p, 2.0);
  CHECK(scaled[17] == doctest::Approx(2.02));
  Perturbation mode{PerturbationKind::Mode, 0.1, 2, 0};
  const auto m = apply_perturbation(u, 10.0, mode, 2.0);
  CHECK(m[0] == doctest::Approx(2.0 + 0.2 * std::cos(2 * pi * 2 * -5.0 / 10.0)));

  Perturbation noise{PerturbationKind::Noise, 0.05, 1, 7};
  const auto n1 = apply_perturbation(u, 10.0, noise, 2.0);
  const auto n2 = apply_perturbation(u, 10.0, noise, 2.0);
  CHECK(n1 == n2);
  double peak = 0.0;
  for (double v : n1) peak = std::max(peak, std::abs(v - 2.0));
  CHECK(peak == doctest::Approx(0.1).epsilon(1e-12));
  noise.seed = 8;
  CHECK(apply_perturbation(u, 10.0, noise, 2.0) != n1);
  // band-limited to the lowest N/8 modes
  spectral::RealFft fft(256);
  std::vector<spectral::cplx> hat(129);
  std::vector<double> eta(256);
  for (std::size_t j = 0; j < 256; ++j) eta[j] = n1[j] - 2.0;
  fft.forward(eta, hat);
  for (std::size_t k = 33; k < hat.size(); ++k) CHECK(std::abs(hat[k]) < 1e-14);
}

TEST_CASE("default time step") {
  waves::MediumParams p;
  p.gamma = 0.5;
  p.alpha = 1.0;
  const std::vector<double> u(100, -2.0);
  // a constant field has no coupling mode, only the advective limit applies
  CHECK(default_dt(u, p, 10.0, 1.0) == doctest::Approx(0.05));
  CHECK(default_dt(u, p, 10.0, 0.01) == 0.01);
  CHECK(default_dt(std::vector<double>(100, 0.0), p, 10.0, 0.3) == 0.3);

  // single mode m = 3 on 64 points: slip is largest at the top retained mode
  const double L = 20.0;
  const auto x = grid(64, L);
  std::vector<double> w(64);
  for (std::size_t j = 0; j < 64; ++j) w[j] = 1e-3 * std::cos(2 * pi * 3 * x[j] / L);
  const double q = 2 * pi * 3 / L;
  const double top = 2 * pi * 31 / L;
  const double slip = std::pow(top, 3) - std::pow(top - q, 3);
  CHECK(default_dt(w, p, L, 1.0) == doctest::Approx(kMaxSlip / slip).epsilon(1e-12));
}

TEST_CASE("short perturbed experiment is deterministic and bounded") {
  const auto prof = waves::build_kdv_soliton(1, 1, 1);
  ExperimentOptions opt;
  opt.gridN = 256;
  opt.horizon = 5.0;
  opt.records = 10;
  const auto pert = parse_perturbation("scale:0.01");
  const auto a = stability_experiment(prof, pert, opt);
  const auto b = stability_experiment(prof, pert, opt);
  CHECK(a.records.size() == 11);
  CHECK(a.initialH2 > 0.0);
  CHECK(a.ratioH2 < 5.0);
  CHECK(a.massDrift < 1e-10);
  std::ostringstream sa, sb;
  write_diagnostics_csv(sa, a.records);
  write_diagnostics_csv(sb, b.records);
  CHECK(sa.str() == sb.str());
  CHECK(sa.str().rfind("time,mass,momentum,distH1,distH2,shift\n", 0) == 0);
  std::ostringstream snap;
  write_snapshot_csv(snap, a.final);
  CHECK(snap.str().rfind("# time=5 ", 0) == 0);
}

TEST_CASE("characteristic time") {
  const auto sol = waves::build_kdv_soliton(1, 1, 4);
  CHECK(characteristic_time(sol) == doctest::Approx(sol.characteristic_width() / 4));
  const auto cn = waves::build_kdv_cnoidal(1, 1, 1, 0.5);
  CHECK(characteristic_time(cn) == doctest::Approx(cn.cnoidal()->wavelength));
}
