#include "fkdv/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <boost/math/tools/roots.hpp>

#include "fkdv/elliptic.hpp"
#include "fkdv/waves.hpp"

namespace fkdv::stability {
namespace {

constexpr double pi = std::numbers::pi;

// 2 sum_{n>=1} term(n), stopped once a term drops below 1e-16 of the sum.
template <class Term>
double symmetric_series(Term term) {
  double sum = 0.0;
  for (int n = 1; n <= kSeriesCap; ++n) {
    const double t = term(n);
    sum += t;
    if (std::abs(t) < 1e-16 * std::abs(sum)) break;
  }
  return 2.0 * sum;
}

double csch(double x) { return 1.0 / std::sinh(x); }

// sum_{n!=0} n^2 csch^2(n pi tau)
double series_s2(double tau) {
  return symmetric_series([tau](int n) {
    const double s = csch(n * pi * tau);
    return double(n) * n * s * s;
  });
}

// sum_{n!=0} n^3 csch^2(n pi tau) coth(n pi tau), the tau-derivative kernel of S2.
double series_s3(double tau) {
  return symmetric_series([tau](int n) {
    const double x = n * pi * tau;
    const double s = csch(x);
    return double(n) * n * n * s * s / std::tanh(x);
  });
}

// State of a cn^2 wave as the norm formula sees it.
struct Cn2Point {
  double k = 0.0;
  double emm = 0.0;
  double L = 0.0;
  double sqrtDelta = 0.0;
  double fluxA = 0.0;
};

double cn2_norm(const Cn2Point& p) {
  const elliptic::EllipticContext ctx(p.k);
  const double L4 = std::pow(p.L, 4);
  const double KD = ctx.K() - ctx.D();
  const double mean_part = 4.0 * p.emm * p.emm * ctx.K() * ctx.K() * KD * KD / L4;
  const double mk = p.emm / (p.k * p.k);
  return mean_part + mk * mk * std::pow(pi, 4) * series_s2(ctx.Kprime() / ctx.K()) / L4;
}

double cn2_norm_cosine_amplitude(const Cn2Point& p) {
  const elliptic::EllipticContext ctx(p.k);
  const double L4 = std::pow(p.L, 4);
  const double KD = ctx.K() - ctx.D();
  const double mean_part = 4.0 * p.emm * p.emm * ctx.K() * ctx.K() * KD * KD / L4;
  const double mk = p.emm / (p.k * p.k);
  return mean_part + 4.0 * mk * mk * std::pow(pi, 4) * series_s2(ctx.Kprime() / ctx.K()) / L4;
}

Cn2Point fixed_flux_point(double gamma, double alpha, double c, double fluxA, double L0) {
  const auto cp = waves::kdv_cnoidal_params(gamma, alpha, c, fluxA);
  return {cp.modulus, cp.emm, L0, std::sqrt(cp.delta), fluxA};
}

// c(k) = 4 alpha (2k^2 - 1) K^2 / L^2 along a curve of fixed half period L.
double fixed_period_speed(double alpha, double k, double L) {
  const double K = elliptic::complete_K(k);
  return 4.0 * alpha * (2.0 * k * k - 1.0) * K * K / (L * L);
}

Cn2Point fixed_period_point(double gamma, double alpha, double c, double L0) {
  auto f = [&](double k) { return fixed_period_speed(alpha, k, L0) - c; };
  double lo = waves::kModulusLowerGuard;
  double hi = waves::kModulusUpperGuard;
  if (f(lo) > 0.0 || f(hi) < 0.0) {
    throw DomainError("fixed-period curve: speed " + format_number(c) +
                      " is not reachable with half period " + format_number(L0));
  }
  boost::uintmax_t iterations = 200;
  const auto bracket = boost::math::tools::toms748_solve(
      f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iterations);
  const double k = 0.5 * (bracket.first + bracket.second);
  const double K = elliptic::complete_K(k);
  Cn2Point p;
  p.k = k;
  p.L = L0;
  p.sqrtDelta = 12.0 * alpha * K * K / (L0 * L0);
  p.emm = 6.0 * alpha * k * k / gamma;
  p.fluxA = (p.sqrtDelta * p.sqrtDelta - 9.0 * c * c) / (24.0 * gamma);
  return p;
}

void validate_medium(double gamma, const char* what) {
  if (!std::isfinite(gamma) || gamma == 0.0) {
    throw DomainError(std::string(what) + ": gamma must be finite and nonzero");
  }
}

Verdict from_derivative(double derivative) {
  return derivative > 0.0 ? Verdict::Stable : Verdict::NotStable;
}

}  // namespace

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "stable";
    case Verdict::NotStable: return "not-stable";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "unknown";
}

double StabilityReport::term(std::string_view name) const {
  for (const auto& t : terms) {
    if (t.name == name) return t.value;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

// ---- Gegenbauer ----

double GegenbauerSeriesSpec::prefactorA() const {
  return gamma_coef * std::pow(2.0, n + r - 1.0) * std::tgamma(r) / (pi * std::tgamma(n));
}

double GegenbauerSeriesSpec::lambda(double m) const {
  return std::exp(std::lgamma(r + m) - std::lgamma(r + 1.0) + std::lgamma(r + 2.0 * n + 1.0) -
                  std::lgamma(r + 2.0 * n + m));
}

double GegenbauerSeriesSpec::asymptotic_constant() const {
  return std::exp(std::lgamma(r + 2.0 * n + 1.0) - std::lgamma(r + 1.0)) *
         std::pow(2.0, 3.0 - 4.0 * n - 2.0 * r);
}

std::vector<double> gegenbauer_terms(const GegenbauerSeriesSpec& spec, int jmax) {
  if (jmax < 1) throw DomainError("gegenbauer_terms: jmax must be at least 1");
  if (!(spec.r > 0.0 && spec.n > 0.0)) throw DomainError("gegenbauer_terms: need r > 0, n > 0");
  const double r = spec.r;
  const double n = spec.n;
  std::vector<double> b(static_cast<std::size_t>(jmax) + 1);
  for (int j = 0; j <= jmax; ++j) {
    const double lam = spec.lambda(2.0 * j);
    const double ratio = lam / (1.0 - lam);
    const double log_middle = std::lgamma(2.0 * j + 1.0) + std::log(2.0 * j + n + r - 0.5) -
                              std::lgamma(2.0 * j + 2.0 * n + 2.0 * r - 1.0);
    const double log_brace = std::lgamma(j + n) + std::lgamma(j + n + r - 0.5) -
                             std::lgamma(j + 1.0) - std::lgamma(j + r + 0.5);
    b[static_cast<std::size_t>(j)] = ratio * std::exp(log_middle + 2.0 * log_brace);
  }
  return b;
}

double gegenbauer_term_explicit(int j) {
  if (j < 0) throw DomainError("gegenbauer_term_explicit: j must be nonnegative");
  const double jj = j;
  const double bracket =
      (2 * jj + 4) * (2 * jj + 5) * (2 * jj + 6) * (2 * jj + 7) - 1680.0;
  const double factorials = std::exp(std::lgamma(2 * jj + 1) - std::lgamma(2 * jj + 11));
  return 1680.0 * (2 * jj + 5.5) * (jj + 1) * (jj + 1) * (jj + 4.5) * (jj + 4.5) * factorials /
         bracket;
}

boost::multiprecision::cpp_rational gegenbauer_term_exact(int j) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  if (j < 0) throw DomainError("gegenbauer_term_exact: j must be nonnegative");
  const cpp_int J = j;
  // (2j+11/2)(j+9/2)^2 = (4j+11)(2j+9)^2 / 8; (2j+10)!/(2j)! = prod_{i=1}^{10} (2j+i)
  cpp_int numerator = 1680 * (4 * J + 11) * (J + 1) * (J + 1) * (2 * J + 9) * (2 * J + 9);
  cpp_int denominator = 8 * ((2 * J + 4) * (2 * J + 5) * (2 * J + 6) * (2 * J + 7) - 1680);
  for (int i = 1; i <= 10; ++i) denominator *= 2 * J + i;
  if (denominator < 0) {
    denominator = -denominator;
    numerator = -numerator;
  }
  return cpp_rational(numerator, denominator);
}

StabilityReport gegenbauer_verdict(const GegenbauerSeriesSpec& spec, int jmax) {
  const auto b = gegenbauer_terms(spec, jmax);
  StabilityReport rep;
  rep.family = "fifth-soliton";
  rep.method = "gegenbauer";
  rep.seriesPartial.reserve(b.size() - 1);
  double partial = 0.0;
  for (std::size_t j = 1; j < b.size(); ++j) {
    partial += b[j];
    rep.seriesPartial.push_back(partial);
  }
  const double b0 = b[0];
  const double twoR = 2.0 * spec.r;
  const double J = jmax;
  // b_j j^{2r+1} rises toward its limit, so the larger of the limit and the
  // last computed value bounds every later term.
  const double C = std::max(spec.asymptotic_constant(), b.back() * std::pow(J, twoR + 1.0));
  rep.tailBound = C * std::pow(J, -twoR) / twoR;

  if (b0 >= 0.0) {
    rep.verdict = Verdict::NotStable;
    rep.note = "b_0 is not negative";
  } else if (partial >= std::abs(b0)) {
    rep.verdict = Verdict::NotStable;
    rep.note = "partial sum already exceeds |b_0|";
  } else if (partial + rep.tailBound < std::abs(b0)) {
    rep.verdict = Verdict::Stable;
  } else {
    rep.verdict = Verdict::Inconclusive;
    rep.note = "tail bound exceeds the gap |b_0| - partial sum; increase jmax";
  }
  const double a = spec.prefactorA();
  rep.functionalI = a * (b0 + partial);
  rep.terms = {{"b0", b0},
               {"abs_b0", std::abs(b0)},
               {"sum_b_j", partial},
               {"tail_bound", rep.tailBound},
               {"prefactor_a", a},
               {"asymptotic_constant", spec.asymptotic_constant()},
               {"jmax", J}};
  return rep;
}

// ---- KdV soliton ----

double kdv_soliton_norm_squared(double gamma, double alpha, double c) {
  validate_medium(gamma, "kdv soliton norm");
  if (!(alpha > 0.0 && c > 0.0)) throw DomainError("kdv soliton norm: need alpha > 0 and c > 0");
  return 24.0 * std::sqrt(alpha) * std::pow(c, 1.5) / (gamma * gamma);
}

double kdv_soliton_norm_derivative(double gamma, double alpha, double c) {
  validate_medium(gamma, "kdv soliton norm");
  if (!(alpha > 0.0 && c > 0.0)) throw DomainError("kdv soliton norm: need alpha > 0 and c > 0");
  return 36.0 * std::sqrt(alpha) * std::sqrt(c) / (gamma * gamma);
}

StabilityReport kdv_soliton_report(double gamma, double alpha, double c) {
  StabilityReport rep;
  rep.family = "kdv-soliton";
  rep.method = "closed-form";
  rep.speed = c;
  rep.normSquared = kdv_soliton_norm_squared(gamma, alpha, c);
  rep.normDerivative = kdv_soliton_norm_derivative(gamma, alpha, c);
  rep.cosineAmplitudeDerivative = rep.normDerivative;
  // I = (phi, -d phi/dc) = -(1/2) d/dc ||phi||^2
  rep.functionalI = -0.5 * rep.normDerivative;
  rep.verdict = from_derivative(rep.normDerivative);
  return rep;
}

// ---- cnoidal ----

std::string_view mode_name(FluxMode mode) {
  return mode == FluxMode::FixedFlux ? "fixed-flux" : "fixed-period";
}

FluxMode parse_mode(std::string_view name) {
  if (name == "fixed-flux") return FluxMode::FixedFlux;
  if (name == "fixed-period") return FluxMode::FixedPeriod;
  throw DomainError("unknown mode '" + std::string(name) + "' (expected fixed-flux or fixed-period)");
}

StabilityReport cn2_norm_derivative(double gamma, double alpha, double c, double fluxA,
                                    FluxMode mode) {
  const auto base = waves::kdv_cnoidal_params(gamma, alpha, c, fluxA);
  const double L0 = base.halfPeriod;

  auto point = [&](double speed) {
    return mode == FluxMode::FixedFlux ? fixed_flux_point(gamma, alpha, speed, fluxA, L0)
                                       : fixed_period_point(gamma, alpha, speed, L0);
  };
  const Cn2Point p = point(c);

  StabilityReport rep;
  rep.family = "kdv-cnoidal";
  rep.method = std::string(mode_name(mode));
  rep.speed = c;
  rep.normSquared = cn2_norm(p);
  rep.normDerivative = richardson_derivative([&](double s) { return cn2_norm(point(s)); }, c);
  rep.cosineAmplitudeDerivative =
      richardson_derivative([&](double s) { return cn2_norm_cosine_amplitude(point(s)); }, c);
  rep.functionalI = -0.5 * L0 * rep.normDerivative;

  // Analytic pieces of the same derivative.
  const elliptic::EllipticContext ctx(p.k);
  const double k = p.k;
  const double K = ctx.K();
  const double L4 = std::pow(L0, 4);
  double dk = 0.0;
  double dM = 0.0;
  if (mode == FluxMode::FixedFlux) {
    const double d32 = std::pow(p.sqrtDelta, 3);
    dk = 18.0 * fluxA * gamma / (k * d32);
    dM = 216.0 * alpha * fluxA / d32;
  } else {
    const double dc_dk =
        4.0 * alpha / (L0 * L0) * (4.0 * k * K * K + 2.0 * (2.0 * k * k - 1.0) * K * ctx.dK_dk());
    dk = 1.0 / dc_dk;
    // M = (3 alpha/gamma)(1 + 3c/sqrt(Delta)) with sqrt(Delta) = 12 alpha K^2/L^2
    const double dsqrt = 24.0 * alpha * K * ctx.dK_dk() * dk / (L0 * L0);
    dM = 9.0 * alpha / gamma * (p.sqrtDelta - c * dsqrt) / (p.sqrtDelta * p.sqrtDelta);
  }
  const double KD = K - ctx.D();
  const double dMK = dM * K + p.emm * ctx.dK_dk() * dk;
  const double dKD = (ctx.dK_dk() - ctx.dD_dk()) * dk;
  const double tau = ctx.Kprime() / K;
  const double s2 = series_s2(tau);
  const double s3 = series_s3(tau);
  const double bracket3 = k * dM - 2.0 * p.emm * dk;
  const double mk = p.emm / (k * k);
  const double dtau_dk = (ctx.dKprime_dk() * K - ctx.Kprime() * ctx.dK_dk()) / (K * K);

  const double t1 = 8.0 * p.emm * K / L4 * KD * KD * dMK;
  const double t2 = 8.0 * p.emm * p.emm * K * K / L4 * KD * dKD;
  const double t3 = 2.0 * std::pow(pi, 4) * p.emm / (L4 * std::pow(k, 5)) * bracket3 * s2;
  const double t4 = -2.0 * std::pow(pi, 5) / L4 * mk * mk * dtau_dk * dk * s3;

  rep.terms = {{"term_i", t1},
               {"term_ii", t2},
               {"term_iii", t3},
               {"term_iv", t4},
               {"term_iii_bracket", bracket3},
               {"k", k},
               {"dk_dc", dk},
               {"dM_dc", dM},
               {"K_minus_D", KD},
               {"dK_minus_D_dc", dKD},
               {"half_period", L0},
               {"flux_A", p.fluxA}};
  rep.verdict = from_derivative(rep.normDerivative);
  return rep;
}

double cn4_series_constant() {
  return symmetric_series([](int n) {
    const double s = csch(n * pi);
    return std::pow(n, 6) * s * s;
  });
}

StabilityReport cn4_norm_derivative(double gamma, double beta, double c) {
  validate_medium(gamma, "cn4 norm");
  if (!(c > 0.0 && beta > 0.0)) throw DomainError("cn4 norm: need c > 0 and beta > 0");
  const auto cp = waves::fifth_order_cnoidal_params(gamma, beta, c);
  const double K = elliptic::complete_K(std::numbers::sqrt2 / 2);
  const double S = cn4_series_constant();
  const double g2 = gamma * gamma;
  auto constant_part = [&](double s) { return 25.0 * s * s / (36.0 * g2); };
  auto series_part = [&](double s) {
    return 25.0 * s * s * std::pow(pi, 8) / (36.0 * g2 * std::pow(K, 8)) * S;
  };

  StabilityReport rep;
  rep.family = "fifth-cnoidal";
  rep.method = "homogeneous";
  rep.speed = c;
  rep.normSquared = constant_part(c) + series_part(c);
  rep.normDerivative = 2.0 * rep.normSquared / c;
  rep.cosineAmplitudeDerivative = 2.0 * (constant_part(c) + 4.0 * series_part(c)) / c;
  rep.functionalI = -0.5 * cp.halfPeriod * rep.normDerivative;
  const double numeric =
      richardson_derivative([&](double s) { return constant_part(s) + series_part(s); }, c);
  rep.terms = {{"constant_part", 2.0 * constant_part(c) / c},
               {"series_part", 2.0 * series_part(c) / c},
               {"series_constant", S},
               {"numeric_derivative", numeric},
               {"half_period", cp.halfPeriod}};
  rep.verdict = from_derivative(rep.normDerivative);
  return rep;
}

// ---- output ----

void write_csv(std::ostream& out, std::span<const StabilityReport> reports) {
  out << "family,method,c,norm_sq,derivative,cosine_amplitude_derivative,functional_I,"
         "term_i,term_ii,term_iii,term_iv,verdict\n";
  auto num = [](double v) { return std::isnan(v) ? std::string() : format_number(v); };
  for (const auto& r : reports) {
    out << r.family << ',' << r.method << ',' << num(r.speed) << ',' << num(r.normSquared) << ','
        << num(r.normDerivative) << ',' << num(r.cosineAmplitudeDerivative) << ','
        << num(r.functionalI) << ',' << num(r.term("term_i")) << ',' << num(r.term("term_ii"))
        << ',' << num(r.term("term_iii")) << ',' << num(r.term("term_iv")) << ','
        << verdict_name(r.verdict) << '\n';
  }
}

void write_gegenbauer_csv(std::ostream& out, std::span<const double> terms) {
  out << "j,b_j,partial_sum_from_1\n";
  double partial = 0.0;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    if (j > 0) partial += terms[j];
    out << j << ',' << format_number(terms[j]) << ',' << format_number(partial) << '\n';
  }
}

void write_text(std::ostream& out, const StabilityReport& r) {
  out << "family: " << r.family << "\n";
  out << "method: " << r.method << "\n";
  if (!std::isnan(r.speed)) out << "c: " << format_number(r.speed) << "\n";
  if (!std::isnan(r.normSquared)) out << "norm squared: " << format_number(r.normSquared) << "\n";
  if (!std::isnan(r.normDerivative)) {
    out << "d/dc norm squared: " << format_number(r.normDerivative) << "\n";
  }
  if (!std::isnan(r.cosineAmplitudeDerivative) && r.cosineAmplitudeDerivative != r.normDerivative) {
    out << "d/dc norm squared (cosine-amplitude weights): "
        << format_number(r.cosineAmplitudeDerivative) << "\n";
  }
  for (const auto& t : r.terms) out << t.name << ": " << format_number(t.value) << "\n";
  out << "I: " << format_number(r.functionalI) << "\n";
  out << "verdict: " << verdict_name(r.verdict) << "\n";
  if (!r.note.empty()) out << "note: " << r.note << "\n";
}

}  // namespace fkdv::stability
