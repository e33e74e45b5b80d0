#pragma once

#include <cmath>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fkdv/csv.hpp"
#include "fkdv/errors.hpp"

namespace fkdv::stability {

enum class Verdict { Stable, NotStable, Inconclusive };
std::string_view verdict_name(Verdict v);

struct NamedTerm {
  std::string name;
  double value = 0.0;
};

struct StabilityReport {
  std::string family;
  std::string method;
  double speed = std::numeric_limits<double>::quiet_NaN();
  double functionalI = std::numeric_limits<double>::quiet_NaN();
  double normSquared = std::numeric_limits<double>::quiet_NaN();
  double normDerivative = std::numeric_limits<double>::quiet_NaN();
  // Same derivative with cosine-amplitude weights, u = a0 + sum a_n cos.
  double cosineAmplitudeDerivative = std::numeric_limits<double>::quiet_NaN();
  std::vector<NamedTerm> terms;
  std::vector<double> seriesPartial;
  double tailBound = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::string note;

  bool stable() const { return verdict == Verdict::Stable; }
  double term(std::string_view name) const;  // NaN when absent
};

// ---- fifth-order soliton: Gegenbauer series ----

struct GegenbauerSeriesSpec {
  double r = 4.0;
  double n = 2.0;
  double gamma_coef = 1.0;

  // a = gamma 2^{n+r-1} Gamma(r) / (pi Gamma(n))
  double prefactorA() const;
  // lambda_m = [Gamma(r+m)/Gamma(r+1)] [Gamma(r+2n+1)/Gamma(r+2n+m)]
  double lambda(double m) const;
  // lim b_j j^{2r+1} = Gamma(r+2n+1)/Gamma(r+1) 2^{3-4n-2r}
  double asymptotic_constant() const;
};

// b_0 .. b_jmax of I = a sum_j b_j, each term assembled in the log domain.
std::vector<double> gegenbauer_terms(const GegenbauerSeriesSpec& spec, int jmax);

// The displayed r = 4, n = 2 closed form
//   b_j = 1680 (2j+11/2)(j+1)^2 (j+9/2)^2 (2j)! / {[(2j+4)(2j+5)(2j+6)(2j+7) - 1680] (2j+10)!}
double gegenbauer_term_explicit(int j);
boost::multiprecision::cpp_rational gegenbauer_term_exact(int j);

// Stable iff sum_{j=1}^{jmax} b_j + tail < |b_0|; not stable once the partial
// sum alone reaches |b_0|; inconclusive in between.
StabilityReport gegenbauer_verdict(const GegenbauerSeriesSpec& spec, int jmax);

// ---- KdV soliton ----

double kdv_soliton_norm_squared(double gamma, double alpha, double c);
// d/dc of 24 alpha^{1/2} c^{3/2} / gamma^2
double kdv_soliton_norm_derivative(double gamma, double alpha, double c);
StabilityReport kdv_soliton_report(double gamma, double alpha, double c);

// ---- cnoidal waves ----

enum class FluxMode { FixedFlux, FixedPeriod };
std::string_view mode_name(FluxMode mode);
FluxMode parse_mode(std::string_view name);

inline constexpr double kRichardsonTolerance = 1e-4;
inline constexpr int kSeriesCap = 200;

// l2 norm of the cn^2 coefficients,
//   4 M^2 K^2 (K-D)^2 / L^4 + (M^2 pi^4 / (L^4 k^4)) sum_{n!=0} n^2 csch^2(n pi K'/K),
// differentiated in c by Richardson-extrapolated central differences.
// Fixed-flux holds A and the base half period L0; fixed-period holds L0 and
// lets A follow c. Terms (i)-(iv) are the analytic pieces of the same derivative.
StabilityReport cn2_norm_derivative(double gamma, double alpha, double c, double fluxA,
                                    FluxMode mode);

// 25c^2/(36 gamma^2) + (25 c^2 pi^8 / (36 gamma^2 K^8)) sum_{n!=0} n^6 csch^2(n pi)
StabilityReport cn4_norm_derivative(double gamma, double beta, double c);
double cn4_series_constant();  // sum_{n!=0} n^6 csch^2(n pi)

void write_csv(std::ostream& out, std::span<const StabilityReport> reports);
void write_gegenbauer_csv(std::ostream& out, std::span<const double> terms);
void write_text(std::ostream& out, const StabilityReport& report);

// Richardson-extrapolated d/dc with steps {1e-3, 1e-4} c; throws StepSizeError.
template <class F>
double richardson_derivative(F&& f, double c) {
  const double scale = c != 0.0 ? std::abs(c) : 1.0;
  auto central = [&](double h) { return (f(c + h) - f(c - h)) / (2.0 * h); };
  const double d1 = central(1e-3 * scale);
  const double d2 = central(1e-4 * scale);
  const double r = d2 + (d2 - d1) / 99.0;
  if (std::abs(d1 - d2) > kRichardsonTolerance * std::abs(r)) {
    throw StepSizeError("central differences at steps 1e-3 c and 1e-4 c disagree: " +
                        format_number(d1) + " vs " + format_number(d2));
  }
  return r;
}

}  // namespace fkdv::stability
