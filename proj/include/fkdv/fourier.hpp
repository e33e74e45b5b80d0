#pragma once

// Fourier coefficients of the cnoidal profiles.
//
// One convention throughout: a profile with half period L is written
//   u(xi) = c(0) + sum_{n>=1} 2 c(n) cos(n pi xi / L),
// i.e. c(n) are the exponential coefficients (1/2L) int u e^{-i n pi xi/L},
// so c(-n) = c(n) and sum_n c(n)^2 is the mean of u^2 over a period.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fkdv/waves.hpp"

namespace fkdv::fourier {

inline constexpr std::string_view kConvention =
    "u(xi) = c(0) + sum_{n>=1} 2 c(n) cos(n pi xi / L)";

// Beyond this argument csch underflows; the coefficient is stored as 0.
inline constexpr double kCschCutoff = 700.0;

struct CoeffSequence {
  std::vector<double> values;  // c(0) .. c(N)
  double halfPeriod = 0.0;
  std::string normalization{kConvention};
  bool strictlyPositive = false;
  bool underflow = false;
  bool aliasingWarning = false;

  int order() const { return static_cast<int>(values.size()) - 1; }
  double coeff(int n) const;
  // a(-M) .. a(M)
  std::vector<double> window(int M) const;
  double evaluate(double xi) const;
};

// c(0) = (2 M K / L^2)(K - D), c(n) = (M pi^2 / (L^2 k^2)) n csch(n pi K'/K).
CoeffSequence cn2_coeffs(const waves::CnoidalParams& params, int N);

// cn^4 wave at k = 1/sqrt2: c(0) = 5c/(6 gamma), c(n) = (5 c pi^4 / (6 gamma K^4)) n^3 csch(n pi).
CoeffSequence cn4_coeffs_halfmodulus(const waves::WaveProfile& profile, int N);
CoeffSequence cn4_coeffs_halfmodulus(double gamma, double c, double halfPeriod, int N);

// Coefficients of cn^4(z; k) in the variable z (half period K).
CoeffSequence cn4_series_general_k(double k, int N);

// Projection of the closed form sampled at `samples` points of one period,
// computed in binary128. Requires samples >= 8N.
CoeffSequence dft_coeffs(const waves::WaveProfile& profile, int N, std::size_t samples = 4096);
// Same projection of given double samples on [-L, L).
CoeffSequence dft_coeffs(std::span<const double> samples, double halfPeriod, int N);

// c(0)^2 + 2 sum_{n>=1} c(n)^2
double parseval_sum(const CoeffSequence& seq);

struct Pf2Report {
  bool passed = false;
  int window = 0;
  long long minorsChecked = 0;
  double minMinor = 0.0;  // normalized by the larger of the two products
  int p = 0, dx = 0, dy = 0;
  bool logConcave = false;
  double minLogConcavity = 0.0;  // min over n of (a(n)^2 - a(n-1)a(n+1)) / a(n)^2
  int logConcavityAt = 0;

  std::string location() const;
};

inline constexpr double kPf2Tolerance = 1e-14;

// Every minor a(p) a(p+dx-dy) - a(p-dy) a(p+dx), dx, dy >= 1, indices in [-M, M].
Pf2Report pf2_check(const CoeffSequence& seq, int M = 12);
Pf2Report pf2_check(std::span<const double> window);

void write_csv(std::ostream& out, const CoeffSequence& seq);

}  // namespace fkdv::fourier
