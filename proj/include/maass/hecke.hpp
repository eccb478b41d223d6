#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "maass/errors.hpp"

// Local Hecke/Satake algebra at an unramified prime p: the Satake pair
// {alpha_p, beta_p}, Hecke eigenvalues at prime powers, and the coefficients
// of the adjoint, symmetric-cube and twisted symmetric-fourth-power lifts.
//
// Everything here is a pure function of its arguments; all values are plain
// structs, immutable once built, safe to share across threads.

namespace maass::hecke {

using Complex = std::complex<double>;

// Absolute tolerance for every "this quantity is real" check in this module,
// and the default Ramanujan classification tolerance.  Input datasets are
// 64-bit with ~1e-12 noise, so 1e-9 leaves three orders of headroom.
inline constexpr double kImagTol = 1e-9;

// A complex number of unit modulus: the value chi_phi(p) of the central
// character at a prime.  Characters are stored as values at primes only and
// extended multiplicatively where needed.
class UnitComplex {
 public:
  explicit UnitComplex(Complex value, double tol = kImagTol);
  explicit UnitComplex(double re, double im, double tol = kImagTol)
      : UnitComplex(Complex(re, im), tol) {}

  static UnitComplex one() { return UnitComplex(Complex(1.0, 0.0)); }

  Complex value() const { return value_; }

 private:
  Complex value_;
};

// Unordered pair {alpha, beta} with alpha*beta = chi(p).  All operations
// below are symmetric in the two entries.
struct SatakePair {
  Complex alpha;
  Complex beta;
};

// One record (p, lambda(p), chi(p)).  Consistency invariant:
// lambda = chi * conj(lambda) (within kImagTol for trusted constructors,
// looser bounds at ingestion time).
struct LocalPrimeData {
  std::int64_t p;
  Complex lambda;
  UnitComplex chi;
};

// Throws ValidationError if lambda != chi*conj(lambda) beyond tol.
// (Primality of p is checked where records are assembled, not here.)
void check_consistency(const LocalPrimeData& d, double tol = kImagTol);

// The three lift coefficients at p.  Invariants (Hecke relations):
//   a_adj >= -1,
//   a_adj^2 = a_sym4 + a_adj + 1,
//   a_adj * a_sym4 = |a_sym3|^2 - 1.
struct LiftCoefficients {
  double a_adj;
  Complex a_sym3;
  double a_sym4;
};

enum class Lift { adjoint, sym3, sym4 };

// Roots of X^2 - lambda*X + chi.  A double root (lambda = +-2, chi = 1 say)
// is legal and returns alpha == beta.
SatakePair satake_from_lambda(Complex lambda, const UnitComplex& chi);

// lambda(p^n) = (alpha^{n+1} - beta^{n+1}) / (alpha - beta), evaluated as the
// complete homogeneous sum sum_j alpha^j beta^{n-j}, which is the same
// rational function but stays finite through the double-root limit
// (n+1)*alpha^n without any branch.
Complex lambda_prime_power(const SatakePair& sp, int n);

// A(p) = lambda(p^2) * conj(chi(p)) = |lambda(p)|^2 - 1, real and >= -1.
// Throws ImaginaryResidual if the imaginary part exceeds kImagTol (which
// signals inconsistent lambda/chi input).
double adjoint_coefficient(const LocalPrimeData& d);

// Divisor-sum form of the adjoint coefficient at a general n coprime to the
// level: A(n) = sum_{k^2 | n} lambda(n^2/k^4) * conj(chi(n/k^2)).
// `lambda_values[m]` / `chi_values[m]` hold the values at m (index 0 unused);
// entries may be NaN where unknown.  Throws MissingCoefficient if a required
// entry is absent or NaN.
Complex adjoint_coefficient_n(const std::vector<Complex>& lambda_values,
                              const std::vector<Complex>& chi_values,
                              std::int64_t n);

// alpha^3 + alpha^2 beta + alpha beta^2 + beta^3, the Sym^3 coefficient at p.
Complex sym3_coefficient(const SatakePair& sp);

// (alpha/beta)^2 + alpha/beta + 1 + beta/alpha + (beta/alpha)^2, the
// coefficient at p of Sym^4 twisted by conj(chi)^2.  Real; throws
// ImaginaryResidual past kImagTol.
double sym4_twisted_coefficient(const SatakePair& sp);

LiftCoefficients lift_coefficients(const LocalPrimeData& d);

// Complete homogeneous symmetric polynomial h_k on the lift's Satake tuple:
//   adjoint: {alpha/beta, 1, beta/alpha}
//   sym3:    {alpha^3, alpha^2 beta, alpha beta^2, beta^3}
//   sym4:    {(alpha/beta)^2, alpha/beta, 1, beta/alpha, (beta/alpha)^2}
// k = 0 gives 1, k = 1 the single-prime coefficient.
Complex sym_coefficient_prime_power(const SatakePair& sp, Lift lift, int k);

// True iff |lambda(p)| <= 2 + tol.  The boundary |lambda| = 2 is classified
// Ramanujan: the violation criterion is strict.
bool is_ramanujan(const LocalPrimeData& d, double tol = kImagTol);

// lambda(p^{2n}) * conj(chi(p^n)) for a non-Ramanujan prime; exceeds the
// divisor count d(p^{2n}) = 2n+1.  Throws NotApplicable on Ramanujan input.
double nonramanujan_growth(const LocalPrimeData& d, int n);

// U(p) = (1 + 3 A(p) + 5 A4(p))^2; nonnegative, and > 35^2 whenever p is not
// a Ramanujan prime.  This statistic drives the 34/35 density bound.
double u_statistic(const LocalPrimeData& d);

// The same quantity through the Hecke relations:
// -20 + 15 A + 19 A4 + 30 |A3|^2 + 25 A4^2.  Kept public as a cross-check.
double u_statistic_expanded(const LocalPrimeData& d);

// (1 + 3 A(p))^2; > 10^2 at non-Ramanujan primes (the 9/10 density bound).
double nine_tenths_statistic(const LocalPrimeData& d);

}  // namespace maass::hecke
