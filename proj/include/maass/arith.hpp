#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "maass/dataset.hpp"
#include "maass/errors.hpp"
#include "maass/hecke.hpp"
#include "maass/sieve.hpp"

// Multiplicative-function machinery: the squarefree-supported sign function
// h (h(p) = 3 up to the threshold y, -1 beyond), Dirichlet convolution and
// inverse, coprimality-filtered partial and log-weighted sums, the Euler
// product constant c(N), the local Euler-factor cancellation check, and the
// mean-value comparison sum h(n) ~ c(N) sigma(u) (log y)^2 y^u.
//
// Sequences are dense 1-indexed arrays; coprimality with the level is
// applied at summation time so one array serves all levels.  Every operation
// is a pure function of its arguments.

namespace maass::arith {

class ArithmeticSequence {
 public:
  explicit ArithmeticSequence(std::int64_t length);

  static ArithmeticSequence delta(std::int64_t length);  // 1 at n = 1
  static ArithmeticSequence ones(std::int64_t length);

  std::int64_t length() const { return static_cast<std::int64_t>(v_.size()) - 1; }
  double operator()(std::int64_t n) const { return v_[n]; }
  double& at(std::int64_t n) { return v_[n]; }

 private:
  std::vector<double> v_;  // v_[0] unused
};

struct HSpec {
  double y;         // threshold: h(p) = 3 for p <= y, -1 for p > y
  std::int64_t N;   // level for the coprimality restriction
};

// h multiplicative, supported on squarefree numbers, filled for n <= X.
ArithmeticSequence h_sequence(const HSpec& spec, std::int64_t X,
                              const sieve::PrimeTable& table);

// sum over n <= x, (n,N) = 1 of f(n).
double partial_sum(const ArithmeticSequence& f, double x, std::int64_t N);

// sum over n <= x, (n,N) = 1 (squarefree n only when requested) of
// f(n) log(x/n).
double log_weighted_sum(const ArithmeticSequence& f, double x, std::int64_t N,
                        bool squarefree_only);

ArithmeticSequence dirichlet_convolve(const ArithmeticSequence& f,
                                      const ArithmeticSequence& g);

// Inverse under Dirichlet convolution; requires f(1) = 1.
ArithmeticSequence dirichlet_inverse(const ArithmeticSequence& f);

struct ConvolutionBoundCheck {
  bool holds_hypothesis = false;  // running h-sum stays >= 0 up to x
  double sflat = 0.0;             // squarefree-restricted sum of A up to x
  double hsum = 0.0;              // sum of h up to x
  double sflat_log = 0.0;         // log-weighted squarefree A-sum
  double hsum_log = 0.0;          // log-weighted h-sum
  bool sum_bound_holds = false;   // sflat >= hsum
  bool log_bound_holds = false;   // sflat_log >= hsum_log
};

// Checks the nonnegativity hypothesis on the partial sums of h, then
// compares both lower bounds against the squarefree-restricted sums of A.
// A hypothesis failure is a reported state, not an error.
ConvolutionBoundCheck convolution_lower_bound_check(const ArithmeticSequence& A,
                                                    const HSpec& spec, double x);

// Verifies, as formal power series in x = p^-s, that
//   (sum_k A(p^k) x^k) (1 - A x + A x^2 - x^3)(1 + A x)  =  1 + A x
// through the requested degree, A = A(p); returns the largest coefficient
// residual.  The cubic is (1 - (a/b)x)(1 - x)(1 - (b/a)x).
double local_factor_identity_check(const hecke::SatakePair& sp, int degree);

struct CConstant {
  double value;       // (phi(N)/N)^3 prod_{p <= P, p !| N} (1-1/p)^3 (1+3/p)
  double tail_bound;  // bound on |log(c / value)| from the p > P tail
};

CConstant c_constant(std::int64_t N, double P, const sieve::PrimeTable& table);

struct MeanValueReport {
  double lhs;    // sum h(n) over n <= y^u, (n,N)=1
  double rhs;    // c(N) sigma(u) (log y)^2 y^u
  double ratio;  // lhs / rhs; tends to 1 as y grows, never asserted
};

MeanValueReport mean_value_report(const HSpec& spec, double u,
                                  const sieve::PrimeTable& table,
                                  const std::function<double(double)>& sigma);

struct S2Sums {
  double S;        // sum over d < x of lambda(d^2) conj(chi(d)) log(x/d)
  double S_plus;   // positive terms
  double S_minus;  // negative terms
};

// Requires lambda(d^2) to be derivable for every d < x, i.e. every prime
// factor of every d covered by the dataset (MissingCoefficient otherwise).
S2Sums s2_sum(const data::EigenDataset& ds, double x);

// A(n) for n <= X, built multiplicatively from the per-prime Satake data;
// n sharing a factor with the level get value 0 (such n are excluded from
// every sum anyway).  The k^2 | n divisor formula stays available in
// hecke::adjoint_coefficient_n as an independent cross-check.
ArithmeticSequence adjoint_sequence(const data::EigenDataset& ds,
                                    std::int64_t X);

}  // namespace maass::arith
