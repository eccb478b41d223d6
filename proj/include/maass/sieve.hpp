#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "maass/errors.hpp"

// Exact and asymptotic sieve counting: a segmented prime table, the counts
// Phi(X,Z) of integers free of prime factors <= Z, the band counts
// Phi(X,Y,Z) with all prime factors in (Z,Y], the log-weighted variant, the
// Buchstab main-term asymptotic, and two Chebyshev-style reports.
//
// Summation conditions are read literally: integers l with 1 < l < X
// (strict on both sides), prime conditions Z < p and p <= Y.
//
// A built PrimeTable is read-only; every query here is thread-safe.

namespace maass::sieve {

inline constexpr std::int64_t kPrimeLimitGuard  = 1'000'000'000;   // sieve cap
inline constexpr std::int64_t kEnumerationGuard = 100'000'000;     // mask cap

class PrimeTable {
 public:
  PrimeTable() : limit_(0) {}
  PrimeTable(std::int64_t limit, std::vector<std::int64_t> primes)
      : limit_(limit), primes_(std::move(primes)) {}

  std::int64_t limit() const { return limit_; }
  const std::vector<std::int64_t>& primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }
  std::int64_t operator[](std::size_t i) const { return primes_[i]; }

  // pi(x) for x <= limit.
  std::int64_t count_leq(double x) const;

 private:
  std::int64_t limit_;
  std::vector<std::int64_t> primes_;
};

// All primes <= limit by a segmented sieve of Eratosthenes.
// Throws LimitExceeded above kPrimeLimitGuard.
PrimeTable primes_up_to(std::int64_t limit);

// Deterministic Miller-Rabin, correct for all 64-bit n.
bool is_prime_u64(std::uint64_t n);

// Qualification masks over l = 0..lmax where lmax is the largest integer < X.
// mask[l] = 1 iff l qualifies.  These determine phi_rough / phi_band at every
// real cut, which is what the exhaustive oracle tests compare against.
std::vector<std::uint8_t> rough_mask(double X, double Z, const PrimeTable& t);
std::vector<std::uint8_t> band_mask(double X, double Y, double Z,
                                    const PrimeTable& t);

// Phi(X,Z) = #{ 1 < l < X : p | l  =>  p > Z }.
std::int64_t phi_rough(double X, double Z, const PrimeTable& t);

// Phi(X,Y,Z) = #{ 1 < l < X : p | l  =>  Z < p <= Y }.  An empty band
// (Z >= Y) yields 0.
std::int64_t phi_band(double X, double Y, double Z, const PrimeTable& t);

// Phi'(X,Y,Z) = sum over the same l of log(X/l).
double phi_band_log(double X, double Y, double Z, const PrimeTable& t);

// Main terms of the Buchstab asymptotic:
//   omega(log X / log Z) * X / log Z  -  Z / log Z.
// `omega` must evaluate the Buchstab function on [1, log X / log Z].
double phi_rough_asymptotic(double X, double Z,
                            const std::function<double(double)>& omega);

// Report (never an assertion: the error term carries an unspecified
// constant): exact = Phi'(X,Y,Z), main = X/(2 log Z) - X/log Y.
struct SievebBound {
  double exact;
  double main;
};
SievebBound sieveb_bound_report(double X, double Y, double Z,
                                const PrimeTable& t);

// lhs = pi(x) log x - theta(x), rhs = x / log x; their ratio tends to 1.
struct ChebyshevReport {
  double lhs;
  double rhs;
  double ratio;
};
ChebyshevReport chebyshev_report(double x, const PrimeTable& t);

}  // namespace maass::sieve
