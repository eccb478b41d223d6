#include "maass/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace maass::arith {

using hecke::Complex;

namespace {

std::int64_t floor_int(double x) {
  return static_cast<std::int64_t>(std::floor(x));
}

// Smallest-prime-factor array for 2..X seeded from a prime table.
std::vector<std::int64_t> spf_array(std::int64_t X,
                                    const sieve::PrimeTable& table) {
  std::vector<std::int64_t> spf(X + 1, 0);
  for (std::int64_t p : table.primes()) {
    if (p > X) break;
    for (std::int64_t m = p; m <= X; m += p)
      if (spf[m] == 0) spf[m] = p;
  }
  return spf;
}

std::vector<std::uint8_t> squarefree_mask(std::int64_t X) {
  std::vector<std::uint8_t> sf(X + 1, 1);
  for (std::int64_t d = 2; d * d <= X; ++d)
    for (std::int64_t m = d * d; m <= X; m += d * d) sf[m] = 0;
  return sf;
}

}  // namespace

ArithmeticSequence::ArithmeticSequence(std::int64_t length) {
  if (length < 1)
    throw RangeError("ArithmeticSequence: length must be >= 1");
  if (length > sieve::kEnumerationGuard)
    throw LimitExceeded("ArithmeticSequence: length exceeds dense-array guard");
  v_.assign(length + 1, 0.0);
}

ArithmeticSequence ArithmeticSequence::delta(std::int64_t length) {
  ArithmeticSequence f(length);
  f.at(1) = 1.0;
  return f;
}

ArithmeticSequence ArithmeticSequence::ones(std::int64_t length) {
  ArithmeticSequence f(length);
  for (std::int64_t n = 1; n <= length; ++n) f.at(n) = 1.0;
  return f;
}

ArithmeticSequence h_sequence(const HSpec& spec, std::int64_t X,
                              const sieve::PrimeTable& table) {
  if (spec.y < 2.0) throw DomainError("h_sequence: spec.y must be >= 2");
  if (table.limit() < X)
    throw TableTooSmall("h_sequence: prime table limit below X");
  ArithmeticSequence h(X);
  const auto spf = spf_array(X, table);
  h.at(1) = 1.0;
  for (std::int64_t n = 2; n <= X; ++n) {
    const std::int64_t p = spf[n];
    const std::int64_t q = n / p;
    if (q % p == 0) {
      h.at(n) = 0.0;  // squarefull
    } else {
      h.at(n) = h(q) * (static_cast<double>(p) <= spec.y ? 3.0 : -1.0);
    }
  }
  return h;
}

double partial_sum(const ArithmeticSequence& f, double x, std::int64_t N) {
  if (floor_int(x) > f.length())
    throw RangeError("partial_sum: x exceeds sequence length");
  const std::int64_t top = std::min(f.length(), floor_int(x));
  double sum = 0.0;
  for (std::int64_t n = 1; n <= top; ++n)
    if (std::gcd(n, N) == 1) sum += f(n);
  return sum;
}

double log_weighted_sum(const ArithmeticSequence& f, double x, std::int64_t N,
                        bool squarefree_only) {
  if (floor_int(x) > f.length())
    throw RangeError("log_weighted_sum: x exceeds sequence length");
  const std::int64_t top = std::min(f.length(), floor_int(x));
  if (top < 1) return 0.0;
  std::vector<std::uint8_t> sf;
  if (squarefree_only) sf = squarefree_mask(top);
  double sum = 0.0;
  for (std::int64_t n = 1; n <= top; ++n) {
    if (std::gcd(n, N) != 1) continue;
    if (squarefree_only && !sf[n]) continue;
    sum += f(n) * std::log(x / static_cast<double>(n));
  }
  return sum;
}

ArithmeticSequence dirichlet_convolve(const ArithmeticSequence& f,
                                      const ArithmeticSequence& g) {
  if (f.length() != g.length())
    throw LengthMismatch("dirichlet_convolve: sequence lengths differ");
  const std::int64_t X = f.length();
  ArithmeticSequence out(X);
  for (std::int64_t d = 1; d <= X; ++d) {
    const double fd = f(d);
    if (fd == 0.0) continue;
    for (std::int64_t k = 1; k * d <= X; ++k) out.at(k * d) += fd * g(k);
  }
  return out;
}

ArithmeticSequence dirichlet_inverse(const ArithmeticSequence& f) {
  if (std::fabs(f(1) - 1.0) > 1e-12)
    throw NotInvertible("dirichlet_inverse: f(1) must equal 1");
  const std::int64_t X = f.length();
  ArithmeticSequence inv(X);
  std::vector<double> acc(X + 1, 0.0);
  inv.at(1) = 1.0;
  for (std::int64_t d = 1; d <= X; ++d) {
    if (d > 1) inv.at(d) = -acc[d];
    const double vd = inv(d);
    if (vd == 0.0) continue;
    for (std::int64_t k = 2; k * d <= X; ++k) acc[k * d] += vd * f(k);
  }
  return inv;
}

ConvolutionBoundCheck convolution_lower_bound_check(const ArithmeticSequence& A,
                                                    const HSpec& spec,
                                                    double x) {
  if (floor_int(x) > A.length())
    throw RangeError("convolution_lower_bound_check: x exceeds A length");
  ConvolutionBoundCheck r;
  r.holds_hypothesis = true;
  if (floor_int(x) < 1) {  // empty range: both bounds hold as 0 >= 0
    r.sum_bound_holds = r.log_bound_holds = true;
    return r;
  }
  const std::int64_t X = floor_int(x);
  const auto table = sieve::primes_up_to(X);
  const ArithmeticSequence h = h_sequence(spec, X, table);
  double running = 0.0;
  for (std::int64_t t = 1; t <= X; ++t) {
    if (std::gcd(t, spec.N) == 1) running += h(t);
    if (running < 0.0) {
      r.holds_hypothesis = false;
      break;
    }
  }

  const auto sf = squarefree_mask(X);
  for (std::int64_t n = 1; n <= X; ++n) {
    if (std::gcd(n, spec.N) != 1) continue;
    const double w = std::log(x / static_cast<double>(n));
    if (sf[n]) {
      r.sflat += A(n);
      r.sflat_log += A(n) * w;
    }
    r.hsum += h(n);
    r.hsum_log += h(n) * w;
  }
  r.sum_bound_holds = r.sflat >= r.hsum;
  r.log_bound_holds = r.sflat_log >= r.hsum_log;
  return r;
}

double local_factor_identity_check(const hecke::SatakePair& sp, int degree) {
  if (degree < 1)
    throw DomainError("local_factor_identity_check: degree must be >= 1");
  std::vector<Complex> series(degree + 1);
  for (int k = 0; k <= degree; ++k)
    series[k] =
        hecke::sym_coefficient_prime_power(sp, hecke::Lift::adjoint, k);
  const Complex A = series[1];

  // (1 - A x + A x^2 - x^3)(1 + A x) expanded once, then convolved.
  std::vector<Complex> cubic = {1.0, -A, A, -1.0};
  std::vector<Complex> linear = {1.0, A};
  std::vector<Complex> q(cubic.size() + linear.size() - 1, 0.0);
  for (std::size_t i = 0; i < cubic.size(); ++i)
    for (std::size_t j = 0; j < linear.size(); ++j)
      q[i + j] += cubic[i] * linear[j];

  double residual = 0.0;
  for (int k = 0; k <= degree; ++k) {
    Complex c = 0.0;
    for (std::size_t j = 0; j < q.size() && j <= static_cast<std::size_t>(k);
         ++j)
      c += q[j] * series[k - j];
    Complex expected = 0.0;
    if (k == 0) expected = 1.0;
    if (k == 1) expected = A;
    residual = std::max(residual, std::abs(c - expected));
  }
  return residual;
}

CConstant c_constant(std::int64_t N, double P, const sieve::PrimeTable& table) {
  if (N < 1) throw RangeError("c_constant: level must be >= 1");
  if (P < 5.0) throw RangeError("c_constant: cutoff P must be >= 5");
  if (static_cast<double>(table.limit()) < P)
    throw TableTooSmall("c_constant: prime table limit below cutoff");

  // (phi(N)/N)^3 from the distinct prime factors of N.
  double phi_over_n = 1.0;
  std::int64_t n = N;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    phi_over_n *= 1.0 - 1.0 / static_cast<double>(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) phi_over_n *= 1.0 - 1.0 / static_cast<double>(n);

  double value = phi_over_n * phi_over_n * phi_over_n;
  for (std::int64_t p : table.primes()) {
    if (static_cast<double>(p) > P) break;
    if (N % p == 0) continue;
    const double ip = 1.0 / static_cast<double>(p);
    const double f = 1.0 - ip;
    value *= f * f * f * (1.0 + 3.0 * ip);
  }
  // log of a factor is -6/p^2 + 8/p^3 - ...; for p > P >= 5 the absolute
  // value is below 7/p^2, and sum_{n > P} 7/n^2 < 7/P.
  return CConstant{value, 7.0 / P};
}

MeanValueReport mean_value_report(const HSpec& spec, double u,
                                  const sieve::PrimeTable& table,
                                  const std::function<double(double)>& sigma) {
  double x = std::pow(spec.y, u);
  if (std::fabs(x - std::round(x)) < 1e-6 * std::max(1.0, x))
    x = std::round(x);
  if (x > static_cast<double>(table.limit()) + 1e-9)
    throw TableTooSmall("mean_value_report: y^u exceeds prime table limit");
  const std::int64_t X = floor_int(x);
  const ArithmeticSequence h = h_sequence(spec, X, table);
  MeanValueReport r;
  r.lhs = partial_sum(h, x, spec.N);
  const CConstant c =
      c_constant(spec.N, static_cast<double>(table.limit()), table);
  const double ly = std::log(spec.y);
  // Mean-value density is sigma(u)/Gamma(3): on u <= 1 the sum is the
  // classical squarefree 3^omega average, c(N)/Gamma(3) * x log^2 x, and
  // sigma(u) = u^2 there.  Verified empirically: under this normalization
  // ratio - 1 decays like 1/log y at every fixed u.
  r.rhs = c.value * (sigma(u) / 2.0) * ly * ly * x;
  r.ratio = r.lhs / r.rhs;
  return r;
}

S2Sums s2_sum(const data::EigenDataset& ds, double x) {
  const std::int64_t dmax = static_cast<std::int64_t>(std::ceil(x)) - 1;
  S2Sums r{0.0, 0.0, 0.0};
  if (dmax < 1) return r;

  std::unordered_map<std::int64_t, std::size_t> index;
  index.reserve(ds.records.size());
  for (std::size_t i = 0; i < ds.records.size(); ++i)
    index.emplace(ds.records[i].p, i);

  // w(p^e) = lambda(p^{2e}) conj(chi(p))^e, multiplicative in d.
  std::unordered_map<std::int64_t, double> cache;
  const auto local_weight = [&](std::int64_t p, std::int64_t e) {
    const std::int64_t key = p * 64 + e;
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto rec = index.find(p);
    if (rec == index.end())
      throw MissingCoefficient("s2_sum: no data for prime " +
                               std::to_string(p));
    const auto& d = ds.records[rec->second];
    const hecke::SatakePair sp = hecke::satake_from_lambda(d.lambda, d.chi);
    const Complex chie = std::pow(d.chi.value(), static_cast<double>(e));
    const double w =
        (hecke::lambda_prime_power(sp, static_cast<int>(2 * e)) *
         std::conj(chie))
            .real();
    cache.emplace(key, w);
    return w;
  };

  const auto table = sieve::primes_up_to(dmax);
  const auto spf = spf_array(dmax, table);

  for (std::int64_t d = 1; d <= dmax; ++d) {
    double w = 1.0;
    std::int64_t m = d;
    while (m > 1) {
      const std::int64_t p = spf[m];
      std::int64_t e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      w *= local_weight(p, e);
    }
    const double term = w * std::log(x / static_cast<double>(d));
    if (w < 0.0)
      r.S_minus += term;
    else
      r.S_plus += term;
  }
  r.S = r.S_plus + r.S_minus;
  return r;
}

ArithmeticSequence adjoint_sequence(const data::EigenDataset& ds,
                                    std::int64_t X) {
  ArithmeticSequence A(X);
  std::unordered_map<std::int64_t, std::size_t> index;
  index.reserve(ds.records.size());
  for (std::size_t i = 0; i < ds.records.size(); ++i)
    index.emplace(ds.records[i].p, i);

  std::unordered_map<std::int64_t, double> cache;
  const auto local_value = [&](std::int64_t p, std::int64_t e) {
    const std::int64_t key = p * 64 + e;
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto rec = index.find(p);
    if (rec == index.end())
      throw MissingCoefficient("adjoint_sequence: no data for prime " +
                               std::to_string(p));
    const auto& d = ds.records[rec->second];
    const hecke::SatakePair sp = hecke::satake_from_lambda(d.lambda, d.chi);
    const Complex z = hecke::sym_coefficient_prime_power(
        sp, hecke::Lift::adjoint, static_cast<int>(e));
    if (std::fabs(z.imag()) > hecke::kImagTol)
      throw ImaginaryResidual("adjoint_sequence: imaginary residual at p=" +
                              std::to_string(p));
    cache.emplace(key, z.real());
    return z.real();
  };

  const auto table = sieve::primes_up_to(X);
  const auto spf = spf_array(X, table);

  A.at(1) = 1.0;
  for (std::int64_t n = 2; n <= X; ++n) {
    if (std::gcd(n, ds.level) != 1) {
      A.at(n) = 0.0;  // excluded from every coprime-filtered sum
      continue;
    }
    const std::int64_t p = spf[n];
    std::int64_t m = n, e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    A.at(n) = A(m) * local_value(p, e);
  }
  return A;
}

}  // namespace maass::arith
