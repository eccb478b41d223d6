#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "maass/arith.hpp"
#include "maass/delay_ode.hpp"
#include "oracles.hpp"

using namespace maass;
using hecke::Complex;
using doctest::Approx;

namespace {

using arith::ArithmeticSequence;

// Dataset with prescribed real adjoint values A(p) (lambda = sqrt(A+1)).
data::EigenDataset dataset_with_adjoint(const sieve::PrimeTable& t,
                                        std::int64_t top,
                                        const std::function<double(std::int64_t)>& A) {
  data::EigenDataset ds;
  ds.level = 1;
  for (auto p : t.primes()) {
    if (p > top) break;
    ds.records.push_back({p, Complex(std::sqrt(A(p) + 1.0), 0.0),
                          hecke::UnitComplex::one()});
  }
  return ds;
}

ArithmeticSequence random_sequence(std::mt19937_64& rng, std::int64_t X) {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  arith::ArithmeticSequence f(X);
  f.at(1) = 1.0;
  for (std::int64_t n = 2; n <= X; ++n) f.at(n) = dist(rng);
  return f;
}

}  // namespace

TEST_CASE("h_sequence values") {
  const auto t = sieve::primes_up_to(10000);
  const auto h = arith::h_sequence({2.0, 1}, 10, t);
  const std::vector<double> expected{1, 3, -1, 0, -1, -3, -1, 0, 0, -3};
  for (std::int64_t n = 1; n <= 10; ++n) CHECK(h(n) == expected[n - 1]);

  const auto h10 = arith::h_sequence({10.0, 1}, 10, t);
  CHECK(h10(6) == 9.0);  // 3 * 3, both primes <= y

  // squarefull support and multiplicativity, exhaustively to 10^4
  const auto hx = arith::h_sequence({7.0, 1}, 10000, t);
  for (std::int64_t n = 1; n <= 10000; ++n) {
    bool squarefree = oracles::naive_mobius(n) != 0;
    if (!squarefree) CHECK(hx(n) == 0.0);
  }
  for (std::int64_t m = 1; m <= 100; ++m)
    for (std::int64_t n = 1; n <= 100; ++n)
      if (std::gcd(m, n) == 1) CHECK(hx(m * n) == hx(m) * hx(n));
}

TEST_CASE("partial_sum") {
  const auto t = sieve::primes_up_to(100);
  const auto h = arith::h_sequence({2.0, 1}, 10, t);
  CHECK(arith::partial_sum(h, 10.0, 1) == -5.0);
  CHECK(arith::partial_sum(h, 0.5, 1) == 0.0);
  CHECK(arith::partial_sum(h, 10.0, 2) == -2.0);  // odd n only: 1-1-1-1+0
  CHECK_THROWS_AS(arith::partial_sum(h, 50.0, 1), maass::RangeError&);
}

TEST_CASE("log_weighted_sum") {
  const auto t = sieve::primes_up_to(100);
  const auto h = arith::h_sequence({2.0, 1}, 10, t);
  const double expected = std::log(4.0) + 3.0 * std::log(2.0) -
                          std::log(4.0 / 3.0);
  CHECK(arith::log_weighted_sum(h, 4.0, 1, true) ==
        Approx(expected).epsilon(1e-12));
  CHECK(expected == Approx(3.1780).epsilon(1e-4));
  CHECK(arith::log_weighted_sum(h, 1.0, 1, false) == 0.0);
}

TEST_CASE("log_weighted_sum equals the jump-point integral of partial sums") {
  std::mt19937_64 rng(21);
  const auto t = sieve::primes_up_to(500);
  for (int trial = 0; trial < 20; ++trial) {
    const std::int64_t X = 50 + static_cast<std::int64_t>(rng() % 400);
    const auto f = random_sequence(rng, X);
    const double x = static_cast<double>(X) - 0.25;
    const std::int64_t N = (trial % 3 == 0) ? 6 : 1;
    // integral over t in [1, x] of F(t) dt/t with F piecewise constant
    double integral = 0.0;
    for (std::int64_t n = 1; static_cast<double>(n) <= x; ++n) {
      const double upper = std::min(x, static_cast<double>(n + 1));
      integral += arith::partial_sum(f, static_cast<double>(n), N) *
                  (std::log(upper) - std::log(static_cast<double>(n)));
    }
    CHECK(arith::log_weighted_sum(f, x, N, false) ==
          Approx(integral).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("dirichlet_convolve") {
  std::mt19937_64 rng(22);
  const auto f = random_sequence(rng, 200);
  const auto delta = ArithmeticSequence::delta(200);
  const auto fd = arith::dirichlet_convolve(f, delta);
  for (std::int64_t n = 1; n <= 200; ++n) CHECK(fd(n) == Approx(f(n)));

  const auto ones = ArithmeticSequence::ones(200);
  const auto d = arith::dirichlet_convolve(ones, ones);
  CHECK(d(12) == 6.0);
  CHECK(d(1) == 1.0);
  CHECK(d(7) == 2.0);

  const auto g = random_sequence(rng, 200);
  const auto fg = arith::dirichlet_convolve(f, g);
  const auto gf = arith::dirichlet_convolve(g, f);
  for (std::int64_t n = 1; n <= 200; ++n)
    CHECK(fg(n) == Approx(gf(n)).epsilon(1e-12));

  const auto k = random_sequence(rng, 200);
  const auto left = arith::dirichlet_convolve(arith::dirichlet_convolve(f, g), k);
  const auto right = arith::dirichlet_convolve(f, arith::dirichlet_convolve(g, k));
  for (std::int64_t n = 1; n <= 200; ++n)
    CHECK(left(n) == Approx(right(n)).epsilon(1e-10));

  CHECK_THROWS_AS(arith::dirichlet_convolve(f, ArithmeticSequence::ones(100)),
                  maass::LengthMismatch&);
}

TEST_CASE("dirichlet_inverse") {
  const auto delta = ArithmeticSequence::delta(50);
  const auto dinv = arith::dirichlet_inverse(delta);
  for (std::int64_t n = 1; n <= 50; ++n) CHECK(dinv(n) == delta(n));

  // inverse of 1 is the Moebius function
  const auto mu = arith::dirichlet_inverse(ArithmeticSequence::ones(2000));
  CHECK(mu(6) == 1.0);
  CHECK(mu(4) == 0.0);
  CHECK(mu(30) == -1.0);
  for (std::int64_t n = 1; n <= 2000; ++n)
    CHECK(mu(n) == static_cast<double>(oracles::naive_mobius(n)));

  std::mt19937_64 rng(23);
  const auto f = random_sequence(rng, 300);
  const auto finv = arith::dirichlet_inverse(f);
  const auto prod = arith::dirichlet_convolve(f, finv);
  CHECK(prod(1) == Approx(1.0));
  for (std::int64_t n = 2; n <= 300; ++n)
    CHECK(std::fabs(prod(n)) < 1e-9);

  auto bad = ArithmeticSequence::ones(10);
  bad.at(1) = 2.0;
  CHECK_THROWS_AS(arith::dirichlet_inverse(bad), maass::NotInvertible&);
}

TEST_CASE("adjoint_sequence multiplicative build vs divisor-sum oracle") {
  const auto t = sieve::primes_up_to(300);
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> dist(-1.0, 3.0);
  const auto ds = dataset_with_adjoint(t, 300, [&](std::int64_t) {
    return dist(rng);
  });
  const auto A = arith::adjoint_sequence(ds, 300);
  CHECK(A(1) == 1.0);

  // divisor-sum route needs lambda(m) for m <= n^2 and chi(m) for m <= n
  const std::int64_t top = 17;
  std::vector<Complex> lam(top * top + 1, Complex(std::nan(""), 0.0));
  std::vector<Complex> chi(top * top + 1, 1.0);
  for (std::int64_t m = 1; m <= top * top; ++m) {
    Complex v = 1.0;
    std::int64_t n = m;
    bool ok = true;
    for (std::int64_t p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      auto it = std::find_if(ds.records.begin(), ds.records.end(),
                             [&](const auto& r) { return r.p == p; });
      if (it == ds.records.end()) { ok = false; break; }
      v *= hecke::lambda_prime_power(
          hecke::satake_from_lambda(it->lambda, it->chi), e);
    }
    if (ok && n > 1) {
      auto it = std::find_if(ds.records.begin(), ds.records.end(),
                             [&](const auto& r) { return r.p == n; });
      if (it == ds.records.end())
        ok = false;
      else
        v *= hecke::lambda_prime_power(
            hecke::satake_from_lambda(it->lambda, it->chi), 1);
    }
    if (ok) lam[m] = v;
  }
  for (std::int64_t n = 1; n <= top; ++n) {
    const Complex divisor_route = hecke::adjoint_coefficient_n(lam, chi, n);
    CHECK(divisor_route.real() == Approx(A(n)).epsilon(1e-9).scale(1.0));
    CHECK(std::fabs(divisor_route.imag()) < 1e-9);
  }
}

TEST_CASE("g = A * h^{-1} is nonnegative at primes and round-trips") {
  const auto t = sieve::primes_up_to(200);
  const auto ds = dataset_with_adjoint(
      t, 200, [](std::int64_t p) { return p <= 3 ? 4.0 : -1.0; });
  const auto A = arith::adjoint_sequence(ds, 200);
  const auto h = arith::h_sequence({3.0, 1}, 200, t);
  const auto g = arith::dirichlet_convolve(A, arith::dirichlet_inverse(h));
  for (auto p : t.primes()) {
    CHECK(g(p) == Approx(A(p) - h(p)).epsilon(1e-9).scale(1.0));
    CHECK(g(p) >= -1e-9);
  }
  const auto back = arith::dirichlet_convolve(h, g);
  for (std::int64_t n = 1; n <= 200; ++n)
    CHECK(back(n) == Approx(A(n)).epsilon(1e-9).scale(1.0));
}

TEST_CASE("convolution_lower_bound_check") {
  const auto t = sieve::primes_up_to(2100);
  const auto ds = dataset_with_adjoint(
      t, 2100, [](std::int64_t p) { return p <= 3 ? 4.0 : -1.0; });
  const auto A = arith::adjoint_sequence(ds, 2100);

  // worked instance at x = 8: sums computable by hand
  const auto r = arith::convolution_lower_bound_check(A, {3.0, 1}, 8.0);
  CHECK(r.holds_hypothesis);
  CHECK(r.sflat == Approx(23.0));  // 1+4+4-1+16-1 over squarefree n <= 8
  CHECK(r.hsum == Approx(14.0));
  CHECK(r.sum_bound_holds);
  CHECK(r.log_bound_holds);

  // trivial range
  const auto r1 = arith::convolution_lower_bound_check(A, {3.0, 1}, 1.0);
  CHECK(r1.sflat == Approx(1.0));
  CHECK(r1.hsum == Approx(1.0));
  CHECK(r1.sum_bound_holds);

  // exhaustive sweep: wherever the hypothesis holds, both bounds hold
  int hypothesis_points = 0;
  for (std::int64_t x = 1; x <= 2000; x += 7) {
    const auto rx = arith::convolution_lower_bound_check(
        A, {3.0, 1}, static_cast<double>(x));
    if (!rx.holds_hypothesis) continue;
    ++hypothesis_points;
    CHECK(rx.sum_bound_holds);
    CHECK(rx.log_bound_holds);
  }
  CHECK(hypothesis_points > 0);
}

TEST_CASE("local_factor_identity_check") {
  auto one = hecke::UnitComplex::one();
  // lambda = 2: A(p^k) = C(k+2, 2), the (1-x)^{-3} expansion
  const auto sp1 = hecke::satake_from_lambda(2.0, one);
  CHECK(arith::local_factor_identity_check(sp1, 30) < 1e-10);
  for (int k = 0; k <= 8; ++k) {
    const double binom = (k + 2) * (k + 1) / 2.0;
    CHECK(hecke::sym_coefficient_prime_power(sp1, hecke::Lift::adjoint, k)
              .real() == Approx(binom).epsilon(1e-10));
  }

  // lambda = 0 (A = -1) against the cubic recursion oracle
  const auto sp0 = hecke::satake_from_lambda(0.0, one);
  CHECK(arith::local_factor_identity_check(sp0, 30) < 1e-10);
  const auto rec = oracles::adjoint_powers_recursion(Complex(-1.0, 0.0), 12);
  for (int k = 0; k <= 12; ++k)
    CHECK(std::abs(hecke::sym_coefficient_prime_power(sp0,
                                                      hecke::Lift::adjoint, k) -
                   rec[k]) < 1e-10);

  // 100 random unitary pairs
  std::mt19937_64 rng(25);
  for (int i = 0; i < 100; ++i) {
    const auto d = oracles::random_local(rng, true);
    const auto sp = hecke::satake_from_lambda(d.lambda, d.chi);
    CHECK(arith::local_factor_identity_check(sp, 30) < 1e-9);
  }
}

TEST_CASE("c_constant") {
  const auto t = sieve::primes_up_to(1000000);
  const double expected = std::pow(0.5, 3) * 2.5 * std::pow(2.0 / 3.0, 3) *
                          2.0 * std::pow(0.8, 3) * 1.6 *
                          std::pow(6.0 / 7.0, 3) * (10.0 / 7.0);
  const auto r = arith::c_constant(1, 10.0, t);
  CHECK(r.value == Approx(expected).epsilon(1e-14));
  CHECK(r.tail_bound > 0.0);

  // every local factor is below 1
  for (std::int64_t p : {2, 3, 5, 7, 11, 97}) {
    const double ip = 1.0 / static_cast<double>(p);
    CHECK(std::pow(1.0 - ip, 3) * (1.0 + 3.0 * ip) < 1.0);
  }

  // N = 6 skips p = 2, 3 and carries (phi(6)/6)^3 = (1/3)^3
  const auto r6 = arith::c_constant(6, 10.0, t);
  const double expected6 = std::pow(1.0 / 3.0, 3) * std::pow(0.8, 3) * 1.6 *
                           std::pow(6.0 / 7.0, 3) * (10.0 / 7.0);
  CHECK(r6.value == Approx(expected6).epsilon(1e-14));

  // tail_bound really bounds the tail: compare partial products
  const auto wide = arith::c_constant(1, 1000000.0, t);
  const auto narrow = arith::c_constant(1, 100.0, t);
  CHECK(std::fabs(std::log(wide.value / narrow.value)) < narrow.tail_bound);
}

TEST_CASE("mean_value_report") {
  const auto t = sieve::primes_up_to(1100000);
  dde::SigmaFunction sigma(4.5, 1e-4);
  const auto sg = [&](double u) { return sigma(u); };

  const auto r = arith::mean_value_report({1000.0, 1}, 2.0, t, sg);
  CHECK(r.ratio > 0.6);
  CHECK(r.ratio < 1.6);
  CHECK(r.ratio == Approx(r.lhs / r.rhs));

  // u <= 1 uses sigma(u) = u^2
  const auto small = arith::mean_value_report({100.0, 1}, 0.8, t, sg);
  const auto c = arith::c_constant(1, static_cast<double>(t.limit()), t);
  const double ly = std::log(100.0);
  CHECK(small.rhs == Approx(c.value * 0.5 * 0.64 * ly * ly *
                            std::pow(100.0, 0.8)).epsilon(1e-12));

  // |ratio - 1| shrinks from y = 10^3 to y = 10^4 at u = 1.5
  const auto lo = arith::mean_value_report({1000.0, 1}, 1.5, t, sg);
  const auto hi = arith::mean_value_report({10000.0, 1}, 1.5, t, sg);
  CHECK(std::fabs(hi.ratio - 1.0) < std::fabs(lo.ratio - 1.0));
}

TEST_CASE("s2_sum") {
  const auto t = sieve::primes_up_to(100);

  // all lambda = 2: every lambda(d^2) > 0, so S_minus = 0
  const auto ds2 = dataset_with_adjoint(t, 100, [](std::int64_t) { return 3.0; });
  const auto rp = arith::s2_sum(ds2, 20.0);
  CHECK(rp.S_minus == 0.0);
  CHECK(rp.S == rp.S_plus);

  // x <= 2: single d = 1 term, S = log x
  CHECK(arith::s2_sum(ds2, 2.0).S == Approx(std::log(2.0)));
  CHECK(arith::s2_sum(ds2, 1.5).S == Approx(std::log(1.5)));

  // lambda(q) = 0 at one prime: d = q contributes -log(x/q) to S_minus
  {
    data::EigenDataset ds;
    ds.level = 1;
    for (auto p : t.primes()) {
      if (p > 30) break;
      const double lam = (p == 7) ? 0.0 : 2.0;
      ds.records.push_back({p, Complex(lam, 0.0), hecke::UnitComplex::one()});
    }
    const double x = 10.0;
    const auto r = arith::s2_sum(ds, x);
    CHECK(r.S_minus == Approx(-std::log(x / 7.0)).epsilon(1e-12));
    CHECK(r.S == Approx(r.S_plus + r.S_minus));
  }

  // coverage failure
  data::EigenDataset tiny;
  tiny.level = 1;
  tiny.records.push_back({2, Complex(2.0, 0.0), hecke::UnitComplex::one()});
  CHECK_THROWS_AS(arith::s2_sum(tiny, 10.0), maass::MissingCoefficient&);
}
