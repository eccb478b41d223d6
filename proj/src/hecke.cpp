#include "maass/hecke.hpp"

#include <cmath>
#include <cstdio>

namespace maass::hecke {

namespace {

std::string fmt_complex(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

}  // namespace

UnitComplex::UnitComplex(Complex value, double tol) : value_(value) {
  if (std::abs(std::abs(value) - 1.0) > tol)
    throw ValidationError("UnitComplex: |" + fmt_complex(value) +
                          "| = " + std::to_string(std::abs(value)) +
                          " is not 1 within tolerance");
}

void check_consistency(const LocalPrimeData& d, double tol) {
  const Complex residual = d.lambda - d.chi.value() * std::conj(d.lambda);
  if (std::abs(residual) > tol)
    throw ValidationError("LocalPrimeData p=" + std::to_string(d.p) +
                          ": lambda != chi*conj(lambda), residual " +
                          std::to_string(std::abs(residual)));
}

SatakePair satake_from_lambda(Complex lambda, const UnitComplex& chi) {
  const Complex disc = lambda * lambda - 4.0 * chi.value();
  Complex s = std::sqrt(disc);
  // Pick the branch that avoids cancellation in lambda + s.
  if ((std::conj(lambda) * s).real() < 0.0) s = -s;
  const Complex r1 = 0.5 * (lambda + s);
  // |r1| >= 1 always (|r1 r2| = |chi| = 1 and r1 is the larger root).
  const Complex r2 = chi.value() / r1;
  return SatakePair{r1, r2};
}

Complex lambda_prime_power(const SatakePair& sp, int n) {
  if (n < 0) throw DomainError("lambda_prime_power: n must be >= 0");
  // sum_{j=0}^{n} alpha^j beta^{n-j}; no cancellation near a double root.
  std::vector<Complex> apow(n + 1), bpow(n + 1);
  apow[0] = bpow[0] = 1.0;
  for (int j = 1; j <= n; ++j) {
    apow[j] = apow[j - 1] * sp.alpha;
    bpow[j] = bpow[j - 1] * sp.beta;
  }
  Complex sum = 0.0;
  for (int j = 0; j <= n; ++j) sum += apow[j] * bpow[n - j];
  return sum;
}

double adjoint_coefficient(const LocalPrimeData& d) {
  // lambda(p^2)*conj(chi) = (lambda^2 - chi)*conj(chi) = lambda^2*conj(chi) - 1
  const Complex z = d.lambda * d.lambda * std::conj(d.chi.value()) - 1.0;
  if (std::abs(z.imag()) > kImagTol)
    throw ImaginaryResidual("adjoint_coefficient: imaginary residual " +
                            std::to_string(z.imag()) + " at p=" +
                            std::to_string(d.p));
  return z.real();
}

Complex adjoint_coefficient_n(const std::vector<Complex>& lambda_values,
                              const std::vector<Complex>& chi_values,
                              std::int64_t n) {
  if (n < 1) throw DomainError("adjoint_coefficient_n: n must be >= 1");
  const auto fetch = [](const std::vector<Complex>& v, std::uint64_t m,
                        const char* what) {
    if (m >= v.size() || std::isnan(v[m].real()) || std::isnan(v[m].imag()))
      throw MissingCoefficient(std::string(what) + " value at " +
                               std::to_string(m) + " is not available");
    return v[m];
  };
  Complex sum = 0.0;
  for (std::int64_t k = 1; k * k <= n; ++k) {
    if (n % (k * k) != 0) continue;
    const std::uint64_t q = static_cast<std::uint64_t>(n / (k * k));
    sum += fetch(lambda_values, q * q, "lambda") *
           std::conj(fetch(chi_values, q, "chi"));
  }
  return sum;
}

Complex sym3_coefficient(const SatakePair& sp) {
  const Complex a = sp.alpha, b = sp.beta;
  return a * a * a + a * a * b + a * b * b + b * b * b;
}

double sym4_twisted_coefficient(const SatakePair& sp) {
  const Complex r = sp.alpha / sp.beta;
  const Complex s = r * r + r + 1.0 + 1.0 / r + 1.0 / (r * r);
  if (std::abs(s.imag()) > kImagTol)
    throw ImaginaryResidual("sym4_twisted_coefficient: imaginary residual " +
                            std::to_string(s.imag()));
  return s.real();
}

LiftCoefficients lift_coefficients(const LocalPrimeData& d) {
  const SatakePair sp = satake_from_lambda(d.lambda, d.chi);
  return LiftCoefficients{adjoint_coefficient(d), sym3_coefficient(sp),
                          sym4_twisted_coefficient(sp)};
}

Complex sym_coefficient_prime_power(const SatakePair& sp, Lift lift, int k) {
  if (k < 0) throw DomainError("sym_coefficient_prime_power: k must be >= 0");
  const Complex a = sp.alpha, b = sp.beta;
  std::vector<Complex> tuple;
  switch (lift) {
    case Lift::adjoint: tuple = {a / b, 1.0, b / a}; break;
    case Lift::sym3:    tuple = {a * a * a, a * a * b, a * b * b, b * b * b}; break;
    case Lift::sym4:
      tuple = {(a * a) / (b * b), a / b, 1.0, b / a, (b * b) / (a * a)};
      break;
  }
  // h_k via the cumulative recurrence for prod 1/(1 - t x).
  std::vector<Complex> c(k + 1, 0.0);
  c[0] = 1.0;
  for (const Complex& t : tuple)
    for (int j = 1; j <= k; ++j) c[j] += t * c[j - 1];
  return c[k];
}

bool is_ramanujan(const LocalPrimeData& d, double tol) {
  if (tol < 0) throw DomainError("is_ramanujan: tol must be >= 0");
  return std::abs(d.lambda) <= 2.0 + tol;
}

double nonramanujan_growth(const LocalPrimeData& d, int n) {
  if (n < 1) throw DomainError("nonramanujan_growth: n must be >= 1");
  if (is_ramanujan(d, 0.0))
    throw NotApplicable("nonramanujan_growth: p=" + std::to_string(d.p) +
                        " is a Ramanujan prime");
  const SatakePair sp = satake_from_lambda(d.lambda, d.chi);
  const Complex chin = std::pow(d.chi.value(), n);
  return (lambda_prime_power(sp, 2 * n) * std::conj(chin)).real();
}

double u_statistic(const LocalPrimeData& d) {
  const LiftCoefficients lc = lift_coefficients(d);
  const double t = 1.0 + 3.0 * lc.a_adj + 5.0 * lc.a_sym4;
  return t * t;
}

double u_statistic_expanded(const LocalPrimeData& d) {
  const LiftCoefficients lc = lift_coefficients(d);
  const double a3sq = std::norm(lc.a_sym3);
  return -20.0 + 15.0 * lc.a_adj + 19.0 * lc.a_sym4 + 30.0 * a3sq +
         25.0 * lc.a_sym4 * lc.a_sym4;
}

double nine_tenths_statistic(const LocalPrimeData& d) {
  const double t = 1.0 + 3.0 * adjoint_coefficient(d);
  return t * t;
}

}  // namespace maass::hecke
