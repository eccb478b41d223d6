#include "maass/sieve.hpp"

#include <algorithm>
#include <cmath>

namespace maass::sieve {

namespace {

// Largest integer strictly below X (the top of the "1 < l < X" range).
std::int64_t last_below(double X) {
  return static_cast<std::int64_t>(std::ceil(X)) - 1;
}

void require_limit(const PrimeTable& t, double needed, const char* who) {
  if (static_cast<double>(t.limit()) < needed)
    throw TableTooSmall(std::string(who) + ": prime table limit " +
                        std::to_string(t.limit()) + " < required " +
                        std::to_string(needed));
}

}  // namespace

std::int64_t PrimeTable::count_leq(double x) const {
  if (x < 2.0) return 0;
  auto it = std::upper_bound(primes_.begin(), primes_.end(),
                             static_cast<std::int64_t>(std::floor(x)));
  return static_cast<std::int64_t>(it - primes_.begin());
}

PrimeTable primes_up_to(std::int64_t limit) {
  if (limit > kPrimeLimitGuard)
    throw LimitExceeded("primes_up_to: limit " + std::to_string(limit) +
                        " exceeds guard " + std::to_string(kPrimeLimitGuard));
  std::vector<std::int64_t> primes;
  if (limit < 2) return PrimeTable(limit, std::move(primes));

  const std::int64_t sqrt_limit =
      static_cast<std::int64_t>(std::sqrt(static_cast<double>(limit))) + 1;

  // Small primes up to sqrt(limit).
  std::vector<char> small(sqrt_limit + 1, 1);
  small[0] = small[1] = 0;
  for (std::int64_t i = 2; i * i <= sqrt_limit; ++i)
    if (small[i])
      for (std::int64_t j = i * i; j <= sqrt_limit; j += i) small[j] = 0;
  std::vector<std::int64_t> base;
  for (std::int64_t i = 2; i <= sqrt_limit; ++i)
    if (small[i]) base.push_back(i);

  primes.reserve(static_cast<std::size_t>(
      limit > 16 ? 1.2 * limit / std::log(static_cast<double>(limit)) : 8));

  constexpr std::int64_t kSegment = 1 << 17;
  std::vector<char> seg(kSegment);
  for (std::int64_t low = 2; low <= limit; low += kSegment) {
    const std::int64_t high = std::min(low + kSegment - 1, limit);
    std::fill(seg.begin(), seg.end(), 1);
    for (std::int64_t p : base) {
      if (p * p > high) break;
      std::int64_t start = std::max(p * p, ((low + p - 1) / p) * p);
      for (std::int64_t j = start; j <= high; j += p) seg[j - low] = 0;
    }
    for (std::int64_t n = low; n <= high; ++n)
      if (seg[n - low]) primes.push_back(n);
  }
  return PrimeTable(limit, std::move(primes));
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  const auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % m);
  };
  const auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
      if (e & 1) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint8_t> rough_mask(double X, double Z, const PrimeTable& t) {
  const std::int64_t lmax = last_below(X);
  if (lmax > kEnumerationGuard)
    throw LimitExceeded("rough_mask: X too large for direct enumeration");
  require_limit(t, static_cast<double>(std::max<std::int64_t>(lmax, 0)),
                "phi_rough");
  std::vector<std::uint8_t> mask(std::max<std::int64_t>(lmax + 1, 0), 1);
  if (lmax >= 0) mask[0] = 0;
  if (lmax >= 1) mask[1] = 0;
  for (std::int64_t p : t.primes()) {
    if (static_cast<double>(p) > Z || p > lmax) break;
    for (std::int64_t m = p; m <= lmax; m += p) mask[m] = 0;
  }
  return mask;
}

std::vector<std::uint8_t> band_mask(double X, double Y, double Z,
                                    const PrimeTable& t) {
  const std::int64_t lmax = last_below(X);
  if (lmax > kEnumerationGuard)
    throw LimitExceeded("band_mask: X too large for direct enumeration");
  require_limit(t, std::min(Y, static_cast<double>(std::max<std::int64_t>(
                                   lmax, 0))),
                "phi_band");
  std::vector<std::uint8_t> mask(std::max<std::int64_t>(lmax + 1, 0), 0);
  if (lmax < 2) return mask;

  // cof[l] keeps the part of l not made of primes in (Z, Y]; bad marks a
  // factor <= Z.  l qualifies iff !bad and cof[l] == 1.
  std::vector<std::uint32_t> cof(lmax + 1);
  for (std::int64_t l = 0; l <= lmax; ++l)
    cof[l] = static_cast<std::uint32_t>(l);
  std::vector<std::uint8_t> bad(lmax + 1, 0);
  for (std::int64_t p : t.primes()) {
    if (p > lmax || static_cast<double>(p) > Y) break;
    if (static_cast<double>(p) <= Z) {
      for (std::int64_t m = p; m <= lmax; m += p) bad[m] = 1;
    } else {
      for (std::int64_t m = p; m <= lmax; m += p)
        while (cof[m] % p == 0) cof[m] /= static_cast<std::uint32_t>(p);
    }
  }
  for (std::int64_t l = 2; l <= lmax; ++l) mask[l] = (!bad[l] && cof[l] == 1);
  return mask;
}

std::int64_t phi_rough(double X, double Z, const PrimeTable& t) {
  const auto mask = rough_mask(X, Z, t);
  std::int64_t n = 0;
  for (std::uint8_t q : mask) n += q;
  return n;
}

std::int64_t phi_band(double X, double Y, double Z, const PrimeTable& t) {
  const auto mask = band_mask(X, Y, Z, t);
  std::int64_t n = 0;
  for (std::uint8_t q : mask) n += q;
  return n;
}

double phi_band_log(double X, double Y, double Z, const PrimeTable& t) {
  const auto mask = band_mask(X, Y, Z, t);
  double sum = 0.0;
  for (std::size_t l = 2; l < mask.size(); ++l)
    if (mask[l]) sum += std::log(X / static_cast<double>(l));
  return sum;
}

double phi_rough_asymptotic(double X, double Z,
                            const std::function<double(double)>& omega) {
  if (Z < 2.0 || X < Z)
    throw DomainError("phi_rough_asymptotic: need X >= Z >= 2");
  const double u = std::log(X) / std::log(Z);
  if (u < 1.0) throw DomainError("phi_rough_asymptotic: log X / log Z < 1");
  return omega(u) * X / std::log(Z) - Z / std::log(Z);
}

SievebBound sieveb_bound_report(double X, double Y, double Z,
                                const PrimeTable& t) {
  if (Z <= 1.0 || Y <= 1.0)
    throw DomainError("sieveb_bound_report: need Y, Z > 1");
  SievebBound r;
  r.exact = phi_band_log(X, Y, Z, t);
  r.main = X / (2.0 * std::log(Z)) - X / std::log(Y);
  return r;
}

ChebyshevReport chebyshev_report(double x, const PrimeTable& t) {
  if (x < 10.0) throw RangeError("chebyshev_report: need x >= 10");
  require_limit(t, x, "chebyshev_report");
  std::int64_t pi = 0;
  double theta = 0.0;
  for (std::int64_t p : t.primes()) {
    if (static_cast<double>(p) > x) break;
    ++pi;
    theta += std::log(static_cast<double>(p));
  }
  ChebyshevReport r;
  r.lhs = static_cast<double>(pi) * std::log(x) - theta;
  r.rhs = x / std::log(x);
  r.ratio = r.lhs / r.rhs;
  return r;
}

}  // namespace maass::sieve
