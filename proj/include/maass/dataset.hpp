#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maass/delay_ode.hpp"
#include "maass/errors.hpp"
#include "maass/hecke.hpp"
#include "maass/sieve.hpp"

// Ingestion, validation and synthesis of Hecke-eigenvalue datasets, plus the
// per-prime density statistics: Ramanujan counts, the U(p) and (1+3A)^2
// means, prime-number-theorem partial sums and the least-Ramanujan-prime
// report.
//
// TSV schema (ingest/export):
//   # level=<N>
//   # t_phi=<real>
//   # source=<free text>          (optional)
//   p<TAB>lambda_re<TAB>lambda_im<TAB>chi_re<TAB>chi_im
//   <one row per prime, ascending, 17 significant digits>
// Comment lines start with '#'; level and t_phi must appear before data.

namespace maass::data {

struct EigenDataset {
  std::int64_t level = 1;
  double t_phi = 0.0;
  std::string source;
  std::vector<hecke::LocalPrimeData> records;  // ascending p, all p coprime to level
};

// Full invariant check: p prime, strictly ascending, coprime to the level,
// lambda = chi*conj(lambda) within 1e-6.
void validate(const EigenDataset& ds);

EigenDataset ingest(const std::string& path, const std::string& format = "tsv");
void export_tsv(const EigenDataset& ds, const std::string& path);

struct Violation {
  std::int64_t p;
  double lambda;  // real, |lambda| > 2
};

struct SyntheticConfig {
  std::int64_t prime_limit = 0;
  std::uint64_t seed = 0;
  std::vector<Violation> violations;
};

// One record per prime p <= prime_limit with lambda = 2 cos(theta), theta
// drawn from the Sato-Tate density (2/pi) sin^2(theta), chi = 1.  Sampling
// is rejection from the uniform proposal driven by a counter-based generator
// keyed on (seed, p), so the output is reproducible bit for bit and
// independent of iteration order.  Violations are applied afterwards as
// exact overrides.
EigenDataset synthesize_sato_tate(const SyntheticConfig& config,
                                  const sieve::PrimeTable& table);

struct DensityReport {
  double X = 0.0;
  std::int64_t pi_X = 0;             // primes <= X coprime to the level
  std::int64_t ramanujan_count = 0;  // of these, |lambda| <= 2 + tol
  double mean_u = 0.0;               // sum U(p) / pi_X
  double mean_nine = 0.0;            // sum (1+3A(p))^2 / pi_X
  double nonram_fraction_bound = 0.0;  // mean_u / 35^2
  bool identity_holds = true;  // ramanujan_fraction >= 1 - nonram_fraction_bound
};

// Requires every prime <= X coprime to the level to be present
// (IncompleteCoverage otherwise).
DensityReport density_report(const EigenDataset& ds, double X,
                             double tol = hecke::kImagTol);

struct LeastPrimeReport {
  bool found = false;
  std::int64_t p = 0;
  double bound = 0.0;  // (N (1+|t_phi|))^(1/u0), implied constant 1
  bool within_bound = false;  // informational
};

LeastPrimeReport least_ramanujan_prime(const EigenDataset& ds,
                                       const dde::SigmaConstants& constants,
                                       double tol = hecke::kImagTol);

struct PntSums {
  double sum_A = 0.0;    // sum over p <= X of A(p)
  double sum_A4 = 0.0;   // sum over p <= X of A4(p)
  double lambda_sym3_sq = 0.0;  // sum over p^k <= X of log(p) |A3(p^k)|^2
  double lambda_sym4_sq = 0.0;  // same with A4
  double sum_A_normalized = 0.0;   // / (X / log X)
  double sum_A4_normalized = 0.0;  // / (X / log X)
  double sym3_normalized = 0.0;    // / X
  double sym4_normalized = 0.0;    // / X
};

PntSums pnt_partial_sums(const EigenDataset& ds, double X);

struct DensitySups {
  double sup3 = 0.0;  // sum |A3(p)|^2 / pi(X)
  double sup4 = 0.0;  // sum |A4(p)|^2 / pi(X)
};

DensitySups remark_density_inequality(const EigenDataset& ds, double X);

}  // namespace maass::data
