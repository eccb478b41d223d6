#include "maass/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>
#include <unordered_map>

namespace maass::data {

using hecke::Complex;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr char kHeader[] = "p\tlambda_re\tlambda_im\tchi_re\tchi_im";

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Counter-based uniform draw keyed on (seed, p, counter); identical on every
// platform and independent of evaluation order.
double uniform01(std::uint64_t seed, std::uint64_t p, std::uint64_t counter) {
  const std::uint64_t z = mix64(mix64(mix64(seed) ^ p) ^ counter);
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

[[noreturn]] void fail_line(const char* kind, const std::string& path,
                            std::size_t line, const std::string& what) {
  const std::string msg =
      path + ":" + std::to_string(line) + ": " + what;
  if (std::strcmp(kind, "parse") == 0) throw ParseError(msg);
  if (std::strcmp(kind, "order") == 0) throw OrderError(msg);
  throw ValidationError(msg);
}

bool parse_double(const std::string& s, double& out) {
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end && *end == '\0' && end != s.c_str();
}

bool parse_int(const std::string& s, std::int64_t& out) {
  char* end = nullptr;
  out = std::strtoll(s.c_str(), &end, 10);
  return end && *end == '\0' && end != s.c_str();
}

// Checks coverage: every prime q <= X with q coprime to the level must have
// a record.  Both lists ascend, so one pass suffices.
void require_coverage(const EigenDataset& ds, double X) {
  const std::int64_t top = static_cast<std::int64_t>(std::floor(X));
  if (top < 2) return;
  const auto table = sieve::primes_up_to(top);
  std::size_t i = 0;
  for (std::int64_t q : table.primes()) {
    if (ds.level % q == 0) continue;
    while (i < ds.records.size() && ds.records[i].p < q) ++i;
    if (i == ds.records.size() || ds.records[i].p != q)
      throw IncompleteCoverage("dataset does not cover prime " +
                               std::to_string(q));
  }
}

}  // namespace

void validate(const EigenDataset& ds) {
  if (ds.level < 1) throw ValidationError("dataset: level must be >= 1");
  std::int64_t last = 0;
  for (const auto& d : ds.records) {
    if (!sieve::is_prime_u64(static_cast<std::uint64_t>(d.p)))
      throw ValidationError("dataset: p=" + std::to_string(d.p) +
                            " is not prime");
    if (d.p <= last)
      throw OrderError("dataset: primes not strictly ascending at p=" +
                       std::to_string(d.p));
    if (ds.level % d.p == 0)
      throw ValidationError("dataset: p=" + std::to_string(d.p) +
                            " divides the level");
    hecke::check_consistency(d, 1e-6);
    last = d.p;
  }
}

EigenDataset ingest(const std::string& path, const std::string& format) {
  if (format != "tsv")
    throw ParseError("ingest: unsupported format '" + format + "'");
  std::ifstream in(path);
  if (!in) throw ParseError("ingest: cannot open " + path);

  EigenDataset ds;
  bool saw_level = false, saw_tphi = false, saw_header = false;
  std::int64_t last_p = 0;
  std::string line;
  std::size_t lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    if (line[0] == '#') {
      std::string body = line.substr(1);
      while (!body.empty() && body.front() == ' ') body.erase(body.begin());
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;  // free comment
      const std::string key = body.substr(0, eq);
      const std::string val = body.substr(eq + 1);
      if (key == "level") {
        if (!parse_int(val, ds.level))
          fail_line("parse", path, lineno, "bad level value");
        saw_level = true;
      } else if (key == "t_phi") {
        if (!parse_double(val, ds.t_phi))
          fail_line("parse", path, lineno, "bad t_phi value");
        saw_tphi = true;
      } else if (key == "source") {
        ds.source = val;
      }
      continue;
    }

    if (!saw_header) {
      if (line != kHeader)
        fail_line("parse", path, lineno, "expected header line");
      saw_header = true;
      continue;
    }

    if (!saw_level || !saw_tphi)
      fail_line("parse", path, lineno,
                "level and t_phi metadata must precede data rows");

    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      const auto tab = line.find('\t', pos);
      fields.push_back(line.substr(pos, tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (fields.size() != 5)
      fail_line("parse", path, lineno, "expected 5 tab-separated fields");

    std::int64_t p;
    double lre, lim, cre, cim;
    if (!parse_int(fields[0], p) || !parse_double(fields[1], lre) ||
        !parse_double(fields[2], lim) || !parse_double(fields[3], cre) ||
        !parse_double(fields[4], cim))
      fail_line("parse", path, lineno, "malformed numeric field");

    if (!sieve::is_prime_u64(static_cast<std::uint64_t>(p)))
      fail_line("validate", path, lineno,
                "p=" + std::to_string(p) + " is not prime");
    if (p <= last_p)
      fail_line("order", path, lineno, "primes must be strictly ascending");
    if (ds.level % p == 0)
      fail_line("validate", path, lineno,
                "p=" + std::to_string(p) + " divides the level");

    const Complex lambda(lre, lim), chi(cre, cim);
    if (std::abs(std::abs(chi) - 1.0) > 1e-6)
      fail_line("validate", path, lineno, "|chi| != 1");
    if (std::abs(lambda - chi * std::conj(lambda)) > 1e-6)
      fail_line("validate", path, lineno, "lambda != chi*conj(lambda)");

    ds.records.push_back(
        hecke::LocalPrimeData{p, lambda, hecke::UnitComplex(chi, 1e-6)});
    last_p = p;
  }

  if (!saw_header) throw ParseError(path + ": no header line found");
  return ds;
}

void export_tsv(const EigenDataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("export_tsv: cannot open " + path);
  char buf[256];
  std::snprintf(buf, sizeof(buf), "# level=%lld\n",
                static_cast<long long>(ds.level));
  out << buf;
  std::snprintf(buf, sizeof(buf), "# t_phi=%.17g\n", ds.t_phi);
  out << buf;
  if (!ds.source.empty()) out << "# source=" << ds.source << "\n";
  out << kHeader << "\n";
  for (const auto& d : ds.records) {
    const Complex chi = d.chi.value();
    std::snprintf(buf, sizeof(buf), "%lld\t%.17g\t%.17g\t%.17g\t%.17g\n",
                  static_cast<long long>(d.p), d.lambda.real(),
                  d.lambda.imag(), chi.real(), chi.imag());
    out << buf;
  }
}

EigenDataset synthesize_sato_tate(const SyntheticConfig& config,
                                  const sieve::PrimeTable& table) {
  if (config.prime_limit > table.limit())
    throw TableTooSmall("synthesize_sato_tate: prime_limit beyond table");
  std::unordered_map<std::int64_t, double> overrides;
  for (const auto& v : config.violations) {
    if (!sieve::is_prime_u64(static_cast<std::uint64_t>(v.p)))
      throw ValidationError("synthesize_sato_tate: violation at non-prime " +
                            std::to_string(v.p));
    if (v.p > config.prime_limit)
      throw ValidationError("synthesize_sato_tate: violation prime " +
                            std::to_string(v.p) + " beyond prime_limit");
    if (std::fabs(v.lambda) <= 2.0)
      throw ValidationError("synthesize_sato_tate: override |lambda| must be > 2");
    overrides[v.p] = v.lambda;
  }

  EigenDataset ds;
  ds.level = 1;
  ds.t_phi = 0.0;
  ds.source = "sato-tate seed=" + std::to_string(config.seed) +
              " limit=" + std::to_string(config.prime_limit);
  ds.records.reserve(static_cast<std::size_t>(table.count_leq(
      static_cast<double>(config.prime_limit))));

  for (std::int64_t p : table.primes()) {
    if (p > config.prime_limit) break;
    double lambda = 0.0;
    const auto hit = overrides.find(p);
    if (hit != overrides.end()) {
      lambda = hit->second;
    } else {
      for (std::uint64_t ctr = 0;; ++ctr) {
        const double u1 =
            uniform01(config.seed, static_cast<std::uint64_t>(p), 2 * ctr);
        const double u2 =
            uniform01(config.seed, static_cast<std::uint64_t>(p), 2 * ctr + 1);
        const double theta = kPi * u1;
        const double s = std::sin(theta);
        if (u2 < s * s) {
          lambda = 2.0 * std::cos(theta);
          break;
        }
      }
    }
    ds.records.push_back(hecke::LocalPrimeData{p, Complex(lambda, 0.0),
                                               hecke::UnitComplex::one()});
  }
  return ds;
}

DensityReport density_report(const EigenDataset& ds, double X, double tol) {
  require_coverage(ds, X);
  DensityReport r;
  r.X = X;
  double sum_u = 0.0, sum_nine = 0.0;
  for (const auto& d : ds.records) {
    if (static_cast<double>(d.p) > X) break;
    ++r.pi_X;
    if (hecke::is_ramanujan(d, tol)) ++r.ramanujan_count;
    sum_u += hecke::u_statistic(d);
    sum_nine += hecke::nine_tenths_statistic(d);
  }
  if (r.pi_X > 0) {
    r.mean_u = sum_u / static_cast<double>(r.pi_X);
    r.mean_nine = sum_nine / static_cast<double>(r.pi_X);
    r.nonram_fraction_bound = r.mean_u / (35.0 * 35.0);
    const double ram_fraction = static_cast<double>(r.ramanujan_count) /
                                static_cast<double>(r.pi_X);
    r.identity_holds = ram_fraction >= 1.0 - r.nonram_fraction_bound - 1e-12;
  }
  return r;
}

LeastPrimeReport least_ramanujan_prime(const EigenDataset& ds,
                                       const dde::SigmaConstants& constants,
                                       double tol) {
  LeastPrimeReport r;
  r.bound = dde::ramanujan_prime_bound(ds.level, ds.t_phi, constants);
  for (const auto& d : ds.records) {
    if (hecke::is_ramanujan(d, tol)) {
      r.found = true;
      r.p = d.p;
      r.within_bound = static_cast<double>(d.p) <= r.bound;
      break;
    }
  }
  return r;
}

PntSums pnt_partial_sums(const EigenDataset& ds, double X) {
  require_coverage(ds, X);
  PntSums r;
  for (const auto& d : ds.records) {
    if (static_cast<double>(d.p) > X) break;
    const hecke::SatakePair sp = hecke::satake_from_lambda(d.lambda, d.chi);
    r.sum_A += hecke::adjoint_coefficient(d);
    r.sum_A4 += hecke::sym4_twisted_coefficient(sp);
    const double logp = std::log(static_cast<double>(d.p));
    double pk = static_cast<double>(d.p);
    for (int k = 1; pk <= X; ++k, pk *= static_cast<double>(d.p)) {
      r.lambda_sym3_sq +=
          logp * std::norm(hecke::sym_coefficient_prime_power(
                     sp, hecke::Lift::sym3, k));
      r.lambda_sym4_sq +=
          logp * std::norm(hecke::sym_coefficient_prime_power(
                     sp, hecke::Lift::sym4, k));
    }
  }
  const double lx = std::log(X);
  if (X > 1.0 && lx > 0.0) {
    r.sum_A_normalized = r.sum_A / (X / lx);
    r.sum_A4_normalized = r.sum_A4 / (X / lx);
    r.sym3_normalized = r.lambda_sym3_sq / X;
    r.sym4_normalized = r.lambda_sym4_sq / X;
  }
  return r;
}

DensitySups remark_density_inequality(const EigenDataset& ds, double X) {
  require_coverage(ds, X);
  DensitySups r;
  std::int64_t pi = 0;
  double s3 = 0.0, s4 = 0.0;
  for (const auto& d : ds.records) {
    if (static_cast<double>(d.p) > X) break;
    const hecke::SatakePair sp = hecke::satake_from_lambda(d.lambda, d.chi);
    s3 += std::norm(hecke::sym3_coefficient(sp));
    const double a4 = hecke::sym4_twisted_coefficient(sp);
    s4 += a4 * a4;
    ++pi;
  }
  if (pi > 0) {
    r.sup3 = s3 / static_cast<double>(pi);
    r.sup4 = s4 / static_cast<double>(pi);
  }
  return r;
}

}  // namespace maass::data
