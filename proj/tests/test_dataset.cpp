#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "maass/dataset.hpp"

using namespace maass;
using hecke::Complex;
using doctest::Approx;

namespace {

std::string temp_path(const char* name) {
  return std::string("/tmp/maass_test_") + name;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  out << body;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

constexpr char kGoodFile[] =
    "# level=1\n"
    "# t_phi=9.5\n"
    "p\tlambda_re\tlambda_im\tchi_re\tchi_im\n"
    "2\t1.25\t0\t1\t0\n"
    "3\t-0.5\t0\t1\t0\n"
    "5\t2.5\t0\t1\t0\n";

}  // namespace

TEST_CASE("ingest a valid file") {
  const auto path = temp_path("good.tsv");
  write_file(path, kGoodFile);
  const auto ds = data::ingest(path);
  CHECK(ds.level == 1);
  CHECK(ds.t_phi == 9.5);
  REQUIRE(ds.records.size() == 3);
  CHECK(ds.records[0].p == 2);
  CHECK(ds.records[2].lambda.real() == 2.5);
  CHECK_NOTHROW(data::validate(ds));
}

TEST_CASE("ingest rejections carry the line number") {
  const auto path = temp_path("bad.tsv");

  write_file(path,
             "# level=1\n# t_phi=0\np\tlambda_re\tlambda_im\tchi_re\tchi_im\n"
             "2\t1\t0\t0.9\t0\n");
  CHECK_THROWS_WITH_AS(data::ingest(path),
                       doctest::Contains(":4:"), maass::ValidationError&);

  write_file(path,
             "# level=1\n# t_phi=0\np\tlambda_re\tlambda_im\tchi_re\tchi_im\n"
             "4\t1\t0\t1\t0\n");
  CHECK_THROWS_AS(data::ingest(path), maass::ValidationError&);

  write_file(path,
             "# level=1\n# t_phi=0\np\tlambda_re\tlambda_im\tchi_re\tchi_im\n"
             "5\t1\t0\t1\t0\n3\t1\t0\t1\t0\n");
  CHECK_THROWS_AS(data::ingest(path), maass::OrderError&);

  write_file(path,
             "# level=1\n# t_phi=0\np\tlambda_re\tlambda_im\tchi_re\tchi_im\n"
             "2\t1\tx\t1\t0\n");
  CHECK_THROWS_AS(data::ingest(path), maass::ParseError&);

  // metadata must precede data rows
  write_file(path,
             "p\tlambda_re\tlambda_im\tchi_re\tchi_im\n2\t1\t0\t1\t0\n");
  CHECK_THROWS_AS(data::ingest(path), maass::ParseError&);

  // consistency: lambda != chi conj(lambda)
  write_file(path,
             "# level=1\n# t_phi=0\np\tlambda_re\tlambda_im\tchi_re\tchi_im\n"
             "2\t1\t1\t1\t0\n");
  CHECK_THROWS_AS(data::ingest(path), maass::ValidationError&);

  // ramified prime: p divides the level
  write_file(path,
             "# level=10\n# t_phi=0\np\tlambda_re\tlambda_im\tchi_re\tchi_im\n"
             "5\t1\t0\t1\t0\n");
  CHECK_THROWS_AS(data::ingest(path), maass::ValidationError&);

  CHECK_THROWS_AS(data::ingest("/nonexistent/nope.tsv"), maass::ParseError&);
  write_file(path, kGoodFile);
  CHECK_THROWS_AS(data::ingest(path, "csv"), maass::ParseError&);
}

TEST_CASE("export then ingest round-trips bit for bit") {
  const auto t = sieve::primes_up_to(500);
  data::SyntheticConfig cfg{500, 99, {{7, 2.75}}};
  const auto ds = data::synthesize_sato_tate(cfg, t);
  const auto p1 = temp_path("rt1.tsv"), p2 = temp_path("rt2.tsv");
  data::export_tsv(ds, p1);
  const auto back = data::ingest(p1);
  data::export_tsv(back, p2);
  CHECK(read_file(p1) == read_file(p2));
  CHECK(back.records.size() == ds.records.size());
  CHECK(back.t_phi == ds.t_phi);
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    CHECK(back.records[i].p == ds.records[i].p);
    CHECK(back.records[i].lambda == ds.records[i].lambda);
  }
}

TEST_CASE("synthesize_sato_tate is reproducible and in range") {
  const auto t = sieve::primes_up_to(20000);
  data::SyntheticConfig cfg{20000, 1234, {}};
  const auto a = data::synthesize_sato_tate(cfg, t);
  const auto b = data::synthesize_sato_tate(cfg, t);
  REQUIRE(a.records.size() == b.records.size());
  CHECK(a.records.size() == static_cast<std::size_t>(t.count_leq(20000)));
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].lambda == b.records[i].lambda);
    CHECK(std::abs(a.records[i].lambda) <= 2.0);
    CHECK(a.records[i].lambda.imag() == 0.0);
  }
  // different seed changes the draw
  data::SyntheticConfig other{20000, 1235, {}};
  const auto c = data::synthesize_sato_tate(other, t);
  int differing = 0;
  for (std::size_t i = 0; i < a.records.size(); ++i)
    differing += a.records[i].lambda != c.records[i].lambda;
  CHECK(differing > 1000);
}

TEST_CASE("synthesize applies violations exactly and validates them") {
  const auto t = sieve::primes_up_to(100);
  data::SyntheticConfig cfg{100, 5, {{3, 2.5}, {11, -3.0}}};
  const auto ds = data::synthesize_sato_tate(cfg, t);
  for (const auto& r : ds.records) {
    if (r.p == 3) CHECK(r.lambda == Complex(2.5, 0.0));
    if (r.p == 11) CHECK(r.lambda == Complex(-3.0, 0.0));
  }
  CHECK_THROWS_AS(data::synthesize_sato_tate({100, 5, {{4, 2.5}}}, t),
                  maass::ValidationError&);
  CHECK_THROWS_AS(data::synthesize_sato_tate({100, 5, {{3, 1.5}}}, t),
                  maass::ValidationError&);
  CHECK_THROWS_AS(data::synthesize_sato_tate({1000, 5, {}}, t),
                  maass::TableTooSmall&);
}

TEST_CASE("density_report") {
  const auto t = sieve::primes_up_to(10000);

  // pure Sato-Tate data: every prime is Ramanujan
  const auto pure = data::synthesize_sato_tate({10000, 7, {}}, t);
  const auto r = data::density_report(pure, 10000.0);
  CHECK(r.pi_X == t.count_leq(10000));
  CHECK(r.ramanujan_count == r.pi_X);
  CHECK(r.identity_holds);
  CHECK(r.nonram_fraction_bound == Approx(r.mean_u / 1225.0));

  // boundary dataset lambda = 2 everywhere: U = 35^2, bound = 1
  data::EigenDataset boundary;
  boundary.level = 1;
  for (auto p : t.primes())
    boundary.records.push_back(
        {p, Complex(2.0, 0.0), hecke::UnitComplex::one()});
  const auto rb = data::density_report(boundary, 10000.0);
  CHECK(rb.mean_u == Approx(1225.0));
  CHECK(rb.mean_nine == Approx(100.0));
  CHECK(rb.nonram_fraction_bound == Approx(1.0));
  CHECK(rb.identity_holds);

  // missing prime
  data::EigenDataset gap = pure;
  gap.records.erase(gap.records.begin() + 3);
  CHECK_THROWS_AS(data::density_report(gap, 10000.0),
                  maass::IncompleteCoverage&);
}

TEST_CASE("density identity over random violation patterns") {
  const auto t = sieve::primes_up_to(3000);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> lam(2.0001, 6.0);
  for (int trial = 0; trial < 30; ++trial) {
    data::SyntheticConfig cfg{3000, rng(), {}};
    for (auto p : t.primes())
      if (rng() % 7 == 0) cfg.violations.push_back({p, lam(rng)});
    const auto ds = data::synthesize_sato_tate(cfg, t);
    const auto r = data::density_report(ds, 3000.0);
    CHECK(r.identity_holds);
    const double ram_fraction = static_cast<double>(r.ramanujan_count) /
                                static_cast<double>(r.pi_X);
    CHECK(ram_fraction >= 1.0 - r.nonram_fraction_bound - 1e-12);
    CHECK(r.ramanujan_count + static_cast<std::int64_t>(cfg.violations.size()) ==
          r.pi_X);
  }
}

TEST_CASE("least_ramanujan_prime") {
  const auto t = sieve::primes_up_to(100);
  const dde::SigmaConstants c{3.65887, 1.0 / 3.65887};

  const auto pure = data::synthesize_sato_tate({100, 7, {}}, t);
  auto r = data::least_ramanujan_prime(pure, c);
  CHECK(r.found);
  CHECK(r.p == 2);
  CHECK(r.bound == Approx(1.0));  // N = 1, t_phi = 0
  CHECK_FALSE(r.within_bound);    // 2 > 1: informational only

  const auto shifted =
      data::synthesize_sato_tate({100, 7, {{2, 2.5}, {3, -2.5}, {5, 3.0}}}, t);
  r = data::least_ramanujan_prime(shifted, c);
  CHECK(r.found);
  CHECK(r.p == 7);

  data::EigenDataset all_bad;
  all_bad.level = 1;
  for (auto p : t.primes())
    if (p <= 7)
      all_bad.records.push_back(
          {p, Complex(2.5, 0.0), hecke::UnitComplex::one()});
  r = data::least_ramanujan_prime(all_bad, c);
  CHECK_FALSE(r.found);

  // t_phi enters the bound
  data::EigenDataset spectral = pure;
  spectral.t_phi = 9.0;
  r = data::least_ramanujan_prime(spectral, c);
  CHECK(r.bound == Approx(std::pow(10.0, c.exponent)));
  CHECK_FALSE(r.within_bound);  // p = 2 > 10^0.2733 = 1.877

  spectral.t_phi = 30.0;  // bound = 31^0.2733 = 2.56 > 2
  r = data::least_ramanujan_prime(spectral, c);
  CHECK(r.within_bound);
}

TEST_CASE("pnt_partial_sums") {
  const auto t = sieve::primes_up_to(3000);

  data::EigenDataset single;
  single.level = 1;
  single.records.push_back({2, Complex(2.0, 0.0), hecke::UnitComplex::one()});
  const auto r1 = data::pnt_partial_sums(single, 2.5);
  CHECK(r1.sum_A == Approx(3.0));
  CHECK(r1.sum_A4 == Approx(5.0));

  // prime powers enter the Lambda-weighted sums: at X = 4, n = 2, 3, 4
  data::EigenDataset two;
  two.level = 1;
  two.records.push_back({2, Complex(2.0, 0.0), hecke::UnitComplex::one()});
  two.records.push_back({3, Complex(2.0, 0.0), hecke::UnitComplex::one()});
  const auto r2 = data::pnt_partial_sums(two, 4.0);
  const auto sp = hecke::satake_from_lambda(2.0, hecke::UnitComplex::one());
  const double a31 = std::norm(
      hecke::sym_coefficient_prime_power(sp, hecke::Lift::sym3, 1));
  const double a32 = std::norm(
      hecke::sym_coefficient_prime_power(sp, hecke::Lift::sym3, 2));
  CHECK(a31 == Approx(16.0));   // A3 = 4 at lambda = 2
  CHECK(a32 == Approx(100.0));  // h_2 of {1,1,1,1} = C(5,2) = 10
  CHECK(r2.lambda_sym3_sq ==
        Approx(std::log(2.0) * (a31 + a32) + std::log(3.0) * a31));

  const auto st = data::synthesize_sato_tate({3000, 11, {}}, t);
  const auto r = data::pnt_partial_sums(st, 3000.0);
  CHECK(r.sym3_normalized == Approx(1.0).epsilon(0.25));
  CHECK(r.sym4_normalized == Approx(1.0).epsilon(0.25));
  CHECK(std::fabs(r.sum_A_normalized) < 1.0);
}

TEST_CASE("pnt sums trend toward their limits over three decades") {
  const auto t = sieve::primes_up_to(1000000);
  const auto st = data::synthesize_sato_tate({1000000, 13, {}}, t);
  const auto r4 = data::pnt_partial_sums(st, 1e4);
  const auto r5 = data::pnt_partial_sums(st, 1e5);
  const auto r6 = data::pnt_partial_sums(st, 1e6);
  // sum A(p) / (X / log X) heads to 0; allow Monte Carlo wiggle per step
  CHECK(std::fabs(r6.sum_A_normalized) <
        std::fabs(r4.sum_A_normalized) + 0.05);
  CHECK(std::fabs(r6.sum_A_normalized) < 0.2);
  // Lambda-weighted |A3|^2 sum over prime powers is ~ X
  CHECK(r6.sym3_normalized == Approx(1.0).epsilon(0.05));
  CHECK(r6.sym4_normalized == Approx(1.0).epsilon(0.05));
  CHECK(std::fabs(r6.sym3_normalized - 1.0) <
        std::fabs(r4.sym3_normalized - 1.0) + 0.02);
}

TEST_CASE("remark_density_inequality") {
  const auto t = sieve::primes_up_to(100000);
  const auto st = data::synthesize_sato_tate({100000, 17, {}}, t);
  const auto r = data::remark_density_inequality(st, 100000.0);
  CHECK(r.sup3 == Approx(1.0).epsilon(0.15));
  CHECK(r.sup4 == Approx(1.0).epsilon(0.15));

  // boundary dataset lambda = 2: A3 = 4 at every prime, sup3 = 16
  data::EigenDataset boundary;
  boundary.level = 1;
  const auto t2 = sieve::primes_up_to(1000);
  for (auto p : t2.primes())
    boundary.records.push_back(
        {p, Complex(2.0, 0.0), hecke::UnitComplex::one()});
  const auto rb = data::remark_density_inequality(boundary, 1000.0);
  CHECK(rb.sup3 == Approx(16.0));
  CHECK(rb.sup4 == Approx(25.0));

  // X below the first prime
  const auto r0 = data::remark_density_inequality(boundary, 1.5);
  CHECK(r0.sup3 == 0.0);
  CHECK(r0.sup4 == 0.0);
}

TEST_CASE("validate rejects broken datasets") {
  data::EigenDataset ds;
  ds.level = 1;
  ds.records.push_back({4, Complex(1.0, 0.0), hecke::UnitComplex::one()});
  CHECK_THROWS_AS(data::validate(ds), maass::ValidationError&);

  ds.records.clear();
  ds.records.push_back({5, Complex(1.0, 0.0), hecke::UnitComplex::one()});
  ds.records.push_back({3, Complex(1.0, 0.0), hecke::UnitComplex::one()});
  CHECK_THROWS_AS(data::validate(ds), maass::OrderError&);
}
