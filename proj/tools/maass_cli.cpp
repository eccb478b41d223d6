// Command-line front end: every library computation as a subcommand with
// CSV (default) or JSON output.  Numeric output uses 17 significant digits
// unless --digits is given.  Exit codes: 0 success, 2 invalid input,
// 3 computation failure, 64 usage error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "maass/arith.hpp"
#include "maass/dataset.hpp"
#include "maass/delay_ode.hpp"
#include "maass/errors.hpp"
#include "maass/hecke.hpp"
#include "maass/sieve.hpp"

namespace {

using namespace maass;

struct RunConfig {
  double step_h = 1e-4;
  double ramanujan_tol = 1e-9;
  std::string output_format = "csv";
  std::int64_t prime_limit_guard = sieve::kPrimeLimitGuard;
  int digits = 17;
};

void validate_config(const RunConfig& cfg) {
  const auto m = std::llround(1.0 / cfg.step_h);
  if (!(cfg.step_h > 0.0) || m < 1 ||
      std::fabs(static_cast<double>(m) * cfg.step_h - 1.0) > 1e-9)
    throw InputError("config: step_h must divide 1 exactly");
  if (!(cfg.ramanujan_tol > 0.0))
    throw InputError("config: ramanujan_tol must be positive");
  if (cfg.output_format != "csv" && cfg.output_format != "json")
    throw InputError("config: output_format must be csv or json");
  if (cfg.prime_limit_guard < 2)
    throw InputError("config: prime_limit_guard must be >= 2");
  if (cfg.digits < 1 || cfg.digits > 17)
    throw InputError("config: digits must be in 1..17");
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw InputError("config: cannot open " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("config:" + std::to_string(lineno) +
                       ": expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);
    try {
      if (key == "step_h")
        cfg.step_h = std::stod(val);
      else if (key == "ramanujan_tol")
        cfg.ramanujan_tol = std::stod(val);
      else if (key == "output_format")
        cfg.output_format = val;
      else if (key == "prime_limit_guard")
        cfg.prime_limit_guard = std::stoll(val);
      else if (key == "digits")
        cfg.digits = std::stoi(val);
      else
        throw InputError("config:" + std::to_string(lineno) +
                         ": unknown key '" + key + "'");
    } catch (const std::logic_error&) {
      throw InputError("config:" + std::to_string(lineno) + ": bad value for " +
                       key);
    }
  }
}

// One output row: named fields in order, rendered as CSV or JSON.
class Row {
 public:
  using Value =
      std::variant<std::monostate, double, std::int64_t, bool, std::string>;

  Row& add(std::string name, Value v) {
    fields_.emplace_back(std::move(name), std::move(v));
    return *this;
  }

  void print(const RunConfig& cfg) const {
    if (cfg.output_format == "json") {
      nlohmann::ordered_json j;
      for (const auto& [name, v] : fields_) {
        if (std::holds_alternative<std::monostate>(v))
          j[name] = nullptr;
        else if (std::holds_alternative<double>(v))
          j[name] = std::get<double>(v);
        else if (std::holds_alternative<std::int64_t>(v))
          j[name] = std::get<std::int64_t>(v);
        else if (std::holds_alternative<bool>(v))
          j[name] = std::get<bool>(v);
        else
          j[name] = std::get<std::string>(v);
      }
      std::cout << j.dump() << "\n";
      return;
    }
    std::string header, row;
    char buf[64];
    for (const auto& [name, v] : fields_) {
      if (!header.empty()) {
        header += ',';
        row += ',';
      }
      header += name;
      if (std::holds_alternative<double>(v)) {
        std::snprintf(buf, sizeof(buf), "%.*g", cfg.digits,
                      std::get<double>(v));
        row += buf;
      } else if (std::holds_alternative<std::int64_t>(v)) {
        row += std::to_string(std::get<std::int64_t>(v));
      } else if (std::holds_alternative<bool>(v)) {
        row += std::get<bool>(v) ? "true" : "false";
      } else if (std::holds_alternative<std::string>(v)) {
        row += std::get<std::string>(v);
      }
    }
    std::cout << header << "\n" << row << "\n";
  }

 private:
  std::vector<std::pair<std::string, Value>> fields_;
};

void dump_grid(const dde::SolutionGrid& grid, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open dump file " + path);
  out << "u,y\n";
  char buf[80];
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", grid.node_u(i),
                  grid.node_y(i));
    out << buf;
  }
}

sieve::PrimeTable guarded_table(std::int64_t limit, const RunConfig& cfg) {
  if (limit > cfg.prime_limit_guard)
    throw InputError("requested prime limit " + std::to_string(limit) +
                     " exceeds the configured guard " +
                     std::to_string(cfg.prime_limit_guard));
  return sieve::primes_up_to(limit);
}

std::vector<data::Violation> parse_violations(const std::string& spec) {
  std::vector<data::Violation> out;
  if (spec.empty()) return out;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const auto comma = spec.find(',', pos);
    const std::string item = spec.substr(pos, comma - pos);
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw InputError("--violate expects p:lambda[,p:lambda...]");
    try {
      out.push_back({std::stoll(item.substr(0, colon)),
                     std::stod(item.substr(colon + 1))});
    } catch (const std::logic_error&) {
      throw InputError("--violate: malformed entry '" + item + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;

  // Config file first (RS_CONFIG or --config), flags override.
  std::string config_path;
  if (const char* env = std::getenv("RS_CONFIG")) config_path = env;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) config_path = argv[i + 1];
    if (a.rfind("--config=", 0) == 0) config_path = a.substr(9);
  }
  try {
    if (!config_path.empty()) load_config_file(config_path, cfg);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"Hecke-eigenvalue and sieve-density toolkit"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--config", config_path, "configuration file (key=value)");
  app.add_option("--format", cfg.output_format, "output format: csv or json");
  app.add_option("--digits", cfg.digits, "significant digits for numbers");

  double arg_u = 0.0, arg_x = 0.0, arg_y = 0.0, arg_z = 0.0, arg_cut = 1e5;
  double arg_tol = -1.0;
  std::int64_t arg_level = 1, arg_limit = 0, arg_trials = 1000;
  std::uint64_t arg_seed = 1;
  std::string arg_input, arg_out, arg_dump, arg_violate;
  bool flag_logw = false, flag_asym = false;

  auto* sigma_zero =
      app.add_subcommand("sigma-zero", "smallest zero of sigma and 1/u0");
  sigma_zero->add_option("--dump", arg_dump, "write the solution grid as CSV");

  auto* sigma_eval = app.add_subcommand("sigma-eval", "evaluate sigma(u)");
  sigma_eval->add_option("--u", arg_u, "evaluation point")->required();
  sigma_eval->add_option("--dump", arg_dump, "write the solution grid as CSV");

  auto* buchstab = app.add_subcommand("buchstab", "evaluate omega(u)");
  buchstab->add_option("--u", arg_u, "evaluation point")->required();
  buchstab->add_option("--dump", arg_dump, "write the solution grid as CSV");

  auto* dilog_cmd = app.add_subcommand("dilog", "real dilogarithm Li2(x)");
  dilog_cmd->add_option("--x", arg_x, "argument, x <= 1")->required();

  auto* sieve_count =
      app.add_subcommand("sieve-count", "integers with prime factors in (Z,Y]");
  sieve_count->add_option("--x", arg_x, "count integers below X")->required();
  sieve_count->add_option("--y", arg_y, "upper factor bound Y")->required();
  sieve_count->add_option("--z", arg_z, "lower factor bound Z")->required();
  sieve_count->add_flag("--log-weighted", flag_logw,
                        "sum log(X/l) instead of counting");
  sieve_count->add_flag("--asymptotic", flag_asym,
                        "include the Buchstab main-term asymptotic for (X,Z)");

  auto* mean_value =
      app.add_subcommand("mean-value", "partial sums of h vs the sigma model");
  mean_value->add_option("--y", arg_y, "threshold y")->required();
  mean_value->add_option("--u", arg_u, "exponent u (range y^u)")->required();
  mean_value->add_option("--level", arg_level, "level N (default 1)");

  auto* c_const = app.add_subcommand("c-constant", "Euler product c(N)");
  c_const->add_option("--level", arg_level, "level N (default 1)");
  c_const->add_option("--cutoff", arg_cut, "prime cutoff P (default 1e5)");

  auto* density =
      app.add_subcommand("density", "Ramanujan-prime density statistics");
  density->add_option("--input", arg_input, "dataset TSV")->required();
  density->add_option("--x", arg_x, "count primes up to X")->required();
  density->add_option("--tol", arg_tol, "Ramanujan tolerance override");

  auto* synth = app.add_subcommand("synth", "synthesize a Sato-Tate dataset");
  synth->add_option("--limit", arg_limit, "primes up to this limit")
      ->required();
  synth->add_option("--seed", arg_seed, "generator seed")->required();
  synth->add_option("--violate", arg_violate,
                    "overrides p:lambda[,p:lambda...] with |lambda| > 2");
  synth->add_option("--out", arg_out, "output TSV path")->required();

  auto* least = app.add_subcommand("least-prime", "least Ramanujan prime");
  least->add_option("--input", arg_input, "dataset TSV")->required();
  least->add_option("--tol", arg_tol, "Ramanujan tolerance override");

  auto* ssums = app.add_subcommand("s-sums", "S(x) = S+ + S- eigenvalue sums");
  ssums->add_option("--x", arg_x, "upper limit x")->required();
  ssums->add_option("--input", arg_input, "dataset TSV")->required();

  auto* identity =
      app.add_subcommand("identity-check", "random-data identity residuals");
  identity->add_option("--trials", arg_trials, "number of random samples");
  identity->add_option("--seed", arg_seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    validate_config(cfg);

    if (sigma_zero->parsed()) {
      dde::SigmaFunction sigma(4.5, cfg.step_h);
      if (!arg_dump.empty()) dump_grid(sigma.grid(), arg_dump);
      const auto c = sigma.constants();
      Row().add("u0", c.u0).add("exponent", c.exponent).print(cfg);
    } else if (sigma_eval->parsed()) {
      if (arg_u <= 0.0) throw DomainError("sigma-eval: u must be positive");
      dde::SigmaFunction sigma(std::max(2.0, arg_u), cfg.step_h);
      if (!arg_dump.empty()) dump_grid(sigma.grid(), arg_dump);
      Row().add("u", arg_u).add("sigma", sigma(arg_u)).print(cfg);
    } else if (buchstab->parsed()) {
      if (arg_u < 1.0) throw DomainError("buchstab: u must be >= 1");
      dde::BuchstabFunction omega(std::max(3.0, arg_u), cfg.step_h);
      if (!arg_dump.empty()) dump_grid(omega.grid(), arg_dump);
      Row().add("u", arg_u).add("omega", omega(arg_u)).print(cfg);
    } else if (dilog_cmd->parsed()) {
      Row().add("x", arg_x).add("li2", dde::dilog(arg_x)).print(cfg);
    } else if (sieve_count->parsed()) {
      const auto lmax = static_cast<std::int64_t>(std::ceil(arg_x)) - 1;
      const auto table = guarded_table(std::max<std::int64_t>(lmax, 2), cfg);
      const double exact =
          flag_logw ? sieve::phi_band_log(arg_x, arg_y, arg_z, table)
                    : static_cast<double>(
                          sieve::phi_band(arg_x, arg_y, arg_z, table));
      Row row;
      row.add("X", arg_x).add("Y", arg_y).add("Z", arg_z).add("exact", exact);
      if (flag_asym) {
        const double u = std::log(arg_x) / std::log(arg_z);
        dde::BuchstabFunction omega(std::max(3.0, u + 0.5), cfg.step_h);
        row.add("asymptotic",
                sieve::phi_rough_asymptotic(arg_x, arg_z, [&](double v) {
                  return omega(v);
                }));
      } else {
        row.add("asymptotic", std::monostate{});
      }
      row.add("main_bound",
              arg_x / (2.0 * std::log(arg_z)) - arg_x / std::log(arg_y));
      row.print(cfg);
    } else if (mean_value->parsed()) {
      const double x = std::pow(arg_y, arg_u);
      const auto table =
          guarded_table(static_cast<std::int64_t>(std::ceil(x)) + 1, cfg);
      dde::SigmaFunction sigma(std::max(2.0, arg_u), cfg.step_h);
      const auto r =
          arith::mean_value_report({arg_y, arg_level}, arg_u, table,
                                   [&](double v) { return sigma(v); });
      Row()
          .add("y", arg_y)
          .add("u", arg_u)
          .add("N", arg_level)
          .add("lhs", r.lhs)
          .add("rhs", r.rhs)
          .add("ratio", r.ratio)
          .print(cfg);
    } else if (c_const->parsed()) {
      const auto table =
          guarded_table(static_cast<std::int64_t>(arg_cut) + 1, cfg);
      const auto r = arith::c_constant(arg_level, arg_cut, table);
      Row()
          .add("N", arg_level)
          .add("P", arg_cut)
          .add("value", r.value)
          .add("tail_bound", r.tail_bound)
          .print(cfg);
    } else if (density->parsed()) {
      const auto ds = data::ingest(arg_input);
      const double tol = arg_tol >= 0.0 ? arg_tol : cfg.ramanujan_tol;
      const auto r = data::density_report(ds, arg_x, tol);
      Row()
          .add("X", r.X)
          .add("pi_X", r.pi_X)
          .add("ramanujan_count", r.ramanujan_count)
          .add("mean_u", r.mean_u)
          .add("mean_nine", r.mean_nine)
          .add("nonram_fraction_bound", r.nonram_fraction_bound)
          .add("identity_holds", r.identity_holds)
          .print(cfg);
    } else if (synth->parsed()) {
      const auto table = guarded_table(arg_limit, cfg);
      data::SyntheticConfig sc{arg_limit, arg_seed,
                               parse_violations(arg_violate)};
      const auto ds = data::synthesize_sato_tate(sc, table);
      data::export_tsv(ds, arg_out);
      Row()
          .add("limit", arg_limit)
          .add("seed", static_cast<std::int64_t>(arg_seed))
          .add("records", static_cast<std::int64_t>(ds.records.size()))
          .add("out", arg_out)
          .print(cfg);
    } else if (least->parsed()) {
      const auto ds = data::ingest(arg_input);
      dde::SigmaFunction sigma(4.5, cfg.step_h);
      const double tol = arg_tol >= 0.0 ? arg_tol : cfg.ramanujan_tol;
      const auto r = data::least_ramanujan_prime(ds, sigma.constants(), tol);
      Row row;
      row.add("found", r.found);
      if (r.found)
        row.add("p", r.p);
      else
        row.add("p", std::monostate{});
      row.add("bound", r.bound).add("within_bound", r.within_bound).print(cfg);
    } else if (ssums->parsed()) {
      const auto ds = data::ingest(arg_input);
      const auto r = arith::s2_sum(ds, arg_x);
      Row()
          .add("x", arg_x)
          .add("S", r.S)
          .add("S_plus", r.S_plus)
          .add("S_minus", r.S_minus)
          .print(cfg);
    } else if (identity->parsed()) {
      std::mt19937_64 rng(arg_seed);
      std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
      std::uniform_real_distribution<double> mag(-3.0, 3.0);
      double max_sq = 0.0, max_prod = 0.0, max_u = 0.0, max_euler = 0.0,
             max_round = 0.0;
      for (std::int64_t i = 0; i < arg_trials; ++i) {
        const double psi = ang(rng), t = mag(rng);
        const hecke::Complex lambda(t * std::cos(psi), t * std::sin(psi));
        const hecke::UnitComplex chi(std::cos(2 * psi), std::sin(2 * psi));
        const hecke::LocalPrimeData d{2, lambda, chi};
        const auto L = hecke::lift_coefficients(d);
        max_sq = std::max(
            max_sq, std::fabs(L.a_adj * L.a_adj - (L.a_sym4 + L.a_adj + 1.0)));
        max_prod = std::max(max_prod, std::fabs(L.a_adj * L.a_sym4 -
                                                (std::norm(L.a_sym3) - 1.0)));
        const double uc = hecke::u_statistic(d);
        max_u = std::max(max_u,
                         std::fabs(uc - hecke::u_statistic_expanded(d)) /
                             std::max(1.0, uc));
        const auto sp = hecke::satake_from_lambda(lambda, chi);
        max_euler =
            std::max(max_euler, arith::local_factor_identity_check(sp, 30));
        max_round =
            std::max(max_round, std::abs(sp.alpha + sp.beta - lambda) +
                                    std::abs(sp.alpha * sp.beta - chi.value()));
      }
      const bool ok = max_sq < 1e-8 && max_prod < 1e-8 && max_u < 1e-8 &&
                      max_euler < 1e-9 && max_round < 1e-11;
      Row()
          .add("trials", arg_trials)
          .add("max_hecke_sq", max_sq)
          .add("max_hecke_prod", max_prod)
          .add("max_u_closed_expanded", max_u)
          .add("max_euler_factor", max_euler)
          .add("max_satake_roundtrip", max_round)
          .add("ok", ok)
          .print(cfg);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ComputeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
