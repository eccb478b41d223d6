#include "maass/delay_ode.hpp"

#include <cmath>

namespace maass::dde {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double hermite(double y0, double yp0, double y1, double yp1, double h,
               double t) {
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * yp0 +
         (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * yp1;
}

}  // namespace

SolutionGrid::SolutionGrid(double u_start, std::int64_t steps_per_unit,
                           std::vector<double> y, std::vector<double> yprime)
    : u_start_(u_start),
      steps_per_unit_(steps_per_unit),
      y_(std::move(y)),
      yprime_(std::move(yprime)) {}

double SolutionGrid::value(double u) const {
  const double m = static_cast<double>(steps_per_unit_);
  const double pos = (u - u_start_) * m;
  const double last = static_cast<double>(node_count() - 1);
  if (pos < -1e-9 || pos > last + 1e-9)
    throw RangeError("SolutionGrid::value: u outside [" +
                     std::to_string(u_start()) + ", " +
                     std::to_string(u_end()) + "]");
  if (node_count() == 1) return y_[0];
  std::size_t i = static_cast<std::size_t>(std::max(0.0, std::floor(pos)));
  if (i >= node_count() - 1) i = node_count() - 2;
  const double t = std::min(1.0, std::max(0.0, pos - static_cast<double>(i)));
  return hermite(y_[i], yprime_[i], y_[i + 1], yprime_[i + 1], 1.0 / m, t);
}

SolutionGrid solve(const DelayODEProblem& problem, double u_end, double h) {
  if (!(h > 0.0)) throw StepSizeInvalid("solve: step h must be positive");
  const std::int64_t m = std::llround(1.0 / h);
  if (m < 1 || std::fabs(static_cast<double>(m) * h - 1.0) > 1e-9)
    throw StepSizeInvalid("solve: h must divide 1 (h = 1/m)");
  const double span = u_end - problem.u_start;
  if (span < -1e-12) throw RangeError("solve: u_end < u_start");
  const std::int64_t n = std::max<std::int64_t>(
      0, std::llround(span * static_cast<double>(m)));

  const double hd = 1.0 / static_cast<double>(m);
  const auto node_u = [&](std::int64_t i) {
    return problem.u_start + static_cast<double>(i) / static_cast<double>(m);
  };

  std::vector<double> y(n + 1), yp(n + 1);

  // Delayed value exactly at node i (history or previous interval).
  const auto delayed_node = [&](std::int64_t i) {
    const std::int64_t j = i - m;
    if (j < 0) return problem.initial_segment(node_u(i) - 1.0);
    return y[j];
  };
  // Delayed value at the midpoint of [node i, node i+1].
  const auto delayed_mid = [&](std::int64_t i) {
    const std::int64_t j = i - m;
    if (j < 0) return problem.initial_segment(node_u(i) + 0.5 * hd - 1.0);
    return 0.5 * (y[j] + y[j + 1]) + (hd / 8.0) * (yp[j] - yp[j + 1]);
  };

  y[0] = problem.initial_segment(problem.u_start);
  yp[0] = problem.a(problem.u_start) * y[0] +
          problem.b(problem.u_start) * delayed_node(0);

  for (std::int64_t i = 0; i < n; ++i) {
    const double ui = node_u(i);
    const double uh = ui + 0.5 * hd;
    const double u1 = node_u(i + 1);
    const double yi = y[i];

    const double d0 = delayed_node(i);
    const double dh = delayed_mid(i);
    const double d1 = delayed_node(i + 1);

    const double k1 = problem.a(ui) * yi + problem.b(ui) * d0;
    const double k2 =
        problem.a(uh) * (yi + 0.5 * hd * k1) + problem.b(uh) * dh;
    const double k3 =
        problem.a(uh) * (yi + 0.5 * hd * k2) + problem.b(uh) * dh;
    const double k4 = problem.a(u1) * (yi + hd * k3) + problem.b(u1) * d1;

    y[i + 1] = yi + hd / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    yp[i + 1] = problem.a(u1) * y[i + 1] + problem.b(u1) * d1;
  }

  return SolutionGrid(problem.u_start, m, std::move(y), std::move(yp));
}

DelayODEProblem sigma_problem() {
  DelayODEProblem p;
  p.a = [](double u) { return 2.0 / u; };
  p.b = [](double u) { return -4.0 / u; };
  p.initial_segment = [](double u) { return u * u; };
  p.u_start = 1.0;
  return p;
}

DelayODEProblem buchstab_problem() {
  DelayODEProblem p;
  p.a = [](double u) { return -1.0 / u; };
  p.b = [](double u) { return 1.0 / u; };
  p.initial_segment = [](double u) { return 1.0 / u; };
  p.u_start = 2.0;
  return p;
}

double sigma_closed_12(double u) {
  if (u < 1.0 - 1e-12 || u > 2.0 + 1e-12)
    throw DomainError("sigma_closed_12: u outside [1,2]");
  return 7.0 * u * u - 8.0 * u + 2.0 - 4.0 * u * u * std::log(u);
}

double sigma_closed_23(double u) {
  if (u < 2.0 - 1e-12 || u > 3.0 + 1e-12)
    throw DomainError("sigma_closed_23: u outside [2,3]");
  const double u2 = u * u;
  const double lu = std::log(u);
  const double lu1 = std::log(u - 1.0);
  return 16.0 * u2 * dilog(1.0 - u) + (4.0 * kPi * kPi * u2) / 3.0 +
         35.0 * u2 - 24.0 * u2 * lu1 + 16.0 * u2 * lu1 * lu - 4.0 * u2 * lu -
         80.0 * u + 32.0 * u * lu1 - 8.0 * lu1 + 34.0;
}

namespace {

// Direct series, used only with |x| <= 1/2 where 60 terms give < 1e-18.
double dilog_series(double x) {
  double sum = 0.0, xk = x;
  for (int k = 1; k <= 60; ++k) {
    const double term = xk / (static_cast<double>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-18) break;
    xk *= x;
  }
  return sum;
}

}  // namespace

double dilog(double x) {
  if (x > 1.0 + 1e-12) throw DomainError("dilog: x > 1 not supported");
  if (x > 1.0) x = 1.0;
  if (x == 1.0) return kPi * kPi / 6.0;
  if (x < -1.0) {
    // inversion: Li2(x) = -pi^2/6 - log^2(-x)/2 - Li2(1/x)
    const double l = std::log(-x);
    return -kPi * kPi / 6.0 - 0.5 * l * l - dilog(1.0 / x);
  }
  if (x > 0.5) {
    // reflection: Li2(x) = pi^2/6 - log x log(1-x) - Li2(1-x)
    return kPi * kPi / 6.0 - std::log(x) * std::log1p(-x) -
           dilog_series(1.0 - x);
  }
  if (x < -0.5) {
    // Landen: Li2(x) = -Li2(x/(x-1)) - log^2(1-x)/2; x/(x-1) lands in [1/3,1/2]
    const double l = std::log1p(-x);
    return -dilog_series(x / (x - 1.0)) - 0.5 * l * l;
  }
  return dilog_series(x);
}

SigmaConstants smallest_zero(const SolutionGrid& grid) {
  if (grid.u_end() < 4.0 - 1e-9)
    throw RangeError("smallest_zero: grid must extend to u >= 4");
  std::size_t hit = 0;
  for (std::size_t i = 1; i < grid.node_count(); ++i) {
    const double prev = grid.node_y(i - 1), cur = grid.node_y(i);
    if ((prev > 0.0 && cur <= 0.0) || (prev < 0.0 && cur >= 0.0)) {
      hit = i;
      break;
    }
  }
  if (hit == 0) throw NoZeroFound("smallest_zero: no sign change in range");

  double a = grid.node_u(hit - 1), b = grid.node_u(hit);
  double fa = grid.node_y(hit - 1);
  double u0 = b;
  for (int iter = 0; iter < 200; ++iter) {
    u0 = 0.5 * (a + b);
    const double f = grid.value(u0);
    if (std::fabs(f) < 1e-10 || (b - a) < 1e-14) break;
    if ((fa > 0.0) == (f > 0.0)) {
      a = u0;
      fa = f;
    } else {
      b = u0;
    }
  }
  return SigmaConstants{u0, 1.0 / u0};
}

double section2_exponent(double delta) {
  if (!(delta > 0.0) || delta >= 0.375)
    throw DomainError("section2_exponent: need 0 < delta < 3/8");
  return 1.0 / (1.0 + delta);
}

double ramanujan_prime_bound(std::int64_t N, double t,
                             const SigmaConstants& constants) {
  return std::pow(static_cast<double>(N) * (1.0 + std::fabs(t)),
                  constants.exponent);
}

SigmaFunction::SigmaFunction(double u_max, double h)
    : grid_(solve(sigma_problem(), u_max, h)) {
  if (u_max < 1.0) throw RangeError("SigmaFunction: u_max must be >= 1");
}

double SigmaFunction::operator()(double u) const {
  if (u <= 0.0) throw DomainError("sigma: u must be positive");
  if (u <= 1.0) return u * u;
  return grid_.value(u);
}

BuchstabFunction::BuchstabFunction(double u_max, double h)
    : grid_(solve(buchstab_problem(), u_max, h)) {
  if (u_max < 2.0) throw RangeError("BuchstabFunction: u_max must be >= 2");
}

double BuchstabFunction::operator()(double u) const {
  if (u < 1.0 - 1e-12) throw DomainError("omega: u must be >= 1");
  if (u <= 2.0) return 1.0 / u;
  return grid_.value(u);
}

}  // namespace maass::dde
