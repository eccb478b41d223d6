#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "maass/errors.hpp"

// Method-of-steps solver for the linear delay equation
//
//     y'(u) = a(u) y(u) + b(u) y(u - 1),
//
// with a known initial segment on (u_start - 1, u_start].  The step size
// must divide 1 exactly so that unit-interval seams land on grid nodes and a
// full step's delayed argument is again a node; delayed values at half steps
// come from cubic Hermite interpolation of the stored (y, y') pairs.  With a
// smooth piecewise-analytic solution this keeps the classical 4th order.
//
// Instances: the sieve density sigma(u) (u^2 on (0,1], then
// (u^-2 sigma)' = -4 sigma(u-1)/u^3) whose smallest zero u0 sets the
// least-Ramanujan-prime exponent 1/u0, and the Buchstab function omega(u)
// (u*omega = 1 on [1,2], (u*omega)' = omega(u-1) beyond).
//
// solve() is a pure function and a SolutionGrid never changes after
// construction, so grids can be shared freely across threads.

namespace maass::dde {

struct DelayODEProblem {
  std::function<double(double)> a;
  std::function<double(double)> b;
  std::function<double(double)> initial_segment;  // on (u_start - 1, u_start]
  double u_start = 0.0;
};

class SolutionGrid {
 public:
  SolutionGrid(double u_start, std::int64_t steps_per_unit,
               std::vector<double> y, std::vector<double> yprime);

  double u_start() const { return u_start_; }
  double u_end() const { return node_u(node_count() - 1); }
  double step() const { return 1.0 / static_cast<double>(steps_per_unit_); }
  std::int64_t steps_per_unit() const { return steps_per_unit_; }

  std::size_t node_count() const { return y_.size(); }
  double node_u(std::size_t i) const {
    return u_start_ +
           static_cast<double>(i) / static_cast<double>(steps_per_unit_);
  }
  double node_y(std::size_t i) const { return y_[i]; }
  double node_yprime(std::size_t i) const { return yprime_[i]; }

  // Dense output by cubic Hermite interpolation; RangeError outside
  // [u_start, u_end].
  double value(double u) const;

 private:
  double u_start_;
  std::int64_t steps_per_unit_;
  std::vector<double> y_;
  std::vector<double> yprime_;
};

// Integrates to u_end with step h.  h must equal 1/m for an integer m
// (StepSizeInvalid otherwise); u_end < u_start is a RangeError, and
// u_end == u_start yields the single-node grid.
SolutionGrid solve(const DelayODEProblem& problem, double u_end, double h);

// sigma: initial segment u^2 on (0,1]; expanding (u^-2 sigma)' by the
// product rule gives a(u) = 2/u, b(u) = -4/u for u > 1.
DelayODEProblem sigma_problem();

// omega: initial segment 1/u on (1,2]; expanding (u omega)' = omega(u-1)
// gives a(u) = -1/u, b(u) = 1/u for u > 2.
DelayODEProblem buchstab_problem();

// Closed form of sigma on [1,2]: 7u^2 - 8u + 2 - 4u^2 log u.
double sigma_closed_12(double u);

// Closed form of sigma on [2,3] in terms of the dilogarithm.
double sigma_closed_23(double u);

// Real dilogarithm Li2(x) for x <= 1; DomainError beyond.  Accuracy 1e-12
// absolute on [-2, 1].
double dilog(double x);

struct SigmaConstants {
  double u0;        // smallest zero of sigma
  double exponent;  // 1/u0
};

// First sign change of the grid after u_start, refined by bisection on the
// Hermite interpolant to |y(u0)| < 1e-10.  The grid must extend to u >= 4;
// NoZeroFound if y never changes sign.
SigmaConstants smallest_zero(const SolutionGrid& grid);

// The level-1 exponent arithmetic: y is bounded by t^(1/(1+delta)) for
// 0 < delta < 3/8; delta -> 3/8 recovers the 8/11 exponent.
double section2_exponent(double delta);

// (N (1 + |t|))^(1/u0), the least-Ramanujan-prime bound with the implied
// constant set to 1 (reported, not asserted).
double ramanujan_prime_bound(std::int64_t N, double t,
                             const SigmaConstants& constants);

// sigma as a plain function: u^2 on (0,1] analytically, the solved grid on
// [1, u_max].
class SigmaFunction {
 public:
  explicit SigmaFunction(double u_max = 5.0, double h = 1e-4);
  double operator()(double u) const;
  const SolutionGrid& grid() const { return grid_; }
  SigmaConstants constants() const { return smallest_zero(grid_); }

 private:
  SolutionGrid grid_;
};

// omega as a plain function: 1/u on [1,2] analytically, the solved grid on
// [2, u_max].
class BuchstabFunction {
 public:
  explicit BuchstabFunction(double u_max = 10.0, double h = 1e-4);
  double operator()(double u) const;
  const SolutionGrid& grid() const { return grid_; }

 private:
  SolutionGrid grid_;
};

}  // namespace maass::dde
