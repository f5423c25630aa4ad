#pragma once

// Dual of the maximum-entropy program on an adjoint orbit:
//
//     minimize f_A(Y) = <Y, A> + E_F(Y)  over Y in V_L, |Y| <= R,
//
// solved with a central-cut ellipsoid method. The optimum Y* gives the density
// exp(-<Y*, X> - E_F(Y*)) with respect to the invariant orbit measure.

#include <optional>
#include <vector>

#include "orbitope/lie_core.hpp"

namespace orbitope {

struct ProblemInstance {
  GroupSpec spec;
  CartanVector f;
  CartanVector a;
  std::optional<double> eta;  ///< interior margin; estimated from membership when absent
  double epsilon = 1e-6;
};

struct DualValue {
  double value = 0.0;
  CartanVector gradient;  ///< projected onto V_L
};

/// Throws what log_integral throws.
DualValue dual_objective(const ProblemInstance& instance, const CartanVector& y);

struct TraceEntry {
  int iteration = 0;
  double f = 0.0;          ///< best value seen so far
  double grad_norm = 0.0;  ///< gradient norm at this iterate
};

struct DualSolution {
  CartanVector y_opt;
  double f_value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  int iteration_limit = 0;  ///< volume-bound iteration count
  double r_used = 0.0;
  double eta_used = 0.0;
  bool gradient_exit = false;  ///< stopped on the gradient certificate
  std::vector<TraceEntry> trace;
};

/// Throws IntegrationOnly for O(2n), Infeasible when A is not in the interior
/// of the orbitope, CapExceeded when membership cannot be enumerated and no eta
/// was supplied.
DualSolution solve(const ProblemInstance& instance);

struct DensityReport {
  CartanVector y_opt;
  double log_partition = 0.0;  ///< E_F(Y_opt)
  CartanVector mean;           ///< -grad E_F(Y_opt), Cartan mean of the density
  double deviation = 0.0;      ///< |P_{V_L}(mean - A)|
};

DensityReport density_report(const ProblemInstance& instance, const DualSolution& solution);

/// Ellipsoid iterations sufficient for additive accuracy epsilon in a
/// k-dimensional search space of radius r.
int ellipsoid_iteration_bound(int k, double r, double epsilon, double norm_a, double norm_f);

}  // namespace orbitope
