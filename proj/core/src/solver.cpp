#include "orbitope/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "orbitope/error.hpp"
#include "orbitope/geometry.hpp"
#include "orbitope/hc_oracle.hpp"

namespace orbitope {
namespace {

constexpr int kRepairPeriod = 50;

void check_instance(const ProblemInstance& in) {
  validate_cartan(in.spec, in.f);
  validate_cartan(in.spec, in.a);
  if (!(in.epsilon > 0.0)) throw Error(ErrorCode::InvalidValue, "epsilon must be positive");
  if (in.eta && !(*in.eta > 0.0)) throw Error(ErrorCode::InvalidValue, "eta must be positive");
}

}  // namespace

DualValue dual_objective(const ProblemInstance& instance, const CartanVector& y) {
  const OracleResult r = log_integral(instance.spec, instance.f, y, true);
  const AffineConstraintSet eq = affine_equalities(instance.spec, instance.f);
  DualValue out;
  out.value = y.dot(instance.a) + r.log_value;
  out.gradient = eq.project_to_feasible(CartanVector(Eigen::VectorXd(instance.a.coords() + r.gradient.coords())));
  return out;
}

int ellipsoid_iteration_bound(int k, double r, double epsilon, double norm_a, double norm_f) {
  if (k <= 0) return 0;
  const double beta = std::min(0.5, epsilon / (2.0 * r * (norm_a + norm_f)));
  const double t = k == 1 ? std::log2(1.0 / beta) : 2.0 * k * (k + 1) * std::log(1.0 / beta);
  return static_cast<int>(std::ceil(t)) + 1;
}

DualSolution solve(const ProblemInstance& instance) {
  check_instance(instance);
  const GroupSpec& spec = instance.spec;
  if (spec.integration_only) {
    throw Error(ErrorCode::IntegrationOnly, describe(spec) + " is disconnected; only integration is supported");
  }
  const double scale = std::max(1.0, instance.f.norm());
  const AffineConstraintSet eq = affine_equalities(spec, instance.f);
  if (eq.violation(instance.a) > 1e-9 * scale) {
    throw Error(ErrorCode::Infeasible, "A violates the affine equalities of the orbitope");
  }

  DualSolution sol;
  sol.y_opt = CartanVector::zero(spec);
  const int k = eq.feasible_dim();
  if (k == 0) return sol;  // the orbit is a point; Y = 0 is optimal

  double eta = instance.eta.value_or(0.0);
  if (spec.rank <= kWeylEnumerationCap || !instance.eta) {
    const MembershipReport m = membership(spec, instance.f, instance.a);
    if (m.status != MembershipStatus::Interior) {
      throw Error(ErrorCode::Infeasible,
                  std::string("target mean is not in the interior of the orbitope (") +
                      std::string(status_name(m.status)) + ")");
    }
    if (!instance.eta) eta = m.margin;
  }
  const double norm_f = instance.f.norm();
  const double radius = bounding_radius(spec.dim, eta, norm_f).radius;
  sol.r_used = radius;
  sol.eta_used = eta;
  sol.iteration_limit = ellipsoid_iteration_bound(k, radius, instance.epsilon, instance.a.norm(), norm_f);

  const Eigen::MatrixXd& q = eq.feasible_basis;
  const double grad_tol = instance.epsilon / (4.0 * radius);
  Eigen::VectorXd center = Eigen::VectorXd::Zero(k);
  Eigen::MatrixXd shape = radius * radius * Eigen::MatrixXd::Identity(k, k);
  double half_width = radius;  // k == 1 keeps an interval instead

  double best_f = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_z = center;
  double best_grad = std::numeric_limits<double>::infinity();

  for (int it = 1; it <= sol.iteration_limit; ++it) {
    sol.iterations = it;
    Eigen::VectorXd g;
    if (center.norm() > radius) {
      g = center;
    } else {
      const CartanVector y(Eigen::VectorXd(q * center));
      try {
        const DualValue v = dual_objective(instance, y);
        g = q.transpose() * v.gradient.coords();
        const double gn = g.norm();
        if (v.value < best_f) {
          best_f = v.value;
          best_z = center;
          best_grad = gn;
        }
        sol.trace.push_back({it, best_f, gn});
        if (gn <= grad_tol) {
          best_f = v.value;
          best_z = center;
          best_grad = gn;
          sol.gradient_exit = true;
          break;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NumericOverflow) throw;
        g = center;  // gradient direction of the |Y|^2 surrogate
      }
    }
    if (g.norm() == 0.0) break;

    if (k == 1) {
      half_width *= 0.5;
      center[0] -= (g[0] > 0.0 ? 1.0 : -1.0) * half_width;
      continue;
    }
    const Eigen::VectorXd pg = shape * g;
    const double gpg = g.dot(pg);
    if (!(gpg > 0.0)) break;
    const Eigen::VectorXd step = pg / std::sqrt(gpg);
    const double kk = static_cast<double>(k);
    center -= step / (kk + 1.0);
    shape = (kk * kk / (kk * kk - 1.0)) * (shape - (2.0 / (kk + 1.0)) * step * step.transpose());
    if (it % kRepairPeriod == 0) {
      shape = 0.5 * (shape + shape.transpose());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(shape);
      const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(1e-24 * radius * radius);
      shape = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
    }
  }

  if (!std::isfinite(best_f)) {
    throw Error(ErrorCode::NumericOverflow, "no iterate could be evaluated within the bounding ball");
  }
  sol.y_opt = CartanVector(Eigen::VectorXd(q * best_z));
  sol.f_value = best_f;
  sol.grad_norm = best_grad;
  return sol;
}

DensityReport density_report(const ProblemInstance& instance, const DualSolution& solution) {
  const OracleResult r = log_integral(instance.spec, instance.f, solution.y_opt, true);
  const AffineConstraintSet eq = affine_equalities(instance.spec, instance.f);
  DensityReport out;
  out.y_opt = solution.y_opt;
  out.log_partition = r.log_value;
  out.mean = CartanVector(Eigen::VectorXd(-r.gradient.coords()));
  out.deviation = eq.project_to_feasible(CartanVector(Eigen::VectorXd(out.mean.coords() - instance.a.coords()))).norm();
  return out;
}

}  // namespace orbitope
