#include "orbitope/hc_oracle.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "orbitope/error.hpp"
#include "orbitope/kernel_ratio.hpp"

namespace orbitope {
namespace {

using kernel::Kind;

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Unnormalized log of the family formula together with d/dy of that log.
struct Evaluation {
  double log_value = 0.0;
  double condition = 0.0;
  bool confluent = false;
  Eigen::VectorXd dlog_dy;
};

[[noreturn]] void overflow(const GroupSpec& spec, const CartanVector& f, const CartanVector& y,
                           const std::string& what) {
  std::ostringstream msg;
  msg << "orbital integral for " << describe(spec) << " " << what
      << " (exponent scale |Y||F| = " << y.norm() * f.norm() << ")";
  throw Error(ErrorCode::NumericOverflow, msg.str());
}

Evaluation evaluate_unitary(const CartanVector& f, const CartanVector& y, bool grad) {
  kernel::RatioOptions opts;
  opts.gradient = grad;
  const Eigen::VectorXd a = -y.coords();
  const auto r = kernel::log_det_ratio(Kind::Exp, a, f.coords(), opts);
  Evaluation e;
  e.log_value = r.sign > 0 ? r.log_abs : std::numeric_limits<double>::quiet_NaN();
  e.condition = r.condition;
  e.confluent = r.confluent;
  if (grad) e.dlog_dy = -r.dlog_dx;
  return e;
}

Evaluation evaluate_square(Kind kind, const Eigen::VectorXd& s, const Eigen::VectorXd& t,
                           const Eigen::VectorXd& y, bool grad) {
  kernel::RatioOptions opts;
  opts.gradient = grad;
  const auto r = kernel::log_det_ratio(kind, s, t, opts);
  Evaluation e;
  e.log_value = r.sign > 0 ? r.log_abs : std::numeric_limits<double>::quiet_NaN();
  e.condition = r.condition;
  e.confluent = r.confluent;
  if (grad) e.dlog_dy = y.cwiseProduct(r.dlog_dx);  // ds/dy = y
  return e;
}

// log|prod v_j| and its sign, skipping index `skip` (or none when skip < 0).
std::pair<double, int> log_abs_product(const Eigen::VectorXd& v, int skip = -1) {
  double l = 0.0;
  int sign = 1;
  for (int j = 0; j < v.size(); ++j) {
    if (j == skip) continue;
    if (v[j] == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
    l += std::log(std::abs(v[j]));
    if (v[j] < 0.0) sign = -sign;
  }
  return {l, sign};
}

// SO(2n): cosh determinant plus P times the sinh-type determinant, where
// P = prod a_j prod b_j carries the orientation information.
Evaluation evaluate_so_even(const Eigen::VectorXd& a, const Eigen::VectorXd& b, bool grad) {
  const Eigen::VectorXd s = a.cwiseAbs2();
  const Eigen::VectorXd t = b.cwiseAbs2();
  kernel::RatioOptions opts;
  opts.gradient = grad;
  const auto rc = kernel::log_det_ratio(Kind::CoshSqrt, s, t, opts);
  const auto rs = kernel::log_det_ratio(Kind::SinhcSqrt, s, t, opts);

  const auto [log_pa, sign_pa] = log_abs_product(a);
  const auto [log_pb, sign_pb] = log_abs_product(b);
  const double lc = rc.log_abs;
  const double ls = rs.log_abs + log_pa + log_pb;
  const int sc = rc.sign;
  const int ss = rs.sign * sign_pa * sign_pb;

  Evaluation e;
  e.confluent = rc.confluent || rs.confluent;
  const double top = std::max(lc, ls);
  const double mantissa = (sc != 0 ? sc * std::exp(lc - top) : 0.0) + (ss != 0 ? ss * std::exp(ls - top) : 0.0);
  if (!(mantissa > 0.0)) {
    e.log_value = std::numeric_limits<double>::quiet_NaN();
    return e;
  }
  e.log_value = top + std::log(mantissa);
  e.condition = std::max(rc.condition, ss != 0 ? rs.condition : 0.0) + std::max(0.0, top - e.log_value);
  if (!grad) return e;

  const int n = static_cast<int>(a.size());
  const Eigen::VectorXd y = -std::sqrt(2.0) * a;  // a = -y / sqrt(2)
  const double wc = sc * std::exp(lc - e.log_value);
  const double ws = ss * std::exp(ls - e.log_value);
  e.dlog_dy.resize(n);
  for (int i = 0; i < n; ++i) {
    double d = wc * y[i] * rc.dlog_dx[i] + ws * y[i] * rs.dlog_dx[i];
    // d/dy_i of prod a_j = -(1/sqrt 2) prod_{j != i} a_j
    const auto [log_rest, sign_rest] = log_abs_product(a, i);
    if (sign_rest != 0 && sign_pb != 0 && rs.sign != 0) {
      const double l = std::log(kInvSqrt2) + log_rest + log_pb + rs.log_abs - e.log_value;
      d += -sign_rest * sign_pb * rs.sign * std::exp(l);
    }
    e.dlog_dy[i] = d;
  }
  return e;
}

Evaluation evaluate(const GroupSpec& spec, const CartanVector& f, const CartanVector& y, bool grad) {
  if (spec.family == Family::U || spec.family == Family::SU) return evaluate_unitary(f, y, grad);

  // Orthogonal and symplectic families: a = -y/sqrt2, b = f/sqrt2, and the
  // kernels are written in the squares s = a^2, t = b^2.
  const Eigen::VectorXd a = -kInvSqrt2 * y.coords();
  const Eigen::VectorXd b = kInvSqrt2 * f.coords();
  switch (spec.family) {
    case Family::SOeven:
      return evaluate_so_even(a, b, grad);
    case Family::Oeven:
      return evaluate_square(Kind::CoshSqrt, a.cwiseAbs2(), b.cwiseAbs2(), y.coords(), grad);
    default:
      return evaluate_square(Kind::SinhcSqrt, a.cwiseAbs2(), b.cwiseAbs2(), y.coords(), grad);
  }
}

}  // namespace

OracleResult log_integral(const GroupSpec& spec, const CartanVector& f, const CartanVector& y, bool with_gradient) {
  validate_cartan(spec, f);
  validate_cartan(spec, y);

  const Evaluation base = evaluate(spec, f, CartanVector::zero(spec), with_gradient);
  const Evaluation at = evaluate(spec, f, y, with_gradient);

  OracleResult out;
  out.log_value = at.log_value - base.log_value;
  out.confluent = at.confluent;
  out.condition_estimate = std::max(at.condition, base.condition);
  if (!std::isfinite(out.log_value)) overflow(spec, f, y, "is not finite");
  if (!(out.condition_estimate <= kMaxCondition)) {
    std::ostringstream what;
    what << "lost all precision (condition " << out.condition_estimate << ")";
    overflow(spec, f, y, what.str());
  }
  if (with_gradient) {
    Eigen::VectorXd g = at.dlog_dy;
    if (spec.family == Family::SU) g.array() -= g.mean();
    if (!g.allFinite()) overflow(spec, f, y, "has a non-finite gradient");
    out.gradient = CartanVector(std::move(g));
  }
  return out;
}

CartanVector gradient(const GroupSpec& spec, const CartanVector& f, const CartanVector& y) {
  return log_integral(spec, f, y, true).gradient;
}

namespace {

CartanVector snap(const CartanVector& v, const std::vector<std::vector<int>>& groups, const std::vector<int>& zeros,
                  const char* label) {
  const double tol = kConfluenceThreshold * std::max(1.0, v.coords().cwiseAbs().maxCoeff());
  auto check_index = [&](int i) {
    if (i < 0 || i >= v.size()) {
      throw Error(ErrorCode::PatternMismatch, std::string("coincidence pattern index out of range for ") + label);
    }
  };
  CartanVector out = v;
  for (const auto& group : groups) {
    if (group.empty()) continue;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
    for (int i : group) {
      check_index(i);
      lo = std::min(lo, v[i]);
      hi = std::max(hi, v[i]);
      sum += v[i];
    }
    if (hi - lo > tol) {
      throw Error(ErrorCode::PatternMismatch, std::string("coincidence group of ") + label + " is not coincident");
    }
    for (int i : group) out[i] = sum / static_cast<double>(group.size());
  }
  for (int i : zeros) {
    check_index(i);
    if (std::abs(v[i]) > tol) {
      throw Error(ErrorCode::PatternMismatch, std::string("coordinate of ") + label + " declared zero is not zero");
    }
    out[i] = 0.0;
  }
  return out;
}

}  // namespace

OracleResult confluent_limit(const GroupSpec& spec, const CartanVector& f, const CartanVector& y,
                             const CoincidencePattern& pattern) {
  validate_cartan(spec, f);
  validate_cartan(spec, y);
  const bool unitary = spec.family == Family::U || spec.family == Family::SU;
  if (unitary && (!pattern.y_zeros.empty() || !pattern.f_zeros.empty())) {
    throw Error(ErrorCode::PatternMismatch, "zero-coordinate limits apply to orthogonal and symplectic families only");
  }
  const CartanVector fs = snap(f, pattern.f_groups, pattern.f_zeros, "F");
  const CartanVector ys = snap(y, pattern.y_groups, pattern.y_zeros, "Y");
  OracleResult out = log_integral(spec, fs, ys, true);
  out.confluent = true;
  return out;
}

}  // namespace orbitope
