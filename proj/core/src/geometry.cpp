#include "orbitope/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "orbitope/error.hpp"
#include "orbitope/min_norm_point.hpp"

namespace orbitope {
namespace {

Eigen::VectorXd sorted_desc(Eigen::VectorXd v) {
  std::sort(v.data(), v.data() + v.size(), std::greater<>());
  return v;
}

// Dominant Weyl-chamber representative.
Eigen::VectorXd dominant(WeylType type, const Eigen::VectorXd& v) {
  if (type == WeylType::A) return sorted_desc(v);
  Eigen::VectorXd d = sorted_desc(v.cwiseAbs());
  if (type == WeylType::D) {
    int negatives = 0;
    bool has_zero = false;
    for (int j = 0; j < v.size(); ++j) {
      negatives += v[j] < 0.0;
      has_zero |= v[j] == 0.0;
    }
    if (!has_zero && negatives % 2 == 1) d[d.size() - 1] = -d[d.size() - 1];
  }
  return d;
}

// Support function max_w <u, w f> of the Weyl polytope.
double support(WeylType type, const Eigen::VectorXd& u, const Eigen::VectorXd& f) {
  return dominant(type, u).dot(dominant(type, f));
}

// Candidate facet normals: Weyl orbits of fundamental-weight directions. For
// type A these are 0/1 indicator vectors, otherwise signed indicator vectors.
std::vector<Eigen::VectorXd> candidate_normals(WeylType type, int k) {
  std::vector<Eigen::VectorXd> out;
  if (type == WeylType::A) {
    for (unsigned mask = 1; mask + 1 < (1u << k); ++mask) {
      Eigen::VectorXd u = Eigen::VectorXd::Zero(k);
      for (int j = 0; j < k; ++j) u[j] = (mask >> j) & 1u;
      out.push_back(u);
    }
    return out;
  }
  int total = 1;
  for (int j = 0; j < k; ++j) total *= 3;
  for (int code = 1; code < total; ++code) {
    Eigen::VectorXd u(k);
    int c = code;
    for (int j = 0; j < k; ++j, c /= 3) u[j] = (c % 3) - 1.0;
    out.push_back(u);
  }
  return out;
}

// Distance from a to the relative boundary of the polytope inside V_L.
double relative_margin(const GroupSpec& spec, const AffineConstraintSet& eq, const CartanVector& f,
                       const CartanVector& a) {
  const Eigen::MatrixXd& q = eq.feasible_basis;
  double margin = std::numeric_limits<double>::infinity();
  for (const Eigen::VectorXd& raw : candidate_normals(spec.weyl, spec.coord_length)) {
    Eigen::VectorXd u = q * (q.transpose() * raw);
    const double len = u.norm();
    if (len < 1e-12) continue;
    u /= len;
    margin = std::min(margin, support(spec.weyl, u, f.coords()) - u.dot(a.coords()));
  }
  return std::max(0.0, margin);
}

}  // namespace

CartanVector kostant_project(const GroupSpec& spec, const AlgebraElement& x) {
  if (x.side() != spec.matrix_size) throw Error(ErrorCode::LengthMismatch, "kostant_project: wrong matrix size");
  if (!in_algebra(spec, x, 1e-10)) throw Error(ErrorCode::NotInAlgebra, "kostant_project: element is not in the algebra");
  Eigen::VectorXd c(spec.coord_length);
  for (int j = 0; j < spec.coord_length; ++j) c[j] = inner_product(x, cartan_basis(spec, j));
  return CartanVector(std::move(c));
}

std::string_view status_name(MembershipStatus status) {
  switch (status) {
    case MembershipStatus::Interior: return "interior";
    case MembershipStatus::Boundary: return "boundary";
    case MembershipStatus::Outside: return "outside";
  }
  return "unknown";
}

MembershipReport membership(const GroupSpec& spec, const CartanVector& f, const CartanVector& a, double tol) {
  validate_cartan(spec, f);
  if (a.size() != spec.coord_length) throw Error(ErrorCode::LengthMismatch, "membership: A has the wrong length");

  const auto vertices = weyl_orbit(spec, f);
  Eigen::MatrixXd pts(spec.coord_length, static_cast<int>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i) pts.col(static_cast<int>(i)) = vertices[i].coords();

  const double scale = std::max(1.0, f.norm());
  const NearestPoint near = nearest_hull_point(pts, a.coords());

  MembershipReport report;
  if (near.distance > tol * scale) {
    report.status = MembershipStatus::Outside;
    report.margin = near.distance;
    report.separator = CartanVector(Eigen::VectorXd(a.coords() - near.point));
    return report;
  }
  for (std::size_t i = 0; i < near.support.size(); ++i) {
    report.vertices.push_back(vertices[near.support[i]]);
    report.weights.push_back(near.weights[i]);
  }
  const AffineConstraintSet eq = affine_equalities(spec, f);
  if (eq.feasible_dim() == 0) {
    report.status = MembershipStatus::Boundary;
    report.margin = 0.0;
    return report;
  }
  report.margin = relative_margin(spec, eq, f, a);
  report.status = report.margin > tol * scale ? MembershipStatus::Interior : MembershipStatus::Boundary;
  return report;
}

bool majorized(const GroupSpec& spec, const CartanVector& f, const CartanVector& a, double tol) {
  if (spec.weyl != WeylType::A) throw Error(ErrorCode::InvalidValue, "majorization applies to U and SU only");
  validate_cartan(spec, f);
  if (a.size() != spec.coord_length) throw Error(ErrorCode::LengthMismatch, "majorized: A has the wrong length");
  const Eigen::VectorXd fs = sorted_desc(f.coords());
  const Eigen::VectorXd as = sorted_desc(a.coords());
  const double t = tol * std::max(1.0, f.norm());
  double pf = 0.0, pa = 0.0;
  for (int j = 0; j < fs.size(); ++j) {
    pf += fs[j];
    pa += as[j];
    if (pa > pf + t) return false;
  }
  return std::abs(pa - pf) <= t;
}

BoundingBox bounding_radius(int d, double eta, double norm_f) {
  if (d < 1 || !(eta > 0.0) || !(norm_f > 0.0)) {
    throw Error(ErrorCode::InvalidValue, "bounding_radius: d, eta and |F| must be positive");
  }
  const double arg = 8.0 * std::sqrt(static_cast<double>(d)) * norm_f / eta;
  if (!(arg > 1.0)) throw Error(ErrorCode::InvalidValue, "bounding_radius: 8 sqrt(d) |F| / eta must exceed 1");
  BoundingBox box;
  box.radius = (2.0 * d / eta) * std::log(arg);
  box.eta = eta;
  box.d = d;
  box.norm_f = norm_f;
  return box;
}

double balancedness_bound(int d, double delta, double norm_f) {
  if (d < 1 || !(delta > 0.0) || !(norm_f > 0.0)) {
    throw Error(ErrorCode::InvalidValue, "balancedness_bound: inputs must be positive");
  }
  return d * std::log(4.0 * std::sqrt(static_cast<double>(d)) * norm_f / delta);
}

}  // namespace orbitope
