#include "orbitope/lie_core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "orbitope/error.hpp"

namespace orbitope {
namespace {

using cd = std::complex<double>;
constexpr double kInvSqrt2 = 0.70710678118654752440;

// Orthonormal basis of the sum-zero hyperplane in R^n (Helmert contrasts).
Eigen::MatrixXd sum_zero_basis(int n) {
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n, std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) basis(i, k - 1) = scale;
    basis(k, k - 1) = -k * scale;
  }
  return basis;
}

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::U: return "U";
    case Family::SU: return "SU";
    case Family::SOeven: return "SOeven";
    case Family::SOodd: return "SOodd";
    case Family::Oeven: return "Oeven";
    case Family::USp: return "USp";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::U, Family::SU, Family::SOeven, Family::SOodd, Family::Oeven, Family::USp}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

GroupSpec make_group_spec(Family family, int n) {
  if (n <= 0) {
    throw Error(ErrorCode::InvalidSize, "group size parameter must be positive, got " + std::to_string(n));
  }
  GroupSpec spec;
  spec.family = family;
  spec.n = n;
  spec.rank = n;
  spec.coord_length = n;
  switch (family) {
    case Family::U:
      spec.dim = n * n;
      spec.matrix_size = n;
      spec.weyl = WeylType::A;
      break;
    case Family::SU:
      if (n == 1) {
        throw Error(ErrorCode::DegenerateFamily, "SU(1) is the trivial group");
      }
      spec.dim = n * n - 1;
      spec.rank = n - 1;
      spec.matrix_size = n;
      spec.weyl = WeylType::A;
      break;
    case Family::SOeven:
    case Family::Oeven:
      if (n == 1) {
        throw Error(ErrorCode::DegenerateFamily,
                    std::string(family_name(family)) + " with n = 1 is Abelian and not supported");
      }
      spec.matrix_size = 2 * n;
      spec.dim = n * (2 * n - 1);
      spec.weyl = family == Family::SOeven ? WeylType::D : WeylType::B;
      spec.integration_only = family == Family::Oeven;
      break;
    case Family::SOodd:
      spec.matrix_size = 2 * n + 1;
      spec.dim = n * (2 * n + 1);
      spec.weyl = WeylType::B;
      break;
    case Family::USp:
      spec.matrix_size = 2 * n;
      spec.dim = n * (2 * n + 1);
      spec.weyl = WeylType::C;
      break;
  }
  return spec;
}

std::string describe(const GroupSpec& spec) {
  std::ostringstream out;
  switch (spec.family) {
    case Family::U: out << "U(" << spec.n << ")"; break;
    case Family::SU: out << "SU(" << spec.n << ")"; break;
    case Family::SOeven: out << "SO(" << 2 * spec.n << ")"; break;
    case Family::SOodd: out << "SO(" << 2 * spec.n + 1 << ")"; break;
    case Family::Oeven: out << "O(" << 2 * spec.n << ")"; break;
    case Family::USp: out << "USp(" << spec.n << ")"; break;
  }
  return out.str();
}

CartanVector::CartanVector(std::initializer_list<double> values) : coords_(static_cast<Eigen::Index>(values.size())) {
  Eigen::Index i = 0;
  for (double v : values) coords_[i++] = v;
}

CartanVector CartanVector::zero(const GroupSpec& spec) {
  return CartanVector(Eigen::VectorXd::Zero(spec.coord_length));
}

void validate_cartan(const GroupSpec& spec, const CartanVector& v) {
  if (v.size() != spec.coord_length) {
    throw Error(ErrorCode::LengthMismatch, describe(spec) + " expects " + std::to_string(spec.coord_length) +
                                               " Cartan coordinates, got " + std::to_string(v.size()));
  }
  if (!v.coords().allFinite()) {
    throw Error(ErrorCode::InvalidValue, "Cartan coordinates must be finite");
  }
  if (spec.family == Family::SU) {
    const double scale = v.coords().cwiseAbs().maxCoeff();
    if (std::abs(v.coords().sum()) > 1e-12 * scale) {
      throw Error(ErrorCode::SuSumNonzero, "SU Cartan coordinates must sum to zero");
    }
  }
}

Eigen::MatrixXcd symplectic_form(int n) {
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n).setIdentity();
  j.bottomLeftCorner(n, n) = -Eigen::MatrixXcd::Identity(n, n);
  return j;
}

bool in_algebra(const GroupSpec& spec, const AlgebraElement& x, double rel_tol) {
  const auto& m = x.entries();
  if (m.rows() != spec.matrix_size || m.cols() != spec.matrix_size) return false;
  const double tol = rel_tol * std::max(1.0, m.norm());
  if ((m + m.adjoint()).norm() > tol) return false;
  switch (spec.family) {
    case Family::U:
      return true;
    case Family::SU:
      return std::abs(m.trace()) <= tol;
    case Family::SOeven:
    case Family::SOodd:
    case Family::Oeven:
      return m.imag().norm() <= tol;
    case Family::USp: {
      const Eigen::MatrixXcd j = symplectic_form(spec.n);
      return (m.transpose() * j + j * m).norm() <= tol;
    }
  }
  return false;
}

double group_residual(const GroupSpec& spec, const Eigen::MatrixXcd& g) {
  const int side = spec.matrix_size;
  if (g.rows() != side || g.cols() != side) return std::numeric_limits<double>::infinity();
  double residual = (g.adjoint() * g - Eigen::MatrixXcd::Identity(side, side)).norm();
  switch (spec.family) {
    case Family::U:
      break;
    case Family::SU:
      residual = std::max(residual, std::abs(g.determinant() - cd(1.0, 0.0)));
      break;
    case Family::SOeven:
    case Family::SOodd:
      residual = std::max(residual, g.imag().norm());
      residual = std::max(residual, std::abs(g.real().determinant() - 1.0));
      break;
    case Family::Oeven:
      residual = std::max(residual, g.imag().norm());
      break;
    case Family::USp: {
      const Eigen::MatrixXcd j = symplectic_form(spec.n);
      residual = std::max(residual, (g.transpose() * j * g - j).norm());
      break;
    }
  }
  return residual;
}

bool in_group(const GroupSpec& spec, const Eigen::MatrixXcd& g) {
  return group_residual(spec, g) <= 1e-10 * spec.matrix_size;
}

AlgebraElement cartan_basis(const GroupSpec& spec, int j) {
  const int side = spec.matrix_size;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(side, side);
  switch (spec.family) {
    case Family::U:
    case Family::SU:
      h(j, j) = cd(0.0, 1.0);
      break;
    case Family::SOeven:
    case Family::SOodd:
    case Family::Oeven:
      h(2 * j, 2 * j + 1) = kInvSqrt2;
      h(2 * j + 1, 2 * j) = -kInvSqrt2;
      break;
    case Family::USp:
      h(j, j) = cd(0.0, kInvSqrt2);
      h(spec.n + j, spec.n + j) = cd(0.0, -kInvSqrt2);
      break;
  }
  return AlgebraElement(std::move(h));
}

AlgebraElement cartan_embed(const GroupSpec& spec, const CartanVector& v) {
  validate_cartan(spec, v);
  const int side = spec.matrix_size;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(side, side);
  for (int j = 0; j < spec.coord_length; ++j) {
    const double c = v[j];
    switch (spec.family) {
      case Family::U:
      case Family::SU:
        m(j, j) = cd(0.0, c);
        break;
      case Family::SOeven:
      case Family::SOodd:
      case Family::Oeven:
        m(2 * j, 2 * j + 1) = c * kInvSqrt2;
        m(2 * j + 1, 2 * j) = -c * kInvSqrt2;
        break;
      case Family::USp:
        m(j, j) = cd(0.0, c * kInvSqrt2);
        m(spec.n + j, spec.n + j) = cd(0.0, -c * kInvSqrt2);
        break;
    }
  }
  return AlgebraElement(std::move(m));
}

double inner_product(const AlgebraElement& x, const AlgebraElement& y) {
  const auto& a = x.entries();
  const auto& b = y.entries();
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw Error(ErrorCode::LengthMismatch, "inner_product: matrix sizes differ");
  }
  // -Re Tr(AB) = -Re sum_ij A_ij B_ji
  return -(a.array() * b.transpose().array()).sum().real();
}

double norm(const AlgebraElement& x) { return std::sqrt(std::max(0.0, inner_product(x, x))); }

double AffineConstraintSet::violation(const CartanVector& a) const {
  if (pinned_directions.cols() == 0) return 0.0;
  return (pinned_directions.transpose() * a.coords() - pinned_values).cwiseAbs().maxCoeff();
}

CartanVector AffineConstraintSet::project_to_feasible(const CartanVector& v) const {
  if (feasible_basis.cols() == 0) return CartanVector(Eigen::VectorXd::Zero(v.size()));
  return CartanVector(feasible_basis * (feasible_basis.transpose() * v.coords()));
}

AffineConstraintSet affine_equalities(const GroupSpec& spec, const CartanVector& f) {
  validate_cartan(spec, f);
  const int len = spec.coord_length;
  const double tol = 1e-12 * std::max(1.0, f.norm());
  AffineConstraintSet out;

  auto pin = [&](const Eigen::MatrixXd& directions) {
    const Eigen::Index old = out.pinned_directions.cols();
    out.pinned_directions.conservativeResize(len, old + directions.cols());
    out.pinned_directions.rightCols(directions.cols()) = directions;
    out.pinned_values.conservativeResize(old + directions.cols());
    out.pinned_values.tail(directions.cols()) = directions.transpose() * f.coords();
  };
  out.pinned_directions.resize(len, 0);
  out.pinned_values.resize(0);

  switch (spec.family) {
    case Family::U: {
      const Eigen::VectorXd center = Eigen::VectorXd::Constant(len, 1.0 / std::sqrt(double(len)));
      out.fixed_center = f.coords().mean();
      pin(center);
      const Eigen::MatrixXd traceless = sum_zero_basis(len);
      const bool zero = (traceless.transpose() * f.coords()).norm() <= tol;
      out.zero_subspace_flag = {zero};
      if (zero) {
        pin(traceless);
        out.feasible_basis.resize(len, 0);
      } else {
        out.feasible_basis = traceless;
      }
      break;
    }
    case Family::SU: {
      const Eigen::MatrixXd traceless = sum_zero_basis(len);
      const bool zero = f.norm() <= tol;
      out.zero_subspace_flag = {zero};
      if (zero) {
        pin(traceless);
        out.feasible_basis.resize(len, 0);
      } else {
        out.feasible_basis = traceless;
      }
      break;
    }
    case Family::SOeven:
      if (spec.n == 2) {
        // so(4) = su(2) + su(2); the factors are the (1,1) and (1,-1) directions.
        Eigen::MatrixXd factors(2, 2);
        factors << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
        out.feasible_basis.resize(2, 0);
        for (int k = 0; k < 2; ++k) {
          const bool zero = std::abs(factors.col(k).dot(f.coords())) <= tol;
          out.zero_subspace_flag.push_back(zero);
          if (zero) {
            pin(factors.col(k));
          } else {
            out.feasible_basis.conservativeResize(2, out.feasible_basis.cols() + 1);
            out.feasible_basis.rightCols(1) = factors.col(k);
          }
        }
        break;
      }
      [[fallthrough]];
    case Family::SOodd:
    case Family::Oeven:
    case Family::USp: {
      const bool zero = f.norm() <= tol;
      out.zero_subspace_flag = {zero};
      if (zero) {
        pin(Eigen::MatrixXd::Identity(len, len));
        out.feasible_basis.resize(len, 0);
      } else {
        out.feasible_basis = Eigen::MatrixXd::Identity(len, len);
      }
      break;
    }
  }
  return out;
}

AlgebraElement adjoint_apply(const GroupSpec& spec, const Eigen::MatrixXcd& g, const AlgebraElement& x) {
  if (!in_group(spec, g)) {
    throw Error(ErrorCode::NotInGroup, "adjoint_apply: matrix is not in " + describe(spec));
  }
  if (!in_algebra(spec, x, 1e-10)) {
    throw Error(ErrorCode::NotInAlgebra, "adjoint_apply: element is not in the Lie algebra of " + describe(spec));
  }
  return AlgebraElement(g * x.entries() * g.adjoint());
}

CartanVector weyl_act(const CartanVector& v, const std::vector<int>& perm, const std::vector<int>& signs) {
  Eigen::VectorXd out(v.size());
  for (int j = 0; j < v.size(); ++j) {
    const double s = signs.empty() ? 1.0 : static_cast<double>(signs[j]);
    out[j] = s * v[perm[j]] + 0.0;  // + 0.0 folds -0.0 into 0.0
  }
  return CartanVector(std::move(out));
}

std::vector<CartanVector> weyl_orbit(const GroupSpec& spec, const CartanVector& f, int cap) {
  validate_cartan(spec, f);
  if (spec.rank > cap) {
    throw Error(ErrorCode::CapExceeded, "Weyl orbit enumeration is capped at rank " + std::to_string(cap));
  }
  const int len = spec.coord_length;
  std::vector<double> base(f.coords().data(), f.coords().data() + len);
  for (double& x : base) x += 0.0;

  std::set<std::vector<double>> seen;
  const bool signed_action = spec.weyl != WeylType::A;
  const bool even_only = spec.weyl == WeylType::D;

  std::vector<double> perm = base;
  std::sort(perm.begin(), perm.end());
  do {
    if (!signed_action) {
      seen.insert(perm);
      continue;
    }
    for (unsigned mask = 0; mask < (1u << len); ++mask) {
      if (even_only && (std::popcount(mask) % 2) != 0) continue;
      std::vector<double> point(perm);
      for (int j = 0; j < len; ++j) {
        if (mask & (1u << j)) point[j] = -point[j];
        point[j] += 0.0;
      }
      seen.insert(std::move(point));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<CartanVector> out;
  out.reserve(seen.size());
  for (const auto& p : seen) {
    out.emplace_back(Eigen::Map<const Eigen::VectorXd>(p.data(), len));
  }
  return out;
}

}  // namespace orbitope
