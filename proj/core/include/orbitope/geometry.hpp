#pragma once

// Cartan projection of orbit points and the polytope hull(W . F) it lands in:
// membership with certificates, interior margin, and the dual bounding box.

#include <optional>
#include <string_view>
#include <vector>

#include "orbitope/lie_core.hpp"

namespace orbitope {

/// Orthogonal projection onto the Cartan subalgebra, coords_j = <X, H_j>.
/// Throws NotInAlgebra or LengthMismatch.
CartanVector kostant_project(const GroupSpec& spec, const AlgebraElement& x);

enum class MembershipStatus { Interior, Boundary, Outside };
std::string_view status_name(MembershipStatus status);

struct MembershipReport {
  MembershipStatus status = MembershipStatus::Outside;
  /// Distance to the relative boundary inside the affine span (interior,
  /// boundary) or Euclidean distance to the polytope (outside).
  double margin = 0.0;
  /// Convex-combination certificate; empty when outside.
  std::vector<CartanVector> vertices;
  std::vector<double> weights;
  /// Separating functional when outside: <c, A> exceeds max_W <c, .> by margin * |c|.
  std::optional<CartanVector> separator;
};

inline constexpr double kMembershipTolerance = 1e-9;

/// Exact membership of A in hull(weyl_orbit(F)). Throws CapExceeded above the
/// enumeration cap and LengthMismatch for wrong lengths.
MembershipReport membership(const GroupSpec& spec, const CartanVector& f, const CartanVector& a,
                            double tol = kMembershipTolerance);

/// Schur-Horn test for U/SU: A is majorized by F. Throws InvalidValue for
/// other families.
bool majorized(const GroupSpec& spec, const CartanVector& f, const CartanVector& a,
               double tol = kMembershipTolerance);

struct BoundingBox {
  double radius = 0.0;
  double eta = 0.0;
  int d = 0;
  double norm_f = 0.0;
};

/// R = (2d/eta) log(8 sqrt(d) |F| / eta). Throws InvalidValue for
/// nonpositive inputs or a log argument <= 1.
BoundingBox bounding_radius(int d, double eta, double norm_f);

/// d log(4 sqrt(d) |F| / delta).
double balancedness_bound(int d, double delta, double norm_f);

}  // namespace orbitope
