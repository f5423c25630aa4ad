#pragma once

// Group and algebra metadata for the compact classical families, their
// orthonormal Cartan bases under <X,Y> = -Re Tr(XY), and Weyl-orbit
// enumeration.

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace orbitope {

enum class Family { U, SU, SOeven, SOodd, Oeven, USp };

/// Weyl group type acting on Cartan coordinates. Oeven reports B because the
/// full O(2n) orbit is closed under every sign change.
enum class WeylType { A, B, C, D };

std::string_view family_name(Family family);
/// Parses "U", "SU", "SOeven", "SOodd", "Oeven", "USp"; nullopt otherwise.
std::optional<Family> parse_family(std::string_view name);

struct GroupSpec {
  Family family = Family::U;
  int n = 1;              ///< size parameter: U(n), SO(2n), SO(2n+1), USp(n)
  int dim = 1;            ///< real dimension of the group
  int rank = 1;           ///< dimension of the Cartan subalgebra
  int coord_length = 1;   ///< length of a CartanVector (n for SU as well)
  int matrix_size = 1;    ///< side of the defining representation
  WeylType weyl = WeylType::A;
  bool integration_only = false;  ///< true for the disconnected O(2n)

  bool real_matrices() const {
    return family == Family::SOeven || family == Family::SOodd || family == Family::Oeven;
  }
  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

/// Throws Error{InvalidSize} for n <= 0 and Error{DegenerateFamily} for SO(2).
GroupSpec make_group_spec(Family family, int n);

std::string describe(const GroupSpec& spec);

/// Coordinates in the orthonormal Cartan basis {H_j}.
class CartanVector {
 public:
  CartanVector() = default;
  explicit CartanVector(Eigen::VectorXd coords) : coords_(std::move(coords)) {}
  CartanVector(std::initializer_list<double> values);

  static CartanVector zero(const GroupSpec& spec);

  const Eigen::VectorXd& coords() const { return coords_; }
  Eigen::VectorXd& coords() { return coords_; }
  int size() const { return static_cast<int>(coords_.size()); }
  double operator[](int j) const { return coords_[j]; }
  double& operator[](int j) { return coords_[j]; }
  double norm() const { return coords_.norm(); }
  double dot(const CartanVector& other) const { return coords_.dot(other.coords_); }
  std::vector<double> to_std() const { return {coords_.data(), coords_.data() + coords_.size()}; }

  friend bool operator==(const CartanVector& a, const CartanVector& b) {
    return a.coords_.size() == b.coords_.size() && a.coords_ == b.coords_;
  }

 private:
  Eigen::VectorXd coords_;
};

/// Checks length and the SU zero-sum invariant; throws LengthMismatch / SuSumNonzero.
void validate_cartan(const GroupSpec& spec, const CartanVector& v);

/// Dense matrix realization of a Lie algebra element. SO/O elements carry a
/// zero imaginary part.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {}

  const Eigen::MatrixXcd& entries() const { return entries_; }
  int side() const { return static_cast<int>(entries_.rows()); }
  double frobenius() const { return entries_.norm(); }

  AlgebraElement operator-(const AlgebraElement& other) const {
    return AlgebraElement(entries_ - other.entries_);
  }

 private:
  Eigen::MatrixXcd entries_;
};

/// Structural membership test: skew-Hermitian, traceless for SU, real for
/// SO/O, symplectic for USp. Tolerance is relative to the Frobenius norm.
bool in_algebra(const GroupSpec& spec, const AlgebraElement& x, double rel_tol = 1e-12);

/// Residual-based group membership, tolerance 1e-10 * N.
bool in_group(const GroupSpec& spec, const Eigen::MatrixXcd& g);
double group_residual(const GroupSpec& spec, const Eigen::MatrixXcd& g);

/// Symplectic form J = [[0, I], [-I, 0]] of size 2n.
Eigen::MatrixXcd symplectic_form(int n);

/// The basis element H_j (0-based) as a matrix.
AlgebraElement cartan_basis(const GroupSpec& spec, int j);

AlgebraElement cartan_embed(const GroupSpec& spec, const CartanVector& v);

/// <X, Y> = -Re Tr(XY).
double inner_product(const AlgebraElement& x, const AlgebraElement& y);
double norm(const AlgebraElement& x);

/// Maximal affine equalities of hull(O(F)) restricted to Cartan coordinates,
/// with an orthonormal basis of the feasible linear subspace V_L.
struct AffineConstraintSet {
  std::optional<double> fixed_center;   ///< U family: pinned mean of the coordinates
  std::vector<bool> zero_subspace_flag; ///< one flag per simple component
  Eigen::MatrixXd feasible_basis;       ///< coord_length x dim(V_L), orthonormal columns
  Eigen::MatrixXd pinned_directions;    ///< orthonormal directions whose coordinate is fixed
  Eigen::VectorXd pinned_values;        ///< value of <direction, X> on the orbit

  int feasible_dim() const { return static_cast<int>(feasible_basis.cols()); }
  bool empty() const { return pinned_directions.cols() == 0; }
  /// Largest violation |<d, A> - value| over pinned directions.
  double violation(const CartanVector& a) const;
  CartanVector project_to_feasible(const CartanVector& v) const;
};

AffineConstraintSet affine_equalities(const GroupSpec& spec, const CartanVector& f);

/// g X g^{-1}; throws NotInGroup / NotInAlgebra.
AlgebraElement adjoint_apply(const GroupSpec& spec, const Eigen::MatrixXcd& g,
                             const AlgebraElement& x);

inline constexpr int kWeylEnumerationCap = 8;

/// Deduplicated Weyl orbit of f: permutations (A), signed permutations (B, C,
/// Oeven), permutations with an even number of sign flips (D). Sorted
/// lexicographically. Throws CapExceeded above kWeylEnumerationCap.
std::vector<CartanVector> weyl_orbit(const GroupSpec& spec, const CartanVector& f,
                                     int cap = kWeylEnumerationCap);

/// Applies one Weyl element: permutation perm (new[j] = v[perm[j]]) followed
/// by sign flips. The caller is responsible for parity constraints.
CartanVector weyl_act(const CartanVector& v, const std::vector<int>& perm,
                      const std::vector<int>& signs);

}  // namespace orbitope
