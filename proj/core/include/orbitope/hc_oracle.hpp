#pragma once

// Exponential orbital integrals
//
//     E_F(Y) = log \int_{O(F)} exp(-<Y, X>) dmu_F(X)
//
// over the invariant probability measure of an adjoint orbit, evaluated from
// the Harish-Chandra determinant formulas of each classical family. Values are
// normalized against the same formula at Y = 0, so E_F(0) == 0 exactly.

#include <vector>

#include "orbitope/lie_core.hpp"

namespace orbitope {

struct OracleResult {
  double log_value = 0.0;
  CartanVector gradient;           ///< dE/dy_j; empty when not requested
  bool confluent = false;          ///< a coincident/zero-coordinate limit was taken
  double condition_estimate = 0.0; ///< digits (natural-log units) lost to cancellation
};

/// Results whose condition estimate exceeds this raise NumericOverflow.
inline constexpr double kMaxCondition = 30.0;

/// Throws LengthMismatch/SuSumNonzero for invalid vectors and NumericOverflow
/// when the evaluation is non-finite or too ill-conditioned.
OracleResult log_integral(const GroupSpec& spec, const CartanVector& f, const CartanVector& y,
                          bool with_gradient = true);

CartanVector gradient(const GroupSpec& spec, const CartanVector& f, const CartanVector& y);

/// Groups of coordinate indices declared equal, and (SO/USp families only)
/// coordinates declared zero.
struct CoincidencePattern {
  std::vector<std::vector<int>> y_groups;
  std::vector<std::vector<int>> f_groups;
  std::vector<int> y_zeros;
  std::vector<int> f_zeros;
};

/// Relative tolerance within which a pattern must describe its inputs.
inline constexpr double kConfluenceThreshold = 1e-8;

/// Snaps the declared groups to their means (zeros to 0) and evaluates the
/// limiting value. Throws PatternMismatch if a group spreads further than
/// kConfluenceThreshold * max(1, max|coords|) or an index is out of range.
OracleResult confluent_limit(const GroupSpec& spec, const CartanVector& f, const CartanVector& y,
                             const CoincidencePattern& pattern);

}  // namespace orbitope
