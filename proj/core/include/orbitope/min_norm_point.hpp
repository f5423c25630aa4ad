#pragma once

// Wolfe's minimum-norm-point algorithm: nearest point of a finite point set's
// convex hull to a target, with the convex weights that produce it.

#include <vector>

#include <Eigen/Dense>

namespace orbitope {

struct NearestPoint {
  Eigen::VectorXd point;
  double distance = 0.0;
  std::vector<int> support;     ///< indices of the points carrying weight
  std::vector<double> weights;  ///< convex weights, aligned with support
};

/// points: one point per column.
NearestPoint nearest_hull_point(const Eigen::MatrixXd& points, const Eigen::VectorXd& target);

}  // namespace orbitope
