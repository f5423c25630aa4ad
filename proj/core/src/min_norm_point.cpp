#include "orbitope/min_norm_point.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "orbitope/error.hpp"

namespace orbitope {
namespace {

// Affine combination of the columns of s with minimal norm:
// minimize |s alpha| subject to sum(alpha) = 1.
Eigen::VectorXd affine_minimizer(const Eigen::MatrixXd& s) {
  const int k = static_cast<int>(s.cols());
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
  kkt.topLeftCorner(k, k) = s.transpose() * s;
  kkt.block(0, k, k, 1).setOnes();
  kkt.block(k, 0, 1, k).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  rhs[k] = 1.0;
  return kkt.completeOrthogonalDecomposition().solve(rhs).head(k);
}

}  // namespace

NearestPoint nearest_hull_point(const Eigen::MatrixXd& points, const Eigen::VectorXd& target) {
  const int m = static_cast<int>(points.cols());
  if (m == 0 || points.rows() != target.size()) {
    throw Error(ErrorCode::LengthMismatch, "nearest_hull_point: empty point set or dimension mismatch");
  }
  const Eigen::MatrixXd p = points.colwise() - target;
  const double scale = std::max(p.colwise().squaredNorm().maxCoeff(), 1e-300);
  const double eps = 1e-12 * scale;

  int start = 0;
  p.colwise().squaredNorm().minCoeff(&start);
  std::vector<int> s{start};
  std::vector<double> lambda{1.0};
  Eigen::VectorXd x = p.col(start);

  for (int major = 0; major < 50 * m + 100; ++major) {
    int j = 0;
    (x.transpose() * p).minCoeff(&j);
    if (x.dot(p.col(j)) >= x.squaredNorm() - eps) break;
    if (std::find(s.begin(), s.end(), j) != s.end()) break;
    s.push_back(j);
    lambda.push_back(0.0);

    for (int minor = 0; minor < static_cast<int>(s.size()) + 5; ++minor) {
      Eigen::MatrixXd cols(p.rows(), static_cast<int>(s.size()));
      for (std::size_t i = 0; i < s.size(); ++i) cols.col(static_cast<int>(i)) = p.col(s[i]);
      const Eigen::VectorXd alpha = affine_minimizer(cols);
      if ((alpha.array() > 1e-14).all()) {
        for (std::size_t i = 0; i < s.size(); ++i) lambda[i] = alpha[static_cast<int>(i)];
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        const double a = alpha[static_cast<int>(i)];
        if (a <= 1e-14 && lambda[i] - a > 0.0) theta = std::min(theta, lambda[i] / (lambda[i] - a));
      }
      for (std::size_t i = 0; i < s.size(); ++i) {
        lambda[i] = theta * alpha[static_cast<int>(i)] + (1.0 - theta) * lambda[i];
      }
      std::vector<int> keep_s;
      std::vector<double> keep_l;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (lambda[i] > 1e-14) {
          keep_s.push_back(s[i]);
          keep_l.push_back(lambda[i]);
        }
      }
      s = std::move(keep_s);
      lambda = std::move(keep_l);
    }
    const double total = std::accumulate(lambda.begin(), lambda.end(), 0.0);
    x.setZero();
    for (std::size_t i = 0; i < s.size(); ++i) {
      lambda[i] /= total;
      x += lambda[i] * p.col(s[i]);
    }
  }

  NearestPoint out;
  out.point = x + target;
  out.distance = x.norm();
  out.support = s;
  out.weights = lambda;
  return out;
}

}  // namespace orbitope
