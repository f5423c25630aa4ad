#pragma once

// Log-domain evaluation of determinant ratios
//
//     R(x, y) = det[ psi(x_i * y_j) ] / ( Delta(x) * Delta(y) ),
//     Delta(x) = prod_{i<j} (x_j - x_i),
//
// for an entire function psi. Every orbital-integral formula in hc_oracle
// reduces to one or two such ratios. R is symmetric in the entries of x and of
// y and extends continuously to coincident points; the continuous extension is
// computed by grouping nearby points into clusters and replacing each cluster's
// rows (columns) with Newton divided differences, evaluated by a local Taylor
// expansion. Exact coincidences become derivative rows as a special case.

#include <vector>

#include <Eigen/Dense>

namespace orbitope::kernel {

enum class Kind {
  Exp,        ///< psi(z) = exp(z)
  CoshSqrt,   ///< psi(z) = cosh(2 sqrt(z)),        z >= 0
  SinhcSqrt,  ///< psi(z) = sinh(2 sqrt(z)) / sqrt(z), z >= 0
};

/// psi^{(k)}(z) = exp(shift) * values[k] for k = 0..max_order.
struct ScaledDerivatives {
  double shift = 0.0;
  std::vector<double> values;
};

ScaledDerivatives psi_derivatives(Kind kind, double z, int max_order);

/// Unscaled psi(z); may overflow for large arguments. Intended for tests.
double psi(Kind kind, double z);

struct RatioOptions {
  /// Points whose gap, measured in units of the kernel's variation scale,
  /// is at most cluster_tau share a cluster.
  double cluster_tau = 1.0;
  bool gradient = false;
};

struct LogRatio {
  double log_abs = 0.0;        ///< log |R|; -inf when R == 0
  int sign = 1;                ///< sign of R
  double condition = 0.0;      ///< -log|det| of the tropically scaled matrix
  bool confluent = false;      ///< two points coincide to 1e-8 relative
  Eigen::VectorXd dlog_dx;     ///< d log|R| / d x_i, original order (if requested)
};

LogRatio log_det_ratio(Kind kind, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                       const RatioOptions& options = {});

}  // namespace orbitope::kernel
