#include "orbitope/kernel_ratio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "orbitope/error.hpp"

namespace orbitope::kernel {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Scaled derivatives of cosh(2 sqrt(z)) for k = 0..max_order; shift = 2 sqrt(z).
// Small arguments use the positive power series, large arguments the forward
// recurrence z C'' = C - C'/2 differentiated k times, which is stable once
// 2 sqrt(z) dominates the derivative order.
ScaledDerivatives cosh_sqrt_derivatives(double z, int max_order) {
  ScaledDerivatives out;
  out.values.assign(static_cast<std::size_t>(max_order) + 1, 0.0);
  const double root = std::sqrt(z);
  const double w = 2.0 * root;
  out.shift = w;

  if (w >= 4.0 * max_order + 40.0) {
    const double decay = std::exp(-2.0 * w);
    out.values[0] = 0.5 * (1.0 + decay);
    if (max_order >= 1) out.values[1] = -0.5 * std::expm1(-2.0 * w) / root;
    for (int k = 0; k + 2 <= max_order; ++k) {
      out.values[k + 2] = (out.values[k] - (k + 0.5) * out.values[k + 1]) / z;
    }
    return out;
  }

  for (int k = 0; k <= max_order; ++k) {
    // C^{(k)}(z) = sum_m 4^{m+k} (m+k)! / (m! (2m+2k)!) z^m
    double log_first = k * std::log(4.0) + std::lgamma(k + 1.0) - std::lgamma(2.0 * k + 1.0) - w;
    double term = std::exp(log_first);
    double sum = term;
    if (z > 0.0) {
      for (int m = 0; m < 100000; ++m) {
        const double ratio = 4.0 * z * (m + k + 1.0) /
                             ((m + 1.0) * (2.0 * m + 2.0 * k + 1.0) * (2.0 * m + 2.0 * k + 2.0));
        term *= ratio;
        sum += term;
        if (ratio < 0.5 && term <= 1e-18 * sum) break;
      }
    }
    out.values[k] = sum;
  }
  return out;
}

// Complete homogeneous symmetric polynomials h_0..h_{count-1} of the points.
std::vector<double> complete_homogeneous(const std::vector<double>& points, int count) {
  std::vector<double> h(static_cast<std::size_t>(count), 0.0);
  if (count > 0) h[0] = 1.0;
  for (double z : points) {
    for (int j = 1; j < count; ++j) h[j] += z * h[j - 1];
  }
  return h;
}

struct Cluster {
  std::vector<int> members;  // original indices, in cluster order
  double center = 0.0;
  std::vector<double> deltas;
  int order = 1;  // number of Taylor coefficients used
};

std::vector<Cluster> make_clusters(const Eigen::VectorXd& values, const Eigen::VectorXd& effective,
                                   double scale, double tau, bool gradient) {
  const int n = static_cast<int>(values.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return effective[a] < effective[b]; });

  std::vector<Cluster> clusters;
  for (int pos = 0; pos < n; ++pos) {
    const int i = idx[pos];
    if (pos == 0 || (effective[i] - effective[idx[pos - 1]]) * scale > tau) {
      clusters.emplace_back();
    }
    clusters.back().members.push_back(i);
  }
  for (Cluster& c : clusters) {
    const int m = static_cast<int>(c.members.size());
    double lo = values[c.members.front()], hi = lo;
    double elo = effective[c.members.front()], ehi = elo;
    for (int i : c.members) {
      lo = std::min(lo, values[i]);
      hi = std::max(hi, values[i]);
      elo = std::min(elo, effective[i]);
      ehi = std::max(ehi, effective[i]);
    }
    c.center = m > 1 ? 0.5 * (lo + hi) : lo;
    for (int i : c.members) c.deltas.push_back(m > 1 ? values[i] - c.center : 0.0);
    const double spread = (ehi - elo) * scale;
    const int extra = m > 1 ? static_cast<int>(std::ceil(4.0 * spread)) + 2 * m + 24 : 0;
    c.order = (m > 1 ? m + extra : 1) + (gradient ? 1 : 0);
  }
  return clusters;
}

// Rows r = 0..m-1 of Newton weights: W(r, p) = h_{p-r}(deltas[0..r]).
Eigen::MatrixXd newton_weights(const Cluster& c) {
  const int m = static_cast<int>(c.members.size());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m, c.order);
  for (int r = 0; r < m; ++r) {
    std::vector<double> pts(c.deltas.begin(), c.deltas.begin() + r + 1);
    const auto h = complete_homogeneous(pts, c.order - r);
    for (int p = r; p < c.order; ++p) w(r, p) = h[p - r];
  }
  return w;
}

// Derivative of the Newton rows with respect to the k-th cluster point:
// d/dx_k f[x_0..x_r] = f[x_0..x_r, x_k] for r >= k.
Eigen::MatrixXd newton_weight_derivative(const Cluster& c, int k) {
  const int m = static_cast<int>(c.members.size());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m, c.order);
  for (int r = k; r < m; ++r) {
    std::vector<double> pts(c.deltas.begin(), c.deltas.begin() + r + 1);
    pts.push_back(c.deltas[k]);
    if (c.order - r - 1 <= 0) continue;
    const auto h = complete_homogeneous(pts, c.order - r - 1);
    for (int p = r + 1; p < c.order; ++p) w(r, p) = h[p - r - 1];
  }
  return w;
}

// Scaled Taylor table T(p, q) = d^p_x d^q_y psi(x y) / (p! q!) at (cx, cy),
// true value = exp(shift) * T.
Eigen::MatrixXd taylor_table(Kind kind, double cx, double cy, int px, int py, double& shift) {
  const int max_order = px + py - 2;
  ScaledDerivatives d = psi_derivatives(kind, cx * cy, std::max(max_order, 0));
  shift = d.shift;
  const int powers = std::max(px, py);
  std::vector<double> ax(powers), ay(powers), inv_fact(powers);
  double fx = 1.0, fy = 1.0, f = 1.0;
  for (int k = 0; k < powers; ++k) {
    if (k > 0) {
      fx *= cx / k;
      fy *= cy / k;
      f /= k;
    }
    ax[k] = fx;
    ay[k] = fy;
    inv_fact[k] = f;
  }
  Eigen::MatrixXd t(px, py);
  for (int p = 0; p < px; ++p) {
    for (int q = 0; q < py; ++q) {
      double s = 0.0;
      for (int u = 0; u <= std::min(p, q); ++u) {
        s += ax[q - u] * ay[p - u] * inv_fact[u] * d.values[p + q - u];
      }
      t(p, q) = s;
    }
  }
  return t;
}

// Max-weight assignment potentials: returns row/column potentials with
// row[i] + col[j] >= weight(i, j) and equality on an optimal assignment.
// Entries equal to -inf are treated as forbidden. Returns false when every
// assignment hits a forbidden entry.
bool assignment_potentials(const Eigen::MatrixXd& weight, Eigen::VectorXd& row, Eigen::VectorXd& col) {
  const int n = static_cast<int>(weight.rows());
  constexpr double kForbidden = 1e15;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto cost = [&](int i, int j) {
    const double w = weight(i, j);
    return std::isfinite(w) ? -w : kForbidden;
  };
  // Hungarian algorithm (1-based, shortest augmenting paths).
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  row.resize(n);
  col.resize(n);
  for (int i = 0; i < n; ++i) row[i] = -u[i + 1];
  for (int j = 0; j < n; ++j) col[j] = -v[j + 1];
  for (int j = 1; j <= n; ++j) {
    if (!std::isfinite(weight(p[j] - 1, j - 1))) return false;
  }
  return true;
}

}  // namespace

ScaledDerivatives psi_derivatives(Kind kind, double z, int max_order) {
  switch (kind) {
    case Kind::Exp: {
      ScaledDerivatives out;
      out.shift = z;
      out.values.assign(static_cast<std::size_t>(max_order) + 1, 1.0);
      return out;
    }
    case Kind::CoshSqrt:
      return cosh_sqrt_derivatives(std::max(z, 0.0), max_order);
    case Kind::SinhcSqrt: {
      // sinh(2 sqrt z)/sqrt z is the first derivative of cosh(2 sqrt z).
      ScaledDerivatives c = cosh_sqrt_derivatives(std::max(z, 0.0), max_order + 1);
      c.values.erase(c.values.begin());
      return c;
    }
  }
  return {};
}

double psi(Kind kind, double z) {
  switch (kind) {
    case Kind::Exp: return std::exp(z);
    case Kind::CoshSqrt: return std::cosh(2.0 * std::sqrt(z));
    case Kind::SinhcSqrt: return z == 0.0 ? 2.0 : std::sinh(2.0 * std::sqrt(z)) / std::sqrt(z);
  }
  return 0.0;
}

LogRatio log_det_ratio(Kind kind, const Eigen::VectorXd& x, const Eigen::VectorXd& y, const RatioOptions& options) {
  const int n = static_cast<int>(x.size());
  if (y.size() != n || n == 0) {
    throw Error(ErrorCode::LengthMismatch, "log_det_ratio: x and y must have the same nonzero length");
  }
  const bool square_root_kernel = kind != Kind::Exp;
  if (square_root_kernel && (x.minCoeff() < 0.0 || y.minCoeff() < 0.0)) {
    throw Error(ErrorCode::InvalidValue, "log_det_ratio: square-root kernels need nonnegative arguments");
  }

  Eigen::VectorXd ex = square_root_kernel ? Eigen::VectorXd(x.cwiseSqrt()) : x;
  Eigen::VectorXd ey = square_root_kernel ? Eigen::VectorXd(y.cwiseSqrt()) : y;
  const double scale_x = square_root_kernel ? 2.0 * ey.maxCoeff() : y.cwiseAbs().maxCoeff();
  const double scale_y = square_root_kernel ? 2.0 * ex.maxCoeff() : x.cwiseAbs().maxCoeff();

  const auto rows = make_clusters(x, ex, scale_x, options.cluster_tau, options.gradient);
  const auto cols = make_clusters(y, ey, scale_y, options.cluster_tau, false);

  LogRatio out;
  // Confluent means two points coincide to within 1e-8 relative, not merely
  // that they share a cluster.
  auto coincident = [](const std::vector<Cluster>& cs, const Eigen::VectorXd& v) {
    const double tol = 1e-8 * std::max(1.0, v.cwiseAbs().maxCoeff());
    for (const auto& c : cs) {
      for (std::size_t i = 0; i < c.members.size(); ++i) {
        for (std::size_t j = i + 1; j < c.members.size(); ++j) {
          if (std::abs(v[c.members[i]] - v[c.members[j]]) <= tol) return true;
        }
      }
    }
    return false;
  };
  out.confluent = coincident(rows, x) || coincident(cols, y);

  // Assemble mantissas and per-entry log shifts.
  Eigen::MatrixXd mant(n, n), shift(n, n);
  std::vector<int> row_offset, col_offset;
  {
    int off = 0;
    for (const auto& c : rows) {
      row_offset.push_back(off);
      off += static_cast<int>(c.members.size());
    }
    off = 0;
    for (const auto& c : cols) {
      col_offset.push_back(off);
      off += static_cast<int>(c.members.size());
    }
  }
  std::vector<Eigen::MatrixXd> row_weights, col_weights;
  for (const auto& c : rows) row_weights.push_back(newton_weights(c));
  for (const auto& c : cols) col_weights.push_back(newton_weights(c));

  // Per-block Taylor tables are kept for the gradient pass.
  std::vector<std::vector<Eigen::MatrixXd>> tables(rows.size());
  std::vector<std::vector<double>> shifts(rows.size());
  for (std::size_t bi = 0; bi < rows.size(); ++bi) {
    for (std::size_t bj = 0; bj < cols.size(); ++bj) {
      double s = 0.0;
      Eigen::MatrixXd t = taylor_table(kind, rows[bi].center, cols[bj].center, rows[bi].order, cols[bj].order, s);
      const Eigen::MatrixXd block = row_weights[bi] * t * col_weights[bj].transpose();
      mant.block(row_offset[bi], col_offset[bj], block.rows(), block.cols()) = block;
      shift.block(row_offset[bi], col_offset[bj], block.rows(), block.cols()).setConstant(s);
      tables[bi].push_back(std::move(t));
      shifts[bi].push_back(s);
    }
  }

  Eigen::MatrixXd log_mag(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      log_mag(i, j) = mant(i, j) == 0.0 ? kNegInf : shift(i, j) + std::log(std::abs(mant(i, j)));
    }
  }
  Eigen::VectorXd row_pot, col_pot;
  if (!assignment_potentials(log_mag, row_pot, col_pot)) {
    out.log_abs = kNegInf;
    out.sign = 0;
    out.condition = std::numeric_limits<double>::infinity();
    if (options.gradient) out.dlog_dx = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::quiet_NaN());
    return out;
  }
  auto scaled = [&](int i, int j, double value) {
    return value == 0.0 ? 0.0 : value * std::exp(shift(i, j) - row_pot[i] - col_pot[j]);
  };
  Eigen::MatrixXd normalized(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) normalized(i, j) = scaled(i, j, mant(i, j));
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(normalized);
  const double det = lu.determinant();
  double log_abs = row_pot.sum() + col_pot.sum() + std::log(std::abs(det));
  out.condition = -std::log(std::abs(det));

  // Inter-cluster Vandermonde factors; intra-cluster ones were divided out by
  // the Newton transformation. Sorted order makes every factor positive.
  auto inter_log = [](const std::vector<Cluster>& cs, const Eigen::VectorXd& v) {
    double s = 0.0;
    for (std::size_t a = 0; a < cs.size(); ++a) {
      for (std::size_t b = a + 1; b < cs.size(); ++b) {
        for (int i : cs[a].members) {
          for (int j : cs[b].members) s += std::log(std::abs(v[j] - v[i]));
        }
      }
    }
    return s;
  };
  log_abs -= inter_log(rows, x) + inter_log(cols, y);
  out.log_abs = log_abs;
  out.sign = det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);

  if (!options.gradient) return out;

  out.dlog_dx = Eigen::VectorXd::Zero(n);
  const Eigen::MatrixXd inverse = lu.inverse();
  for (std::size_t bi = 0; bi < rows.size(); ++bi) {
    const Cluster& c = rows[bi];
    const int m = static_cast<int>(c.members.size());
    for (int k = 0; k < m; ++k) {
      const Eigen::MatrixXd dw = newton_weight_derivative(c, k);
      double trace = 0.0;
      for (std::size_t bj = 0; bj < cols.size(); ++bj) {
        const Eigen::MatrixXd block = dw * tables[bi][bj] * col_weights[bj].transpose();
        for (int r = 0; r < block.rows(); ++r) {
          for (int s = 0; s < block.cols(); ++s) {
            const int gi = row_offset[bi] + r;
            const int gj = col_offset[bj] + s;
            trace += inverse(gj, gi) * scaled(gi, gj, block(r, s));
          }
        }
      }
      const int idx = c.members[k];
      double vander = 0.0;
      for (std::size_t other = 0; other < rows.size(); ++other) {
        if (other == bi) continue;
        for (int j : rows[other].members) vander += 1.0 / (x[idx] - x[j]);
      }
      out.dlog_dx[idx] = trace - vander;
    }
  }
  return out;
}

}  // namespace orbitope::kernel
