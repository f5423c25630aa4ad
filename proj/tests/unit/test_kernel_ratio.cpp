#include <doctest.h>

#include <cmath>
#include <random>

#include "orbitope/kernel_ratio.hpp"

using namespace orbitope::kernel;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

// Direct determinant ratio for well-separated points.
double direct_log_ratio(Kind kind, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = psi(kind, x[i] * y[j]);
  }
  double v = std::log(std::abs(m.determinant()));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) v -= std::log(std::abs(x[j] - x[i])) + std::log(std::abs(y[j] - y[i]));
  }
  return v;
}

}  // namespace

TEST_CASE("scaled derivatives satisfy the defining differential equations") {
  // C(z) = cosh(2 sqrt z) solves z C'' + C'/2 = C; differentiating k times gives
  // z C^{(k+2)} + (k + 1/2) C^{(k+1)} = C^{(k)}.
  for (double z : {0.0, 1e-6, 0.3, 2.0, 40.0, 900.0, 5e4}) {
    const auto d = psi_derivatives(Kind::CoshSqrt, z, 12);
    CHECK(d.shift == doctest::Approx(2.0 * std::sqrt(z)));
    for (int k = 0; k + 2 <= 12; ++k) {
      const double lhs = z * d.values[k + 2] + (k + 0.5) * d.values[k + 1];
      CHECK(lhs == doctest::Approx(d.values[k]).epsilon(1e-12));
    }
    if (z < 300.0) {
      CHECK(std::exp(d.shift) * d.values[0] == doctest::Approx(std::cosh(2.0 * std::sqrt(z))).epsilon(1e-14));
    }
    const auto s = psi_derivatives(Kind::SinhcSqrt, z, 11);
    for (int k = 0; k <= 11; ++k) CHECK(s.values[k] == d.values[k + 1]);
  }
  CHECK(psi_derivatives(Kind::SinhcSqrt, 0.0, 0).values[0] == doctest::Approx(2.0));
  const auto e = psi_derivatives(Kind::Exp, -3.5, 4);
  CHECK(e.shift == -3.5);
  CHECK(e.values == std::vector<double>(5, 1.0));
}

TEST_CASE("distinct points agree with the direct determinant") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (Kind kind : {Kind::Exp, Kind::CoshSqrt, Kind::SinhcSqrt}) {
    for (int t = 0; t < 30; ++t) {
      const int n = 2 + t % 3;
      Eigen::VectorXd x(n), y(n);
      for (int i = 0; i < n; ++i) {
        x[i] = u(rng) + 1.5 * i;
        y[i] = u(rng) + 1.5 * i;
      }
      const auto r = log_det_ratio(kind, x, y);
      CHECK(r.sign == 1);
      CHECK(r.log_abs == doctest::Approx(direct_log_ratio(kind, x, y)).epsilon(1e-9));
    }
  }
}

TEST_CASE("two-point exponential ratio closed forms") {
  const auto r = log_det_ratio(Kind::Exp, vec({0.0, 1.0}), vec({0.0, 1.0}));
  CHECK(r.log_abs == doctest::Approx(std::log(std::exp(1.0) - 1.0)).epsilon(1e-14));
  // Coincident columns: limit is exp((x1 + x2) y).
  const auto c = log_det_ratio(Kind::Exp, vec({0.0, 1.0}), vec({1.0, 1.0}));
  CHECK(c.confluent);
  CHECK(c.log_abs == doctest::Approx(1.0).epsilon(1e-14));
  // Far-apart points use separate clusters.
  const auto f = log_det_ratio(Kind::Exp, vec({0.0, 10.0}), vec({0.0, 10.0}));
  CHECK_FALSE(f.confluent);
  CHECK(f.log_abs == doctest::Approx(std::log(std::expm1(100.0)) - 2.0 * std::log(10.0)).epsilon(1e-14));
}

TEST_CASE("fully confluent points reduce to a Taylor determinant") {
  // All x and all y equal 0: the Taylor table of e^{xy} is diag(1/p!), so the
  // determinant is 1/(0! 1! 2! 3!) = 1/12.
  const auto r = log_det_ratio(Kind::Exp, Eigen::VectorXd::Zero(4), Eigen::VectorXd::Zero(4));
  CHECK(r.log_abs == doctest::Approx(-std::log(12.0)).epsilon(1e-14));
  CHECK(r.confluent);
  CHECK(r.sign == 1);
}

TEST_CASE("ratio is continuous across the cluster boundary") {
  // Moving a gap across the clustering threshold must not produce a jump.
  for (Kind kind : {Kind::Exp, Kind::CoshSqrt, Kind::SinhcSqrt}) {
    const Eigen::VectorXd y = vec({0.5, 2.0, 2.5});
    const double scale = kind == Kind::Exp ? 2.5 : 2.0 * std::sqrt(2.5);
    double prev = 0.0;
    for (int k = -3; k <= 3; ++k) {
      const double gap = (1.0 + 1e-3 * k) / scale;  // tau = 1
      Eigen::VectorXd x = vec({0.7, 0.7 + gap, 2.9});
      if (kind != Kind::Exp) {
        x = vec({0.49, std::pow(0.7 + gap, 2), 8.0});
      }
      const double v = log_det_ratio(kind, x, y).log_abs;
      if (k > -3) CHECK(std::abs(v - prev) < 2e-2);
      prev = v;
    }
  }
}

TEST_CASE("gradients match central finite differences") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (Kind kind : {Kind::Exp, Kind::CoshSqrt, Kind::SinhcSqrt}) {
    for (int t = 0; t < 20; ++t) {
      const int n = 2 + t % 3;
      Eigen::VectorXd x(n), y(n);
      for (int i = 0; i < n; ++i) {
        x[i] = u(rng) + 0.3;
        y[i] = u(rng) + 0.3;
      }
      if (t % 4 == 0) x[1] = x[0] + 1e-3;  // inside one cluster
      RatioOptions opts;
      opts.gradient = true;
      const auto r = log_det_ratio(kind, x, y, opts);
      for (int i = 0; i < n; ++i) {
        const double h = 1e-6;
        Eigen::VectorXd xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        const double fd = (log_det_ratio(kind, xp, y).log_abs - log_det_ratio(kind, xm, y).log_abs) / (2 * h);
        CHECK(r.dlog_dx[i] == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
      }
    }
  }
}

TEST_CASE("large arguments stay finite and well conditioned") {
  const auto r = log_det_ratio(Kind::CoshSqrt, vec({100.0, 200.0}), vec({300.0, 400.0}));
  // Reference from a 50-digit evaluation.
  CHECK(r.log_abs == doctest::Approx(901.49895172968848).epsilon(1e-14));
  CHECK(r.condition < 1.0);
  const auto e = log_det_ratio(Kind::Exp, vec({-300.0, 0.0, 250.0}), vec({-2.0, 1.0, 3.0}));
  CHECK(std::isfinite(e.log_abs));
  CHECK(e.condition < 5.0);
}

TEST_CASE("square-root kernels reject negative arguments") {
  CHECK_THROWS(log_det_ratio(Kind::CoshSqrt, vec({-1.0, 1.0}), vec({1.0, 2.0})));
  CHECK_THROWS(log_det_ratio(Kind::Exp, vec({1.0}), vec({1.0, 2.0})));
}
