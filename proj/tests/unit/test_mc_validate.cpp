#include <doctest.h>

#include <cmath>
#include <random>

#include "orbitope/geometry.hpp"
#include "orbitope/hc_oracle.hpp"
#include "orbitope/mc_validate.hpp"
#include "orbitope/rng.hpp"
#include "test_support.hpp"

using namespace orbitope;
using namespace orbitope::testing;

TEST_CASE("counter RNG is reproducible and stream separated") {
  CounterRng a(1, 2), b(1, 2), c(1, 3), d(2, 2);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
    CHECK(x != d.next_u64());
  }
  CounterRng u(7, 0);
  double mean = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = u.normal();
    mean += z;
    sq += z * z;
  }
  mean /= n;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(n));
  CHECK(std::abs(sq / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("Haar samples lie in the group") {
  for (const auto c : all_cases_up_to_rank(5)) {
    const auto spec = spec_of(c);
    CAPTURE(describe(spec));
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto g = haar_sample(spec, 99, s);
      CHECK(group_residual(spec, g) <= 1e-10 * spec.matrix_size);
      if (spec.family == Family::SU || spec.family == Family::SOeven || spec.family == Family::SOodd) {
        CHECK(std::abs(g.determinant() - std::complex<double>(1.0, 0.0)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("O(2n) samples reach both components") {
  const auto o4 = make_group_spec(Family::Oeven, 2);
  int negative = 0;
  for (std::uint64_t s = 0; s < 200; ++s) negative += haar_sample(o4, 3, s).determinant().real() < 0.0;
  CHECK(negative > 60);
  CHECK(negative < 140);
}

TEST_CASE("U(2) Haar mean vanishes") {
  const auto u2 = make_group_spec(Family::U, 2);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(2, 2);
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += haar_sample(u2, 12, static_cast<std::uint64_t>(i));
  CHECK((sum / n).cwiseAbs().maxCoeff() <= 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("Haar invariance under left translation") {
  // Test function: |g_00|^2 has mean 1/N under Haar measure.
  for (const auto c : std::vector<FamilyCase>{{Family::U, 3}, {Family::SOodd, 1}, {Family::USp, 2}}) {
    const auto spec = spec_of(c);
    const auto h = haar_sample(spec, 1234, 0);
    const int n = 20000;
    double m1 = 0.0, m2 = 0.0, v1 = 0.0, v2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto g = haar_sample(spec, 5, static_cast<std::uint64_t>(i));
      const double a = std::norm(g(0, 0));
      const double b = std::norm((h * g)(0, 0));
      m1 += a;
      m2 += b;
      v1 += a * a;
      v2 += b * b;
    }
    m1 /= n;
    m2 /= n;
    const double se = std::sqrt((v1 / n - m1 * m1) / n + (v2 / n - m2 * m2) / n);
    CHECK(std::abs(m1 - m2) <= 3.0 * se);
    CHECK(std::abs(m1 - 1.0 / spec.matrix_size) <= 4.0 * std::sqrt((v1 / n - m1 * m1) / n));
  }
}

TEST_CASE("log-integral estimator basics") {
  const auto u2 = make_group_spec(Family::U, 2);
  const auto zero = mc_log_integral(u2, CartanVector{1.0, 0.0}, CartanVector{0.0, 0.0}, 1000, 1);
  CHECK(zero.mean == 0.0);
  CHECK(zero.std_error == 0.0);

  const CartanVector f{0.3, -1.2}, y{1.1, 0.4};
  const auto a = mc_log_integral(u2, f, y, 20000, 42);
  const auto b = mc_log_integral(u2, f, y, 20000, 42);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  const auto big = mc_log_integral(u2, f, y, 80000, 42);
  const double ratio = big.std_error / a.std_error;
  CHECK(ratio >= 0.4);
  CHECK(ratio <= 0.6);
  CHECK(std::abs(log_integral(u2, f, y).log_value - big.mean) <= 3.0 * big.std_error);
}

TEST_CASE("orbit mean at Y = 0") {
  const auto su2 = make_group_spec(Family::SU, 2);
  const auto m = mc_orbit_mean(su2, CartanVector{1.0, -1.0}, CartanVector{0.0, 0.0}, 20000, 3);
  for (int j = 0; j < 2; ++j) CHECK(std::abs(m.mean[j]) <= 3.0 * m.std_error[j]);
  CHECK_FALSE(m.low_ess);

  const auto u2 = make_group_spec(Family::U, 2);
  const auto n = mc_orbit_mean(u2, CartanVector{1.0, 0.0}, CartanVector{0.0, 0.0}, 20000, 4);
  for (int j = 0; j < 2; ++j) CHECK(std::abs(n.mean[j] - 0.5) <= 3.0 * n.std_error[j]);
}

TEST_CASE("weighted orbit mean matches minus the gradient") {
  const auto so5 = make_group_spec(Family::SOodd, 2);
  const CartanVector f{1.2, -0.4}, y{0.6, 0.9};
  const auto m = mc_orbit_mean(so5, f, y, 50000, 8);
  const auto g = gradient(so5, f, y);
  for (int j = 0; j < 2; ++j) CHECK(std::abs(-g[j] - m.mean[j]) <= 3.0 * m.std_error[j]);
}

TEST_CASE("low effective sample size is flagged") {
  const auto u2 = make_group_spec(Family::U, 2);
  const auto m = mc_orbit_mean(u2, CartanVector{10.0, -10.0}, CartanVector{-10.0, 10.0}, 2000, 1);
  CHECK(m.low_ess);
}

TEST_CASE("ball mass") {
  const auto usp2 = make_group_spec(Family::USp, 2);
  const CartanVector f{1.0, 0.4};
  const auto x0 = cartan_embed(usp2, f);
  const auto all = mc_ball_mass(usp2, f, x0, 2.0 * f.norm(), 5000, 1);
  CHECK(all.mean == 1.0);
  CHECK(all.std_error == 0.0);

  const auto x1 = adjoint_apply(usp2, haar_sample(usp2, 77), x0);
  const auto m0 = mc_ball_mass(usp2, f, x0, 0.8, 40000, 2);
  const auto m1 = mc_ball_mass(usp2, f, x1, 0.8, 40000, 3);
  CHECK(std::abs(m0.mean - m1.mean) <= 3.0 * std::hypot(m0.std_error, m1.std_error));

  const double bound = std::exp(-balancedness_bound(usp2.dim, 0.8, f.norm()));
  CHECK(m0.mean + 3.0 * m0.std_error >= bound);
}

TEST_CASE("estimates do not depend on how work is split") {
  // 5000 samples straddle the internal chunk size; repeated runs must be
  // bit-identical.
  const auto so4 = make_group_spec(Family::SOeven, 2);
  const CartanVector f{1.0, 0.3}, y{0.2, -0.7};
  const auto a = mc_orbit_mean(so4, f, y, 5000, 9);
  const auto b = mc_orbit_mean(so4, f, y, 5000, 9);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
}
