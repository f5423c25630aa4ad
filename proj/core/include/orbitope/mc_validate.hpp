#pragma once

// Monte-Carlo oracles over Haar-random group elements. Sample i of seed s is
// generated from CounterRng(s, i), so estimates are bit-identical for a given
// (spec, seed, n_samples) regardless of thread count.

#include <cstdint>

#include <Eigen/Dense>

#include "orbitope/lie_core.hpp"

namespace orbitope {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

struct McVectorEstimate {
  CartanVector mean;
  Eigen::VectorXd std_error;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  double effective_sample_size = 0.0;
  bool low_ess = false;  ///< effective sample size below 100
};

/// Haar-distributed element of the group; stream selects an independent draw.
Eigen::MatrixXcd haar_sample(const GroupSpec& spec, std::uint64_t seed, std::uint64_t stream = 0);

/// log E_g[exp(-<Y, Ad_g F>)] with a delta-method standard error.
McEstimate mc_log_integral(const GroupSpec& spec, const CartanVector& f, const CartanVector& y,
                           std::int64_t n_samples, std::uint64_t seed);

/// Mean of the Cartan projection of Ad_g F under weights exp(-<Y, Ad_g F>).
McVectorEstimate mc_orbit_mean(const GroupSpec& spec, const CartanVector& f, const CartanVector& y,
                               std::int64_t n_samples, std::uint64_t seed);

/// Fraction of Haar-random orbit points within ambient distance delta of x0.
McEstimate mc_ball_mass(const GroupSpec& spec, const CartanVector& f, const AlgebraElement& x0,
                        double delta, std::int64_t n_samples, std::uint64_t seed);

/// Draws n Haar-random orbit points and returns their Cartan projections.
std::vector<CartanVector> sample_orbit_projections(const GroupSpec& spec, const CartanVector& f,
                                                   std::int64_t n_samples, std::uint64_t seed);

}  // namespace orbitope
