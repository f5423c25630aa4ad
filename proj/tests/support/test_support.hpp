#pragma once

// Shared helpers for unit and acceptance tests: family lists, seeded random
// inputs, and a brute-force Harish-Chandra oracle that sums over the Weyl
// group directly instead of going through determinants.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "orbitope/lie_core.hpp"

namespace orbitope::testing {

struct FamilyCase {
  Family family;
  int n;
};

inline GroupSpec spec_of(FamilyCase c) { return make_group_spec(c.family, c.n); }

/// Families and sizes used by the oracle-equivalence checks.
inline std::vector<FamilyCase> oracle_cases() {
  return {{Family::U, 2},      {Family::U, 3},      {Family::SU, 2},    {Family::SU, 3}, {Family::SOeven, 2},
          {Family::SOodd, 2},  {Family::Oeven, 2},  {Family::USp, 1},   {Family::USp, 2}};
}

/// Connected families at rank 2 and 3.
inline std::vector<FamilyCase> solver_cases() {
  return {{Family::U, 2},      {Family::U, 3},     {Family::SU, 3},  {Family::SU, 4},
          {Family::SOeven, 2}, {Family::SOeven, 3}, {Family::SOodd, 2}, {Family::SOodd, 3},
          {Family::USp, 2},    {Family::USp, 3}};
}

inline std::vector<FamilyCase> all_cases_up_to_rank(int max_rank) {
  std::vector<FamilyCase> out;
  for (Family f : {Family::U, Family::SU, Family::SOeven, Family::SOodd, Family::Oeven, Family::USp}) {
    for (int n = 1; n <= max_rank + 1; ++n) {
      if ((f == Family::SOeven || f == Family::Oeven) && n == 1) continue;
      if (f == Family::SU && n == 1) continue;
      const int rank = f == Family::SU ? n - 1 : n;
      if (rank > max_rank) continue;
      out.push_back({f, n});
    }
  }
  return out;
}

/// Uniform coordinates in [lo, hi]; SU vectors are centered to sum zero.
inline CartanVector random_cartan(const GroupSpec& spec, std::mt19937_64& rng, double lo = -2.0, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd v(spec.coord_length);
  for (int j = 0; j < v.size(); ++j) v[j] = u(rng);
  if (spec.family == Family::SU) v.array() -= v.mean();
  return CartanVector(v);
}

/// Random vector whose coordinates are pairwise separated by at least gap and
/// at least gap away from zero (for the orthogonal/symplectic formulas).
inline CartanVector random_generic(const GroupSpec& spec, std::mt19937_64& rng, double lo, double hi, double gap) {
  for (;;) {
    CartanVector v = random_cartan(spec, rng, lo, hi);
    bool ok = true;
    for (int i = 0; i < v.size() && ok; ++i) {
      if (spec.family != Family::U && spec.family != Family::SU && std::abs(v[i]) < gap) ok = false;
      for (int j = i + 1; j < v.size() && ok; ++j) {
        if (std::abs(v[i] - v[j]) < gap || (spec.family != Family::U && spec.family != Family::SU &&
                                             std::abs(std::abs(v[i]) - std::abs(v[j])) < gap)) {
          ok = false;
        }
      }
    }
    if (ok) return v;
  }
}

inline int permutation_sign(const std::vector<int>& p) {
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] > p[j]) sign = -sign;
    }
  }
  return sign;
}

/// log of the unnormalized Harish-Chandra sum
///     sum_w eps(w) exp(-<Y, w F>) / (pi(Y) pi(F)),
/// summed term by term in long double. Only differences of this quantity
/// between two Y are meaningful. Requires generic (distinct, nonzero) inputs.
inline long double weyl_sum_log(const GroupSpec& spec, const CartanVector& f, const CartanVector& y) {
  const int k = spec.coord_length;
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  const bool signed_perms = spec.weyl != WeylType::A;
  const bool even_only = spec.weyl == WeylType::D && spec.family == Family::SOeven;
  const bool sign_character = spec.weyl == WeylType::B || spec.weyl == WeylType::C;
  // O(2n) sums over all signed permutations but with the D-type character.
  const bool orthogonal_even = spec.family == Family::Oeven;

  // Shift exponents by the largest one for stability.
  long double top = 0.0L;
  {
    Eigen::VectorXd fs = f.coords().cwiseAbs(), ys = y.coords().cwiseAbs();
    std::sort(fs.data(), fs.data() + k);
    std::sort(ys.data(), ys.data() + k);
    top = fs.dot(ys);
  }
  long double sum = 0.0L;
  do {
    const int psign = permutation_sign(perm);
    const unsigned masks = signed_perms ? (1u << k) : 1u;
    for (unsigned mask = 0; mask < masks; ++mask) {
      const int flips = __builtin_popcount(mask);
      if (even_only && flips % 2 == 1) continue;
      long double e = 0.0L;
      for (int j = 0; j < k; ++j) {
        const double s = (mask >> j) & 1u ? -1.0 : 1.0;
        e += -static_cast<long double>(y[j]) * s * f[perm[j]];
      }
      int character = psign;
      if (sign_character && !orthogonal_even && flips % 2 == 1) character = -character;
      sum += character * std::exp(e - top);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  auto pi = [&](const CartanVector& v) {
    long double p = 1.0L;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        if (spec.weyl == WeylType::A) {
          p *= static_cast<long double>(v[j]) - v[i];
        } else {
          p *= static_cast<long double>(v[i]) * v[i] - static_cast<long double>(v[j]) * v[j];
        }
      }
      if (sign_character && !orthogonal_even) p *= v[i];
    }
    return p;
  };
  const long double ratio = sum / (pi(y) * pi(f));
  return top + std::log(std::abs(ratio));
}

}  // namespace orbitope::testing
