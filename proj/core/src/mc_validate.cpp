#include "orbitope/mc_validate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <thread>

#include "orbitope/error.hpp"
#include "orbitope/geometry.hpp"
#include "orbitope/rng.hpp"

namespace orbitope {
namespace {

using cd = std::complex<double>;
constexpr std::int64_t kChunk = 4096;

Eigen::MatrixXcd complex_gaussian(CounterRng& rng, int rows, int cols) {
  Eigen::MatrixXcd z(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = rng.normal();
      z(i, j) = cd(re, rng.normal());
    }
  }
  return z;
}

Eigen::MatrixXcd haar_unitary(CounterRng& rng, int n) {
  const Eigen::MatrixXcd z = complex_gaussian(rng, n, n);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

Eigen::MatrixXd haar_orthogonal(CounterRng& rng, int n) {
  Eigen::MatrixXd z(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) z(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  Eigen::MatrixXd q = qr.householderQ();
  for (int j = 0; j < n; ++j) {
    if (qr.matrixQR()(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

// Quaternionic Gram-Schmidt: column n+k is -J conj(column k), which makes
// g^T J g = J for unitary g.
Eigen::MatrixXcd haar_symplectic(CounterRng& rng, int n) {
  const Eigen::MatrixXcd j = symplectic_form(n);
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd v = complex_gaussian(rng, 2 * n, 1).col(0);
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < k; ++i) {
        v -= g.col(i).dot(v) * g.col(i);
        v -= g.col(n + i).dot(v) * g.col(n + i);
      }
    }
    v.normalize();
    g.col(k) = v;
    g.col(n + k) = -j * v.conjugate();
  }
  return g;
}

Eigen::MatrixXcd sample(const GroupSpec& spec, CounterRng& rng) {
  const int side = spec.matrix_size;
  switch (spec.family) {
    case Family::U:
      return haar_unitary(rng, side);
    case Family::SU: {
      Eigen::MatrixXcd u = haar_unitary(rng, side);
      const cd det = u.determinant();
      u *= std::polar(1.0, -std::arg(det) / side);
      return u;
    }
    case Family::SOeven:
    case Family::SOodd: {
      Eigen::MatrixXd q = haar_orthogonal(rng, side);
      if (q.determinant() < 0.0) q.col(0) = -q.col(0);
      return q.cast<cd>();
    }
    case Family::Oeven:
      return haar_orthogonal(rng, side).cast<cd>();
    case Family::USp:
      return haar_symplectic(rng, spec.n);
  }
  throw Error(ErrorCode::Internal, "haar_sample: unknown family");
}

// Evaluates fn(i) for i in [0, n) on a pool of threads. Work is split into
// fixed chunks and each index writes only its own output slot.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
  const std::int64_t chunks = (n + kChunk - 1) / kChunk;
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = static_cast<unsigned>(std::min<std::int64_t>(hw, chunks));
  std::atomic<std::int64_t> next{0};
  auto run = [&] {
    for (std::int64_t c = next++; c < chunks; c = next++) {
      const std::int64_t end = std::min(n, (c + 1) * kChunk);
      for (std::int64_t i = c * kChunk; i < end; ++i) fn(i);
    }
  };
  if (workers <= 1) {
    run();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
}

void check_samples(std::int64_t n_samples) {
  if (n_samples <= 0) throw Error(ErrorCode::InvalidValue, "Monte-Carlo sample count must be positive");
}

AlgebraElement orbit_point(const Eigen::MatrixXcd& g, const AlgebraElement& f) {
  return AlgebraElement(g * f.entries() * g.adjoint());
}

// exponent_i = -<Y, Ad_g F>, and optionally the Cartan projection of Ad_g F.
void sample_exponents(const GroupSpec& spec, const CartanVector& f, const CartanVector& y, std::int64_t n,
                      std::uint64_t seed, std::vector<double>& exponents, std::vector<CartanVector>* projections) {
  const AlgebraElement fe = cartan_embed(spec, f);
  const AlgebraElement ye = cartan_embed(spec, y);
  exponents.assign(static_cast<std::size_t>(n), 0.0);
  if (projections) projections->assign(static_cast<std::size_t>(n), CartanVector());
  parallel_for(n, [&](std::int64_t i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    const AlgebraElement x = orbit_point(sample(spec, rng), fe);
    exponents[i] = -inner_product(ye, x);
    if (projections) (*projections)[i] = kostant_project(spec, x);
  });
}

}  // namespace

Eigen::MatrixXcd haar_sample(const GroupSpec& spec, std::uint64_t seed, std::uint64_t stream) {
  CounterRng rng(seed, stream);
  return sample(spec, rng);
}

McEstimate mc_log_integral(const GroupSpec& spec, const CartanVector& f, const CartanVector& y,
                           std::int64_t n_samples, std::uint64_t seed) {
  check_samples(n_samples);
  validate_cartan(spec, f);
  validate_cartan(spec, y);
  McEstimate out;
  out.n_samples = n_samples;
  out.seed = seed;
  if (y.norm() == 0.0) return out;

  std::vector<double> e;
  sample_exponents(spec, f, y, n_samples, seed, e, nullptr);
  const double top = *std::max_element(e.begin(), e.end());
  double s1 = 0.0, s2 = 0.0;
  for (double v : e) {
    const double w = std::exp(v - top);
    s1 += w;
    s2 += w * w;
  }
  const double n = static_cast<double>(n_samples);
  out.mean = top + std::log(s1 / n);
  if (n_samples > 1) {
    // Delta method: sd(log mean) ~ sd(w) / (mean(w) sqrt(n)).
    const double mean_w = s1 / n;
    const double var_w = std::max(0.0, (s2 - s1 * mean_w) / (n - 1.0));
    out.std_error = std::sqrt(var_w / n) / mean_w;
  }
  return out;
}

McVectorEstimate mc_orbit_mean(const GroupSpec& spec, const CartanVector& f, const CartanVector& y,
                               std::int64_t n_samples, std::uint64_t seed) {
  check_samples(n_samples);
  validate_cartan(spec, f);
  validate_cartan(spec, y);
  std::vector<double> e;
  std::vector<CartanVector> p;
  sample_exponents(spec, f, y, n_samples, seed, e, &p);

  const int k = spec.coord_length;
  const double top = *std::max_element(e.begin(), e.end());
  std::vector<double> w(e.size());
  double sw = 0.0, sw2 = 0.0;
  Eigen::VectorXd swp = Eigen::VectorXd::Zero(k);
  for (std::size_t i = 0; i < e.size(); ++i) {
    w[i] = std::exp(e[i] - top);
    sw += w[i];
    sw2 += w[i] * w[i];
    swp += w[i] * p[i].coords();
  }
  const Eigen::VectorXd mean = swp / sw;
  // Ratio-estimator variance: sum w^2 (p - mean)^2 / (sum w)^2.
  Eigen::VectorXd var = Eigen::VectorXd::Zero(k);
  for (std::size_t i = 0; i < e.size(); ++i) {
    var += (w[i] * (p[i].coords() - mean)).cwiseAbs2();
  }
  McVectorEstimate out;
  out.mean = CartanVector(mean);
  out.std_error = var.cwiseSqrt() / sw;
  if (n_samples > 1) out.std_error *= std::sqrt(n_samples / (n_samples - 1.0));
  out.n_samples = n_samples;
  out.seed = seed;
  out.effective_sample_size = sw * sw / sw2;
  out.low_ess = out.effective_sample_size < 100.0;
  return out;
}

McEstimate mc_ball_mass(const GroupSpec& spec, const CartanVector& f, const AlgebraElement& x0, double delta,
                        std::int64_t n_samples, std::uint64_t seed) {
  check_samples(n_samples);
  validate_cartan(spec, f);
  if (!in_algebra(spec, x0)) throw Error(ErrorCode::NotInAlgebra, "mc_ball_mass: center is not in the algebra");
  if (!(delta >= 0.0)) throw Error(ErrorCode::InvalidValue, "mc_ball_mass: delta must be nonnegative");
  const AlgebraElement fe = cartan_embed(spec, f);
  std::vector<char> inside(static_cast<std::size_t>(n_samples), 0);
  parallel_for(n_samples, [&](std::int64_t i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    const AlgebraElement x = orbit_point(sample(spec, rng), fe);
    inside[i] = norm(x - x0) <= delta;
  });
  const double n = static_cast<double>(n_samples);
  const double p = static_cast<double>(std::count(inside.begin(), inside.end(), 1)) / n;
  McEstimate out;
  out.mean = p;
  out.std_error = std::sqrt(p * (1.0 - p) / n);
  out.n_samples = n_samples;
  out.seed = seed;
  return out;
}

std::vector<CartanVector> sample_orbit_projections(const GroupSpec& spec, const CartanVector& f,
                                                   std::int64_t n_samples, std::uint64_t seed) {
  check_samples(n_samples);
  std::vector<double> e;
  std::vector<CartanVector> p;
  sample_exponents(spec, f, CartanVector::zero(spec), n_samples, seed, e, &p);
  return p;
}

}  // namespace orbitope
