#pragma once

// Seeded generators for random test instances. Everything here is driven by
// std::mt19937_64 (whose output sequence is fixed by the standard) with
// hand-written uniform/normal transforms, so the same seed produces the same
// matrices on every platform.

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/QR>

#include "mingeo/linalg.hpp"

namespace mingeo {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }

  /// Standard normal via Box-Muller.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream seed for (master seed, check name, index): FNV-1a over the name,
/// mixed with splitmix64.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view name, std::uint64_t index = 0) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(master ^ h) + index);
}

inline Matrix random_gaussian(Rng& rng, Index n, Index m) {
  Matrix g(n, m);
  for (Index j = 0; j < m; ++j)
    for (Index i = 0; i < n; ++i) g(i, j) = Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
  return g;
}

inline Matrix random_gaussian(Rng& rng, Index n) { return random_gaussian(rng, n, n); }

inline HermitianMatrix random_hermitian(Rng& rng, Index n, double scale = 1.0) {
  const Matrix g = random_gaussian(rng, n);
  return HermitianMatrix::trusted(scale * (g + g.adjoint()) / 2.0);
}

/// Random Hermitian matrix rescaled to the given spectral norm.
inline HermitianMatrix random_hermitian_with_norm(Rng& rng, Index n, double norm_inf) {
  const HermitianMatrix h = random_hermitian(rng, n);
  const double current = eigh(h).values.cwiseAbs().maxCoeff();
  return (norm_inf / current) * h;
}

/// Haar-distributed unitary: QR of a complex Gaussian with the phases of
/// R's diagonal absorbed into Q.
inline UnitaryMatrix random_unitary(Rng& rng, Index n) {
  const Matrix g = random_gaussian(rng, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return UnitaryMatrix::trusted(q);
}

/// exp of a Gaussian Hermitian matrix whose spectral norm is clipped to
/// `max_log_norm`.
inline PositiveDefiniteMatrix random_positive(Rng& rng, Index n, double max_log_norm = 3.0) {
  HermitianMatrix h = random_hermitian(rng, n);
  const double norm = eigh(h).values.cwiseAbs().maxCoeff();
  if (norm > max_log_norm) h = (max_log_norm / norm) * h;
  return exp_h(h);
}

inline OrthogonalProjection random_projection(Rng& rng, Index n, Index rank) {
  const Matrix w = random_unitary(rng, n).mat();
  return OrthogonalProjection::onto(w.leftCols(rank));
}

/// Random P-codiagonal Hermitian X (X = PX + XP) with the given spectral norm.
inline HermitianMatrix random_codiagonal(Rng& rng, const OrthogonalProjection& p, double norm_inf) {
  const Index n = p.dim();
  const Matrix perp = identity(n) - p.mat();
  const Matrix a = p.mat() * random_gaussian(rng, n) * perp;
  const HermitianMatrix x = HermitianMatrix::trusted(a + a.adjoint());
  const double current = eigh(x).values.cwiseAbs().maxCoeff();
  if (current == 0.0) return x;
  return (norm_inf / current) * x;
}

}  // namespace mingeo
