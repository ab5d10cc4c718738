#pragma once

// Structured random instances shared by the report battery and the tests.

#include <utility>
#include <vector>

#include "mingeo/curves.hpp"
#include "mingeo/random.hpp"

namespace mingeo::fixtures {

/// W diag(values) W* for a Haar W.
inline HermitianMatrix hermitian_with_spectrum(Rng& rng, const RealVector& values) {
  const Matrix w = random_unitary(rng, values.size()).mat();
  return HermitianMatrix::trusted(w * values.cast<Complex>().asDiagonal() * w.adjoint());
}

/// (u, v) with u random and u* v = W diag(e^{i phases}) W*.
inline std::pair<UnitaryMatrix, UnitaryMatrix> unitary_pair_with_phases(Rng& rng, const RealVector& phases) {
  const UnitaryMatrix u = random_unitary(rng, phases.size());
  const UnitaryMatrix rel = expi(hermitian_with_spectrum(rng, phases));
  return {u, u * rel};
}

/// (p, q) of rank `rank` in C^n whose principal angles are `angles`
/// (at most min(rank, n - rank) of them; the rest are 0).
inline std::pair<OrthogonalProjection, OrthogonalProjection> grassmann_pair_with_angles(Rng& rng, Index n, Index rank,
                                                                                         const std::vector<double>& angles) {
  const Matrix w = random_unitary(rng, n).mat();
  Matrix x = Matrix::Zero(n, n);
  for (size_t j = 0; j < angles.size(); ++j) {
    const Index a = static_cast<Index>(j);
    const Index b = rank + static_cast<Index>(j);
    if (a >= rank || b >= n) throw Error(ErrorCode::InvalidArgument, "too many principal angles");
    x(a, b) = Complex(0.0, -angles[j]);
    x(b, a) = Complex(0.0, angles[j]);
  }
  Matrix p0 = Matrix::Zero(n, n);
  p0.topLeftCorner(rank, rank).setIdentity();
  const Matrix rot = expi(HermitianMatrix::trusted(x)).mat();
  const Matrix q0 = rot * p0 * rot.adjoint();
  return {OrthogonalProjection::trusted(w * p0 * w.adjoint()), OrthogonalProjection::trusted(w * q0 * w.adjoint())};
}

/// t D + sum_j sin(j pi t) R_j / j: a smooth Hermitian curve from 0 to D.
inline CurveGenerator smooth_hermitian_curve(Rng& rng, const HermitianMatrix& endpoint, double wiggle = 0.5) {
  const Index n = endpoint.dim();
  std::vector<Matrix> r;
  for (int j = 0; j < 3; ++j) r.push_back(random_hermitian(rng, n, wiggle).mat());
  const Matrix d = endpoint.mat();
  return {SpaceTag::Hermitian, [d, r](double t) -> Matrix {
            Matrix m = t * d;
            for (size_t j = 0; j < r.size(); ++j) {
              const double k = static_cast<double>(j + 1);
              m += std::sin(k * kPi * t) / k * r[j];
            }
            return m;
          }};
}

}  // namespace mingeo::fixtures
