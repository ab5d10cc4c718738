#pragma once

// Distances, geodesics and logarithms on H(n), U(n), Gl(n)+ and the
// Grassmannian, each carrying the Finsler metric induced by a Schatten norm.
//
// Points are passed as plain matrices together with a SpaceTag and validated
// against the invariant of that space on entry.

#include <functional>
#include <string>
#include <string_view>

#include "mingeo/linalg.hpp"

namespace mingeo {

enum class SpaceTag { Hermitian, Unitary, Positive, Grassmann };

constexpr std::string_view to_string(SpaceTag s) {
  switch (s) {
    case SpaceTag::Hermitian: return "hermitian";
    case SpaceTag::Unitary: return "unitary";
    case SpaceTag::Positive: return "positive";
    case SpaceTag::Grassmann: return "grassmann";
  }
  return "?";
}

inline SpaceTag parse_space(std::string_view text) {
  for (SpaceTag s : {SpaceTag::Hermitian, SpaceTag::Unitary, SpaceTag::Positive, SpaceTag::Grassmann}) {
    if (text == to_string(s)) return s;
  }
  throw Error(ErrorCode::ParseError, "unknown space '" + std::string(text) + "'");
}

/// A curve t in [0, 1] -> point of `space`. Generators are immutable; the
/// closure owns whatever decompositions it precomputed.
struct CurveGenerator {
  SpaceTag space;
  std::function<Matrix(double)> eval;

  Matrix operator()(double t) const { return eval(t); }
};

/// Throws the validation error of `space` when `m` is not one of its points
/// (beyond the repair tolerance). `tolerance_factor` widens the check.
inline void require_point(SpaceTag space, const Matrix& m, double tolerance_factor = 1.0) {
  require_square(m, "point");
  const double limit = tol::kConstruction * tol::kRepairFactor * tolerance_factor;
  switch (space) {
    case SpaceTag::Hermitian:
      if (hermiticity_defect(m) > limit) throw Error(ErrorCode::NonHermitianInput, "point is not Hermitian");
      return;
    case SpaceTag::Unitary:
      if (unitarity_defect(m) > limit) throw Error(ErrorCode::NonUnitaryInput, "point is not unitary");
      return;
    case SpaceTag::Positive: {
      if (hermiticity_defect(m) > limit) throw Error(ErrorCode::NonHermitianInput, "point is not Hermitian");
      Eigen::LLT<Matrix> llt(0.5 * (m + m.adjoint()));
      if (llt.info() != Eigen::Success) throw Error(ErrorCode::NotPositiveDefinite, "point is not positive definite");
      return;
    }
    case SpaceTag::Grassmann:
      if (hermiticity_defect(m) > limit) throw Error(ErrorCode::NonHermitianInput, "point is not Hermitian");
      if (max_abs(m * m - m) > limit) throw Error(ErrorCode::NotProjection, "point is not a projection");
      return;
  }
}

/// S_P = 2P - I, a self-adjoint unitary.
inline UnitaryMatrix symmetry(const OrthogonalProjection& p) {
  return UnitaryMatrix::trusted(2.0 * p.mat() - identity(p.dim()));
}

struct GrassmannLogResult {
  HermitianMatrix x;
  double codiagonal_residual;
};

inline void require_grassmann_pair(const OrthogonalProjection& p, const OrthogonalProjection& q) {
  if (p.dim() != q.dim()) throw Error(ErrorCode::DimensionMismatch, "projections differ in size");
  if (p.rank() != q.rank()) {
    throw Error(ErrorCode::RankMismatch,
                "ranks " + std::to_string(p.rank()) + " and " + std::to_string(q.rank()) + " differ");
  }
  const double gap = spectral_norm(p.mat() - q.mat());
  if (!(gap < 1.0 - 1e-12)) {
    throw Error(ErrorCode::GrassmannTooFar, "||P - Q||_inf = " + std::to_string(gap) + " is not < 1");
  }
}

/// Direct rotation from p to q: the P-codiagonal Hermitian x with
/// q = e^{ix} p e^{-ix} and ||x||_inf < pi/2, obtained as half the principal
/// logarithm of S_q S_p.
inline GrassmannLogResult grassmann_log(const OrthogonalProjection& p, const OrthogonalProjection& q) {
  require_grassmann_pair(p, q);
  const UnitaryMatrix sqsp = symmetry(q) * symmetry(p);
  const HermitianMatrix x = 0.5 * log_unitary(sqsp);
  const Matrix perp = identity(p.dim()) - p.mat();
  const double residual = spectral_norm(p.mat() * x.mat() * p.mat() + perp * x.mat() * perp);
  return {x, residual};
}

inline double dist_hermitian(const HermitianMatrix& a, const HermitianMatrix& b, const SchattenIndex& p) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "points differ in size");
  return schatten_norm((a - b).mat(), p);
}

inline double dist_unitary(const UnitaryMatrix& a, const UnitaryMatrix& b, const SchattenIndex& p) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "points differ in size");
  return schatten_norm(log_unitary(a.adjoint() * b).mat(), p);
}

/// True when a*b has eigenvalue -1 (within `tolerance` in phase), i.e. the
/// principal logarithm sits on its branch cut and the distance depends on the
/// +pi convention.
inline bool on_branch_cut(const UnitaryMatrix& a, const UnitaryMatrix& b, double tolerance = 1e-9) {
  const RealVector ph = eig_unitary(a.adjoint() * b).phases;
  return ph.size() > 0 && ph(0) >= kPi - tolerance;
}

/// a^{-1/2} b a^{-1/2}.
inline PositiveDefiniteMatrix congruence_quotient(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b) {
  const Matrix r = inv_sqrt_pd(a).mat();
  return PositiveDefiniteMatrix::trusted(r * b.mat() * r);
}

inline double dist_positive(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b, const SchattenIndex& p) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "points differ in size");
  // ||log C||_p only needs the spectrum of C.
  const RealVector ev = eigenvalues(congruence_quotient(a, b).hermitian());
  RealVector logs(ev.size());
  for (Index i = 0; i < ev.size(); ++i) {
    if (!(ev(i) > 0.0)) throw Error(ErrorCode::DomainError, "quotient lost positivity");
    logs(i) = std::log(ev(i));
  }
  return schatten_norm_of_values(logs, p);
}

inline double dist_grassmann(const OrthogonalProjection& a, const OrthogonalProjection& b, const SchattenIndex& p) {
  return schatten_norm(grassmann_log(a, b).x.mat(), p);
}

inline double dist(SpaceTag space, const Matrix& a, const Matrix& b, const SchattenIndex& p) {
  require_same_dim(a, b);
  switch (space) {
    case SpaceTag::Hermitian: return dist_hermitian(HermitianMatrix(a), HermitianMatrix(b), p);
    case SpaceTag::Unitary: return dist_unitary(UnitaryMatrix(a), UnitaryMatrix(b), p);
    case SpaceTag::Positive: return dist_positive(PositiveDefiniteMatrix(a), PositiveDefiniteMatrix(b), p);
    case SpaceTag::Grassmann: return dist_grassmann(OrthogonalProjection(a), OrthogonalProjection(b), p);
  }
  return 0.0;
}

inline CurveGenerator geodesic_hermitian(const HermitianMatrix& a, const HermitianMatrix& b) {
  Matrix start = a.mat();
  Matrix step = b.mat() - a.mat();
  return {SpaceTag::Hermitian, [start, step](double t) -> Matrix { return start + t * step; }};
}

/// t -> a e^{itX}, X = log(a* b) principal.
inline CurveGenerator geodesic_unitary(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  const UnitaryEigen e = eig_unitary(a.adjoint() * b);
  Matrix left = a.mat() * e.vectors.mat();
  Matrix right = e.vectors.mat().adjoint();
  RealVector phases = e.phases;
  return {SpaceTag::Unitary, [left, right, phases](double t) -> Matrix {
            Eigen::VectorXcd d(phases.size());
            for (Index i = 0; i < d.size(); ++i) d(i) = std::polar(1.0, t * phases(i));
            return left * d.asDiagonal() * right;
          }};
}

/// t -> a^{1/2} (a^{-1/2} b a^{-1/2})^t a^{1/2}.
inline CurveGenerator geodesic_positive(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b) {
  const EigenDecomposition ea = eigh(a.hermitian());
  const Matrix root = matrix_function(ea, [](double v) { return std::sqrt(v); }).mat();
  const Matrix inv_root = matrix_function(ea, [](double v) { return 1.0 / std::sqrt(v); }).mat();
  const EigenDecomposition ec = eigh(HermitianMatrix::trusted(inv_root * b.mat() * inv_root));
  Matrix left = root * ec.vectors.mat();
  RealVector logs(ec.values.size());
  for (Index i = 0; i < logs.size(); ++i) logs(i) = std::log(ec.values(i));
  return {SpaceTag::Positive, [left, logs](double t) -> Matrix {
            RealVector d(logs.size());
            for (Index i = 0; i < d.size(); ++i) d(i) = std::exp(t * logs(i));
            return HermitianMatrix::trusted(left * d.cast<Complex>().asDiagonal() * left.adjoint()).mat();
          }};
}

/// t -> e^{itX} p e^{-itX} with X the direct rotation from p to q.
inline CurveGenerator geodesic_grassmann(const OrthogonalProjection& p, const OrthogonalProjection& q) {
  const EigenDecomposition ex = eigh(grassmann_log(p, q).x);
  Matrix w = ex.vectors.mat();
  Matrix pw = w.adjoint() * p.mat() * w;
  RealVector lambda = ex.values;
  return {SpaceTag::Grassmann, [w, pw, lambda](double t) -> Matrix {
            Eigen::VectorXcd d(lambda.size());
            for (Index i = 0; i < d.size(); ++i) d(i) = std::polar(1.0, t * lambda(i));
            const Matrix inner = d.asDiagonal() * pw * d.conjugate().asDiagonal();
            return HermitianMatrix::trusted(w * inner * w.adjoint()).mat();
          }};
}

inline CurveGenerator geodesic(SpaceTag space, const Matrix& a, const Matrix& b) {
  require_same_dim(a, b);
  switch (space) {
    case SpaceTag::Hermitian: return geodesic_hermitian(HermitianMatrix(a), HermitianMatrix(b));
    case SpaceTag::Unitary: return geodesic_unitary(UnitaryMatrix(a), UnitaryMatrix(b));
    case SpaceTag::Positive: return geodesic_positive(PositiveDefiniteMatrix(a), PositiveDefiniteMatrix(b));
    case SpaceTag::Grassmann: return geodesic_grassmann(OrthogonalProjection(a), OrthogonalProjection(b));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown space");
}

/// Finsler norm of the tangent vector v at `base`.
inline double tangent_norm(SpaceTag space, const Matrix& base, const Matrix& v, const SchattenIndex& p) {
  require_same_dim(base, v);
  if (space == SpaceTag::Positive) {
    const Matrix r = inv_sqrt_pd(PositiveDefiniteMatrix::trusted(base)).mat();
    return schatten_norm(r * v * r, p);
  }
  return schatten_norm(v, p);
}

}  // namespace mingeo
