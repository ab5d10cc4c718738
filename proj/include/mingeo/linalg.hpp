#pragma once

// Dense complex linear algebra used by every other header: validated matrix
// kinds, a cyclic Jacobi eigensolver for Hermitian matrices, unitary
// eigendecomposition, functional calculus, Schatten norms, pinching and the
// Frechet derivative of the exponential.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mingeo/error.hpp"

namespace mingeo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kPi = std::numbers::pi;

namespace tol {
/// Relative tolerance for the Hermitian/unitary/projection invariants.
inline constexpr double kConstruction = 1e-9;
/// Inputs within this many tolerances are repaired (symmetrized) instead of
/// rejected.
inline constexpr double kRepairFactor = 10.0;
inline constexpr double kJacobiOffDiagonal = 1e-12;
inline constexpr int kJacobiMaxSweeps = 30;
inline constexpr double kConfluent = 1e-8;
inline constexpr double kUnitaryEigResidual = 1e-8;
/// Phases within this distance of -pi are reported as +pi.
inline constexpr double kBranchSnap = 1e-10;
}  // namespace tol

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline Matrix identity(Index n) { return Matrix::Identity(n, n); }

inline void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must be a non-empty square matrix");
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " has non-finite entries");
  }
}

inline void require_same_dim(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimensions " + std::to_string(a.rows()) + " and " + std::to_string(b.rows()) + " differ");
  }
}

/// Relative departure from self-adjointness, measured entrywise.
inline double hermiticity_defect(const Matrix& m) {
  return max_abs(m - m.adjoint()) / std::max(1.0, max_abs(m));
}

inline double unitarity_defect(const Matrix& m) {
  return max_abs(m.adjoint() * m - identity(m.rows()));
}

// ---------------------------------------------------------------------------
// Validated matrix kinds. Constructors check the invariant; `trusted` skips the
// check for values produced internally by operations that guarantee it.

class HermitianMatrix {
 public:
  explicit HermitianMatrix(const Matrix& m) {
    require_square(m, "Hermitian matrix");
    const double defect = hermiticity_defect(m);
    if (defect > tol::kConstruction * tol::kRepairFactor) {
      throw Error(ErrorCode::NonHermitianInput, "hermiticity defect " + std::to_string(defect));
    }
    m_ = 0.5 * (m + m.adjoint());
  }

  static HermitianMatrix trusted(const Matrix& m) {
    HermitianMatrix h;
    h.m_ = 0.5 * (m + m.adjoint());
    return h;
  }

  static HermitianMatrix zero(Index n) { return trusted(Matrix::Zero(n, n)); }
  static HermitianMatrix diagonal(const RealVector& d) {
    return trusted(d.cast<Complex>().asDiagonal().toDenseMatrix());
  }

  const Matrix& mat() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

  HermitianMatrix operator+(const HermitianMatrix& o) const { return trusted(m_ + o.m_); }
  HermitianMatrix operator-(const HermitianMatrix& o) const { return trusted(m_ - o.m_); }
  HermitianMatrix operator-() const { return trusted(-m_); }
  friend HermitianMatrix operator*(double s, const HermitianMatrix& h) { return trusted(s * h.m_); }

 private:
  HermitianMatrix() = default;
  Matrix m_;
};

class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(const Matrix& m) {
    require_square(m, "unitary matrix");
    const double defect = unitarity_defect(m);
    if (defect > tol::kConstruction * tol::kRepairFactor) {
      throw Error(ErrorCode::NonUnitaryInput, "unitarity defect " + std::to_string(defect));
    }
    m_ = m;
  }

  static UnitaryMatrix trusted(Matrix m) {
    UnitaryMatrix u;
    u.m_ = std::move(m);
    return u;
  }
  static UnitaryMatrix identity(Index n) { return trusted(Matrix::Identity(n, n)); }

  const Matrix& mat() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }
  UnitaryMatrix adjoint() const { return trusted(m_.adjoint()); }
  UnitaryMatrix operator*(const UnitaryMatrix& o) const { return trusted(m_ * o.m_); }

 private:
  UnitaryMatrix() = default;
  Matrix m_;
};

struct EigenDecomposition {
  UnitaryMatrix vectors;
  RealVector values;  // non-increasing

  Matrix reconstruct() const {
    return vectors.mat() * values.cast<Complex>().asDiagonal() * vectors.mat().adjoint();
  }
};

namespace detail {

// Complex Jacobi rotation zeroing a(p, q). The rotation is
// V = D R, D = diag(1, e^{-i phi}) on the (p, q) plane and R the real Jacobi
// rotation for the phase-corrected 2x2 block.
inline void jacobi_rotate(Matrix& a, Matrix& v, Index p, Index q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase_conj = std::conj(apq) / mag;  // e^{-i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Complex vpp = c;
  const Complex vpq = s;
  const Complex vqp = -s * phase_conj;
  const Complex vqq = c * phase_conj;

  const Index n = a.rows();
  for (Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * vpp + akq * vqp;
    a(k, q) = akp * vpq + akq * vqq;
  }
  for (Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(vpp) * apk + std::conj(vqp) * aqk;
    a(q, k) = std::conj(vpq) * apk + std::conj(vqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
  for (Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * vpp + vkq * vqp;
    v(k, q) = vkp * vpq + vkq * vqq;
  }
}

inline double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

inline EigenDecomposition sorted_decomposition(const Matrix& diag_form, const Matrix& vectors) {
  const Index n = diag_form.rows();
  std::vector<Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index i, Index j) { return diag_form(i, i).real() > diag_form(j, j).real(); });
  RealVector values(n);
  Matrix sorted(n, n);
  for (Index k = 0; k < n; ++k) {
    values(k) = diag_form(order[k], order[k]).real();
    sorted.col(k) = vectors.col(order[k]);
  }
  return {UnitaryMatrix::trusted(std::move(sorted)), values};
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
/// Eigenvalues are sorted non-increasing; ties keep their sweep order, so the
/// result is bit-reproducible for identical input.
inline EigenDecomposition eigh(const HermitianMatrix& h) {
  Matrix a = h.mat();
  const Index n = a.rows();
  Matrix v = identity(n);
  const double scale = a.norm();
  if (scale > 0.0) {
    const double threshold = tol::kJacobiOffDiagonal * scale;
    for (int sweep = 0; sweep < tol::kJacobiMaxSweeps; ++sweep) {
      if (detail::off_diagonal_norm(a) <= threshold) break;
      for (Index p = 0; p + 1 < n; ++p)
        for (Index q = p + 1; q < n; ++q) detail::jacobi_rotate(a, v, p, q);
    }
  }
  return detail::sorted_decomposition(a, v);
}

inline RealVector eigenvalues(const HermitianMatrix& h) { return eigh(h).values; }

/// Singular values, non-increasing. Hermitian input goes through `eigh`;
/// general input through Eigen's two-sided Jacobi SVD.
inline RealVector singular_values(const Matrix& m) {
  require_square(m, "matrix");
  if (max_abs(m - m.adjoint()) <= 1e-14 * std::max(1.0, max_abs(m))) {
    RealVector s = eigh(HermitianMatrix::trusted(m)).values.cwiseAbs();
    std::sort(s.data(), s.data() + s.size(), std::greater<>());
    return s;
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

// ---------------------------------------------------------------------------

class SchattenIndex {
 public:
  static SchattenIndex inf() { return SchattenIndex(0.0, true); }
  static SchattenIndex of(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::InvalidArgument, "Schatten index must be >= 1 or inf");
    }
    return SchattenIndex(p, false);
  }
  /// Accepts "inf", "1", "2" or any decimal >= 1.
  static SchattenIndex parse(const std::string& text) {
    if (text == "inf" || text == "INF" || text == "Inf") return inf();
    size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(text, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad Schatten index '" + text + "'");
    }
    if (used != text.size() || !(p >= 1.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::ParseError, "bad Schatten index '" + text + "'");
    }
    return of(p);
  }

  bool is_inf() const noexcept { return inf_; }
  double value() const noexcept { return inf_ ? std::numeric_limits<double>::infinity() : p_; }
  bool is(double p) const noexcept { return !inf_ && p_ == p; }

  std::string str() const {
    if (inf_) return "inf";
    if (p_ == std::floor(p_) && p_ < 1e9) return std::to_string(static_cast<long long>(p_));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", p_);
    return buf;
  }

  friend bool operator==(const SchattenIndex& a, const SchattenIndex& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.p_ == b.p_);
  }

 private:
  SchattenIndex(double p, bool inf) : p_(p), inf_(inf) {}
  double p_;
  bool inf_;
};

inline double schatten_norm_of_values(const RealVector& s, const SchattenIndex& p) {
  if (s.size() == 0) return 0.0;
  if (p.is_inf()) return s.cwiseAbs().maxCoeff();
  if (p.is(1.0)) return s.cwiseAbs().sum();
  if (p.is(2.0)) return s.norm();
  const double top = s.cwiseAbs().maxCoeff();
  if (top == 0.0) return 0.0;
  double sum = 0.0;
  for (Index i = 0; i < s.size(); ++i) sum += std::pow(std::abs(s(i)) / top, p.value());
  return top * std::pow(sum, 1.0 / p.value());
}

inline double schatten_norm(const Matrix& m, const SchattenIndex& p) {
  if (p.is(2.0)) return m.norm();
  return schatten_norm_of_values(singular_values(m), p);
}

inline double spectral_norm(const Matrix& m) { return schatten_norm(m, SchattenIndex::inf()); }

// ---------------------------------------------------------------------------

class PositiveDefiniteMatrix {
 public:
  explicit PositiveDefiniteMatrix(const Matrix& m) : h_(HermitianMatrix(m)) {
    const double smallest = eigenvalues(h_).minCoeff();
    if (!(smallest > 0.0)) {
      throw Error(ErrorCode::NotPositiveDefinite, "smallest eigenvalue " + std::to_string(smallest));
    }
  }
  static PositiveDefiniteMatrix trusted(const Matrix& m) { return PositiveDefiniteMatrix(HermitianMatrix::trusted(m)); }
  static PositiveDefiniteMatrix identity(Index n) { return trusted(Matrix::Identity(n, n)); }

  const Matrix& mat() const noexcept { return h_.mat(); }
  const HermitianMatrix& hermitian() const noexcept { return h_; }
  Index dim() const noexcept { return h_.dim(); }

 private:
  explicit PositiveDefiniteMatrix(HermitianMatrix h) : h_(std::move(h)) {}
  HermitianMatrix h_;
};

class OrthogonalProjection {
 public:
  explicit OrthogonalProjection(const Matrix& m) : h_(HermitianMatrix(m)) {
    const double idem = max_abs(h_.mat() * h_.mat() - h_.mat());
    if (idem > tol::kConstruction * tol::kRepairFactor) {
      throw Error(ErrorCode::NotProjection, "idempotency defect " + std::to_string(idem));
    }
    const double trace = h_.mat().trace().real();
    rank_ = static_cast<Index>(std::llround(trace));
    if (std::abs(trace - static_cast<double>(rank_)) > 1e-6) {
      throw Error(ErrorCode::NotProjection, "trace is not an integer");
    }
  }
  static OrthogonalProjection trusted(const Matrix& m) {
    OrthogonalProjection p(HermitianMatrix::trusted(m));
    p.rank_ = static_cast<Index>(std::llround(p.h_.mat().trace().real()));
    return p;
  }
  /// Projection onto the span of the (orthonormal) columns of `basis`.
  static OrthogonalProjection onto(const Matrix& basis) { return trusted(basis * basis.adjoint()); }

  const Matrix& mat() const noexcept { return h_.mat(); }
  const HermitianMatrix& hermitian() const noexcept { return h_; }
  Index dim() const noexcept { return h_.dim(); }
  Index rank() const noexcept { return rank_; }

 private:
  explicit OrthogonalProjection(HermitianMatrix h) : h_(std::move(h)) {}
  HermitianMatrix h_;
  Index rank_ = 0;
};

/// Mutually orthogonal projections summing to the identity.
class ProjectorSystem {
 public:
  explicit ProjectorSystem(std::vector<OrthogonalProjection> projectors) : projectors_(std::move(projectors)) {
    if (projectors_.empty()) throw Error(ErrorCode::InvalidArgument, "empty projector system");
    const Index n = projectors_.front().dim();
    Matrix sum = Matrix::Zero(n, n);
    for (size_t i = 0; i < projectors_.size(); ++i) {
      if (projectors_[i].dim() != n) throw Error(ErrorCode::DimensionMismatch, "projector dimensions differ");
      sum += projectors_[i].mat();
      for (size_t j = i + 1; j < projectors_.size(); ++j) {
        if (max_abs(projectors_[i].mat() * projectors_[j].mat()) > 1e-8) {
          throw Error(ErrorCode::InvalidArgument, "projectors are not mutually orthogonal");
        }
      }
    }
    if (max_abs(sum - identity(n)) > 1e-8) throw Error(ErrorCode::InvalidArgument, "projectors do not sum to I");
  }

  /// Rank-one projectors onto the columns of a unitary.
  static ProjectorSystem from_basis(const Matrix& basis) {
    std::vector<OrthogonalProjection> ps;
    for (Index j = 0; j < basis.cols(); ++j) ps.push_back(OrthogonalProjection::onto(basis.col(j)));
    return ProjectorSystem(std::move(ps));
  }
  /// Groups consecutive columns of `basis`; `sizes` must add up to its width.
  static ProjectorSystem from_blocks(const Matrix& basis, const std::vector<Index>& sizes) {
    std::vector<OrthogonalProjection> ps;
    Index start = 0;
    for (Index s : sizes) {
      if (s < 1 || start + s > basis.cols()) throw Error(ErrorCode::DimensionMismatch, "block sizes do not fit the basis");
      ps.push_back(OrthogonalProjection::onto(basis.middleCols(start, s)));
      start += s;
    }
    if (start != basis.cols()) throw Error(ErrorCode::DimensionMismatch, "block sizes do not cover the basis");
    return ProjectorSystem(std::move(ps));
  }
  static ProjectorSystem canonical(Index n) { return from_basis(identity(n)); }

  const std::vector<OrthogonalProjection>& projectors() const noexcept { return projectors_; }
  Index dim() const { return projectors_.front().dim(); }

 private:
  std::vector<OrthogonalProjection> projectors_;
};

// ---------------------------------------------------------------------------
// Functional calculus.

/// f(h) = W diag(f(lambda)) W*. Throws DOMAIN_ERROR when f is not finite at
/// an eigenvalue.
template <class F>
HermitianMatrix matrix_function(const EigenDecomposition& eig, F&& f) {
  RealVector fv(eig.values.size());
  for (Index i = 0; i < fv.size(); ++i) {
    fv(i) = f(eig.values(i));
    if (!std::isfinite(fv(i))) {
      throw Error(ErrorCode::DomainError, "function undefined at eigenvalue " + std::to_string(eig.values(i)));
    }
  }
  const Matrix& w = eig.vectors.mat();
  return HermitianMatrix::trusted(w * fv.cast<Complex>().asDiagonal() * w.adjoint());
}

template <class F>
HermitianMatrix matrix_function(const HermitianMatrix& h, F&& f) {
  return matrix_function(eigh(h), std::forward<F>(f));
}

inline UnitaryMatrix expi(const EigenDecomposition& eig) {
  const Index n = eig.values.size();
  Eigen::VectorXcd phases(n);
  for (Index i = 0; i < n; ++i) phases(i) = std::polar(1.0, eig.values(i));
  const Matrix& w = eig.vectors.mat();
  return UnitaryMatrix::trusted(w * phases.asDiagonal() * w.adjoint());
}

/// e^{iX}.
inline UnitaryMatrix expi(const HermitianMatrix& x) { return expi(eigh(x)); }

inline PositiveDefiniteMatrix exp_h(const HermitianMatrix& x) {
  return PositiveDefiniteMatrix::trusted(matrix_function(x, [](double v) { return std::exp(v); }).mat());
}

inline HermitianMatrix log_pd(const PositiveDefiniteMatrix& a) {
  return matrix_function(a.hermitian(), [](double v) { return v > 0.0 ? std::log(v) : std::nan(""); });
}

/// A^t for positive A and real t.
inline PositiveDefiniteMatrix pow_pd(const PositiveDefiniteMatrix& a, double t) {
  return PositiveDefiniteMatrix::trusted(
      matrix_function(a.hermitian(), [t](double v) { return v > 0.0 ? std::pow(v, t) : std::nan(""); }).mat());
}

inline PositiveDefiniteMatrix sqrt_pd(const PositiveDefiniteMatrix& a) { return pow_pd(a, 0.5); }
inline PositiveDefiniteMatrix inv_sqrt_pd(const PositiveDefiniteMatrix& a) { return pow_pd(a, -0.5); }

// ---------------------------------------------------------------------------
// Unitary eigendecomposition.

struct UnitaryEigen {
  UnitaryMatrix vectors;
  RealVector phases;  // in (-pi, pi], non-increasing

  Matrix reconstruct() const {
    Eigen::VectorXcd d(phases.size());
    for (Index i = 0; i < d.size(); ++i) d(i) = std::polar(1.0, phases(i));
    return vectors.mat() * d.asDiagonal() * vectors.mat().adjoint();
  }
};

namespace detail {

inline double principal_phase(Complex z) {
  double phi = std::arg(z);
  if (phi <= -kPi + tol::kBranchSnap) phi = kPi;
  return phi;
}

// Groups indices of sorted-descending `values` whose neighbours differ by
// at most `gap`.
inline std::vector<std::pair<Index, Index>> clusters(const RealVector& values, double gap) {
  std::vector<std::pair<Index, Index>> out;
  Index start = 0;
  for (Index i = 1; i <= values.size(); ++i) {
    if (i == values.size() || values(i - 1) - values(i) > gap) {
      out.emplace_back(start, i - start);
      start = i;
    }
  }
  return out;
}

// Diagonalizes the commuting Hermitian pair (re, im) restricted to the
// columns of `basis`, first by `re`, then by `im` inside each `re` cluster.
inline Matrix joint_refine(const Matrix& re, const Matrix& im, const Matrix& basis) {
  const Matrix re_c = basis.adjoint() * re * basis;
  const EigenDecomposition e1 = eigh(HermitianMatrix::trusted(re_c));
  Matrix refined = basis * e1.vectors.mat();
  const double gap = 1e-7;
  Matrix out(basis.rows(), basis.cols());
  for (auto [start, len] : clusters(e1.values, gap)) {
    Matrix block = refined.middleCols(start, len);
    if (len > 1) {
      const Matrix im_c = block.adjoint() * im * block;
      block = block * eigh(HermitianMatrix::trusted(im_c)).vectors.mat();
    }
    out.middleCols(start, len) = block;
  }
  return out;
}

}  // namespace detail

/// u = V diag(e^{i phases}) V*. Works through the commuting Hermitian pair
/// Re(u), Im(u): diagonalizes Re(u) + c Im(u), then re-diagonalizes clusters
/// whose residual is too large.
inline UnitaryEigen eig_unitary(const UnitaryMatrix& u) {
  constexpr double kMix = 0.7310585786;
  const Matrix& m = u.mat();
  const Index n = m.rows();
  const Matrix re = 0.5 * (m + m.adjoint());
  const Matrix im = (m - m.adjoint()) / Complex(0.0, 2.0);
  const EigenDecomposition mixed = eigh(HermitianMatrix::trusted(re + kMix * im));
  Matrix w = mixed.vectors.mat();

  auto phases_of = [&](const Matrix& vecs) {
    RealVector ph(n);
    for (Index j = 0; j < n; ++j) ph(j) = detail::principal_phase(vecs.col(j).dot(m * vecs.col(j)));
    return ph;
  };
  auto residual = [&](const Matrix& vecs, const RealVector& ph) {
    Eigen::VectorXcd d(n);
    for (Index j = 0; j < n; ++j) d(j) = std::polar(1.0, ph(j));
    return max_abs(m * vecs - vecs * d.asDiagonal());
  };

  RealVector ph = phases_of(w);
  if (residual(w, ph) > tol::kUnitaryEigResidual) {
    const double gap = 1e-6 * std::max(1.0, mixed.values.cwiseAbs().maxCoeff());
    for (auto [start, len] : detail::clusters(mixed.values, gap)) {
      if (len > 1) w.middleCols(start, len) = detail::joint_refine(re, im, w.middleCols(start, len));
    }
    ph = phases_of(w);
  }

  std::vector<Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) { return ph(i) > ph(j); });
  Matrix sorted(n, n);
  RealVector sorted_ph(n);
  for (Index k = 0; k < n; ++k) {
    sorted.col(k) = w.col(order[k]);
    sorted_ph(k) = ph(order[k]);
  }
  return {UnitaryMatrix::trusted(std::move(sorted)), sorted_ph};
}

/// The unique X with e^{iX} = u and spectrum in (-pi, pi]; eigenvalue -1 of u
/// maps to +pi.
inline HermitianMatrix log_unitary(const UnitaryMatrix& u) {
  const UnitaryEigen e = eig_unitary(u);
  const Matrix& w = e.vectors.mat();
  return HermitianMatrix::trusted(w * e.phases.cast<Complex>().asDiagonal() * w.adjoint());
}

// ---------------------------------------------------------------------------

/// Sum_j P_j m P_j.
inline Matrix pinch(const ProjectorSystem& system, const Matrix& m) {
  if (m.rows() != system.dim() || m.cols() != system.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "pinching system and matrix differ in size");
  }
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  for (const auto& p : system.projectors()) out += p.mat() * m * p.mat();
  return out;
}

/// (e^a - e^b)/(a - b), written as e^{(a+b)/2} sinh(d)/d with d = (a-b)/2 so
/// that nearby arguments do not cancel.
inline double exp_divided_difference(double a, double b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  const double mid = std::exp(0.5 * (a + b));
  if (std::abs(a - b) < tol::kConfluent * scale) return mid;
  const double d = 0.5 * (a - b);
  return mid * std::sinh(d) / d;
}

/// exp^{[1]} table for the eigenvalues `lambda` (eigenbasis coordinates).
inline Eigen::MatrixXd exp_divided_difference_table(const RealVector& lambda) {
  const Index n = lambda.size();
  Eigen::MatrixXd g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = exp_divided_difference(lambda(i), lambda(j));
  return g;
}

/// W exp^{[1]}(Lambda) W*. For diagonal h this is exactly the first divided
/// difference table of exp in the standard basis. The table is entrywise
/// positive but not positive semidefinite once two eigenvalues differ.
inline HermitianMatrix divided_difference_exp(const HermitianMatrix& h) {
  const EigenDecomposition eig = eigh(h);
  const Matrix& w = eig.vectors.mat();
  return HermitianMatrix::trusted(w * exp_divided_difference_table(eig.values).cast<Complex>() * w.adjoint());
}

/// De^h(k) = W (exp^{[1]}(Lambda) o W* k W) W*.
inline HermitianMatrix frechet_exp(const EigenDecomposition& eig, const HermitianMatrix& k) {
  if (k.dim() != eig.values.size()) throw Error(ErrorCode::DimensionMismatch, "frechet_exp operands differ in size");
  const Matrix& w = eig.vectors.mat();
  const Matrix kk = w.adjoint() * k.mat() * w;
  const Matrix hadamard = exp_divided_difference_table(eig.values).cast<Complex>().cwiseProduct(kk);
  return HermitianMatrix::trusted(w * hadamard * w.adjoint());
}

inline HermitianMatrix frechet_exp(const HermitianMatrix& h, const HermitianMatrix& k) {
  if (h.dim() != k.dim()) throw Error(ErrorCode::DimensionMismatch, "frechet_exp operands differ in size");
  return frechet_exp(eigh(h), k);
}

}  // namespace mingeo
