#pragma once

// Seeded representatives of the families of minimal curves: unitary curves
// from I (block structure around the top eigenspace of the logarithm),
// trace-norm minimal Hermitian curves from 0, their exponential lifts, and
// Grassmann curves. Also the uniqueness predicates.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mingeo/curves.hpp"
#include "mingeo/random.hpp"

namespace mingeo {

// ---------------------------------------------------------------------------
// Top-block split.

struct BlockSplit {
  OrthogonalProjection top_projector;  // onto S = ker(||X|| I - |X|)
  HermitianMatrix top_part;
  HermitianMatrix complement_part;
  double norm_inf;

  // Eigenbasis of X with the S columns first, and the matching eigenvalues.
  Matrix basis;
  RealVector values;
  Index top_rank;

  Matrix top_basis() const { return basis.leftCols(top_rank); }
  Matrix complement_basis() const { return basis.rightCols(basis.cols() - top_rank); }
  RealVector top_values() const { return values.head(top_rank); }
  RealVector complement_values() const { return values.tail(values.size() - top_rank); }
};

namespace detail {

inline constexpr double kTopClusterGap = 1e-8;

inline BlockSplit split_from_eigen(const Matrix& vectors, const RealVector& values) {
  const Index n = values.size();
  const double norm = values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
  if (!(norm > 0.0)) throw Error(ErrorCode::ZeroMatrix, "top block split of the zero matrix");
  std::vector<Index> top, rest;
  for (Index i = 0; i < n; ++i) (std::abs(values(i)) >= norm * (1.0 - kTopClusterGap) ? top : rest).push_back(i);

  Matrix basis(n, n);
  RealVector ordered(n);
  Index col = 0;
  for (const auto* group : {&top, &rest}) {
    for (Index i : *group) {
      basis.col(col) = vectors.col(i);
      ordered(col++) = values(i);
    }
  }
  const Index k = static_cast<Index>(top.size());
  auto part = [&](Index start, Index len) {
    const Matrix b = basis.middleCols(start, len);
    return HermitianMatrix::trusted(b * ordered.segment(start, len).cast<Complex>().asDiagonal() * b.adjoint());
  };
  return BlockSplit{OrthogonalProjection::onto(basis.leftCols(k)), part(0, k), part(k, n - k), norm, basis, ordered, k};
}

}  // namespace detail

inline BlockSplit top_block_split(const HermitianMatrix& x) {
  const EigenDecomposition e = eigh(x);
  return detail::split_from_eigen(e.vectors.mat(), e.values);
}

// ---------------------------------------------------------------------------
// Unitary family.

enum class FamilyMode { Geodesic, Detour };

struct PerturbationSpec {
  std::uint64_t seed = 0;
  FamilyMode mode = FamilyMode::Geodesic;
  double detour_scale = 0.5;
  std::optional<std::vector<int>> sign_pattern;  // only when ||X|| = pi
};

namespace detail {

inline constexpr double kSpeedCheckSteps = 2048;
inline constexpr double kSpeedMargin = 1e-6;

inline double bump(double scale, double t) {
  const double s = std::sin(kPi * t);
  return scale * s * s;
}
inline double bump_rate(double scale, double t) { return scale * kPi * std::sin(2.0 * kPi * t); }

// Random Hermitian K (k x k) with ||K||_inf = budget / pi, so that
// ||C + phi'(t) K|| <= ||C|| + detour_scale * budget.
inline EigenDecomposition detour_direction(std::uint64_t seed, Index k, double budget) {
  Rng rng(seed);
  const HermitianMatrix kk = random_hermitian_with_norm(rng, k, budget / kPi);
  return eigh(kk);
}

// max over the check grid of ||C + phi'(t) K||_inf, the speed of
// e^{itC} e^{i phi(t) K} (left-translated to the identity).
inline double max_detour_speed(const RealVector& c, const EigenDecomposition& k, double scale) {
  const Matrix kk = k.reconstruct();
  const Matrix cc = c.cast<Complex>().asDiagonal();
  double worst = 0.0;
  for (int j = 0; j <= kSpeedCheckSteps; ++j) {
    const double t = j / kSpeedCheckSteps;
    const HermitianMatrix v = HermitianMatrix::trusted(cc + bump_rate(scale, t) * kk);
    worst = std::max(worst, eigenvalues(v).cwiseAbs().maxCoeff());
  }
  return worst;
}

inline Eigen::VectorXcd phase_diagonal(const RealVector& values, double t) {
  Eigen::VectorXcd d(values.size());
  for (Index i = 0; i < d.size(); ++i) d(i) = std::polar(1.0, t * values(i));
  return d;
}

// e^{i phi K} from a precomputed eigendecomposition of K.
inline Matrix expi_scaled(const EigenDecomposition& k, double phi) {
  const Matrix& v = k.vectors.mat();
  return v * phase_diagonal(k.values, phi).asDiagonal() * v.adjoint();
}

}  // namespace detail

/// Top eigenvalues used by the unitary family: X_S, or for ||X|| = pi the
/// signed version Y_S with spectrum in {pi, -pi}.
inline RealVector structure_top_values(const BlockSplit& split, const std::optional<std::vector<int>>& sign_pattern) {
  RealVector top = split.top_values();
  if (!sign_pattern) return top;
  if (static_cast<Index>(sign_pattern->size()) != split.top_rank) {
    throw Error(ErrorCode::InvalidArgument, "sign_pattern has " + std::to_string(sign_pattern->size()) +
                                                " entries but the top block has dimension " +
                                                std::to_string(split.top_rank));
  }
  if (split.norm_inf < kPi - 1e-8) {
    throw Error(ErrorCode::InvalidArgument, "sign_pattern only applies when ||log U||_inf = pi");
  }
  for (Index i = 0; i < split.top_rank; ++i) {
    const int s = (*sign_pattern)[static_cast<size_t>(i)];
    if (s != 1 && s != -1) throw Error(ErrorCode::InvalidArgument, "sign_pattern entries must be +1 or -1");
    top(i) = s * kPi;
  }
  return top;
}

/// A minimal curve from I to u_target for the spectral norm:
/// alpha(t) = e^{it X_S} (+) alpha_1(t), alpha_1(t) = e^{itC} e^{i phi(t) K} on S-perp.
inline CurveGenerator minimal_family_unitary(const UnitaryMatrix& u_target, const PerturbationSpec& spec) {
  const UnitaryEigen e = eig_unitary(u_target);
  if (e.phases.cwiseAbs().maxCoeff() <= 1e-12) throw Error(ErrorCode::IdentityTarget, "target is the identity");
  if (!(spec.detour_scale >= 0.0) || !std::isfinite(spec.detour_scale)) {
    throw Error(ErrorCode::InvalidArgument, "detour_scale must be a finite non-negative number");
  }
  const BlockSplit split = detail::split_from_eigen(e.vectors.mat(), e.phases);
  const RealVector top = structure_top_values(split, spec.sign_pattern);
  const RealVector comp = split.complement_values();
  const Matrix ws = split.top_basis();
  const Matrix wc = split.complement_basis();

  const bool detour = spec.mode == FamilyMode::Detour && comp.size() > 0;
  const double scale = detour ? spec.detour_scale : 0.0;
  std::optional<EigenDecomposition> k;
  if (detour) {
    const double rho = comp.cwiseAbs().maxCoeff();
    k = detail::detour_direction(spec.seed, comp.size(), split.norm_inf - rho);
    const double speed = detail::max_detour_speed(comp, *k, scale);
    if (speed > (1.0 - detail::kSpeedMargin) * split.norm_inf) {
      throw Error(ErrorCode::SpeedBudgetExceeded, "complement speed " + std::to_string(speed) +
                                                      " exceeds the budget " + std::to_string(split.norm_inf));
    }
  }

  return {SpaceTag::Unitary, [ws, wc, top, comp, k, scale](double t) -> Matrix {
            Matrix out = ws * detail::phase_diagonal(top, t).asDiagonal() * ws.adjoint();
            if (comp.size() > 0) {
              Matrix inner = detail::phase_diagonal(comp, t).asDiagonal();
              if (k) inner = inner * detail::expi_scaled(*k, detail::bump(scale, t));
              out += wc * inner * wc.adjoint();
            }
            return out;
          }};
}

struct UniquenessCertificate {
  bool unique = false;
  double theta = 0.0;                                  // when unique
  std::optional<std::pair<double, double>> violation;  // phase pair that fits no +-theta
};

namespace detail {

inline UniquenessCertificate phase_pair_test(const RealVector& phases, double tolerance, double limit) {
  UniquenessCertificate cert;
  Index far = 0;
  for (Index i = 1; i < phases.size(); ++i)
    if (std::abs(phases(i)) > std::abs(phases(far))) far = i;
  const double theta = std::abs(phases(far));
  if (theta >= limit - tolerance) {
    cert.violation = std::pair{phases(far), phases(far)};
    return cert;
  }
  for (Index i = 0; i < phases.size(); ++i) {
    if (std::abs(std::abs(phases(i)) - theta) > tolerance) {
      cert.violation = std::pair{phases(far), phases(i)};
      return cert;
    }
  }
  cert.unique = true;
  cert.theta = theta;
  return cert;
}

}  // namespace detail

/// True iff spec(u* v) lies in {e^{i theta}, e^{-i theta}} for some theta in [0, pi).
inline UniquenessCertificate is_unique_minimal_unitary(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  if (u.dim() != v.dim()) throw Error(ErrorCode::DimensionMismatch, "unitaries differ in size");
  return detail::phase_pair_test(eig_unitary(u.adjoint() * v).phases, 1e-9, kPi);
}

// ---------------------------------------------------------------------------
// Hermitian trace-norm family.

struct HermitianSplit {
  OrthogonalProjection s1, s2, s3;
  HermitianMatrix positive_part, negative_part;
};

inline HermitianSplit hermitian_split(const EigenDecomposition& e, double zero_tolerance) {
  const Matrix& w = e.vectors.mat();
  const Index n = e.values.size();
  Index pos = 0, neg = 0;
  for (Index i = 0; i < n; ++i) {
    if (e.values(i) > zero_tolerance) ++pos;
    if (e.values(i) < -zero_tolerance) ++neg;
  }
  const Index zero = n - pos - neg;
  auto part = [&](Index start, Index len) {
    const Matrix b = w.middleCols(start, len);
    return HermitianMatrix::trusted(b * e.values.segment(start, len).cast<Complex>().asDiagonal() * b.adjoint());
  };
  return {OrthogonalProjection::onto(w.leftCols(pos)), OrthogonalProjection::onto(w.middleCols(pos, zero)),
          OrthogonalProjection::onto(w.rightCols(neg)), part(0, pos), part(pos + zero, neg)};
}

namespace detail {

// Piecewise-linear chain 0 -> S_1 -> ... -> S_J = D through PSD increments,
// with breakpoints placed so the trace grows linearly in t.
struct MonotoneChain {
  std::vector<Matrix> nodes;
  std::vector<double> breaks;

  Matrix operator()(double t) const {
    if (nodes.size() < 2) return nodes.empty() ? Matrix() : nodes.front();
    size_t j = 0;
    while (j + 2 < breaks.size() && t > breaks[j + 1]) ++j;
    const double width = breaks[j + 1] - breaks[j];
    const double s = width > 0.0 ? std::clamp((t - breaks[j]) / width, 0.0, 1.0) : 1.0;
    return nodes[j] + s * (nodes[j + 1] - nodes[j]);
  }
};

// `d` holds positive values; increments B_j = D^{1/2} M^{-1/2} C_j M^{-1/2} D^{1/2}
// with C_j = V_j diag(u_j) V_j*, M = sum C_j.
inline MonotoneChain monotone_chain(Rng& rng, const RealVector& d, int segments) {
  const Index k = d.size();
  MonotoneChain chain;
  chain.nodes.push_back(Matrix::Zero(k, k));
  chain.breaks.push_back(0.0);
  if (k == 0) return chain;
  const Matrix target = d.cast<Complex>().asDiagonal();
  if (segments == 1) {
    chain.nodes.push_back(target);
    chain.breaks.push_back(1.0);
    return chain;
  }
  std::vector<Matrix> parts;
  Matrix total = Matrix::Zero(k, k);
  for (int j = 0; j < segments; ++j) {
    const Matrix v = random_unitary(rng, k).mat();
    RealVector u(k);
    for (Index i = 0; i < k; ++i) u(i) = rng.uniform();
    parts.push_back(v * u.cast<Complex>().asDiagonal() * v.adjoint());
    total += parts.back();
  }
  const Matrix norm = inv_sqrt_pd(PositiveDefiniteMatrix::trusted(total)).mat();
  const Eigen::VectorXcd root = d.cwiseSqrt().cast<Complex>();
  const double trace = d.sum();
  Matrix running = Matrix::Zero(k, k);
  double progress = 0.0;
  for (int j = 0; j < segments; ++j) {
    const Matrix b = root.asDiagonal() * (norm * parts[static_cast<size_t>(j)] * norm) * root.asDiagonal();
    const Matrix inc = HermitianMatrix::trusted(b).mat();
    running += inc;
    progress += inc.trace().real();
    chain.nodes.push_back(running);
    chain.breaks.push_back(std::min(1.0, progress / trace));
  }
  chain.nodes.back() = target;
  chain.breaks.back() = 1.0;
  return chain;
}

}  // namespace detail

/// A trace-norm minimal curve from 0 to d: W blockdiag(P(t), 0, N(t)) W* with
/// P nondecreasing and N nonincreasing, each a seeded chain of `n_segments`
/// segments. The trace-norm speed is constant, equal to ||d||_1.
inline CurveGenerator minimal_family_hermitian(const HermitianMatrix& d, std::uint64_t seed, int n_segments) {
  if (n_segments < 1) throw Error(ErrorCode::InvalidArgument, "n_segments must be at least 1");
  const EigenDecomposition e = eigh(d);
  const Index n = d.dim();
  const double zero_tol = 1e-13 * std::max(1.0, e.values.size() ? e.values.cwiseAbs().maxCoeff() : 0.0);
  Index pos = 0, neg = 0;
  for (Index i = 0; i < n; ++i) {
    if (e.values(i) > zero_tol) ++pos;
    if (e.values(i) < -zero_tol) ++neg;
  }
  Rng rng(seed);
  const detail::MonotoneChain up = detail::monotone_chain(rng, e.values.head(pos), n_segments);
  const detail::MonotoneChain down = detail::monotone_chain(rng, -e.values.tail(neg), n_segments);
  const Matrix w = e.vectors.mat();
  return {SpaceTag::Hermitian, [w, n, pos, neg, up, down](double t) -> Matrix {
            Matrix y = Matrix::Zero(n, n);
            if (pos > 0) y.topLeftCorner(pos, pos) = up(t);
            if (neg > 0) y.bottomRightCorner(neg, neg) = -down(t);
            return HermitianMatrix::trusted(w * y * w.adjoint()).mat();
          }};
}

struct MinimalityVerdict {
  bool supported = true;
  std::vector<std::string> violated;  // "length", "block_structure", "monotone_blocks"
  double length = 0.0;
  double endpoint_trace_norm = 0.0;
  double worst_off_block = 0.0;
  double worst_increment = 0.0;  // most negative S1 eigenvalue / most positive S3 eigenvalue, sign-normalized
};

inline constexpr double kDefaultEndpointBasisTolerance = 1e-7;

/// Structure test for trace-norm minimality of a sampled Hermitian curve
/// starting at 0: (i) length equals ||c(1)||_1, (ii) the curve is block
/// diagonal along the positive/kernel/negative eigenspaces of c(1) and
/// vanishes on the kernel block, (iii) it is nondecreasing on the positive
/// block and nonincreasing on the negative one.
inline MinimalityVerdict is_minimal_hermitian_trace(const SampledCurve& c,
                                                    double endpoint_basis_tolerance = kDefaultEndpointBasisTolerance) {
  require_curve_shape(c);
  if (c.space != SpaceTag::Hermitian) throw Error(ErrorCode::SpaceMismatch, "minimality test needs a Hermitian curve");
  const double scale = std::max(1.0, max_abs(c.back()));
  if (max_abs(c.front()) > 1e-9 * scale) throw Error(ErrorCode::BadStart, "curve does not start at 0");

  const EigenDecomposition e = eigh(HermitianMatrix::trusted(c.back()));
  const double tol_abs = endpoint_basis_tolerance * std::max(1.0, e.values.cwiseAbs().maxCoeff());
  const Index n = e.values.size();
  std::vector<int> group(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) group[static_cast<size_t>(i)] = e.values(i) > tol_abs ? 1 : (e.values(i) < -tol_abs ? 3 : 2);

  MinimalityVerdict v;
  v.length = length(c, SchattenIndex::of(1)).length;
  v.endpoint_trace_norm = e.values.cwiseAbs().sum();
  if (std::abs(v.length - v.endpoint_trace_norm) > 1e-4 * v.endpoint_trace_norm + 1e-12) v.violated.push_back("length");

  const Matrix& w = e.vectors.mat();
  std::vector<Index> s1, s3;
  for (Index i = 0; i < n; ++i) {
    if (group[static_cast<size_t>(i)] == 1) s1.push_back(i);
    if (group[static_cast<size_t>(i)] == 3) s3.push_back(i);
  }
  auto compress = [](const Matrix& y, const std::vector<Index>& idx) {
    const Index k = static_cast<Index>(idx.size());
    Matrix out(k, k);
    for (Index a = 0; a < k; ++a)
      for (Index b = 0; b < k; ++b) out(a, b) = y(idx[static_cast<size_t>(a)], idx[static_cast<size_t>(b)]);
    return out;
  };

  Matrix previous;
  for (size_t node = 0; node < c.points.size(); ++node) {
    const Matrix y = w.adjoint() * c.points[node] * w;
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        const int gi = group[static_cast<size_t>(i)];
        const int gj = group[static_cast<size_t>(j)];
        if (gi != gj || gi == 2) v.worst_off_block = std::max(v.worst_off_block, std::abs(y(i, j)));
      }
    }
    if (node > 0) {
      const Matrix delta = y - previous;
      if (!s1.empty()) {
        v.worst_increment = std::min(v.worst_increment, eigenvalues(HermitianMatrix::trusted(compress(delta, s1))).minCoeff());
      }
      if (!s3.empty()) {
        v.worst_increment = std::min(v.worst_increment, -eigenvalues(HermitianMatrix::trusted(compress(delta, s3))).maxCoeff());
      }
    }
    previous = y;
  }
  if (v.worst_off_block > tol_abs) v.violated.push_back("block_structure");
  if (v.worst_increment < -1e-7) v.violated.push_back("monotone_blocks");
  v.supported = v.violated.empty();
  return v;
}

// ---------------------------------------------------------------------------
// Exponential lifts.

inline SampledCurve lift_positive(const SampledCurve& c) {
  require_curve_shape(c);
  if (c.space != SpaceTag::Hermitian) throw Error(ErrorCode::SpaceMismatch, "lift_positive needs a Hermitian curve");
  return map_points(c, SpaceTag::Positive, [](const Matrix& m) { return exp_h(HermitianMatrix::trusted(m)).mat(); });
}

inline SampledCurve lift_unitary(const SampledCurve& c) {
  require_curve_shape(c);
  if (c.space != SpaceTag::Hermitian) throw Error(ErrorCode::SpaceMismatch, "lift_unitary needs a Hermitian curve");
  const double scale = std::max(1.0, max_abs(c.back()));
  if (max_abs(c.front()) > 1e-9 * scale) throw Error(ErrorCode::BadStart, "curve does not start at 0");
  const double end_norm = spectral_norm(c.back());
  if (end_norm > kPi + 1e-9) {
    throw Error(ErrorCode::NormBoundExceeded, "||c(1)||_inf = " + std::to_string(end_norm) + " exceeds pi");
  }
  return map_points(c, SpaceTag::Unitary, [](const Matrix& m) { return expi(HermitianMatrix::trusted(m)).mat(); });
}

// ---------------------------------------------------------------------------
// Grassmann family.

/// A minimal curve from p to q: the geodesic on the top eigenspace S_X of the
/// direct rotation X, and a seeded detour e^{itX_C} e^{i phi(t) K} acting by
/// conjugation on the complement.
inline CurveGenerator minimal_family_grassmann(const OrthogonalProjection& p, const OrthogonalProjection& q,
                                               const PerturbationSpec& spec) {
  const GrassmannLogResult log = grassmann_log(p, q);
  const Matrix start = p.mat();
  const EigenDecomposition e = eigh(log.x);
  if (e.values.cwiseAbs().maxCoeff() <= 1e-12) {
    return {SpaceTag::Grassmann, [start](double) -> Matrix { return start; }};
  }
  if (!(spec.detour_scale >= 0.0) || !std::isfinite(spec.detour_scale)) {
    throw Error(ErrorCode::InvalidArgument, "detour_scale must be a finite non-negative number");
  }
  const BlockSplit split = detail::split_from_eigen(e.vectors.mat(), e.values);
  const Matrix w = split.basis;
  const Matrix pw = w.adjoint() * start * w;
  if (spec.mode == FamilyMode::Geodesic) {
    const RealVector values = split.values;
    return {SpaceTag::Grassmann, [w, pw, values](double t) -> Matrix {
              const Eigen::VectorXcd d = detail::phase_diagonal(values, t);
              return HermitianMatrix::trusted(w * (d.asDiagonal() * pw * d.conjugate().asDiagonal()) * w.adjoint()).mat();
            }};
  }
  if (split.top_rank == split.basis.cols()) {
    throw Error(ErrorCode::UniqueGeodesicOnly, "spec(|X|) is a singleton; the geodesic is the only minimal curve");
  }
  const Index k = split.top_rank;
  const RealVector top = split.top_values();
  const RealVector comp = split.complement_values();
  const double rho = comp.cwiseAbs().maxCoeff();
  const EigenDecomposition kk = detail::detour_direction(spec.seed, comp.size(), split.norm_inf - rho);
  const double scale = spec.detour_scale;
  const double speed = detail::max_detour_speed(comp, kk, scale);
  if (speed > (1.0 - detail::kSpeedMargin) * split.norm_inf) {
    throw Error(ErrorCode::SpeedBudgetExceeded, "complement speed " + std::to_string(speed) + " exceeds the budget " +
                                                    std::to_string(split.norm_inf));
  }
  const Matrix p_top = pw.topLeftCorner(k, k);
  const Matrix p_comp = pw.bottomRightCorner(comp.size(), comp.size());
  return {SpaceTag::Grassmann, [w, k, top, comp, p_top, p_comp, kk, scale](double t) -> Matrix {
            const Index n = w.cols();
            Matrix y = Matrix::Zero(n, n);
            const Eigen::VectorXcd dt = detail::phase_diagonal(top, t);
            y.topLeftCorner(k, k) = dt.asDiagonal() * p_top * dt.conjugate().asDiagonal();
            const Matrix v = detail::phase_diagonal(comp, t).asDiagonal() * detail::expi_scaled(kk, detail::bump(scale, t));
            y.bottomRightCorner(n - k, n - k) = v * p_comp * v.adjoint();
            return HermitianMatrix::trusted(w * y * w.adjoint()).mat();
          }};
}

/// True iff spec(S_q S_p) lies in {e^{i phi}, e^{-i phi}}; the certificate
/// reports theta = phi / 2, the common principal angle, which is < pi/2.
inline UniquenessCertificate is_unique_minimal_grassmann(const OrthogonalProjection& p, const OrthogonalProjection& q) {
  require_grassmann_pair(p, q);
  UniquenessCertificate cert = detail::phase_pair_test(eig_unitary(symmetry(q) * symmetry(p)).phases, 1e-9, kPi);
  cert.theta *= 0.5;
  return cert;
}

}  // namespace mingeo
