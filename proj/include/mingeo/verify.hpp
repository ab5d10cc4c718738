#pragma once

// Numerical checks of the inequalities, characterizations and convexity
// statements, each returning a CheckResult.

#include <cstdlib>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mingeo/io.hpp"
#include "mingeo/minimal.hpp"

namespace mingeo {

/// MINGEO_TOLERANCE_SCALE (default 1) multiplies every pass tolerance.
inline double tolerance_scale() {
  const char* env = std::getenv("MINGEO_TOLERANCE_SCALE");
  if (env == nullptr || *env == '\0') return 1.0;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument, "MINGEO_TOLERANCE_SCALE must be a positive number");
  }
  return v;
}

struct CheckResult {
  std::string name;
  bool passed = true;
  double worst_violation = 0.0;  // passed iff worst_violation <= tolerance
  double tolerance = 0.0;
  std::optional<io::Json> witness;
  long seeds_run = 0;
};

/// Collects measurements of the form `measured <= allowed`. Each one is
/// folded onto the check's main tolerance as measured - allowed + tolerance.
class CheckAccumulator {
 public:
  CheckAccumulator(std::string name, double tolerance) : scale_(tolerance_scale()) {
    result_.name = std::move(name);
    result_.tolerance = tolerance * scale_;
  }

  double scale() const { return scale_; }
  double tolerance() const { return result_.tolerance; }

  void record(double measured, double allowed, const std::function<io::Json()>& witness = {}) {
    double value = measured - allowed + result_.tolerance;
    if (!std::isfinite(value)) value = std::numeric_limits<double>::max();
    if (!any_ || value > result_.worst_violation) result_.worst_violation = value;
    any_ = true;
    if (value > result_.tolerance && value > worst_failure_) {
      worst_failure_ = value;
      if (witness) result_.witness = witness();
    }
  }

  void count(long instances = 1) { result_.seeds_run += instances; }

  CheckResult finish() {
    result_.passed = result_.worst_violation <= result_.tolerance;
    if (!result_.passed && !result_.witness) result_.witness = io::Json::object();
    if (result_.passed) result_.witness.reset();
    return result_;
  }

 private:
  CheckResult result_;
  double scale_;
  bool any_ = false;
  double worst_failure_ = -std::numeric_limits<double>::infinity();
};

inline io::Json to_json(const CheckResult& r) {
  io::Json j;
  j["name"] = r.name;
  j["passed"] = r.passed;
  j["worst_violation"] = r.worst_violation;
  j["tolerance"] = r.tolerance;
  if (r.witness) j["witness"] = *r.witness;
  j["seeds_run"] = r.seeds_run;
  return j;
}

namespace detail {

inline double endpoint_scale(const SampledCurve& c) { return std::max(1.0, max_abs(c.back())); }

inline void require_zero_start(const SampledCurve& c) {
  if (max_abs(c.front()) > 1e-9 * endpoint_scale(c)) throw Error(ErrorCode::BadStart, "curve does not start at 0");
}

inline void require_space(const SampledCurve& c, SpaceTag s, const char* what) {
  require_curve_shape(c);
  if (c.space != s) throw Error(ErrorCode::SpaceMismatch, std::string(what) + " needs a " + std::string(to_string(s)) + " curve");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Hermitian curves.

/// length(pinch o c) <= length(c), with equality against ||c(1)||_1 when c
/// passes the minimality structure test.
inline CheckResult check_pinching_minimality(const SampledCurve& c, const ProjectorSystem& system) {
  detail::require_space(c, SpaceTag::Hermitian, "pinching check");
  detail::require_zero_start(c);
  const Matrix& d = c.back();
  if (system.dim() != d.rows()) throw Error(ErrorCode::DimensionMismatch, "system and curve differ in size");
  for (const auto& p : system.projectors()) {
    if (max_abs(p.mat() * d - d * p.mat()) > 1e-8 * detail::endpoint_scale(c)) {
      throw Error(ErrorCode::NoncommutingSystem, "a projector does not commute with c(1)");
    }
  }
  const SampledCurve pinched = map_points(c, SpaceTag::Hermitian, [&](const Matrix& m) { return pinch(system, m); });
  const SchattenIndex one = SchattenIndex::of(1);
  const double l = length(c, one).length;
  const double lp = length(pinched, one).length;
  const MinimalityVerdict verdict = is_minimal_hermitian_trace(c);

  CheckAccumulator acc("pinching_minimality", 1e-9);
  auto witness = [&] {
    io::Json w;
    w["length"] = l;
    w["pinched_length"] = lp;
    w["endpoint_trace_norm"] = verdict.endpoint_trace_norm;
    w["endpoint"] = io::entries_to_json(d);
    return w;
  };
  acc.record(lp - l, acc.tolerance(), witness);
  if (verdict.supported) {
    acc.record(std::abs(lp - verdict.endpoint_trace_norm), 1e-4 * acc.scale() * verdict.endpoint_trace_norm, witness);
  }
  acc.count();
  return acc.finish();
}

/// Each diagonal entry x_i(t) moves monotonically toward d_i = c(1)_ii and
/// stays 0 when d_i = 0.
inline CheckResult check_diagonal_monotonicity(const SampledCurve& c) {
  detail::require_space(c, SpaceTag::Hermitian, "diagonal monotonicity");
  const Matrix& d = c.back();
  const double scale = detail::endpoint_scale(c);
  const Matrix off = d - Matrix(d.diagonal().asDiagonal());
  if (max_abs(off) > 1e-8 * scale) throw Error(ErrorCode::PreconditionViolated, "endpoint is not diagonal");

  CheckAccumulator acc("diagonal_monotonicity", 1e-7);
  const Index n = d.rows();
  for (Index i = 0; i < n; ++i) {
    const double di = d(i, i).real();
    const int sign = std::abs(di) <= 1e-12 * scale ? 0 : (di > 0 ? 1 : -1);
    for (size_t k = 0; k + 1 < c.points.size(); ++k) {
      const double a = c.points[k](i, i).real();
      const double b = c.points[k + 1](i, i).real();
      const double bad = sign == 0 ? std::abs(b) : -sign * (b - a);
      acc.record(bad, acc.tolerance(), [&] {
        io::Json w;
        w["entry"] = i;
        w["interval"] = k;
        w["values"] = {a, b};
        w["endpoint_value"] = di;
        return w;
      });
    }
  }
  acc.count();
  return acc.finish();
}

// ---------------------------------------------------------------------------
// Eigenvalue curves.

namespace detail {

inline constexpr double kPhaseStepCap = kPi / 4.0;
inline constexpr double kCollision = 1e-10;

inline double wrap(double x) { return std::remainder(x, 2.0 * kPi); }

// Continuous phase curves of a sampled unitary curve by greedy nearest
// matching against the linear extrapolation of each curve; rows are grid nodes.
inline std::vector<RealVector> track_phases(const SampledCurve& c) {
  std::vector<RealVector> tracks;
  tracks.push_back(eig_unitary(UnitaryMatrix::trusted(c.front())).phases);
  const Index n = tracks.front().size();
  for (size_t k = 1; k < c.points.size(); ++k) {
    const RealVector next = eig_unitary(UnitaryMatrix::trusted(c.points[k])).phases;
    const RealVector& prev = tracks.back();
    const RealVector guess = tracks.size() >= 2 ? RealVector(2.0 * prev - tracks[tracks.size() - 2]) : prev;
    std::vector<bool> used_prev(static_cast<size_t>(n), false), used_next(static_cast<size_t>(n), false);
    RealVector out(n);
    for (Index round = 0; round < n; ++round) {
      double best = std::numeric_limits<double>::infinity();
      Index bi = -1, bj = -1;
      for (Index i = 0; i < n; ++i) {
        if (used_prev[static_cast<size_t>(i)]) continue;
        for (Index j = 0; j < n; ++j) {
          if (used_next[static_cast<size_t>(j)]) continue;
          const double gap = std::abs(wrap(next(j) - guess(i)));
          if (gap < best) {
            best = gap;
            bi = i;
            bj = j;
          }
        }
      }
      used_prev[static_cast<size_t>(bi)] = used_next[static_cast<size_t>(bj)] = true;
      out(bi) = prev(bi) + wrap(next(bj) - prev(bi));
      if (std::abs(out(bi) - prev(bi)) > kPhaseStepCap) {
        throw Error(ErrorCode::TrackingAmbiguous, "phase step exceeds pi/4 at node " + std::to_string(k));
      }
    }
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        const bool were_apart = std::abs(wrap(prev(i) - prev(j))) > kCollision;
        const bool now_close = std::abs(wrap(out(i) - out(j))) <= kCollision;
        if (were_apart && now_close) {
          throw Error(ErrorCode::TrackingAmbiguous,
                      "phase curves " + std::to_string(i) + " and " + std::to_string(j) + " meet at node " + std::to_string(k));
        }
      }
    }
    tracks.push_back(out);
  }
  return tracks;
}

inline std::vector<RealVector> sorted_eigenvalue_tracks(const SampledCurve& c) {
  std::vector<RealVector> tracks;
  for (const Matrix& m : c.points) tracks.push_back(eigenvalues(HermitianMatrix::trusted(m)));
  return tracks;
}

}  // namespace detail

/// Each eigenvalue (or phase) curve is monotone in the direction of its net
/// change, with slack 1e-7 per step.
inline CheckResult check_eigencurve_monotonicity(const SampledCurve& c, SpaceTag space) {
  require_curve_shape(c);
  if (c.space != space) throw Error(ErrorCode::SpaceMismatch, "curve space differs from the requested one");
  if (space == SpaceTag::Grassmann) throw Error(ErrorCode::InvalidArgument, "eigencurves are not defined for Grassmann curves");
  const std::vector<RealVector> tracks =
      space == SpaceTag::Unitary ? detail::track_phases(c) : detail::sorted_eigenvalue_tracks(c);

  CheckAccumulator acc("eigencurve_monotonicity", 1e-7);
  const Index n = tracks.front().size();
  for (Index j = 0; j < n; ++j) {
    const double net = tracks.back()(j) - tracks.front()(j);
    const int sign = std::abs(net) <= 1e-12 ? 0 : (net > 0 ? 1 : -1);
    for (size_t k = 0; k + 1 < tracks.size(); ++k) {
      const double step = tracks[k + 1](j) - tracks[k](j);
      const double bad = sign == 0 ? std::abs(tracks[k + 1](j) - tracks.front()(j)) : -sign * step;
      acc.record(bad, acc.tolerance(), [&] {
        io::Json w;
        w["curve"] = j;
        w["interval"] = k;
        w["values"] = {tracks[k](j), tracks[k + 1](j)};
        return w;
      });
    }
  }
  acc.count();
  return acc.finish();
}

// ---------------------------------------------------------------------------
// Inequalities on Gl(n)+.

/// ||e^{-h/2} De^h(k) e^{-h/2}||_p >= ||k||_p.
inline CheckResult check_iemi(const HermitianMatrix& h, const HermitianMatrix& k, const SchattenIndex& p) {
  const EigenDecomposition e = eigh(h);
  const Matrix half = matrix_function(e, [](double x) { return std::exp(-0.5 * x); }).mat();
  const double lhs = schatten_norm(half * frechet_exp(e, k).mat() * half, p);
  const double rhs = schatten_norm(k.mat(), p);
  CheckAccumulator acc("iemi", 1e-10);
  acc.record(rhs - lhs, acc.tolerance(), [&] {
    io::Json w;
    w["h"] = io::entries_to_json(h.mat());
    w["k"] = io::entries_to_json(k.mat());
    w["p"] = p.str();
    w["lhs"] = lhs;
    w["rhs"] = rhs;
    return w;
  });
  acc.count();
  return acc.finish();
}

/// d(c^t, d^t) <= t d(c, d).
inline CheckResult check_araki_contraction(const PositiveDefiniteMatrix& c, const PositiveDefiniteMatrix& d, double t,
                                           const SchattenIndex& p) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::InvalidArgument, "t must lie in [0, 1]");
  const double lhs = dist_positive(pow_pd(c, t), pow_pd(d, t), p);
  const double rhs = t * dist_positive(c, d, p);
  CheckAccumulator acc("araki_contraction", 1e-9);
  acc.record(lhs - rhs, acc.tolerance(), [&] {
    io::Json w;
    w["c"] = io::entries_to_json(c.mat());
    w["d"] = io::entries_to_json(d.mat());
    w["t"] = t;
    w["p"] = p.str();
    w["lhs"] = lhs;
    w["rhs"] = rhs;
    return w;
  });
  acc.count();
  return acc.finish();
}

/// Midpoint convexity of s -> d(I, gamma(s)) along the geodesic from a to b.
inline CheckResult check_convexity_distance(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                                            const SchattenIndex& p, int grid_size) {
  if (grid_size < 3) throw Error(ErrorCode::InvalidArgument, "grid_size must be at least 3");
  const CurveGenerator g = geodesic_positive(a, b);
  const PositiveDefiniteMatrix id = PositiveDefiniteMatrix::identity(a.dim());
  auto f = [&](double s) { return dist_positive(id, PositiveDefiniteMatrix::trusted(g(s)), p); };
  std::vector<double> values;
  for (int i = 0; i < grid_size; ++i) values.push_back(f(static_cast<double>(i) / (grid_size - 1)));

  CheckAccumulator acc("convexity_distance", 1e-9);
  for (int i = 0; i < grid_size; ++i) {
    for (int j = i + 2; j < grid_size; ++j) {
      const double mid = (i + j) % 2 == 0 ? values[static_cast<size_t>((i + j) / 2)]
                                           : f(0.5 * (i + j) / (grid_size - 1));
      const double chord = 0.5 * (values[static_cast<size_t>(i)] + values[static_cast<size_t>(j)]);
      acc.record(mid - chord, acc.tolerance(), [&] {
        io::Json w;
        w["a"] = io::entries_to_json(a.mat());
        w["b"] = io::entries_to_json(b.mat());
        w["p"] = p.str();
        w["s"] = {static_cast<double>(i) / (grid_size - 1), static_cast<double>(j) / (grid_size - 1)};
        return w;
      });
    }
  }
  acc.count();
  return acc.finish();
}

// ---------------------------------------------------------------------------
// Intermediate points.

/// max(|d(u,w) - t d(u,v)|, |d(w,v) - (1-t) d(u,v)|).
inline double intermediate_membership(const Matrix& w, const Matrix& u, const Matrix& v, double t, SpaceTag space,
                                      const SchattenIndex& p) {
  if (!(t > 0.0 && t < 1.0)) throw Error(ErrorCode::InvalidArgument, "t must lie in (0, 1)");
  const double total = dist(space, u, v, p);
  return std::max(std::abs(dist(space, u, w, p) - t * total), std::abs(dist(space, w, v, p) - (1.0 - t) * total));
}

struct IntermediateSetReport {
  double t = 0.0;
  long members_tested = 0;
  std::vector<double> membership_residuals;  // relative to d(u, v)
  bool convexity_passed = true;
};

inline io::Json to_json(const IntermediateSetReport& r) {
  io::Json j;
  j["t"] = r.t;
  j["members_tested"] = r.members_tested;
  j["membership_residuals"] = r.membership_residuals;
  j["convexity_passed"] = r.convexity_passed;
  return j;
}

inline constexpr double kMembershipTolerance = 1e-6;

/// The two intermediate points W+- = e^{+-it pi} I of (I, -I) and the midpoint
/// of the geodesic joining them, which is not an intermediate point.
struct AntipodalCounterexample {
  Matrix w_plus, w_minus, midpoint;
  double residual;  // membership residual of the midpoint
};

inline AntipodalCounterexample antipodal_counterexample(Index n, double t) {
  if (!(t > 0.0 && t < 1.0)) throw Error(ErrorCode::InvalidArgument, "t must lie in (0, 1)");
  const Matrix id = identity(n);
  AntipodalCounterexample ce;
  ce.w_plus = std::polar(1.0, t * kPi) * id;
  ce.w_minus = std::polar(1.0, -t * kPi) * id;
  ce.midpoint = geodesic_unitary(UnitaryMatrix::trusted(ce.w_plus), UnitaryMatrix::trusted(ce.w_minus))(0.5);
  ce.residual = intermediate_membership(ce.midpoint, id, -id, t, SpaceTag::Unitary, SchattenIndex::inf());
  return ce;
}

inline const char* kAntipodalNote =
    "convexity of intermediate points fails for u = I, v = -I: W+ = e^{it pi} I and W- = e^{-it pi} I are "
    "intermediate points but the geodesic joining them passes through I, which is not";

namespace detail {

// x Hermitian with ||x||_inf = m. Returns Z with ||Z||_inf = t m and
// d_inf(e^Z, e^x) = (1 - t) m: t x on the top eigenspace, a seeded
// non-commuting perturbation of t x on its complement.
inline HermitianMatrix spectral_positive_member(const HermitianMatrix& x, double t, Rng& rng) {
  if (max_abs(x.mat()) == 0.0) return x;
  const BlockSplit split = top_block_split(x);
  const Matrix ws = split.top_basis();
  const Matrix wc = split.complement_basis();
  Matrix z = ws * (t * split.top_values()).cast<Complex>().asDiagonal() * ws.adjoint();
  const Index k = wc.cols();
  if (k == 0) return HermitianMatrix::trusted(z);
  const RealVector c = split.complement_values();
  const double m = split.norm_inf;
  const double rho = c.cwiseAbs().maxCoeff();
  const Matrix r = random_hermitian_with_norm(rng, k, 1.0).mat();
  const Matrix cc = c.cast<Complex>().asDiagonal();
  const PositiveDefiniteMatrix end = exp_h(HermitianMatrix::trusted(cc));
  double eps = 0.5 * std::min(t, 1.0 - t) * (m - rho);
  Matrix block = t * cc;
  for (int attempt = 0; attempt < 60; ++attempt, eps *= 0.5) {
    const HermitianMatrix trial = HermitianMatrix::trusted(t * cc + eps * r);
    const double to_start = eigenvalues(trial).cwiseAbs().maxCoeff();
    const double to_end = dist_positive(exp_h(trial), end, SchattenIndex::inf());
    if (to_start <= t * m * (1.0 - 1e-9) && to_end <= (1.0 - t) * m * (1.0 - 1e-9)) {
      block = trial.mat();
      break;
    }
  }
  z += wc * block * wc.adjoint();
  return HermitianMatrix::trusted(z);
}

// Y = V diag(w_i x_i) V* with w_i in [0, 1] and sum |x_i| w_i = t ||x||_1.
// Y commutes with x, so d_1(I, e^Y) = t ||x||_1 and d_1(e^Y, e^x) = (1 - t) ||x||_1.
inline HermitianMatrix trace_positive_member(const HermitianMatrix& x, double t, Rng& rng) {
  const EigenDecomposition e = eigh(x);
  const RealVector mass = e.values.cwiseAbs();
  const double total = mass.sum();
  if (total == 0.0) return x;
  RealVector r(mass.size());
  for (Index i = 0; i < r.size(); ++i) r(i) = rng.normal();
  r.array() -= mass.dot(r) / total;
  const double spread = r.cwiseAbs().maxCoeff();
  const double eps = spread > 0.0 ? rng.uniform(0.2, 0.9) * std::min(t, 1.0 - t) / spread : 0.0;
  const RealVector y = (RealVector::Constant(r.size(), t) + eps * r).cwiseProduct(e.values);
  return HermitianMatrix::trusted(e.vectors.mat() * y.cast<Complex>().asDiagonal() * e.vectors.mat().adjoint());
}

}  // namespace detail

/// A seeded point of M_t(u, v) produced by the minimal-curve constructors.
inline Matrix intermediate_member(const Matrix& u, const Matrix& v, double t, SpaceTag space, const SchattenIndex& p,
                                  std::uint64_t seed) {
  Rng rng(seed);
  switch (space) {
    case SpaceTag::Hermitian: {
      if (!p.is(1.0)) throw Error(ErrorCode::InvalidArgument, "Hermitian intermediate points need p = 1");
      const HermitianMatrix d = HermitianMatrix::trusted(v - u);
      return u + minimal_family_hermitian(d, seed, 3)(t);
    }
    case SpaceTag::Unitary: {
      if (!p.is_inf()) throw Error(ErrorCode::InvalidArgument, "unitary intermediate points need p = inf");
      const UnitaryMatrix uu = UnitaryMatrix::trusted(u);
      const UnitaryMatrix target = uu.adjoint() * UnitaryMatrix::trusted(v);
      if (eig_unitary(target).phases.cwiseAbs().maxCoeff() <= 1e-12) return u;
      PerturbationSpec spec{seed, FamilyMode::Detour, rng.uniform(0.2, 0.9), std::nullopt};
      return u * minimal_family_unitary(target, spec)(t);
    }
    case SpaceTag::Grassmann: {
      if (!p.is_inf()) throw Error(ErrorCode::InvalidArgument, "Grassmann intermediate points need p = inf");
      const OrthogonalProjection pu = OrthogonalProjection::trusted(u);
      const OrthogonalProjection pv = OrthogonalProjection::trusted(v);
      PerturbationSpec spec{seed, FamilyMode::Detour, rng.uniform(0.2, 0.9), std::nullopt};
      try {
        return minimal_family_grassmann(pu, pv, spec)(t);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::UniqueGeodesicOnly) throw;
        spec.mode = FamilyMode::Geodesic;
        return minimal_family_grassmann(pu, pv, spec)(t);
      }
    }
    case SpaceTag::Positive: {
      const PositiveDefiniteMatrix pu = PositiveDefiniteMatrix::trusted(u);
      const EigenDecomposition eu = eigh(pu.hermitian());
      const Matrix root = matrix_function(eu, [](double x) { return std::sqrt(x); }).mat();
      const Matrix inv_root = matrix_function(eu, [](double x) { return 1.0 / std::sqrt(x); }).mat();
      const HermitianMatrix x = log_pd(PositiveDefiniteMatrix::trusted(inv_root * v * inv_root));
      HermitianMatrix y = HermitianMatrix::zero(x.dim());
      if (p.is(1.0)) {
        y = detail::trace_positive_member(x, t, rng);
      } else if (p.is_inf()) {
        y = detail::spectral_positive_member(x, t, rng);
      } else {
        throw Error(ErrorCode::InvalidArgument, "positive intermediate points need p = 1 or p = inf");
      }
      return HermitianMatrix::trusted(root * exp_h(y).mat() * root).mat();
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown space");
}

/// Generates n_pairs pairs of seeded points of M_t(u, v) and tests whether the
/// geodesic joining each pair stays in M_t at s = 1/8, ..., 7/8.
inline IntermediateSetReport check_midpoint_convexity(const Matrix& u, const Matrix& v, double t, SpaceTag space,
                                                      const SchattenIndex& p, int n_pairs, std::uint64_t seed) {
  if (!(t > 0.0 && t < 1.0)) throw Error(ErrorCode::InvalidArgument, "t must lie in (0, 1)");
  if (n_pairs < 1) throw Error(ErrorCode::InvalidArgument, "n_pairs must be positive");
  require_point(space, u);
  require_point(space, v);
  require_same_dim(u, v);
  switch (space) {
    case SpaceTag::Unitary: {
      const double d = dist(space, u, v, SchattenIndex::inf());
      if (!(d < kPi / 2.0)) {
        std::string msg = "d_inf(u, v) = " + std::to_string(d) + " is not < pi/2";
        if (on_branch_cut(UnitaryMatrix::trusted(u), UnitaryMatrix::trusted(v))) msg += "; " + std::string(kAntipodalNote);
        throw Error(ErrorCode::PreconditionViolated, msg);
      }
      break;
    }
    case SpaceTag::Grassmann: {
      const double gap = spectral_norm(u - v);
      if (!(gap < 1.0 / std::sqrt(2.0))) {
        throw Error(ErrorCode::PreconditionViolated, "||u - v||_inf = " + std::to_string(gap) + " is not < 1/sqrt(2)");
      }
      break;
    }
    case SpaceTag::Positive:
    case SpaceTag::Hermitian: break;
  }

  IntermediateSetReport report;
  report.t = t;
  const double total = dist(space, u, v, p);
  const double allowed = kMembershipTolerance * tolerance_scale();
  auto relative = [&](const Matrix& w) {
    const double r = intermediate_membership(w, u, v, t, space, p);
    return total > 0.0 ? r / total : r;
  };
  for (int pair = 0; pair < n_pairs; ++pair) {
    const Matrix w0 = intermediate_member(u, v, t, space, p, derive_seed(seed, "member", 2 * static_cast<std::uint64_t>(pair)));
    const Matrix w1 = intermediate_member(u, v, t, space, p, derive_seed(seed, "member", 2 * static_cast<std::uint64_t>(pair) + 1));
    const CurveGenerator beta = geodesic(space, w0, w1);
    for (const Matrix* w : {&w0, &w1}) report.membership_residuals.push_back(relative(*w));
    for (int s = 1; s <= 7; ++s) report.membership_residuals.push_back(relative(beta(s / 8.0)));
    report.members_tested += 9;
  }
  for (double r : report.membership_residuals) {
    if (!(r <= allowed)) report.convexity_passed = false;
  }
  return report;
}

}  // namespace mingeo
