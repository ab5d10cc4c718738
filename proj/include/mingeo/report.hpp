#pragma once

// The full verification battery. Every check draws its instances from its own
// stream, derive_seed(master, check name, index), so the output depends only
// on (seed, max_dim).

#include <string>
#include <vector>

#include "mingeo/fixtures.hpp"
#include "mingeo/verify.hpp"

namespace mingeo {

namespace detail {

struct ReportContext {
  std::uint64_t seed;
  Index max_dim;

  Rng rng(std::string_view check, std::uint64_t index) const { return Rng(derive_seed(seed, check, index)); }
};

inline io::Json where(Index n, std::uint64_t index) {
  io::Json w;
  w["n"] = n;
  w["index"] = index;
  return w;
}

// Absorbs a single-instance CheckResult into an accumulator.
inline void absorb(CheckAccumulator& acc, const CheckResult& r, Index n, std::uint64_t index) {
  acc.record(r.worst_violation, r.tolerance, [&] {
    io::Json w = where(n, index);
    if (r.witness) w["detail"] = *r.witness;
    return w;
  });
}

// Detection of a violator: records 0 when detected, 1 otherwise.
inline void expect_detected(CheckAccumulator& acc, bool detected, const std::string& what) {
  acc.record(detected ? 0.0 : 1.0, 0.0, [&] {
    io::Json w;
    w["undetected"] = what;
    return w;
  });
  acc.count();
}

inline bool raises(ErrorCode code, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

// Phase multiset oracle: tries every |phase| as the candidate theta.
inline bool oracle_unique(const RealVector& phases, double limit) {
  for (Index c = 0; c < phases.size(); ++c) {
    const double theta = std::abs(phases(c));
    if (theta >= limit - 1e-9) continue;
    bool fits = true;
    for (Index i = 0; i < phases.size(); ++i) fits = fits && std::abs(std::abs(phases(i)) - theta) <= 1e-9;
    if (fits) return true;
  }
  return false;
}

inline RealVector random_phases(Rng& rng, Index n, bool unique) {
  RealVector ph(n);
  const double theta = rng.uniform(0.05, kPi - 0.05);
  for (Index i = 0; i < n; ++i) ph(i) = rng.uniform() < 0.5 ? theta : -theta;
  if (!unique) {
    const Index i = rng.uniform_int(0, static_cast<int>(n) - 1);
    double other = rng.uniform(0.0, kPi - 0.05);
    if (std::abs(other - theta) < 1e-3) other = theta > 1.0 ? theta - 0.5 : theta + 0.5;
    ph(i) = other;
  }
  return ph;
}

inline void unitary_family_checks(const ReportContext& ctx, std::vector<CheckResult>& out) {
  CheckAccumulator len("unitary_family_length", 1e-3);
  CheckAccumulator speed("unitary_family_constant_speed", 1e-3);
  CheckAccumulator lock("unitary_family_top_block_lock", 1e-8);
  CheckAccumulator linear("unitary_family_linearity", 1e-6);
  const SchattenIndex inf = SchattenIndex::inf();
  for (Index n = 2; n <= ctx.max_dim; ++n) {
    for (std::uint64_t i = 0; i < 4; ++i) {
      const std::uint64_t index = static_cast<std::uint64_t>(n) * 1000 + i;
      Rng rng = ctx.rng("unitary_family", index);
      const HermitianMatrix x = random_hermitian_with_norm(rng, n, rng.uniform(0.3, kPi - 0.1));
      const UnitaryMatrix target = expi(x);
      const PerturbationSpec spec{rng.bits(), FamilyMode::Detour, rng.uniform(0.2, 0.9), std::nullopt};
      const CurveGenerator g = minimal_family_unitary(target, spec);
      const SampledCurve c = sample(g, 2048);
      const double d = dist_unitary(UnitaryMatrix::identity(n), target, inf);
      const auto at = [&] { return where(n, index); };
      len.record(std::abs(length(c, inf).length - d) / d, len.tolerance(), at);
      speed.record(length(reparametrize_constant_speed(c, inf), inf).max_speed_deviation / d, speed.tolerance(), at);

      const BlockSplit split = top_block_split(log_unitary(target));
      const Matrix ws = split.top_basis();
      const Matrix proj = split.top_projector.mat();
      double lock_err = 0.0;
      for (size_t k = 0; k < c.points.size(); k += 64) {
        const double t = c.grid[k];
        const Matrix expected = ws * phase_diagonal(split.top_values(), t).asDiagonal() * ws.adjoint();
        lock_err = std::max(lock_err, max_abs(proj * c.points[k] * proj - expected));
        lock_err = std::max(lock_err, max_abs(proj * c.points[k] - c.points[k] * proj));
      }
      lock.record(lock_err, lock.tolerance(), at);

      double lin_err = 0.0;
      for (int r = 0; r <= 16; ++r) {
        const double s = r / 16.0;
        lin_err = std::max(lin_err, std::abs(dist_unitary(UnitaryMatrix::identity(n), UnitaryMatrix::trusted(g(s)), inf) - s * d));
      }
      linear.record(lin_err, linear.tolerance(), at);
      for (auto* a : {&len, &speed, &lock, &linear}) a->count();
    }
  }
  for (auto* a : {&len, &speed, &lock, &linear}) out.push_back(a->finish());
}

inline void uniqueness_checks(const ReportContext& ctx, std::vector<CheckResult>& out) {
  CheckAccumulator uo("uniqueness_unitary_oracle", 0.0);
  CheckAccumulator go("uniqueness_grassmann_oracle", 0.0);
  CheckAccumulator inv("uniqueness_conjugation_invariance", 0.0);
  for (Index n = 2; n <= ctx.max_dim; ++n) {
    for (std::uint64_t i = 0; i < 40; ++i) {
      const std::uint64_t index = static_cast<std::uint64_t>(n) * 1000 + i;
      Rng rng = ctx.rng("uniqueness", index);
      const bool forced_unique = i % 2 == 0;
      const auto [u, v] = fixtures::unitary_pair_with_phases(rng, random_phases(rng, n, forced_unique));
      const bool got = is_unique_minimal_unitary(u, v).unique;
      const bool want = oracle_unique(eig_unitary(u.adjoint() * v).phases, kPi);
      uo.record(got == want && got == forced_unique ? 0.0 : 1.0, 0.0, [&] { return where(n, index); });
      uo.count();

      const UnitaryMatrix w = random_unitary(rng, n);
      const bool conj = is_unique_minimal_unitary(w * u * w.adjoint(), w * v * w.adjoint()).unique;
      inv.record(conj == got ? 0.0 : 1.0, 0.0, [&] { return where(n, index); });
      inv.count();

      const Index rank = std::max<Index>(1, n / 2);
      const Index slots = std::min(rank, n - rank);
      std::vector<double> angles(static_cast<size_t>(slots), rng.uniform(0.05, kPi / 2 - 0.1));
      if (!forced_unique) angles.front() = angles.front() > 0.5 ? angles.front() - 0.3 : angles.front() + 0.3;
      const auto [p, q] = fixtures::grassmann_pair_with_angles(rng, n, rank, angles);
      const bool gg = is_unique_minimal_grassmann(p, q).unique;
      const bool gw = oracle_unique(eig_unitary(symmetry(q) * symmetry(p)).phases, kPi);
      bool equal_angles = true;
      for (double a : angles) equal_angles = equal_angles && a == angles.front();
      const bool expected = equal_angles && 2 * slots == n;
      go.record(gg == gw && gg == expected ? 0.0 : 1.0, 0.0, [&] { return where(n, index); });
      go.count();
    }
  }
  for (auto* a : {&uo, &go, &inv}) out.push_back(a->finish());
}

inline void hermitian_family_checks(const ReportContext& ctx, std::vector<CheckResult>& out) {
  CheckAccumulator len("hermitian_family_length", 1e-9);
  CheckAccumulator structure("hermitian_family_structure", 0.0);
  CheckAccumulator lift("hermitian_lift_consistency", 1e-8);
  CheckAccumulator pinch_eq("pinching_equality_minimal", 1e-9);
  CheckAccumulator diag("diagonal_monotonicity", 1e-7);
  CheckAccumulator reduction("hermitian_2x2_reduction", 1e-7);
  const SchattenIndex one = SchattenIndex::of(1);
  for (Index n = 2; n <= ctx.max_dim; ++n) {
    for (std::uint64_t i = 0; i < 10; ++i) {
      const std::uint64_t index = static_cast<std::uint64_t>(n) * 1000 + i;
      Rng rng = ctx.rng("hermitian_family", index);
      const HermitianMatrix d = random_hermitian(rng, n);
      const int segments = 1 + static_cast<int>(i % 4);
      const SampledCurve c = sample(minimal_family_hermitian(d, rng.bits(), segments), 128);
      const auto at = [&] { return where(n, index); };
      const double norm1 = schatten_norm(d.mat(), one);
      len.record(std::abs(length(c, one).length - norm1), len.tolerance(), at);
      structure.record(is_minimal_hermitian_trace(c).supported ? 0.0 : 1.0, 0.0, at);

      const SampledCurve back = map_points(lift_positive(c), SpaceTag::Hermitian,
                                           [](const Matrix& m) { return log_pd(PositiveDefiniteMatrix::trusted(m)).mat(); });
      double err = 0.0;
      for (size_t k = 0; k < c.points.size(); ++k) err = std::max(err, max_abs(back.points[k] - c.points[k]));
      lift.record(err, lift.tolerance(), at);

      const ProjectorSystem system = ProjectorSystem::from_basis(eigh(d).vectors.mat());
      absorb(pinch_eq, check_pinching_minimality(c, system), n, index);

      RealVector dd(n);
      for (Index k = 0; k < n; ++k) dd(k) = rng.normal();
      const SampledCurve cd = sample(minimal_family_hermitian(HermitianMatrix::diagonal(dd), rng.bits(), 3), 64);
      absorb(diag, check_diagonal_monotonicity(cd), n, index);
      for (auto* a : {&len, &structure, &lift, &pinch_eq, &diag}) a->count();
    }
  }
  // 2x2 reduction: (a) both eigenvalues >= 0, (b) both <= 0, (c) mixed signs.
  for (std::uint64_t i = 0; i < 12; ++i) {
    Rng rng = ctx.rng("hermitian_2x2_reduction", i);
    const int kind = static_cast<int>(i % 3);
    const double a = rng.uniform(0.1, 2.0), b = rng.uniform(0.1, 2.0);
    RealVector dd(2);
    dd << (kind == 1 ? -a : a), (kind == 0 ? b : -b);
    const SampledCurve c = sample(minimal_family_hermitian(HermitianMatrix::diagonal(dd), rng.bits(), 3), 64);
    double bad = 0.0;
    for (size_t k = 0; k + 1 < c.points.size(); ++k) {
      const RealVector inc = eigenvalues(HermitianMatrix::trusted(c.points[k + 1] - c.points[k]));
      if (kind == 0) bad = std::max(bad, -inc.minCoeff());
      if (kind == 1) bad = std::max(bad, inc.maxCoeff());
      if (kind == 2) bad = std::max(bad, std::abs(c.points[k + 1](0, 1)));
    }
    reduction.record(bad, reduction.tolerance(), [&] { return where(2, i); });
    reduction.count();
  }
  for (auto* a : {&len, &structure, &lift, &pinch_eq, &diag, &reduction}) out.push_back(a->finish());
}

inline void lift_checks(const ReportContext& ctx, std::vector<CheckResult>& out) {
  CheckAccumulator pinching("pinching_contraction", 1e-9);
  CheckAccumulator pos_eq("positive_lift_equality", 1e-3);
  CheckAccumulator pos_lb("positive_lift_lower_bound", 1e-9);
  CheckAccumulator uni_eq("unitary_lift_equality", 1e-3);
  CheckAccumulator uni_c("unitary_lift_contraction", 1e-6);
  const SchattenIndex one = SchattenIndex::of(1);
  for (Index n = 2; n <= ctx.max_dim; ++n) {
    for (std::uint64_t i = 0; i < 8; ++i) {
      const std::uint64_t index = static_cast<std::uint64_t>(n) * 1000 + i;
      Rng rng = ctx.rng("lifts", index);
      const auto at = [&] { return where(n, index); };

      // Arbitrary curves.
      const HermitianMatrix end = random_hermitian_with_norm(rng, n, rng.uniform(0.2, kPi));
      const SampledCurve c = sample(fixtures::smooth_hermitian_curve(rng, end), 128);
      const double lh = length(c, one).length;
      pos_lb.record(lh - length(lift_positive(c), one).length, pos_lb.tolerance(), at);
      uni_c.record(length(lift_unitary(c), one).length - lh, uni_c.tolerance(), at);

      const EigenDecomposition e = eigh(end);
      std::vector<Index> sizes;
      for (Index left = n; left > 0;) {
        const Index s = rng.uniform_int(1, static_cast<int>(left));
        sizes.push_back(s);
        left -= s;
      }
      absorb(pinching, check_pinching_minimality(c, ProjectorSystem::from_blocks(e.vectors.mat(), sizes)), n, index);

      // Minimal members.
      const SampledCurve m = sample(minimal_family_hermitian(end, rng.bits(), 3), 512);
      const double norm1 = schatten_norm(end.mat(), one);
      pos_eq.record(std::abs(length(lift_positive(m), one).length - norm1) / norm1, pos_eq.tolerance(), at);
      uni_eq.record(std::abs(length(lift_unitary(m), one).length - norm1) / norm1, uni_eq.tolerance(), at);
      for (auto* a : {&pinching, &pos_eq, &pos_lb, &uni_eq, &uni_c}) a->count();
    }
  }
  for (auto* a : {&pinching, &pos_eq, &pos_lb, &uni_eq, &uni_c}) out.push_back(a->finish());
}

inline void positive_checks(const ReportContext& ctx, std::vector<CheckResult>& out) {
  CheckAccumulator iemi("iemi", 1e-10);
  CheckAccumulator fd("frechet_finite_difference", 1e-6);
  CheckAccumulator conv("convexity_distance", 1e-9);
  CheckAccumulator araki("araki_contraction", 1e-9);
  const SchattenIndex norms[] = {SchattenIndex::of(1), SchattenIndex::of(2), SchattenIndex::inf()};
  for (Index n = 2; n <= ctx.max_dim; ++n) {
    for (std::uint64_t i = 0; i < 30; ++i) {
      const std::uint64_t index = static_cast<std::uint64_t>(n) * 1000 + i;
      Rng rng = ctx.rng("positive", index);
      const SchattenIndex& p = norms[i % 3];
      const HermitianMatrix h = random_hermitian_with_norm(rng, n, rng.uniform(0.0, 2.0));
      const HermitianMatrix k = random_hermitian_with_norm(rng, n, rng.uniform(0.1, 2.0));
      absorb(iemi, check_iemi(h, k, p), n, index);
      iemi.count();

      const PositiveDefiniteMatrix c = random_positive(rng, n), d = random_positive(rng, n);
      absorb(araki, check_araki_contraction(c, d, rng.uniform(), p), n, index);
      araki.count();

      if (i % 3 == 0) {
        constexpr double step = 1e-5;
        const Matrix diff = (exp_h(h + step * k).mat() - exp_h(h - step * k).mat()) / (2.0 * step);
        fd.record(max_abs(diff - frechet_exp(h, k).mat()), fd.tolerance(), [&] { return where(n, index); });
        fd.count();

        absorb(conv, check_convexity_distance(c, d, p, 9), n, index);
        conv.count();
      }
    }
  }
  for (auto* a : {&iemi, &fd, &conv, &araki}) out.push_back(a->finish());
}

inline void midpoint_checks(const ReportContext& ctx, std::vector<CheckResult>& out) {
  CheckAccumulator uni("midpoint_convexity_unitary", kMembershipTolerance);
  CheckAccumulator gr("midpoint_convexity_grassmann", kMembershipTolerance);
  CheckAccumulator pos1("midpoint_convexity_positive_trace", kMembershipTolerance);
  CheckAccumulator posi("midpoint_convexity_positive_spectral", kMembershipTolerance);
  CheckAccumulator anti("antipodal_counterexample", 0.0);
  const SchattenIndex one = SchattenIndex::of(1), inf = SchattenIndex::inf();
  auto worst = [](const IntermediateSetReport& r) {
    double w = 0.0;
    for (double x : r.membership_residuals) w = std::max(w, x);
    return w;
  };
  for (Index n = 2; n <= ctx.max_dim; ++n) {
    for (std::uint64_t i = 0; i < 3; ++i) {
      const std::uint64_t index = static_cast<std::uint64_t>(n) * 1000 + i;
      Rng rng = ctx.rng("midpoints", index);
      const auto at = [&] { return where(n, index); };
      const double t = rng.uniform(0.1, 0.9);

      const UnitaryMatrix u = random_unitary(rng, n);
      const UnitaryMatrix v = u * expi(random_hermitian_with_norm(rng, n, rng.uniform(0.1, kPi / 2 - 0.05)));
      uni.record(worst(check_midpoint_convexity(u.mat(), v.mat(), t, SpaceTag::Unitary, inf, 3, rng.bits())), uni.tolerance(), at);

      const Index rank = std::max<Index>(1, n / 2);
      std::vector<double> angles;
      for (Index j = 0; j < std::min(rank, n - rank); ++j) angles.push_back(rng.uniform(0.05, 0.7));
      const auto [p, q] = fixtures::grassmann_pair_with_angles(rng, n, rank, angles);
      gr.record(worst(check_midpoint_convexity(p.mat(), q.mat(), t, SpaceTag::Grassmann, inf, 3, rng.bits())), gr.tolerance(), at);

      const PositiveDefiniteMatrix a = random_positive(rng, n), b = random_positive(rng, n);
      pos1.record(worst(check_midpoint_convexity(a.mat(), b.mat(), t, SpaceTag::Positive, one, 3, rng.bits())), pos1.tolerance(), at);
      posi.record(worst(check_midpoint_convexity(a.mat(), b.mat(), t, SpaceTag::Positive, inf, 3, rng.bits())), posi.tolerance(), at);
      for (auto* acc : {&uni, &gr, &pos1, &posi}) acc->count();
    }
    const AntipodalCounterexample ce = antipodal_counterexample(n, 0.25);
    anti.record(0.25 * kPi / 2.0 - ce.residual, 0.0, [&] { return where(n, 0); });
    anti.count();
  }
  for (auto* a : {&uni, &gr, &pos1, &posi, &anti}) out.push_back(a->finish());
}

inline void grassmann_checks(const ReportContext& ctx, std::vector<CheckResult>& out) {
  CheckAccumulator factor("grassmann_factor_two", 1e-8);
  CheckAccumulator residuals("grassmann_log_residuals", 1e-8);
  CheckAccumulator pairing("grassmann_eigenvalue_pairing", 1e-8);
  CheckAccumulator family("grassmann_family_length", 1e-3);
  const SchattenIndex inf = SchattenIndex::inf();
  for (Index n = 2; n <= ctx.max_dim; ++n) {
    for (std::uint64_t i = 0; i < 10; ++i) {
      const std::uint64_t index = static_cast<std::uint64_t>(n) * 1000 + i;
      Rng rng = ctx.rng("grassmann", index);
      const auto at = [&] { return where(n, index); };
      const Index rank = 1 + static_cast<Index>(i % static_cast<std::uint64_t>(n - 1));
      const OrthogonalProjection p = random_projection(rng, n, rank);
      const HermitianMatrix x0 = random_codiagonal(rng, p, rng.uniform(0.05, kPi / 2 - 0.05));
      const Matrix rot = expi(x0).mat();
      const OrthogonalProjection q = OrthogonalProjection::trusted(rot * p.mat() * rot.adjoint());

      const double dg = dist_grassmann(p, q, inf);
      const double du = dist_unitary(symmetry(p), symmetry(q), inf);
      factor.record(std::abs(2.0 * dg - du), factor.tolerance(), at);

      const GrassmannLogResult log = grassmann_log(p, q);
      const Matrix r = expi(log.x).mat();
      residuals.record(std::max(max_abs(r * p.mat() * r.adjoint() - q.mat()), log.codiagonal_residual), residuals.tolerance(), at);

      const RealVector ev = eigenvalues(log.x);
      pairing.record((ev + ev.reverse()).cwiseAbs().maxCoeff(), pairing.tolerance(), at);

      const PerturbationSpec spec{rng.bits(), FamilyMode::Detour, rng.uniform(0.2, 0.9), std::nullopt};
      try {
        const SampledCurve c = sample(minimal_family_grassmann(p, q, spec), 1024);
        family.record(std::abs(length(c, inf).length - dg) / dg, family.tolerance(), at);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::UniqueGeodesicOnly) throw;
      }
      for (auto* a : {&factor, &residuals, &pairing, &family}) a->count();
    }
  }
  for (auto* a : {&factor, &residuals, &pairing, &family}) out.push_back(a->finish());
}

inline void eigencurve_checks(const ReportContext& ctx, std::vector<CheckResult>& out) {
  CheckAccumulator herm("eigencurves_hermitian", 1e-7);
  CheckAccumulator pos("eigencurves_positive", 1e-7);
  CheckAccumulator uni("eigencurves_unitary", 1e-7);
  CheckAccumulator geo("eigencurves_positive_geodesic", 1e-7);
  CheckAccumulator rate("eigencurves_unitary_ambiguity_rate", 0.01);
  long ambiguous = 0, attempts = 0;
  for (Index n = 2; n <= ctx.max_dim; ++n) {
    for (std::uint64_t i = 0; i < 5; ++i) {
      const std::uint64_t index = static_cast<std::uint64_t>(n) * 1000 + i;
      Rng rng = ctx.rng("eigencurves", index);
      const HermitianMatrix d = random_hermitian_with_norm(rng, n, rng.uniform(0.2, kPi - 0.05));
      const SampledCurve c = sample(minimal_family_hermitian(d, rng.bits(), 3), 256);
      absorb(herm, check_eigencurve_monotonicity(c, SpaceTag::Hermitian), n, index);
      absorb(pos, check_eigencurve_monotonicity(lift_positive(c), SpaceTag::Positive), n, index);
      ++attempts;
      try {
        absorb(uni, check_eigencurve_monotonicity(lift_unitary(c), SpaceTag::Unitary), n, index);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::TrackingAmbiguous) throw;
        ++ambiguous;
      }
      const PositiveDefiniteMatrix b = random_positive(rng, n);
      const SampledCurve g = sample(geodesic_positive(PositiveDefiniteMatrix::identity(n), b), 64);
      absorb(geo, check_eigencurve_monotonicity(g, SpaceTag::Positive), n, index);
      for (auto* a : {&herm, &pos, &uni, &geo}) a->count();
    }
  }
  rate.record(attempts ? static_cast<double>(ambiguous) / static_cast<double>(attempts) : 0.0, rate.tolerance());
  rate.count(attempts);
  for (auto* a : {&herm, &pos, &uni, &geo, &rate}) out.push_back(a->finish());
}

inline void distance_checks(const ReportContext& ctx, std::vector<CheckResult>& out) {
  CheckAccumulator acc("distance_log_identity", 1e-9);
  for (Index n = 2; n <= ctx.max_dim; ++n) {
    for (std::uint64_t i = 0; i < 30; ++i) {
      const std::uint64_t index = static_cast<std::uint64_t>(n) * 1000 + i;
      Rng rng = ctx.rng("distance_log_identity", index);
      const double norm = rng.uniform(0.05, kPi);
      const HermitianMatrix x = random_hermitian_with_norm(rng, n, norm);
      const double d = dist_unitary(UnitaryMatrix::identity(n), expi(x), SchattenIndex::inf());
      acc.record(std::abs(d - norm), acc.tolerance(), [&] { return where(n, index); });
      acc.count();
    }
  }
  out.push_back(acc.finish());
}

inline void negative_controls(const ReportContext& ctx, std::vector<CheckResult>& out) {
  const SchattenIndex inf = SchattenIndex::inf();
  RealVector pm(2);
  pm << 1.0, -1.0;
  const Matrix end = HermitianMatrix::diagonal(pm).mat();

  CheckAccumulator bump("negative_control_off_block_bump", 0.0);
  {
    Matrix offd = Matrix::Zero(2, 2);
    offd(0, 1) = offd(1, 0) = 0.3;
    const SampledCurve c =
        sample({SpaceTag::Hermitian, [=](double t) -> Matrix { return t * end + std::sin(kPi * t) * offd; }}, 128);
    const MinimalityVerdict v = is_minimal_hermitian_trace(c);
    expect_detected(bump, !v.supported && v.length > 2.0, "off-block bump");
  }
  CheckAccumulator osc("negative_control_oscillating_diagonal", 0.0);
  {
    const SampledCurve c = sample({SpaceTag::Hermitian, [=](double t) -> Matrix {
                                     Matrix m = t * end;
                                     m(0, 0) += 0.3 * std::sin(2.0 * kPi * t);
                                     return m;
                                   }},
                                  128);
    expect_detected(osc, !is_minimal_hermitian_trace(c).supported && !check_diagonal_monotonicity(c).passed,
                    "oscillating diagonal");
  }
  CheckAccumulator nonc("negative_control_noncommuting_system", 0.0);
  {
    const SampledCurve c = sample(geodesic_hermitian(HermitianMatrix::zero(2), HermitianMatrix::diagonal(pm)), 8);
    Matrix h(2, 1);
    h << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    Matrix basis(2, 2);
    basis << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    expect_detected(nonc, raises(ErrorCode::NoncommutingSystem, [&] { check_pinching_minimality(c, ProjectorSystem::from_basis(basis)); }),
                    "noncommuting pinching system");
  }
  CheckAccumulator member("negative_control_random_nonmember", 0.0);
  for (std::uint64_t i = 0; i < 5; ++i) {
    Rng rng = ctx.rng("negative_control_random_nonmember", i);
    const Index n = 2 + static_cast<Index>(i % 3);
    const UnitaryMatrix u = random_unitary(rng, n);
    const UnitaryMatrix v = u * expi(random_hermitian_with_norm(rng, n, 1.0));
    const UnitaryMatrix w = random_unitary(rng, n);
    const double d = dist_unitary(u, v, inf);
    const double r = intermediate_membership(w.mat(), u.mat(), v.mat(), 0.5, SpaceTag::Unitary, inf);
    expect_detected(member, r > kMembershipTolerance * d, "random point accepted as intermediate point");
  }
  CheckAccumulator eig("negative_control_nonmonotone_eigencurve", 0.0);
  {
    const SampledCurve c = sample({SpaceTag::Hermitian, [=](double t) -> Matrix {
                                     return (t + 0.4 * std::sin(2.0 * kPi * t)) * end;
                                   }},
                                  128);
    expect_detected(eig, !check_eigencurve_monotonicity(c, SpaceTag::Hermitian).passed, "non-monotone eigenvalue curve");
  }
  CheckAccumulator uniq("negative_control_antipodal_uniqueness", 0.0);
  expect_detected(uniq, !is_unique_minimal_unitary(UnitaryMatrix::identity(2), UnitaryMatrix::trusted(-identity(2))).unique,
                  "antipodal pair declared unique");
  CheckAccumulator budget("negative_control_speed_budget", 0.0);
  {
    RealVector x(2);
    x << 2.0, 0.5;
    const UnitaryMatrix target = expi(HermitianMatrix::diagonal(x));
    expect_detected(budget, raises(ErrorCode::SpeedBudgetExceeded, [&] {
                      minimal_family_unitary(target, {1, FamilyMode::Detour, 5.0, std::nullopt});
                    }),
                    "detour beyond the speed budget");
  }
  for (auto* a : {&bump, &osc, &nonc, &member, &eig, &uniq, &budget}) out.push_back(a->finish());
}

}  // namespace detail

/// Runs the whole battery on n = 2..max_dim. Deterministic given the arguments.
inline std::vector<CheckResult> run_report(std::uint64_t seed, Index max_dim) {
  if (max_dim < 2) throw Error(ErrorCode::InvalidArgument, "max_dim must be at least 2");
  const detail::ReportContext ctx{seed, max_dim};
  std::vector<CheckResult> out;
  detail::distance_checks(ctx, out);
  detail::unitary_family_checks(ctx, out);
  detail::uniqueness_checks(ctx, out);
  detail::hermitian_family_checks(ctx, out);
  detail::lift_checks(ctx, out);
  detail::positive_checks(ctx, out);
  detail::midpoint_checks(ctx, out);
  detail::grassmann_checks(ctx, out);
  detail::eigencurve_checks(ctx, out);
  detail::negative_controls(ctx, out);
  return out;
}

inline io::Json to_json(const std::vector<CheckResult>& results) {
  io::Json j = io::Json::array();
  for (const CheckResult& r : results) j.push_back(to_json(r));
  return j;
}

}  // namespace mingeo
