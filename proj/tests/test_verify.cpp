#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace mingeo;

namespace {

const SchattenIndex kOne = SchattenIndex::of(1);
const SchattenIndex kTwo = SchattenIndex::of(2);
const SchattenIndex kInf = SchattenIndex::inf();

RealVector vec(std::initializer_list<double> values) {
  RealVector d(static_cast<Index>(values.size()));
  Index i = 0;
  for (double v : values) d(i++) = v;
  return d;
}

Matrix diag(std::initializer_list<double> values) { return HermitianMatrix::diagonal(vec(values)).mat(); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Pinching, MinimalCurvesKeepLength) {
  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 2 + trial % 4;
    const HermitianMatrix d = random_hermitian(rng, n);
    const SampledCurve c = sample(minimal_family_hermitian(d, rng.bits(), 3), 128);
    const ProjectorSystem sys = ProjectorSystem::from_blocks(eigh(d).vectors.mat(), {1, static_cast<int>(n) - 1});
    const CheckResult r = check_pinching_minimality(c, sys);
    EXPECT_TRUE(r.passed) << r.worst_violation;
    EXPECT_FALSE(r.witness.has_value());
    EXPECT_EQ(r.seeds_run, 1);
  }
}

TEST(Pinching, Errors) {
  const SampledCurve shifted = sample(geodesic_hermitian(HermitianMatrix::trusted(identity(2)), HermitianMatrix::zero(2)), 4);
  const ProjectorSystem sys = ProjectorSystem::from_blocks(identity(2), {1, 1});
  EXPECT_EQ(code_of([&] { check_pinching_minimality(shifted, sys); }), ErrorCode::BadStart);
  const SampledCurve u = sample(geodesic_unitary(UnitaryMatrix::identity(2), UnitaryMatrix::identity(2)), 4);
  EXPECT_EQ(code_of([&] { check_pinching_minimality(u, sys); }), ErrorCode::SpaceMismatch);
}

TEST(DiagonalMonotonicity, FamilyPassesOscillationFails) {
  const HermitianMatrix d = HermitianMatrix::trusted(diag({2.0, -1.0, 0.5}));
  EXPECT_TRUE(check_diagonal_monotonicity(sample(minimal_family_hermitian(d, 3, 3), 128)).passed);
  const SampledCurve bad = sample({SpaceTag::Hermitian, [](double t) -> Matrix {
                                     return diag({t + 0.3 * std::sin(2.0 * kPi * t), -t, 0.5 * t});
                                   }},
                                  128);
  const CheckResult r = check_diagonal_monotonicity(bad);
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_GT(r.worst_violation, r.tolerance);
  Matrix off = d.mat();
  off(0, 1) = off(1, 0) = 0.5;
  const SampledCurve nondiag = sample(geodesic_hermitian(HermitianMatrix::zero(3), HermitianMatrix::trusted(off)), 8);
  EXPECT_EQ(code_of([&] { check_diagonal_monotonicity(nondiag); }), ErrorCode::PreconditionViolated);
}

TEST(Eigencurves, MinimalCurvesAreMonotone) {
  Rng rng(62);
  for (int trial = 0; trial < 6; ++trial) {
    const Index n = 2 + trial % 4;
    const HermitianMatrix d = random_hermitian_with_norm(rng, n, 2.5);
    const SampledCurve h = sample(minimal_family_hermitian(d, rng.bits(), 3), 256);
    EXPECT_TRUE(check_eigencurve_monotonicity(h, SpaceTag::Hermitian).passed);
    EXPECT_TRUE(check_eigencurve_monotonicity(lift_positive(h), SpaceTag::Positive).passed);
    EXPECT_TRUE(check_eigencurve_monotonicity(lift_unitary(h), SpaceTag::Unitary).passed);
  }
}

TEST(Eigencurves, NonMonotoneDetected) {
  const SampledCurve bad = sample({SpaceTag::Hermitian, [](double t) -> Matrix {
                                     return diag({std::sin(kPi * t), -t});
                                   }},
                                  128);
  EXPECT_FALSE(check_eigencurve_monotonicity(bad, SpaceTag::Hermitian).passed);
  EXPECT_EQ(code_of([&] { check_eigencurve_monotonicity(bad, SpaceTag::Unitary); }), ErrorCode::SpaceMismatch);
}

TEST(Iemi, HoldsAndCommutingEquality) {
  Rng rng(63);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 1 + trial % 5;
    const HermitianMatrix h = random_hermitian(rng, n), k = random_hermitian(rng, n);
    for (const SchattenIndex& p : {kOne, kTwo, kInf}) EXPECT_TRUE(check_iemi(h, k, p).passed);
  }
  const HermitianMatrix h = HermitianMatrix::trusted(diag({1.0, -2.0})), k = HermitianMatrix::trusted(diag({0.3, 0.7}));
  EXPECT_NEAR(check_iemi(h, k, kOne).worst_violation, 0.0, 1e-12);
}

TEST(Araki, ContractionAndEndpoints) {
  Rng rng(64);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + trial % 4;
    const PositiveDefiniteMatrix c = random_positive(rng, n), d = random_positive(rng, n);
    EXPECT_TRUE(check_araki_contraction(c, d, rng.uniform(), kInf).passed);
    EXPECT_TRUE(check_araki_contraction(c, d, 1.0, kOne).passed);
  }
  const PositiveDefiniteMatrix c = PositiveDefiniteMatrix::identity(2);
  EXPECT_EQ(code_of([&] { check_araki_contraction(c, c, 1.5, kOne); }), ErrorCode::InvalidArgument);
}

TEST(Convexity, DistanceAlongGeodesic) {
  Rng rng(65);
  for (int trial = 0; trial < 10; ++trial) {
    const PositiveDefiniteMatrix a = random_positive(rng, 3), b = random_positive(rng, 3);
    EXPECT_TRUE(check_convexity_distance(a, b, trial % 2 ? kOne : kInf, 9).passed);
  }
  const PositiveDefiniteMatrix a = PositiveDefiniteMatrix::identity(2);
  EXPECT_EQ(code_of([&] { check_convexity_distance(a, a, kOne, 2); }), ErrorCode::InvalidArgument);
}

TEST(Intermediate, GeodesicPointsAreMembers) {
  Rng rng(66);
  const UnitaryMatrix u = random_unitary(rng, 3), v = u * expi(random_hermitian_with_norm(rng, 3, 1.2));
  const double t = 0.37;
  EXPECT_LT(intermediate_membership(geodesic_unitary(u, v)(t), u.mat(), v.mat(), t, SpaceTag::Unitary, kInf), 1e-8);
  const Matrix random_point = random_unitary(rng, 3).mat();
  EXPECT_GT(intermediate_membership(random_point, u.mat(), v.mat(), t, SpaceTag::Unitary, kInf), 1e-3);
}

TEST(Intermediate, SeededMembersBelong) {
  Rng rng(67);
  for (int trial = 0; trial < 8; ++trial) {
    const double t = rng.uniform(0.1, 0.9);
    const PositiveDefiniteMatrix a = random_positive(rng, 3), b = random_positive(rng, 3);
    for (const SchattenIndex& p : {kOne, kInf}) {
      const double total = dist_positive(a, b, p);
      const Matrix w = intermediate_member(a.mat(), b.mat(), t, SpaceTag::Positive, p, rng.bits());
      EXPECT_LT(intermediate_membership(w, a.mat(), b.mat(), t, SpaceTag::Positive, p), 1e-8 * total);
    }
    const UnitaryMatrix u = random_unitary(rng, 3), v = u * expi(random_hermitian_with_norm(rng, 3, 1.3));
    const Matrix w = intermediate_member(u.mat(), v.mat(), t, SpaceTag::Unitary, kInf, rng.bits());
    EXPECT_LT(intermediate_membership(w, u.mat(), v.mat(), t, SpaceTag::Unitary, kInf), 1e-6);
  }
}

TEST(Intermediate, ConvexityHoldsInsideInjectivityRadius) {
  Rng rng(68);
  const UnitaryMatrix u = random_unitary(rng, 3), v = u * expi(random_hermitian_with_norm(rng, 3, 1.2));
  const IntermediateSetReport r = check_midpoint_convexity(u.mat(), v.mat(), 0.4, SpaceTag::Unitary, kInf, 3, 5);
  EXPECT_TRUE(r.convexity_passed);
  EXPECT_EQ(r.members_tested, 27);
  const PositiveDefiniteMatrix a = random_positive(rng, 3), b = random_positive(rng, 3);
  EXPECT_TRUE(check_midpoint_convexity(a.mat(), b.mat(), 0.6, SpaceTag::Positive, kOne, 3, 6).convexity_passed);
}

TEST(Intermediate, AntipodalCounterexample) {
  for (double t : {0.1, 0.25, 0.4}) {
    const AntipodalCounterexample ce = antipodal_counterexample(2, t);
    const Matrix id = identity(2);
    EXPECT_LT(intermediate_membership(ce.w_plus, id, -id, t, SpaceTag::Unitary, kInf), 1e-12);
    EXPECT_LT(intermediate_membership(ce.w_minus, id, -id, t, SpaceTag::Unitary, kInf), 1e-12);
    EXPECT_LT(max_abs(ce.midpoint - id), 1e-12);
    EXPECT_GE(ce.residual, t * kPi / 2);
  }
  const Matrix id = identity(2);
  EXPECT_EQ(code_of([&] { check_midpoint_convexity(id, -id, 0.5, SpaceTag::Unitary, kInf, 1, 1); }),
            ErrorCode::PreconditionViolated);
}

TEST(ToleranceScale, ReadsEnvironment) {
  ASSERT_EQ(setenv("MINGEO_TOLERANCE_SCALE", "10", 1), 0);
  EXPECT_DOUBLE_EQ(tolerance_scale(), 10.0);
  ASSERT_EQ(setenv("MINGEO_TOLERANCE_SCALE", "abc", 1), 0);
  EXPECT_EQ(code_of([] { tolerance_scale(); }), ErrorCode::InvalidArgument);
  ASSERT_EQ(unsetenv("MINGEO_TOLERANCE_SCALE"), 0);
  EXPECT_DOUBLE_EQ(tolerance_scale(), 1.0);
}

TEST(Report, AllChecksPassAndDeterministic) {
  const std::vector<CheckResult> first = run_report(42, 4);
  ASSERT_FALSE(first.empty());
  for (const CheckResult& r : first) {
    EXPECT_TRUE(r.passed) << r.name << " worst " << r.worst_violation;
    EXPECT_GT(r.seeds_run, 0) << r.name;
  }
  EXPECT_EQ(to_json(first).dump(), to_json(run_report(42, 4)).dump());
  EXPECT_EQ(code_of([] { run_report(1, 1); }), ErrorCode::InvalidArgument);
}
