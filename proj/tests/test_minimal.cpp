#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace mingeo;

namespace {

const SchattenIndex kOne = SchattenIndex::of(1);
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

UnitaryMatrix phase_diag(std::initializer_list<double> phases) { return expi(HermitianMatrix::diagonal(vec(phases))); }

// Two-piece chain 0 -> b1 -> d traversed at constant trace-norm speed.
CurveGenerator two_piece(const Matrix& b1, const Matrix& d) {
  const double l1 = schatten_norm(b1, kOne), l2 = schatten_norm(d - b1, kOne);
  const double joint = l1 / (l1 + l2);
  return {SpaceTag::Hermitian, [=](double t) -> Matrix {
            if (t <= joint) return (t / joint) * b1;
            return b1 + ((t - joint) / (1.0 - joint)) * (d - b1);
          }};
}

}  // namespace

TEST(TopBlockSplit, Examples) {
  const BlockSplit s = top_block_split(HermitianMatrix::trusted(diag({2.0, -2.0, 1.0})));
  EXPECT_EQ(s.top_rank, 2);
  EXPECT_DOUBLE_EQ(s.norm_inf, 2.0);
  EXPECT_LT(max_abs(s.top_projector.mat() - diag({1.0, 1.0, 0.0})), 1e-14);
  EXPECT_LT(max_abs(s.top_part.mat() - diag({2.0, -2.0, 0.0})), 1e-14);
  EXPECT_LT(max_abs(s.complement_part.mat() - diag({0.0, 0.0, 1.0})), 1e-14);

  const BlockSplit full = top_block_split(HermitianMatrix::trusted(diag({3.0, 3.0})));
  EXPECT_EQ(full.top_rank, 2);
  EXPECT_LT(max_abs(full.complement_part.mat()), 1e-15);

  EXPECT_EQ(code_of([] { top_block_split(HermitianMatrix::zero(2)); }), ErrorCode::ZeroMatrix);
}

TEST(TopBlockSplit, ProjectorCommutes) {
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + trial % 6;
    const HermitianMatrix x = random_hermitian(rng, n);
    const BlockSplit s = top_block_split(x);
    const Matrix& p = s.top_projector.mat();
    EXPECT_LT(max_abs(p * x.mat() - x.mat() * p), 1e-9);
    EXPECT_LT(max_abs(s.top_part.mat() + s.complement_part.mat() - x.mat()), 1e-12);
    EXPECT_NEAR(spectral_norm(s.top_part.mat()), spectral_norm(x.mat()), 1e-12);
  }
}

TEST(UnitaryFamily, GeodesicModeIsTheGeodesic) {
  Rng rng(42);
  const UnitaryMatrix target = expi(random_hermitian_with_norm(rng, 4, 2.2));
  const CurveGenerator g = minimal_family_unitary(target, {1, FamilyMode::Geodesic, 0.5, std::nullopt});
  const CurveGenerator ref = geodesic_unitary(UnitaryMatrix::identity(4), target);
  for (double t : {0.0, 0.3, 0.7, 1.0}) EXPECT_LT(max_abs(g(t) - ref(t)), 1e-12);
}

TEST(UnitaryFamily, DetourMembersAreMinimal) {
  const UnitaryMatrix target = phase_diag({2.0, 0.5});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CurveGenerator g = minimal_family_unitary(target, {seed, FamilyMode::Detour, 0.5 + 0.02 * seed, std::nullopt});
    EXPECT_LT(max_abs(g(0.0) - identity(2)), 1e-12);
    EXPECT_LT(max_abs(g(1.0) - target.mat()), 1e-8);
    EXPECT_NEAR(length(sample(g, 2048), kInf).length, 2.0, 2e-3);
  }
}

TEST(UnitaryFamily, DetourLeavesTheGeodesic) {
  Rng rng(43);
  const UnitaryMatrix target = expi(HermitianMatrix::trusted(fixtures::hermitian_with_spectrum(rng, vec({2.5, 1.0, -0.4})).mat()));
  const CurveGenerator g = minimal_family_unitary(target, {9, FamilyMode::Detour, 0.9, std::nullopt});
  const CurveGenerator ref = geodesic_unitary(UnitaryMatrix::identity(3), target);
  EXPECT_GT(max_abs(g(0.5) - ref(0.5)), 1e-3);
  EXPECT_NEAR(length(sample(g, 2048), kInf).length, 2.5, 2.5e-3);
}

TEST(UnitaryFamily, AntipodalSignPattern) {
  const UnitaryMatrix minus = UnitaryMatrix::trusted(-identity(2));
  const CurveGenerator g = minimal_family_unitary(minus, {0, FamilyMode::Geodesic, 0.5, std::vector<int>{1, -1}});
  for (double t : {0.25, 0.5}) {
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = std::polar(1.0, t * kPi);
    expected(1, 1) = std::polar(1.0, -t * kPi);
    EXPECT_LT(max_abs(g(t) - expected), 1e-12);
  }
  EXPECT_NEAR(length(sample(g, 2048), kInf).length, kPi, 1e-6);
  EXPECT_EQ(code_of([&] { minimal_family_unitary(minus, {0, FamilyMode::Geodesic, 0.5, std::vector<int>{1}}); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { minimal_family_unitary(minus, {0, FamilyMode::Geodesic, 0.5, std::vector<int>{1, 2}}); }),
            ErrorCode::InvalidArgument);
}

TEST(UnitaryFamily, Errors) {
  EXPECT_EQ(code_of([] { minimal_family_unitary(UnitaryMatrix::identity(3), {}); }), ErrorCode::IdentityTarget);
  EXPECT_EQ(code_of([] { minimal_family_unitary(phase_diag({2.0, 0.5}), {1, FamilyMode::Detour, 5.0, std::nullopt}); }),
            ErrorCode::SpeedBudgetExceeded);
  EXPECT_EQ(code_of([] { minimal_family_unitary(phase_diag({2.0, 0.5}), {1, FamilyMode::Detour, -1.0, std::nullopt}); }),
            ErrorCode::InvalidArgument);
}

TEST(UniqueUnitary, Examples) {
  const UnitaryMatrix id = UnitaryMatrix::identity(2);
  const UniquenessCertificate third = is_unique_minimal_unitary(id, phase_diag({kPi / 3, -kPi / 3}));
  EXPECT_TRUE(third.unique);
  EXPECT_NEAR(third.theta, kPi / 3, 1e-12);
  const UniquenessCertificate same = is_unique_minimal_unitary(id, id);
  EXPECT_TRUE(same.unique);
  EXPECT_NEAR(same.theta, 0.0, 1e-12);
  const UniquenessCertificate quarter = is_unique_minimal_unitary(id, phase_diag({0.0, kPi / 2}));
  EXPECT_FALSE(quarter.unique);
  ASSERT_TRUE(quarter.violation.has_value());
  EXPECT_FALSE(is_unique_minimal_unitary(id, UnitaryMatrix::trusted(-identity(2))).unique);
}

TEST(UniqueUnitary, AgreesWithEnumerationOracle) {
  Rng rng(44);
  int disagreements = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 1 + trial % 6;
    RealVector ph(n);
    const double theta = rng.uniform(0.0, kPi - 1e-3);
    for (Index i = 0; i < n; ++i) ph(i) = rng.uniform() < 0.5 ? theta : -theta;
    if (trial % 2) ph(rng.uniform_int(0, static_cast<int>(n) - 1)) = rng.uniform(-kPi, kPi);
    const auto [u, v] = fixtures::unitary_pair_with_phases(rng, ph);
    const std::vector<double> phases = oracle::unitary_phases((u.adjoint() * v).mat());
    bool oracle_unique = false;
    for (double cand : phases) {
      if (std::abs(cand) >= kPi - 1e-9) continue;
      bool fits = true;
      for (double q : phases) fits = fits && std::abs(std::abs(q) - std::abs(cand)) <= 1e-9;
      oracle_unique = oracle_unique || fits;
    }
    disagreements += is_unique_minimal_unitary(u, v).unique != oracle_unique;
  }
  EXPECT_EQ(disagreements, 0);
}

TEST(HermitianFamily, SingleSegmentIsStraight) {
  Rng rng(45);
  const HermitianMatrix d = random_hermitian(rng, 4);
  const CurveGenerator g = minimal_family_hermitian(d, 3, 1);
  for (double t : {0.0, 0.4, 1.0}) EXPECT_LT(max_abs(g(t) - t * d.mat()), 1e-12);
}

TEST(HermitianFamily, TelescopingLength) {
  const HermitianMatrix d = HermitianMatrix::trusted(diag({2.0, -1.0}));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (int segments : {2, 3}) {
      const SampledCurve c = sample(minimal_family_hermitian(d, seed, segments), 64);
      EXPECT_NEAR(length(c, kOne).length, 3.0, 1e-12);
      EXPECT_LT(max_abs(c.back() - d.mat()), 1e-12);
      EXPECT_LT(length(c, kOne).max_speed_deviation, 1e-9);
    }
  }
}

TEST(HermitianFamily, PositiveEndpointGivesMonotoneCurve) {
  Rng rng(46);
  const HermitianMatrix d = fixtures::hermitian_with_spectrum(rng, vec({2.0, 1.0, 0.5, 0.1}));
  const SampledCurve c = sample(minimal_family_hermitian(d, 17, 4), 64);
  for (size_t k = 0; k + 1 < c.points.size(); ++k) EXPECT_TRUE(oracle::is_psd(c.points[k + 1] - c.points[k], 1e-12));
  EXPECT_GT(max_abs(c.points[16] - 0.25 * d.mat()), 1e-3);
}

TEST(HermitianFamily, KernelBlockStaysZero) {
  Rng rng(47);
  const HermitianMatrix d = fixtures::hermitian_with_spectrum(rng, vec({1.5, 0.0, -2.0}));
  const SampledCurve c = sample(minimal_family_hermitian(d, 4, 3), 32);
  const EigenDecomposition e = eigh(d);
  const Matrix kernel = e.vectors.mat().col(1);
  for (const Matrix& m : c.points) EXPECT_LT(max_abs(m * kernel), 1e-12);
  EXPECT_NEAR(length(c, kOne).length, 3.5, 1e-12);
}

TEST(MinimalityTest, FamilyMembersSupported) {
  Rng rng(48);
  for (int trial = 0; trial < 20; ++trial) {
    const HermitianMatrix d = random_hermitian(rng, 2 + trial % 5);
    const MinimalityVerdict v = is_minimal_hermitian_trace(sample(minimal_family_hermitian(d, rng.bits(), 1 + trial % 4), 128));
    EXPECT_TRUE(v.supported);
    EXPECT_TRUE(v.violated.empty());
  }
}

TEST(MinimalityTest, OffBlockBumpRefuted) {
  const Matrix end = diag({1.0, -1.0});
  Matrix off = Matrix::Zero(2, 2);
  off(0, 1) = off(1, 0) = 0.2;
  const SampledCurve c = sample({SpaceTag::Hermitian, [=](double t) -> Matrix { return t * end + std::sin(kPi * t) * off; }}, 256);
  const MinimalityVerdict v = is_minimal_hermitian_trace(c);
  EXPECT_FALSE(v.supported);
  EXPECT_NE(std::find(v.violated.begin(), v.violated.end(), "block_structure"), v.violated.end());
  EXPECT_GT(v.length, 2.0 + 1e-3);
}

TEST(MinimalityTest, OscillatingDiagonalRefuted) {
  const SampledCurve c = sample({SpaceTag::Hermitian, [](double t) -> Matrix {
                                   return diag({t + 0.3 * std::sin(2.0 * kPi * t), -t});
                                 }},
                                256);
  const MinimalityVerdict v = is_minimal_hermitian_trace(c);
  EXPECT_FALSE(v.supported);
  EXPECT_NE(std::find(v.violated.begin(), v.violated.end(), "monotone_blocks"), v.violated.end());
}

TEST(MinimalityTest, ZeroCurveAndBadStart) {
  EXPECT_TRUE(is_minimal_hermitian_trace(sample(geodesic_hermitian(HermitianMatrix::zero(2), HermitianMatrix::zero(2)), 4)).supported);
  const SampledCurve shifted = sample(geodesic_hermitian(HermitianMatrix::trusted(identity(2)), HermitianMatrix::zero(2)), 4);
  EXPECT_EQ(code_of([&] { is_minimal_hermitian_trace(shifted); }), ErrorCode::BadStart);
}

// 2x2 endpoints with eigenvalues of mixed sign force a diagonal curve;
// same-sign endpoints force monotone increments.
TEST(MinimalityTest, TwoByTwoReduction) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SampledCurve mixed = sample(minimal_family_hermitian(HermitianMatrix::trusted(diag({1.3, -0.4})), seed, 3), 64);
    for (const Matrix& m : mixed.points) EXPECT_LT(std::abs(m(0, 1)), 1e-7);
    const SampledCurve neg = sample(minimal_family_hermitian(HermitianMatrix::trusted(diag({-1.3, -0.4})), seed, 3), 64);
    for (size_t k = 0; k + 1 < neg.points.size(); ++k)
      EXPECT_TRUE(oracle::is_psd(neg.points[k] - neg.points[k + 1], 1e-7));
  }
}

TEST(PositiveLift, SegmentIsGeodesic) {
  Rng rng(49);
  const HermitianMatrix x = random_hermitian(rng, 3);
  const SampledCurve lifted = lift_positive(sample(geodesic_hermitian(HermitianMatrix::zero(3), x), 64));
  EXPECT_NEAR(length(lifted, kOne).length, schatten_norm(x.mat(), kOne), 1e-10);
  const CurveGenerator g = geodesic_positive(PositiveDefiniteMatrix::identity(3), exp_h(x));
  EXPECT_LT(max_abs(lifted.points[32] - g(0.5)), 1e-10);
}

TEST(PositiveLift, NeverShorterThanTheCurve) {
  Rng rng(50);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 2 + trial % 3;
    const SampledCurve c = sample(fixtures::smooth_hermitian_curve(rng, random_hermitian(rng, n)), 256);
    EXPECT_GE(length(lift_positive(c), kOne).length, length(c, kOne).length - 1e-9);
  }
}

// A trace-norm minimal chain 0 -> vv* -> diag(3, 1), v = (1.5, 0.5), whose
// two increments do not commute. The Hermitian curve has length 4 and so does
// the geodesic from I to e^D, but the exponential lift is longer: the
// divided-difference table of exp is not positive semidefinite. The reference
// length comes from Simpson quadrature of the Frechet derivative (Pade exp).
TEST(PositiveLift, NonCommutingMinimalChainLiftsToLongerCurve) {
  Matrix b1(2, 2), d(2, 2);
  b1 << 2.25, 0.75, 0.75, 0.25;
  d << 3.0, 0.0, 0.0, 1.0;
  constexpr double kOracleLength = 4.2690613781;
  EXPECT_NEAR(oracle::positive_chain_length({Matrix::Zero(2, 2), b1, d}, 256), kOracleLength, 1e-8);

  const SampledCurve c = sample(two_piece(b1, d), 2048);
  ASSERT_TRUE(is_minimal_hermitian_trace(c).supported);
  EXPECT_NEAR(length(c, kOne).length, 4.0, 1e-12);
  EXPECT_NEAR(dist_positive(PositiveDefiniteMatrix::identity(2), exp_h(HermitianMatrix::trusted(d)), kOne), 4.0, 1e-12);
  EXPECT_NEAR(length(lift_positive(c), kOne).length, kOracleLength, 1e-6);
}

TEST(PositiveLift, CommutingMinimalChainLiftsIsometrically) {
  Matrix b1(2, 2), d(2, 2);
  b1 << 1.0, 1.0, 1.0, 1.0;
  d << 2.0, 0.0, 0.0, 2.0;
  EXPECT_NEAR(oracle::positive_chain_length({Matrix::Zero(2, 2), b1, d}, 256), 4.0, 1e-8);
  EXPECT_NEAR(length(lift_positive(sample(two_piece(b1, d), 512)), kOne).length, 4.0, 1e-10);
}

TEST(UnitaryLift, AntipodalSegment) {
  const SampledCurve c = sample(geodesic_hermitian(HermitianMatrix::zero(2), HermitianMatrix::trusted(diag({kPi, -kPi}))), 2048);
  const SampledCurve u = lift_unitary(c);
  EXPECT_LT(max_abs(u.back() + identity(2)), 1e-12);
  EXPECT_NEAR(length(u, kOne).length, 2.0 * kPi, 1e-5);
}

TEST(UnitaryLift, ContractionAndEquality) {
  Rng rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 2 + trial % 3;
    const HermitianMatrix d = random_hermitian_with_norm(rng, n, rng.uniform(0.5, kPi));
    const SampledCurve arbitrary = sample(fixtures::smooth_hermitian_curve(rng, d), 512);
    EXPECT_LE(length(lift_unitary(arbitrary), kOne).length, length(arbitrary, kOne).length + 1e-6);
    const SampledCurve minimal = sample(minimal_family_hermitian(d, rng.bits(), 3), 2048);
    const double norm1 = schatten_norm(d.mat(), kOne);
    EXPECT_NEAR(length(lift_unitary(minimal), kOne).length, norm1, 1e-3 * norm1);
  }
}

TEST(UnitaryLift, Preconditions) {
  const SampledCurve big = sample(geodesic_hermitian(HermitianMatrix::zero(2), HermitianMatrix::trusted(diag({3.5, 0.0}))), 4);
  EXPECT_EQ(code_of([&] { lift_unitary(big); }), ErrorCode::NormBoundExceeded);
  const SampledCurve shifted = sample(geodesic_hermitian(HermitianMatrix::trusted(identity(2)), HermitianMatrix::zero(2)), 4);
  EXPECT_EQ(code_of([&] { lift_unitary(shifted); }), ErrorCode::BadStart);
}

TEST(GrassmannFamily, GeodesicModeAndConstant) {
  Rng rng(52);
  const auto [p, q] = fixtures::grassmann_pair_with_angles(rng, 4, 2, {0.8, 0.3});
  const CurveGenerator g = minimal_family_grassmann(p, q, {1, FamilyMode::Geodesic, 0.5, std::nullopt});
  const CurveGenerator ref = geodesic_grassmann(p, q);
  for (double t : {0.0, 0.5, 1.0}) EXPECT_LT(max_abs(g(t) - ref(t)), 1e-12);
  const CurveGenerator still = minimal_family_grassmann(p, p, {1, FamilyMode::Detour, 0.5, std::nullopt});
  EXPECT_LT(max_abs(still(0.5) - p.mat()), 1e-15);
}

TEST(GrassmannFamily, DetourLengthEqualsLargestAngle) {
  Rng rng(53);
  const auto [p, q] = fixtures::grassmann_pair_with_angles(rng, 4, 2, {0.8, 0.3});
  const CurveGenerator ref = geodesic_grassmann(p, q);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CurveGenerator g = minimal_family_grassmann(p, q, {seed, FamilyMode::Detour, 0.8, std::nullopt});
    EXPECT_LT(max_abs(g(1.0) - q.mat()), 1e-8);
    EXPECT_NEAR(length(sample(g, 2048), kInf).length, 0.8, 8e-4);
    if (seed == 0) EXPECT_GT(max_abs(g(0.5) - ref(0.5)), 1e-4);
  }
}

TEST(GrassmannFamily, SingletonAngleOnlyGeodesic) {
  Rng rng(54);
  const auto [p, q] = fixtures::grassmann_pair_with_angles(rng, 4, 2, {0.6, 0.6});
  EXPECT_EQ(code_of([&] { minimal_family_grassmann(p, q, {1, FamilyMode::Detour, 0.5, std::nullopt}); }),
            ErrorCode::UniqueGeodesicOnly);
  EXPECT_NO_THROW(minimal_family_grassmann(p, q, {1, FamilyMode::Geodesic, 0.5, std::nullopt}));
}

TEST(UniqueGrassmann, Examples) {
  Rng rng(55);
  const OrthogonalProjection p = random_projection(rng, 4, 2);
  const UniquenessCertificate same = is_unique_minimal_grassmann(p, p);
  EXPECT_TRUE(same.unique);
  EXPECT_NEAR(same.theta, 0.0, 1e-12);

  const auto [a, b] = fixtures::grassmann_pair_with_angles(rng, 4, 2, {0.6, 0.6});
  const UniquenessCertificate equal = is_unique_minimal_grassmann(a, b);
  EXPECT_TRUE(equal.unique);
  EXPECT_NEAR(equal.theta, 0.6, 1e-9);
  const auto [c, d] = fixtures::grassmann_pair_with_angles(rng, 4, 2, {0.6, 0.2});
  EXPECT_FALSE(is_unique_minimal_grassmann(c, d).unique);
  const auto [e, f] = fixtures::grassmann_pair_with_angles(rng, 5, 2, {0.6, 0.6});
  EXPECT_FALSE(is_unique_minimal_grassmann(e, f).unique);

  const OrthogonalProjection e1 = OrthogonalProjection::onto(identity(2).col(0));
  const OrthogonalProjection e2 = OrthogonalProjection::onto(identity(2).col(1));
  EXPECT_EQ(code_of([&] { is_unique_minimal_grassmann(e1, e2); }), ErrorCode::GrassmannTooFar);
}
