#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "kwayneg/catalog.hpp"
#include "kwayneg/multistate.hpp"
#include "kwayneg/ptranspose.hpp"

using namespace kwayneg;

TEST(MultiIndex, HammingDistance) {
  EXPECT_EQ(hamming_distance({{0, 0, 0}}, {{0, 0, 0}}), 0U);
  EXPECT_EQ(hamming_distance({{0, 0, 0}}, {{1, 1, 1}}), 3U);
  EXPECT_EQ(hamming_distance({{0, 0, 0}}, {{1, 0, 1}}), 2U);
  EXPECT_THROW(hamming_distance({{0, 0}}, {{0, 0, 0}}), InvalidArgument);
}

TEST(SubsystemDims, EncodeDecodeRoundTrip) {
  for (const SubsystemDims& dims : {SubsystemDims{2, 3, 4}, SubsystemDims{2, 2, 3}, SubsystemDims(std::vector<std::size_t>(12, 2))}) {
    for (std::size_t f = 0; f < dims.total_dim(); ++f) {
      ASSERT_EQ(dims.encode(dims.decode(f)), f);
    }
  }
}

TEST(SubsystemDims, FirstSubsystemIsMostSignificant) {
  const SubsystemDims dims{2, 2, 3};
  EXPECT_EQ(dims.encode({{1, 0, 0}}), 6U);
  EXPECT_EQ(dims.encode({{0, 1, 0}}), 3U);
  EXPECT_EQ(dims.encode({{0, 0, 2}}), 2U);
  EXPECT_EQ(dims.stride(Subsystem{1}), 6U);
}

TEST(SubsystemDims, RejectsBadShapes) {
  EXPECT_THROW(SubsystemDims(std::vector<std::size_t>{}), InvalidArgument);
  EXPECT_THROW(SubsystemDims({2, 1}), InvalidArgument);
  EXPECT_THROW(SubsystemDims(std::vector<std::size_t>(13, 2)), InvalidArgument);
  EXPECT_NO_THROW(SubsystemDims(std::vector<std::size_t>(13, 2), 8192));
  EXPECT_THROW((SubsystemDims{2, 2}.dim(Subsystem{3})), InvalidArgument);
  EXPECT_THROW((SubsystemDims{2, 2}.dim(Subsystem{0})), InvalidArgument);
}

TEST(PureState, NormalizationIsEnforced) {
  Vector v(2);
  v << 0.6, 0.7;
  EXPECT_THROW(PureState(SubsystemDims{2}, v), InvariantViolation);
  const PureState ok(SubsystemDims{2}, v, Normalization::kRenormalize);
  EXPECT_NEAR(ok.amplitudes().squaredNorm(), 1.0, 1e-15);
  EXPECT_THROW(PureState(SubsystemDims{2}, Vector::Zero(2), Normalization::kRenormalize), InvariantViolation);
}

TEST(PureToDensity, BasisAndBellStates) {
  Vector zero(2);
  zero << 1.0, 0.0;
  const auto rho0 = pure_to_density(PureState(SubsystemDims{2}, zero));
  EXPECT_EQ(rho0.matrix()(0, 0), Complex(1.0));
  EXPECT_EQ(rho0.matrix()(1, 1), Complex(0.0));

  const auto bell = pure_to_density(ghz(2));
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 0.5;
  EXPECT_LT(fixtures::max_abs_diff(bell.matrix(), expected), 1e-15);
}

TEST(PureToDensity, MuFamilyIsRankOne) {
  const auto rho = pure_to_density(mu_family(0.5));
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-10);
  EXPECT_EQ(Eigen::FullPivLU<Matrix>(rho.matrix()).rank(), 1);
}

TEST(DensityOperator, RejectsNonHermitianAndBadTrace) {
  Matrix m = Matrix::Identity(2, 2) * 0.5;
  m(0, 1) = 0.1;
  EXPECT_THROW(DensityOperator(SubsystemDims{2}, m), InvariantViolation);
  EXPECT_THROW(DensityOperator(SubsystemDims{2}, Matrix::Identity(2, 2)), InvariantViolation);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  const DensityOperator lazy(SubsystemDims{2}, neg);
  EXPECT_THROW(lazy.check_positive(), InvariantViolation);
}

TEST(PartialTrace, KeepAllIsIdentity) {
  const auto rho = random_mixed(SubsystemDims{2, 3}, 3, 5);
  const auto same = partial_trace(rho, rho.dims().all());
  EXPECT_EQ(same.matrix(), rho.matrix());
}

TEST(PartialTrace, ProductStateFactor) {
  const auto a = random_mixed(SubsystemDims{2}, 2, 11);
  const auto b = random_mixed(SubsystemDims{3}, 3, 12);
  Matrix prod(6, 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) prod.block(3 * i, 3 * j, 3, 3) = a.matrix()(i, j) * b.matrix();
  const DensityOperator rho(SubsystemDims{2, 3}, prod);
  EXPECT_LT(fixtures::max_abs_diff(partial_trace(rho, {Subsystem{1}}).matrix(), a.matrix()), 1e-15);
  EXPECT_LT(fixtures::max_abs_diff(partial_trace(rho, {Subsystem{2}}).matrix(), b.matrix()), 1e-15);
}

TEST(PartialTrace, MatchesBruteForce) {
  for (const auto& rho : fixtures::random_states()) {
    const auto dims = fixtures::raw_dims(rho.dims());
    for (std::uint64_t mask = 1; mask + 1 < (1ULL << dims.size()); ++mask) {
      std::vector<std::size_t> keep;
      for (std::size_t m = 0; m < dims.size(); ++m) {
        if (mask & (1ULL << m)) keep.push_back(m);
      }
      const auto got = partial_trace(rho, SubsystemSet::from_mask(mask));
      ASSERT_LT(fixtures::max_abs_diff(got.matrix(), oracle::trace_keep(rho.matrix(), dims, keep)), 1e-14);
      ASSERT_NEAR(got.matrix().trace().real(), 1.0, 1e-12);
      ASSERT_EQ(got.matrix(), got.matrix().adjoint().eval());
    }
  }
}

TEST(PartialTrace, RejectsEmptyKeep) {
  const auto rho = pure_to_density(ghz(3));
  EXPECT_THROW(partial_trace(rho, SubsystemSet{}), InvalidArgument);
  EXPECT_THROW(partial_trace(rho, {Subsystem{4}}), InvalidArgument);
}

// The display of the reduced pair's transpose lists the basis as 00, 10, 01, 11
// (first qubit least significant); rows 1 and 2 swap under our convention.
TEST(PartialTrace, MuFamilyReducedPairTranspose) {
  const double mu0 = 0.5, mu1 = 0.5;
  const auto red = partial_trace(pure_to_density(mu_family(mu0)), {Subsystem{1}, Subsystem{2}});
  const auto t = global_pt(red, Subsystem{1}).matrix();
  const double s = std::sqrt(mu0 * mu1 / 3.0);
  Matrix shown(4, 4);
  shown << mu0, 0, 0, 0,
           0, mu1 / 3, s, mu1 / 3,
           0, s, 0, 0,
           0, mu1 / 3, 0, 2 * mu1 / 3;
  const std::array<int, 4> perm{0, 2, 1, 3};
  Matrix ours(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) ours(perm[r], perm[c]) = shown(r, c);
  EXPECT_LT(fixtures::max_abs_diff(t, ours), 1e-15);
}

TEST(Measurement, MuFamilyOutcomes) {
  for (double mu0 : {0.1, 0.5, 0.9}) {
    const double mu1 = 1.0 - mu0;
    const auto psi = mu_family(mu0);
    const auto m0 = project_and_renormalize(psi, Subsystem{3}, 0);
    const auto m1 = project_and_renormalize(psi, Subsystem{3}, 1);
    EXPECT_NEAR(m0.probability, (2 * mu0 + 1) / 3, 1e-15);
    EXPECT_NEAR(m1.probability, 2 * mu1 / 3, 1e-15);
    ASSERT_TRUE(m0.state && m1.state);
    const auto& a0 = m0.state->amplitudes();
    EXPECT_NEAR(std::abs(a0[0]), std::sqrt(3 * mu0 / (2 * mu0 + 1)), 1e-14);  // |000>
    EXPECT_NEAR(std::abs(a0[6]), std::sqrt(mu1 / (2 * mu0 + 1)), 1e-14);      // |110>
    const auto& a1 = m1.state->amplitudes();
    EXPECT_NEAR(std::abs(a1[5]), std::sqrt(0.5), 1e-14);  // |101>
    EXPECT_NEAR(std::abs(a1[7]), std::sqrt(0.5), 1e-14);  // |111>
  }
}

TEST(Measurement, ImpossibleOutcomeIsAbsent) {
  Vector v = Vector::Zero(8);
  v[0] = 1.0;
  const auto m = project_and_renormalize(PureState(SubsystemDims{2, 2, 2}, v), Subsystem{1}, 1);
  EXPECT_EQ(m.probability, 0.0);
  EXPECT_FALSE(m.state.has_value());
  EXPECT_THROW(project_and_renormalize(PureState(SubsystemDims{2, 2, 2}, v), Subsystem{1}, 2), InvalidArgument);
}

TEST(Measurement, ProbabilitiesSumToOne) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto psi = random_pure(SubsystemDims{2, 3, 2}, seed);
    for (std::size_t p = 1; p <= 3; ++p) {
      double total = 0.0;
      for (std::size_t k = 0; k < psi.dims().dim(Subsystem{p}); ++k) {
        total += project_and_renormalize(psi, Subsystem{p}, k).probability;
      }
      ASSERT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(Lbps, Counts) {
  EXPECT_EQ(count_lbps(ghz(3)), 2U);
  EXPECT_EQ(count_lbps(mu_family(0.3)), 4U);
  EXPECT_EQ(count_lbps(qutrit_family({0.5, 0.5, 0.5, 0.5})), 4U);
}

TEST(PureToDensity, PurityOfRandomStates) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    ASSERT_NEAR(pure_to_density(random_pure(SubsystemDims{2, 2, 3}, seed)).purity(), 1.0, 1e-10);
  }
}
