#include <cmath>

#include <gtest/gtest.h>

#include "kappa/random.hpp"
#include "kappa/states.hpp"
#include "oracles.hpp"

namespace kappa {
namespace {

double pt_min_eig(const DensityMatrix& rho) {
  const BipartitePartition& p = rho.partition();
  return lambda_min(HermitianOperator(oracle::pt_second(rho.matrix(), p.d_a, p.d_b)));
}

TEST(Isotropic, FullWeightIsMaxEntangled) {
  for (int d : {2, 3, 4}) {
    EXPECT_LT(max_abs_diff(make_isotropic(1.0, d).matrix(), max_entangled(d).matrix()), 1e-14);
  }
}

TEST(Isotropic, QuarterWeightIsMaximallyMixed) {
  ComplexMatrix rho = make_isotropic(0.25, 2).matrix();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(rho(i, j) - (i == j ? 0.25 : 0.0)), 0.0, 1e-15);
}

TEST(Isotropic, PptBoundary) {
  for (int d : {2, 3, 4}) {
    EXPECT_NEAR(pt_min_eig(make_isotropic(1.0 / d, d)), 0.0, 1e-9);
    EXPECT_GT(pt_min_eig(make_isotropic(1.0 / d - 1e-7, d)), 0.0);
    EXPECT_LT(pt_min_eig(make_isotropic(1.0 / d + 1e-7, d)), 0.0);
  }
}

TEST(Isotropic, RejectsOutOfRange) {
  EXPECT_THROW(make_isotropic(1.1, 2), ParameterError);
  EXPECT_THROW(make_isotropic(-0.1, 2), ParameterError);
  EXPECT_THROW(make_isotropic(0.5, 1), ParameterError);
}

TEST(Werner, PptBoundary) {
  for (int d : {2, 3}) {
    EXPECT_NEAR(pt_min_eig(make_werner(0.5, d)), 0.0, 1e-9);
    EXPECT_GT(pt_min_eig(make_werner(0.5 - 1e-7, d)), 0.0);
    EXPECT_LT(pt_min_eig(make_werner(0.5 + 1e-7, d)), 0.0);
  }
}

TEST(Werner, ZeroWeightIsSymmetric) {
  for (int d : {2, 3}) {
    ComplexMatrix pa = standard_operators(d).proj_antisym.matrix();
    ComplexMatrix r = make_werner(0.0, d).matrix();
    EXPECT_LT((pa * r * pa).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Werner, SingletHasUnitNegativity) {
  EXPECT_NEAR(oracle::log_negativity(make_werner(1.0, 2).matrix(), 2, 2), 1.0, 1e-12);
}

TEST(MaxCorrelated, PlusStateGivesPhi2) {
  ComplexMatrix c = ComplexMatrix::Constant(2, 2, 0.5);
  EXPECT_LT(max_abs_diff(make_max_correlated(c).matrix(), max_entangled(2).matrix()), 1e-15);
}

TEST(MaxCorrelated, MixedGivesClassicalCorrelation) {
  DensityMatrix r = make_max_correlated(ComplexMatrix::Identity(2, 2) / 2.0);
  ComplexMatrix want = ComplexMatrix::Zero(4, 4);
  want(0, 0) = want(3, 3) = 0.5;
  EXPECT_LT(max_abs_diff(r.matrix(), want), 1e-15);
  EXPECT_GE(pt_min_eig(r), -1e-12);
}

TEST(MaxCorrelated, OmegaHatMatchesCMatrix) {
  for (double a : {0.0, 0.3, 0.7, 1.0}) {
    ComplexMatrix c(2, 2);
    c << 0.5, a / 2, a / 2, 0.5;
    EXPECT_LT(max_abs_diff(make_max_correlated(c).matrix(), make_omega_hat(a).matrix()), 1e-15);
  }
}

TEST(MaxCorrelated, AbsolutePartialTransposeIsFixed) {
  Rng rng(7);
  for (int d : {2, 3}) {
    ComplexMatrix g = gaussian_matrix(d, d, rng);
    ComplexMatrix c = g * g.adjoint();
    c /= c.trace().real();
    DensityMatrix r = make_max_correlated(c);
    BipartitePartition p = r.partition();
    HermitianOperator abs_pt = abs_op(HermitianOperator(partial_transpose(r.op(), p, Subsystem::B)));
    ComplexMatrix again = partial_transpose(abs_pt, p, Subsystem::B).matrix();
    EXPECT_LT(max_abs_diff(again, abs_pt.matrix()), 1e-10);
  }
}

TEST(MaxCorrelated, RejectsInvalidC) {
  ComplexMatrix c = ComplexMatrix::Identity(2, 2);
  EXPECT_THROW(make_max_correlated(c), ParameterError);
  ComplexMatrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  EXPECT_THROW(make_max_correlated(neg), ParameterError);
}

TEST(Special, RhoVIsAntisymmetricRankTwo) {
  DensityMatrix r = make_rho_v();
  EXPECT_NEAR(r.op().trace(), 1.0, 1e-14);
  RealVector ev = hermitian_eigenvalues(r.op());
  int rank = 0;
  for (double x : ev) rank += x > 1e-12;
  EXPECT_EQ(rank, 2);
  ComplexMatrix ps = standard_operators(3).proj_sym.matrix();
  EXPECT_LT((ps * r.matrix() * ps).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Special, NonConvexMixture) {
  ComplexMatrix want = 0.5 * max_entangled(2).matrix();
  want(0, 0) += 0.25;
  want(3, 3) += 0.25;
  EXPECT_LT(max_abs_diff(make_special(SpecialState::NonConvexMixture).matrix(), want), 1e-15);
}

TEST(Special, MonogamyMarginalNegativity) {
  TripartiteState t = make_monogamy_triple();
  EXPECT_NEAR(oracle::log_negativity(t.ab().matrix(), 2, 2), std::log2(1.5), 1e-12);
  EXPECT_NEAR(oracle::log_negativity(t.ac().matrix(), 2, 2), std::log2(1.5), 1e-12);
  EXPECT_EQ(t.a_bc().partition(), (BipartitePartition{2, 4}));
}

TEST(BellMix, PureWeightsGiveBellStates) {
  DensityMatrix phi = make_bell_mix({1, 0, 0, 0});
  EXPECT_LT(max_abs_diff(phi.matrix(), max_entangled(2).matrix()), 1e-15);
  EXPECT_THROW(make_bell_mix({0.5, 0.6, 0, 0}), ParameterError);
}

TEST(RandomDensity, ValidAndDeterministic) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    DensityMatrix a = random_density({2, 3}, seed);
    EXPECT_NEAR(a.op().trace(), 1.0, 1e-12);
    EXPECT_GE(lambda_min(a.op()), -1e-12);
    EXPECT_EQ(max_abs_diff(a.matrix(), random_density({2, 3}, seed).matrix()), 0.0);
  }
  EXPECT_GT(max_abs_diff(random_density({2, 2}, 1).matrix(), random_density({2, 2}, 2).matrix()), 1e-3);
}

TEST(DensityMatrix, RejectsInvalidOperators) {
  EXPECT_THROW(DensityMatrix(HermitianOperator::identity(4), {2, 2}), ParameterError);
  ComplexMatrix neg = ComplexMatrix::Zero(4, 4);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix(HermitianOperator(neg), {2, 2}), ParameterError);
  EXPECT_THROW(DensityMatrix(HermitianOperator::identity(4) * 0.25, {2, 3}), DimensionError);
}

TEST(Tensor, GroupsFactorsByParty) {
  DensityMatrix a = random_density({2, 2}, 3);
  DensityMatrix b = random_density({2, 2}, 4);
  DensityMatrix t = tensor(a, b);
  EXPECT_EQ(t.partition(), (BipartitePartition{4, 4}));
  // Entry <a1 a2 b1 b2| T |a1' a2' b1' b2'> = <a1 b1|A|a1' b1'> <a2 b2|B|a2' b2'>.
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      int a1 = i >> 3 & 1, a2 = i >> 2 & 1, b1 = i >> 1 & 1, b2 = i & 1;
      int c1 = j >> 3 & 1, c2 = j >> 2 & 1, d1 = j >> 1 & 1, d2 = j & 1;
      Complex want = a.matrix()(2 * a1 + b1, 2 * c1 + d1) * b.matrix()(2 * a2 + b2, 2 * c2 + d2);
      EXPECT_LT(std::abs(t.matrix()(i, j) - want), 1e-15);
    }
}

TEST(MakeState, FamilyRoundTrip) {
  StateFamily f;
  f.kind = StateFamily::Kind::Werner;
  f.p = 0.8;
  f.d = 3;
  DensityMatrix w = make_state(f);
  ASSERT_TRUE(w.family().has_value());
  EXPECT_EQ(w.family()->kind, StateFamily::Kind::Werner);
  EXPECT_LT(max_abs_diff(w.matrix(), make_werner(0.8, 3).matrix()), 1e-15);
}

}  // namespace
}  // namespace kappa
