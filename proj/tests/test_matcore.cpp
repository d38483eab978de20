#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "kappa/matcore.hpp"

namespace kappa {
namespace {

ComplexMatrix random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  return a;
}

HermitianOperator random_hermitian(int n, std::mt19937_64& rng) {
  ComplexMatrix a = random_matrix(n, rng);
  return HermitianOperator(a + a.adjoint());
}

ComplexMatrix diag(std::initializer_list<double> v) {
  ComplexMatrix m = ComplexMatrix::Zero(v.size(), v.size());
  int i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

TEST(Kron, IdentityAndDiagonal) {
  EXPECT_TRUE(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2))
                  .isApprox(ComplexMatrix::Identity(4, 4)));
  EXPECT_LT(max_abs_diff(kron(diag({1, 2}), diag({3, 4})), diag({3, 4, 6, 8})), 1e-15);
}

TEST(Kron, ZZOnBasisState) {
  ComplexMatrix z = diag({1, -1});
  ComplexVector ket = ComplexVector::Zero(4);
  ket(3) = 1.0;
  // Oracle: explicit 4x4 Z(x)Z.
  ComplexMatrix zz = diag({1, -1, -1, 1});
  EXPECT_LT((kron(z, z) * ket - zz * ket).norm(), 1e-15);
  EXPECT_NEAR((kron(z, z) * ket)(3).real(), 1.0, 1e-15);
}

TEST(PartialTranspose, PhiTwoIsHalfSwap) {
  BipartitePartition p(2, 2);
  HermitianOperator pt = partial_transpose(max_entangled(2), p, Subsystem::B);
  EXPECT_LT(max_abs_diff(pt.matrix(), (swap_operator(2) * 0.5).matrix()), 1e-15);
  RealVector ev = hermitian_eigenvalues(pt);
  EXPECT_NEAR(ev(0), -0.5, 1e-12);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(ev(i), 0.5, 1e-12);
}

TEST(PartialTranspose, ProductStateAndInvolution) {
  std::mt19937_64 rng(1);
  HermitianOperator a = random_hermitian(2, rng), b = random_hermitian(3, rng);
  BipartitePartition p(2, 3);
  HermitianOperator pt = partial_transpose(kron(a, b), p, Subsystem::B);
  EXPECT_LT(max_abs_diff(pt.matrix(), kron(a.matrix(), b.matrix().transpose())), 1e-14);
  HermitianOperator m = random_hermitian(6, rng);
  HermitianOperator twice = partial_transpose(partial_transpose(m, p, Subsystem::B), p, Subsystem::B);
  EXPECT_EQ(twice.matrix(), m.matrix());
  EXPECT_NEAR(partial_transpose(m, p, Subsystem::A).trace(), m.trace(), 1e-12);
}

TEST(PartialTranspose, TensorFactorizes) {
  std::mt19937_64 rng(2);
  HermitianOperator m = random_hermitian(4, rng), n = random_hermitian(4, rng);
  // (M (x) N)^{T_B T_B'} = M^{T_B} (x) N^{T_B'} with ordering A B A' B'.
  ComplexMatrix lhs = partial_transpose(kron(m.matrix(), n.matrix()), {2, 2, 2, 2},
                                        {false, true, false, true});
  BipartitePartition p(2, 2);
  ComplexMatrix rhs = kron(partial_transpose(m, p, Subsystem::B).matrix(),
                           partial_transpose(n, p, Subsystem::B).matrix());
  EXPECT_LT(max_abs_diff(lhs, rhs), 1e-14);
}

TEST(PartialTrace, Marginals) {
  BipartitePartition p(2, 2);
  EXPECT_LT(max_abs_diff(partial_trace(max_entangled(2), p, Subsystem::B).matrix(),
                         0.5 * ComplexMatrix::Identity(2, 2)),
            1e-15);
  std::mt19937_64 rng(3);
  HermitianOperator a = random_hermitian(2, rng), b = random_hermitian(3, rng);
  HermitianOperator tr_a = partial_trace(kron(a, b), BipartitePartition(2, 3), Subsystem::A);
  EXPECT_LT(max_abs_diff(tr_a.matrix(), a.trace() * b.matrix()), 1e-13);
}

TEST(PartialTrace, MatchesIndexLoopOracle) {
  std::mt19937_64 rng(4);
  HermitianOperator m = random_hermitian(6, rng);
  HermitianOperator out = partial_trace(m, BipartitePartition(2, 3), Subsystem::B);
  ComplexMatrix oracle = ComplexMatrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 3; ++k) oracle(i, j) += m.matrix()(i * 3 + k, j * 3 + k);
  EXPECT_LT(max_abs_diff(out.matrix(), oracle), 1e-12);
  EXPECT_NEAR(out.trace(), m.trace(), 1e-12);
}

TEST(PermuteSystems, SwapOfTwoFactors) {
  std::mt19937_64 rng(5);
  HermitianOperator a = random_hermitian(2, rng), b = random_hermitian(3, rng);
  ComplexMatrix ab = kron(a.matrix(), b.matrix());
  ComplexMatrix ba = permute_systems(ab, {2, 3}, {1, 0});
  EXPECT_LT(max_abs_diff(ba, kron(b.matrix(), a.matrix())), 1e-15);
}

TEST(PermuteSystems, ExhaustiveThreeFactorPermutations) {
  std::mt19937_64 rng(6);
  std::vector<int> dims = {2, 3, 2};
  std::vector<HermitianOperator> f = {random_hermitian(2, rng), random_hermitian(3, rng),
                                      random_hermitian(2, rng)};
  ComplexMatrix full = kron(kron(f[0].matrix(), f[1].matrix()), f[2].matrix());
  std::vector<int> perm = {0, 1, 2};
  do {
    ComplexMatrix expect = kron(kron(f[perm[0]].matrix(), f[perm[1]].matrix()), f[perm[2]].matrix());
    EXPECT_LT(max_abs_diff(permute_systems(full, dims, perm), expect), 1e-14);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(HermitianEig, PauliZAndPhiPartialTranspose) {
  EXPECT_LT((hermitian_eigenvalues(HermitianOperator(diag({1, -1}))) - RealVector::Map(
                 std::vector<double>{-1, 1}.data(), 2))
                .cwiseAbs()
                .maxCoeff(),
            1e-15);
  RealVector ev =
      hermitian_eigenvalues(partial_transpose(max_entangled(2), {2, 2}, Subsystem::B));
  RealVector expect(4);
  expect << -0.5, 0.5, 0.5, 0.5;
  EXPECT_LT((ev - expect).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(HermitianEig, ReconstructionAndTrace) {
  std::mt19937_64 rng(7);
  for (int n : {2, 4, 9, 16}) {
    HermitianOperator m = random_hermitian(n, rng);
    EigenDecomposition e = hermitian_eig(m);
    ComplexMatrix rec = e.vectors * e.values.asDiagonal() * e.vectors.adjoint();
    double scale = op_norm(m);
    EXPECT_LT(max_abs_diff(rec, m.matrix()), 1e-9 * n * scale);
    EXPECT_LT(max_abs_diff(e.vectors.adjoint() * e.vectors, ComplexMatrix::Identity(n, n)), 1e-9);
    EXPECT_NEAR(e.values.sum(), m.trace(), 1e-10 * n);
    for (int i = 1; i < n; ++i) EXPECT_LE(e.values(i - 1), e.values(i));
  }
}

TEST(Norms, MaxEntangledPartialTransposeTraceNorm) {
  for (int m = 2; m <= 5; ++m) {
    HermitianOperator pt = partial_transpose(max_entangled(m), {m, m}, Subsystem::B);
    EXPECT_NEAR(trace_norm(pt), m, 1e-12);
  }
  Norms id = norms(HermitianOperator::identity(3));
  EXPECT_NEAR(id.trace_norm, 3.0, 1e-15);
  EXPECT_NEAR(id.op_norm, 1.0, 1e-15);
  EXPECT_LT(max_abs_diff(abs_op(HermitianOperator(diag({1, -1}))).matrix(),
                         ComplexMatrix::Identity(2, 2)),
            1e-15);
}

TEST(StandardOperators, Projectors) {
  for (int d : {2, 3, 4}) {
    StandardOperators s = standard_operators(d);
    ComplexMatrix id = ComplexMatrix::Identity(d * d, d * d);
    EXPECT_LT(max_abs_diff(s.swap.matrix() * s.swap.matrix(), id), 1e-15);
    EXPECT_LT(max_abs_diff(s.proj_sym.matrix() + s.proj_antisym.matrix(), id), 1e-15);
    EXPECT_LT(max_abs_diff(s.proj_sym.matrix() * s.proj_sym.matrix(), s.proj_sym.matrix()), 1e-15);
    EXPECT_LT((s.proj_sym.matrix() * s.proj_antisym.matrix()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_NEAR(s.proj_antisym.trace(), d * (d - 1) / 2.0, 1e-12);
    EXPECT_LT(max_abs_diff(s.phi.matrix() * d, s.gamma.matrix()), 1e-15);
  }
  StandardOperators q = standard_operators(2);
  EXPECT_NEAR(q.proj_antisym.trace(), 1.0, 1e-15);
  EXPECT_NEAR(q.proj_sym.trace(), 3.0, 1e-15);
}

TEST(PsdCheck, Examples) {
  EXPECT_TRUE(psd_check(HermitianOperator::identity(4), 1e-9));
  EXPECT_FALSE(psd_check(partial_transpose(max_entangled(2), {2, 2}, Subsystem::B), 1e-9));
  EXPECT_TRUE(psd_check(HermitianOperator::zero(3), 1e-9));
}

TEST(HermitianOperator, RejectsNonHermitian) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(HermitianOperator{m}, ParameterError);
  EXPECT_THROW(partial_transpose(HermitianOperator::identity(3), {2, 2}, Subsystem::B),
               DimensionError);
}

}  // namespace
}  // namespace kappa
