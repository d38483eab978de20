#include <cmath>

#include <gtest/gtest.h>

#include "kappa/channels.hpp"
#include "kappa/random.hpp"
#include "oracles.hpp"

namespace kappa {
namespace {

ComplexMatrix gamma(int d) { return gamma_operator(d).matrix(); }

void expect_same_channel(const QuantumChannel& a, const QuantumChannel& b, double tol = 1e-12) {
  ASSERT_EQ(a.d_in(), b.d_in());
  ASSERT_EQ(a.d_out(), b.d_out());
  EXPECT_LT(max_abs_diff(a.choi().matrix(), b.choi().matrix()), tol);
}

ComplexMatrix heisenberg_weyl(int d, int a, int b) {
  const double pi = std::acos(-1.0);
  ComplexMatrix x = ComplexMatrix::Zero(d, d), z = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    x((i + a) % d, i) = 1.0;
    z(i, i) = std::polar(1.0, 2 * pi * b * i / d);
  }
  return x * z;
}

TEST(ChoiFromKraus, IdentityGivesGamma) {
  for (int d : {2, 3}) {
    QuantumChannel id = choi_from_kraus({ComplexMatrix::Identity(d, d)}, d, d);
    EXPECT_LT(max_abs_diff(id.choi().matrix(), gamma(d)), 1e-15);
  }
}

TEST(ChoiFromKraus, FullDampingIsConstant) {
  QuantumChannel ad = make_channel(ChannelFamily::amplitude_damping(1.0));
  ComplexMatrix ket0 = ComplexMatrix::Zero(2, 2);
  ket0(0, 0) = 1.0;
  EXPECT_LT(max_abs_diff(ad.choi().matrix(), kron(ComplexMatrix::Identity(2, 2), ket0)), 1e-15);
}

TEST(ChoiFromKraus, MatchesDefinitionOracle) {
  for (int d : {2, 3}) {
    for (const ChannelFamily& f :
         {ChannelFamily::erasure(0.3, d), ChannelFamily::depolarizing(0.4, d), ChannelFamily::dephasing(0.2, d)}) {
      std::vector<ComplexMatrix> k = kraus_operators(f);
      EXPECT_LT(max_abs_diff(make_channel(f).choi().matrix(), oracle::choi_from_kraus(k)), 1e-14);
    }
  }
  ComplexMatrix e0 = ComplexMatrix::Zero(2, 2), e1 = ComplexMatrix::Zero(2, 2);
  e0(0, 0) = 1.0;
  e0(1, 1) = std::sqrt(0.5);
  e1(0, 1) = std::sqrt(0.5);
  EXPECT_LT(max_abs_diff(make_channel(ChannelFamily::amplitude_damping(0.5)).choi().matrix(),
                         oracle::choi_from_kraus({e0, e1})),
            1e-15);
}

TEST(ChoiFromKraus, RejectsNonTracePreserving) {
  EXPECT_THROW(choi_from_kraus({0.9 * ComplexMatrix::Identity(2, 2)}, 2, 2), ParameterError);
}

TEST(MakeChannel, ErasureStructure) {
  double p = 0.35;
  QuantumChannel e = make_channel(ChannelFamily::erasure(p, 2));
  EXPECT_EQ(e.d_out(), 3);
  ComplexMatrix want = ComplexMatrix::Zero(6, 6);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) want(i * 3 + i, j * 3 + j) += 1 - p;
    want(i * 3 + 2, i * 3 + 2) += p;
  }
  EXPECT_LT(max_abs_diff(e.choi().matrix(), want), 1e-15);
}

TEST(MakeChannel, DephasingChoiIsBellMixture) {
  double q = 0.3;
  QuantumChannel n = make_channel(ChannelFamily::dephasing(q));
  ComplexMatrix psi2 = max_entangled(2).matrix();
  psi2(0, 3) = psi2(3, 0) = -0.5;
  ComplexMatrix want = 2 * ((1 - q) * max_entangled(2).matrix() + q * psi2);
  EXPECT_LT(max_abs_diff(n.choi().matrix(), want), 1e-15);
}

TEST(MakeChannel, DepolarizingChoiIsIsotropic) {
  for (int d : {2, 3}) {
    double p = 0.3;
    QuantumChannel n = make_channel(ChannelFamily::depolarizing(p, d));
    EXPECT_LT(max_abs_diff(n.choi_state().matrix(), make_isotropic(1 - p, d).matrix()), 1e-14);
  }
}

TEST(MakeChannel, RejectsBadParameters) {
  EXPECT_THROW(ChannelFamily::erasure(1.2, 2), ParameterError);
  EXPECT_THROW(ChannelFamily::dephasing(-0.1), ParameterError);
  EXPECT_THROW(ChannelFamily::amplitude_damping(2.0), ParameterError);
}

TEST(Twirl, FixesMaxEntangledAndIsCppt) {
  for (int m : {2, 3}) {
    QuantumChannel t = make_channel(ChannelFamily::isotropic_twirl(m));
    ComplexMatrix out = apply_operator(t, max_entangled(m).matrix(), 1);
    EXPECT_LT(max_abs_diff(out, max_entangled(m).matrix()), 1e-14);
    EXPECT_TRUE(is_cppt_bipartite(t.choi(), local_layout(m, m, m, m)));
    DensityMatrix rho = random_density({m, m}, 40 + m);
    DensityMatrix tw(HermitianOperator(apply_operator(t, rho.matrix(), 1)), {m, m});
    double f = (rho.matrix() * max_entangled(m).matrix()).trace().real();
    EXPECT_LT(max_abs_diff(tw.matrix(), make_isotropic(f, m).matrix()), 1e-13);
  }
}

TEST(Apply, IdentityAndDamping) {
  DensityMatrix rho = random_density({2, 2}, 9);
  EXPECT_LT(max_abs_diff(apply(make_channel(ChannelFamily::identity(2)), rho).matrix(), rho.matrix()), 1e-15);
  DensityMatrix out = apply(make_channel(ChannelFamily::amplitude_damping(1.0)), rho);
  ComplexMatrix ket0 = ComplexMatrix::Zero(2, 2);
  ket0(0, 0) = 1.0;
  ComplexMatrix reduced = partial_trace(rho.matrix(), {2, 2}, {true, false});
  EXPECT_LT(max_abs_diff(out.matrix(), kron(reduced, ket0)), 1e-15);
  EXPECT_THROW(apply(make_channel(ChannelFamily::identity(3)), rho), DimensionError);
}

TEST(Apply, ContractionMatchesKrausOracle) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    int din = 2 + seed % 2, dout = 2 + (seed / 2) % 2, dc = 2;
    std::vector<ComplexMatrix> k = random_kraus(din, dout, 2 + seed % 2, seed);
    QuantumChannel n = choi_from_kraus(k, din, dout);
    DensityMatrix rho = random_density({dc, din}, 1000 + seed);
    ComplexMatrix want = oracle::apply_kraus_on_last(k, rho.matrix(), dc);
    EXPECT_LT(max_abs_diff(apply(n, rho).matrix(), want), 1e-12) << "seed " << seed;
  }
}

TEST(Apply, GammaReproducesChoi) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    QuantumChannel n = random_channel(2, 3, 2, seed);
    EXPECT_LT(max_abs_diff(apply_operator(n, gamma(2), 2), n.choi().matrix()), 1e-13);
  }
}

TEST(Compose, IdentityIsNeutral) {
  QuantumChannel n = random_channel(2, 3, 2, 4);
  expect_same_channel(compose(make_channel(ChannelFamily::identity(3)), n), n);
  expect_same_channel(compose(n, make_channel(ChannelFamily::identity(2))), n);
}

TEST(Compose, DephasingParametersCombine) {
  for (double q : {0.1, 0.3})
    for (double q2 : {0.2, 0.45}) {
      QuantumChannel c = compose(make_channel(ChannelFamily::dephasing(q)), make_channel(ChannelFamily::dephasing(q2)));
      expect_same_channel(c, make_channel(ChannelFamily::dephasing(q + q2 - 2 * q * q2)));
    }
}

TEST(Compose, ActsSequentially) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    QuantumChannel n = random_channel(2, 3, 2, seed);
    QuantumChannel m = random_channel(3, 2, 3, seed + 50);
    DensityMatrix rho = random_density({2, 2}, seed + 100);
    ComplexMatrix a = apply(compose(m, n), rho).matrix();
    ComplexMatrix b = apply(m, apply(n, rho)).matrix();
    EXPECT_LT(max_abs_diff(a, b), 1e-10);
  }
}

TEST(Tensor, IdentitiesMultiply) {
  expect_same_channel(tensor(make_channel(ChannelFamily::identity(2)), make_channel(ChannelFamily::identity(2))),
                      make_channel(ChannelFamily::identity(4)));
}

TEST(Tensor, MatchesKronOfKraus) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::vector<ComplexMatrix> k1 = random_kraus(2, 3, 2, seed), k2 = random_kraus(2, 2, 2, seed + 9);
    std::vector<ComplexMatrix> k;
    for (const auto& a : k1)
      for (const auto& b : k2) k.push_back(kron(a, b));
    QuantumChannel t = tensor(choi_from_kraus(k1, 2, 3), choi_from_kraus(k2, 2, 2));
    EXPECT_LT(max_abs_diff(t.choi().matrix(), oracle::choi_from_kraus(k)), 1e-13);
  }
}

TEST(Mix, ConvexCombinationOfChannels) {
  QuantumChannel id = make_channel(ChannelFamily::identity(2));
  QuantumChannel full = make_channel(ChannelFamily::dephasing(0.5));
  expect_same_channel(mix({id, full}, {0.5, 0.5}), make_channel(ChannelFamily::dephasing(0.25)));
  EXPECT_THROW(mix({id, full}, {0.5, 0.6}), ParameterError);
}

TEST(Checks, DephasingBindingOnlyAtHalf) {
  for (double q : {0.0, 0.2, 0.4, 0.6, 1.0}) {
    EXPECT_FALSE(channel_checks(make_channel(ChannelFamily::dephasing(q))).ppt_binding) << q;
  }
  ChannelChecks c = channel_checks(make_channel(ChannelFamily::dephasing(0.5)));
  EXPECT_TRUE(c.ppt_binding);
  EXPECT_TRUE(c.cp);
  EXPECT_TRUE(c.tp);
}

TEST(Checks, CompletelyDephasingAndFullErasureBind) {
  std::vector<ComplexMatrix> proj;
  for (int i = 0; i < 3; ++i) {
    ComplexMatrix p = ComplexMatrix::Zero(3, 3);
    p(i, i) = 1.0;
    proj.push_back(p);
  }
  EXPECT_TRUE(channel_checks(choi_from_kraus(proj, 3, 3)).ppt_binding);
  EXPECT_TRUE(channel_checks(make_channel(ChannelFamily::dephasing(2.0 / 3, 3))).ppt_binding);
  EXPECT_TRUE(channel_checks(make_channel(ChannelFamily::erasure(1.0, 2))).ppt_binding);
}

TEST(Cppt, SwapIsNotLocalUnitaryIs) {
  EXPECT_FALSE(is_cppt_bipartite(swap_channel(2).choi(), local_layout(2, 2, 2, 2)));
  Rng rng(3);
  ComplexMatrix u = kron(random_unitary(2, rng), random_unitary(2, rng));
  QuantumChannel local = choi_from_kraus({u}, 4, 4);
  EXPECT_TRUE(is_cppt_bipartite(local.choi(), local_layout(2, 2, 2, 2)));
  EXPECT_THROW(is_cppt_bipartite(local.choi(), local_layout(2, 3, 2, 2)), DimensionError);
}

TEST(Covariance, HeisenbergWeylIntertwines) {
  for (int d : {2, 3}) {
    for (const ChannelFamily& f :
         {ChannelFamily::erasure(0.3, d), ChannelFamily::depolarizing(0.2, d), ChannelFamily::dephasing(0.4, d)}) {
      QuantumChannel n = make_channel(f);
      EXPECT_TRUE(f.covariant());
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          ComplexMatrix u = heisenberg_weyl(d, a, b);
          ComplexMatrix v = ComplexMatrix::Identity(n.d_out(), n.d_out());
          v.topLeftCorner(d, d) = u;
          ComplexMatrix in = kron(ComplexMatrix::Identity(d, d), u) * max_entangled(d).matrix() *
                             kron(ComplexMatrix::Identity(d, d), u).adjoint();
          ComplexMatrix lhs = apply_operator(n, in, d);
          ComplexMatrix rhs = kron(ComplexMatrix::Identity(d, d), v) * apply_operator(n, max_entangled(d).matrix(), d) *
                              kron(ComplexMatrix::Identity(d, d), v).adjoint();
          EXPECT_LT(max_abs_diff(lhs, rhs), 1e-13);
        }
    }
  }
  EXPECT_FALSE(ChannelFamily::amplitude_damping(0.3).covariant());
}

TEST(Interleave, ExhaustiveIndexCheck) {
  int r1 = 2, b1 = 3, r2 = 2, b2 = 2;
  int n = r1 * b1 * r2 * b2;
  ComplexMatrix k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) k(i, j) = Complex(i, j);
  ComplexMatrix out = interleave_choi(k, r1, b1, r2, b2);
  auto src = [&](int x1, int y1, int x2, int y2) { return ((x1 * b1 + y1) * r2 + x2) * b2 + y2; };
  auto dst = [&](int x1, int y1, int x2, int y2) { return ((x1 * r2 + x2) * b1 + y1) * b2 + y2; };
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      int x1 = a / (b1 * r2 * b2), y1 = a / (r2 * b2) % b1, x2 = a / b2 % r2, y2 = a % b2;
      int u1 = c / (b1 * r2 * b2), v1 = c / (r2 * b2) % b1, u2 = c / b2 % r2, v2 = c % b2;
      ASSERT_EQ(out(dst(x1, y1, x2, y2), dst(u1, v1, u2, v2)), k(src(x1, y1, x2, y2), src(u1, v1, u2, v2)));
    }
}

}  // namespace
}  // namespace kappa
