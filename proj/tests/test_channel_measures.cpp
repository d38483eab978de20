#include <cmath>

#include <gtest/gtest.h>

#include "kappa/channel_measures.hpp"
#include "kappa/random.hpp"

namespace kappa {
namespace {

QuantumChannel chan(const ChannelFamily& f) { return make_channel(f); }

double ekc(const QuantumChannel& n) { return e_kappa_channel(n).value_bits; }

QuantumChannel completely_dephasing() { return chan(ChannelFamily::dephasing(0.5)); }

TEST(EKappaChannel, Identity) {
  for (int d : {2, 3}) EXPECT_NEAR(ekc(chan(ChannelFamily::identity(d))), std::log2(d), 1e-6);
}

TEST(EKappaChannel, ErasureGrid) {
  for (double p = 0.0; p <= 1.0001; p += 0.25) {
    ChannelFamily f = ChannelFamily::erasure(std::min(p, 1.0), 2);
    EXPECT_NEAR(ekc(chan(f)), std::log2(2 * (1 - f.p) + f.p), 1e-5) << "p=" << p;
  }
}

TEST(EKappaChannel, DepolarizingCases) {
  for (double p : {0.0, 0.2, 0.5, 0.7, 1.0}) {
    double want = 1 - p >= 0.5 ? std::log2(2 * (1 - p)) : 0.0;
    EXPECT_NEAR(ekc(chan(ChannelFamily::depolarizing(p, 2))), want, 1e-5) << "p=" << p;
  }
}

TEST(EKappaChannel, DephasingQuarter) {
  EXPECT_NEAR(ekc(chan(ChannelFamily::dephasing(0.25))), std::log2(1.5), 1e-6);
}

TEST(EKappaChannel, QutritDephasingMatchesClosedForm) {
  for (double q : {0.1, 0.5, 0.9}) {
    ChannelFamily f = ChannelFamily::dephasing(q, 3);
    EXPECT_NEAR(ekc(chan(f)), *closed_form_channel(f), 1e-5);
  }
}

TEST(EKappaChannel, AmplitudeDampingEndpoints) {
  EXPECT_NEAR(ekc(chan(ChannelFamily::amplitude_damping(0.0))), 1.0, 1e-6);
  EXPECT_NEAR(ekc(chan(ChannelFamily::amplitude_damping(1.0))), 0.0, 1e-6);
}

TEST(EKappaChannel, WitnessesAndDuality) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    QuantumChannel n = random_channel(2, 2, 2, seed);
    ChannelMeasureResult r = e_kappa_channel(n);
    EXPECT_LE(r.gap, 1e-6);
    int d = 2;
    ComplexMatrix qt = partial_transpose(r.q_witness.matrix(), {d, d}, {false, true});
    ComplexMatrix jt = partial_transpose(n.choi().matrix(), {d, d}, {false, true});
    EXPECT_GE(lambda_min(r.q_witness), -1e-7);
    EXPECT_GE(lambda_min(HermitianOperator(qt - jt)), -1e-7);
    EXPECT_GE(lambda_min(HermitianOperator(qt + jt)), -1e-7);
    HermitianOperator marg(partial_trace(r.q_witness.matrix(), {d, d}, {true, false}));
    EXPECT_NEAR(lambda_max(marg), std::exp2(r.value_bits), 1e-6);
    ASSERT_TRUE(r.dual_witness.has_value());
    EXPECT_NEAR(r.dual_witness->rho_a.trace(), 1.0, 1e-6);
  }
}

TEST(EKappaChannel, NormalizationBoundAndFaithfulness) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    QuantumChannel n = random_channel(2, 3, 1 + seed % 3, seed);
    double e = ekc(n);
    EXPECT_LE(e, 1.0 + 1e-6);
    EXPECT_EQ(e <= 1e-6, channel_checks(n).ppt_binding) << "seed " << seed;
  }
  EXPECT_NEAR(ekc(completely_dephasing()), 0.0, 1e-6);
  EXPECT_NEAR(ekc(chan(ChannelFamily::erasure(1.0, 2))), 0.0, 1e-6);
}

TEST(EKappaChannel, Additivity) {
  for (std::uint64_t seed = 0; seed < 2; ++seed) {
    QuantumChannel a = random_channel(2, 2, 2, 10 + seed);
    QuantumChannel b = chan(ChannelFamily::amplitude_damping(0.2 + 0.3 * seed));
    EXPECT_NEAR(ekc(tensor(a, b)), ekc(a) + ekc(b), 1e-4);
  }
}

TEST(EKappaChannel, NotConvex) {
  QuantumChannel id = chan(ChannelFamily::identity(2));
  QuantumChannel mixed = mix({id, completely_dephasing()}, {0.5, 0.5});
  double e = ekc(mixed);
  EXPECT_NEAR(e, std::log2(1.5), 1e-6);
  EXPECT_GT(e, 0.5 * (ekc(id) + ekc(completely_dephasing())));
}

TEST(LowerByStates, Examples) {
  EXPECT_NEAR(e_kappa_channel_lower_by_states(chan(ChannelFamily::identity(2)), 3, 1), 1.0, 1e-6);
  EXPECT_NEAR(e_kappa_channel_lower_by_states(completely_dephasing(), 5, 2), 0.0, 1e-6);
  EXPECT_NEAR(e_kappa_channel_lower_by_states(chan(ChannelFamily::dephasing(0.25)), 3, 3), std::log2(1.5), 1e-6);
  QuantumChannel ad = chan(ChannelFamily::amplitude_damping(0.4));
  EXPECT_LE(e_kappa_channel_lower_by_states(ad, 8, 4), ekc(ad) + 1e-5);
}

TEST(OneShotChannel, BindingChannelIsFree) {
  SimulationCostReport r = one_shot_channel_cost(completely_dephasing());
  EXPECT_EQ(r.m_real, 1.0);
  EXPECT_EQ(*r.one_shot_bits, 0.0);
}

TEST(OneShotChannel, SandwichAndSimulation) {
  for (const QuantumChannel& n : {chan(ChannelFamily::identity(2)), chan(ChannelFamily::dephasing(0.25)),
                                  chan(ChannelFamily::amplitude_damping(0.4))}) {
    SimulationCostReport r = one_shot_channel_cost(n);
    EXPECT_GE(*r.one_shot_bits, r.lo_bits - 1e-4);
    EXPECT_LE(*r.one_shot_bits, r.hi_bits + 1e-4);
    ParallelSimulation s = build_parallel_simulation(n, r.m_integer, r.q_choi_witness);
    EXPECT_TRUE(s.report.all()) << "cppt " << s.report.cppt_min_eig << " tp " << s.report.tp_error;
  }
}

TEST(ParallelSimulation, IdentityWithSlackRank) {
  QuantumChannel id = chan(ChannelFamily::identity(2));
  ChannelFeasibilityResult f = one_shot_channel_feasibility(id, 3);
  EXPECT_GT(f.slack, 0);
  ParallelSimulation s = build_parallel_simulation(id, 3, f.q);
  EXPECT_TRUE(s.report.all());
}

TEST(ParallelSimulation, RejectsInfeasiblePair) {
  QuantumChannel id = chan(ChannelFamily::identity(2));
  HermitianOperator q = HermitianOperator::identity(4) * 0.5;
  try {
    build_parallel_simulation(id, 1, q);
    FAIL() << "expected rejection";
  } catch (const InfeasibleWitness& e) {
    EXPECT_NE(std::string(e.what()).find("violated"), std::string::npos);
  }
  EXPECT_THROW(build_parallel_simulation(id, 2, HermitianOperator::identity(4)), InfeasibleWitness);
}

TEST(SequentialBounds, Examples) {
  auto [lo, hi] = sequential_bounds(1.0, 2);
  EXPECT_NEAR(lo, std::log2(3.0), 1e-12);
  EXPECT_NEAR(hi, std::log2(7.0), 1e-12);
  for (int n : {1, 5}) {
    auto z = sequential_bounds(0.0, n);
    EXPECT_EQ(z.first, 0.0);
    EXPECT_EQ(z.second, 0.0);
  }
  for (double e : {0.3, 1.0, 1.7}) EXPECT_NEAR(sequential_bounds(e, 1).second, std::log2(std::exp2(e) + 1), 1e-12);
  EXPECT_THROW(sequential_bounds(1.0, 0), ParameterError);
}

TEST(AsymptoticCosts, CovariantFamilies) {
  SimulationCostReport e = asymptotic_costs(chan(ChannelFamily::erasure(0.5, 2)));
  EXPECT_NEAR(*e.parallel_asymptotic_bits, std::log2(1.5), 1e-6);
  EXPECT_NEAR(*e.sequential_asymptotic_bits, std::log2(1.5), 1e-6);
  ASSERT_TRUE(e.choi_state_bits.has_value());
  EXPECT_NEAR(*e.choi_state_bits, std::log2(1.5), 1e-6);
  SimulationCostReport d = asymptotic_costs(chan(ChannelFamily::depolarizing(0.3, 2)));
  EXPECT_NEAR(*d.parallel_asymptotic_bits, std::log2(1.4), 1e-6);
  SimulationCostReport a = asymptotic_costs(chan(ChannelFamily::amplitude_damping(0.5)));
  EXPECT_FALSE(a.choi_state_bits.has_value());
  EXPECT_NEAR(q_theta(chan(ChannelFamily::amplitude_damping(0.5))), *a.parallel_asymptotic_bits, 1e-4);
  auto [lo, hi] = a.sequential(3);
  EXPECT_LE(lo, hi);
}

TEST(QTheta, Examples) {
  EXPECT_NEAR(q_theta(chan(ChannelFamily::identity(2))), 1.0, 1e-6);
  EXPECT_NEAR(q_theta(completely_dephasing()), 0.0, 1e-6);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    QuantumChannel n = random_channel(2, 3, 2, 30 + seed);
    EXPECT_LE(q_theta(n), ekc(n) + 1e-5);
  }
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    QuantumChannel n = random_channel(2, 2, 2, 40 + seed);
    EXPECT_NEAR(q_theta(n), ekc(n), 1e-4);
  }
}

TEST(Gaussian, ClosedFormValues) {
  GaussianChannelParams p;
  p.kind = GaussianChannelParams::Kind::Thermal;
  p.eta = 0.5;
  p.n_b = 0.25;
  GaussianCost c = gaussian_cost(p);
  EXPECT_EQ(c.tag, GaussianCost::Tag::Value);
  EXPECT_EQ(c.bits, 1.0);
  p.eta = 1.0 / 3;
  p.n_b = 1;
  EXPECT_EQ(gaussian_cost(p).tag, GaussianCost::Tag::Zero);

  GaussianChannelParams a;
  a.kind = GaussianChannelParams::Kind::AdditiveNoise;
  a.xi = 0.5;
  EXPECT_EQ(gaussian_cost(a).bits, 1.0);
  a.xi = 1.0;
  EXPECT_EQ(gaussian_cost(a).tag, GaussianCost::Tag::Zero);

  GaussianChannelParams g;
  g.kind = GaussianChannelParams::Kind::Amplifier;
  g.gain = 2;
  g.n_b = 0.5;
  EXPECT_NEAR(gaussian_cost(g).bits, std::log2(3.0 / 2.0), 1e-15);
  g.n_b = 1;
  EXPECT_EQ(gaussian_cost(g).tag, GaussianCost::Tag::Zero);
}

TEST(Gaussian, ConjecturesAndEdges) {
  GaussianChannelParams p;
  p.kind = GaussianChannelParams::Kind::PureLoss;
  p.eta = 0.5;
  GaussianCost c = gaussian_cost(p);
  EXPECT_EQ(c.tag, GaussianCost::Tag::Conjecture);
  EXPECT_NEAR(c.bits, std::log2(3.0), 1e-15);

  GaussianChannelParams g;
  g.kind = GaussianChannelParams::Kind::GeneralConjecture;
  g.det_x = 0.5;
  g.det_y = 0.25 * 1.5 * 1.5;  // thermal eta = 1/2, N_B = 1/4
  EXPECT_NEAR(gaussian_cost(g).bits, 1.0, 1e-12);

  GaussianChannelParams b;
  b.kind = GaussianChannelParams::Kind::ClassB1;
  EXPECT_EQ(gaussian_cost(b).tag, GaussianCost::Tag::Infinite);
  b.kind = GaussianChannelParams::Kind::ClassD;
  EXPECT_EQ(gaussian_cost(b).tag, GaussianCost::Tag::Zero);

  GaussianChannelParams bad;
  bad.kind = GaussianChannelParams::Kind::Thermal;
  bad.eta = 1.5;
  EXPECT_THROW(gaussian_cost(bad), ParameterError);
}

TEST(ClosedFormChannel, Examples) {
  EXPECT_NEAR(*closed_form_channel(ChannelFamily::erasure(0.5, 2)), std::log2(1.5), 1e-15);
  EXPECT_NEAR(*closed_form_channel(ChannelFamily::dephasing(0.25)), std::log2(1.5), 1e-15);
  EXPECT_EQ(*closed_form_channel(ChannelFamily::depolarizing(0.8, 2)), 0.0);
  EXPECT_FALSE(closed_form_channel(ChannelFamily::amplitude_damping(0.3)).has_value());
}

}  // namespace
}  // namespace kappa
