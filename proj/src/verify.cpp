#include "kappa/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include "kappa/channel_measures.hpp"
#include "kappa/random.hpp"
#include "kappa/sweep.hpp"

namespace kappa::verify {
namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Counts cases and keeps the worst deviation and the first failure.
class Tally {
 public:
  void near(const std::string& what, double got, double want, double tol) {
    record(what, std::abs(got - want), tol, got, want);
  }
  // lhs <= rhs + tol
  void at_most(const std::string& what, double lhs, double rhs, double tol) {
    record(what, std::max(0.0, lhs - rhs), tol, lhs, rhs);
  }
  void holds(const std::string& what, bool ok) {
    ++cases_;
    if (!ok) fail(what);
  }
  Outcome outcome() const {
    Outcome o;
    o.passed = failures_ == 0 && cases_ > 0;
    o.cases = cases_;
    o.detail = std::to_string(cases_) + " cases, worst deviation " + num(worst_);
    if (failures_ > 0) o.detail += "; " + std::to_string(failures_) + " failed, first: " + first_;
    return o;
  }

 private:
  void record(const std::string& what, double err, double tol, double got, double want) {
    ++cases_;
    if (std::isfinite(err)) worst_ = std::max(worst_, err);
    if (!(err <= tol)) fail(what + " (" + num(got) + " vs " + num(want) + ")");
  }
  void fail(const std::string& what) {
    if (failures_++ == 0) first_ = what;
  }

  int cases_ = 0;
  int failures_ = 0;
  double worst_ = 0;
  std::string first_;
};

std::string tag(const std::string& name, double x) { return name + "=" + num(x); }

DensityMatrix phi(int m) { return DensityMatrix(max_entangled(m), {m, m}); }

double ek(const DensityMatrix& rho, const sdp::SolverConfig& cfg) { return e_kappa_primal(rho, cfg).value_bits; }
double ekc(const QuantumChannel& n, const sdp::SolverConfig& cfg) { return e_kappa_channel(n, cfg).value_bits; }

double pt_min_eig(const DensityMatrix& rho) {
  return lambda_min(partial_transpose(rho.op(), rho.partition(), Subsystem::B));
}

QuantumChannel random_qubit_channel(std::uint64_t seed) { return random_channel(2, 2, 1 + seed % 3, seed); }

// Kraus rank 1 needs d_in <= d_out.
QuantumChannel random_rect_channel(int d_in, int d_out, std::uint64_t seed) {
  int k = d_in > d_out ? 2 + static_cast<int>(seed % 2) : 1 + static_cast<int>(seed % 3);
  return random_channel(d_in, d_out, k, seed);
}

ComplexMatrix random_c_matrix(int d, std::uint64_t seed) {
  Rng rng(seed);
  ComplexMatrix g = gaussian_matrix(d, d, rng);
  ComplexMatrix c = g * g.adjoint();
  return c / c.trace().real();
}

double sum_abs(const ComplexMatrix& c) { return c.cwiseAbs().sum(); }

// Witness values of the state program, each checked for feasibility.
struct StateCertificate {
  double primal_bits = 0;
  double dual_bits = 0;
  double worst_violation = 0;
};

StateCertificate state_certificate(const DensityMatrix& rho, const sdp::SolverConfig& cfg) {
  const BipartitePartition& p = rho.partition();
  int n = p.dim();
  MeasureResult pr = e_kappa_primal(rho, cfg);
  MeasureResult du = e_kappa_dual(rho, cfg);
  const HermitianOperator& s = pr.witness_primal;
  const auto& [v, w] = *du.witness_dual;
  HermitianOperator st = partial_transpose(s, p, Subsystem::B);
  HermitianOperator rt = partial_transpose(rho.op(), p, Subsystem::B);
  double viol = std::max({-lambda_min(st - rt), -lambda_min(st + rt),
                          -lambda_min(partial_transpose(v, p, Subsystem::B)),
                          -lambda_min(partial_transpose(w, p, Subsystem::B)),
                          -lambda_min(HermitianOperator::identity(n) - v - w), 0.0});
  StateCertificate c;
  c.primal_bits = std::log2(s.trace());
  c.dual_bits = std::log2(std::max((rho.matrix() * (v - w).matrix()).trace().real(), 1e-300));
  c.worst_violation = viol;
  return c;
}

struct ChannelCertificate {
  double primal_bits = 0;
  double dual_bits = 0;
  double worst_violation = 0;
};

ChannelCertificate channel_certificate(const QuantumChannel& n, const sdp::SolverConfig& cfg) {
  int di = n.d_in(), d_o = n.d_out();
  std::vector<int> dims{di, d_o};
  std::vector<bool> tb{false, true};
  ChannelMeasureResult r = e_kappa_channel(n, cfg);
  const ChannelDualWitness& dw = *r.dual_witness;
  auto pt = [&](const HermitianOperator& x) { return HermitianOperator(partial_transpose(x.matrix(), dims, tb)); };
  HermitianOperator qt = pt(r.q_witness), jt = pt(n.choi());
  HermitianOperator marg(partial_trace(r.q_witness.matrix(), dims, {true, false}));
  HermitianOperator cap = kron(dw.rho_a, HermitianOperator::identity(d_o));
  double viol = std::max({-lambda_min(r.q_witness), -lambda_min(qt - jt), -lambda_min(qt + jt),
                          -lambda_min(pt(dw.v)), -lambda_min(pt(dw.w)), -lambda_min(cap - dw.v - dw.w),
                          -lambda_min(dw.rho_a), std::abs(dw.rho_a.trace() - 1.0), 0.0});
  ChannelCertificate c;
  c.primal_bits = std::log2(lambda_max(marg));
  c.dual_bits = std::log2(std::max((n.choi().matrix() * (dw.v - dw.w).matrix()).trace().real(), 1e-300));
  c.worst_violation = viol;
  return c;
}

// Bob-side channel on B1 B2 (2 x 2) that traces B2 and embeds B1 into C^3.
QuantumChannel trace_then_embed(std::uint64_t seed) {
  Rng rng(seed);
  ComplexMatrix v = random_isometry(3, 2, rng);
  std::vector<ComplexMatrix> kraus;
  for (int j = 0; j < 2; ++j) {
    ComplexMatrix bra = ComplexMatrix::Zero(2, 4);
    for (int i = 0; i < 2; ++i) bra(i, 2 * i + j) = 1;
    kraus.push_back(v * bra);
  }
  return choi_from_kraus(kraus, 4, 3);
}

struct CpptSample {
  QuantumChannel channel;
  BipartitePartition in;
  BipartitePartition out;
  SystemLayout layout;
  std::string label;
};

// Completely-PPT-preserving channels: local channels, local partial trace with
// embedding, the isotropic twirl, and shared-randomness mixtures of local
// channels.
CpptSample sample_cppt(int k, std::uint64_t seed) {
  CpptSample s;
  switch (k % 5) {
    case 0:
      s.channel = tensor(random_qubit_channel(seed), random_qubit_channel(seed + 1));
      s.in = {2, 2};
      s.out = {2, 2};
      s.label = "local";
      break;
    case 1:
      s.channel = tensor(random_rect_channel(2, 3, seed), random_qubit_channel(seed + 1));
      s.in = {2, 2};
      s.out = {3, 2};
      s.label = "local-rect";
      break;
    case 2:
      s.channel = tensor(random_qubit_channel(seed), trace_then_embed(seed + 1));
      s.in = {2, 4};
      s.out = {2, 3};
      s.label = "trace-embed";
      break;
    case 3: {
      int m = seed % 2 ? 3 : 2;
      s.channel = make_channel(ChannelFamily::isotropic_twirl(m));
      s.in = {m, m};
      s.out = {m, m};
      s.label = "twirl";
      break;
    }
    default: {
      QuantumChannel a = tensor(random_qubit_channel(seed), random_qubit_channel(seed + 1));
      QuantumChannel b = tensor(random_qubit_channel(seed + 2), random_qubit_channel(seed + 3));
      double w = 0.2 + 0.6 * static_cast<double>(seed % 7) / 6.0;
      s.channel = mix({a, b}, {w, 1 - w});
      s.in = {2, 2};
      s.out = {2, 2};
      s.label = "mixture";
      break;
    }
  }
  s.layout = local_layout(s.in.d_a, s.in.d_b, s.out.d_a, s.out.d_b);
  return s;
}

void state_monotonicity(Tally& t, int samples, std::uint64_t base, const sdp::SolverConfig& cfg) {
  for (int k = 0; k < samples; ++k) {
    std::uint64_t seed = base + 7 * static_cast<std::uint64_t>(k);
    CpptSample s = sample_cppt(k, seed);
    std::string what = s.label + " #" + std::to_string(k);
    t.holds(what + " is CPPT", is_cppt_bipartite(s.channel.choi(), s.layout, 1e-9));
    DensityMatrix rho = k % 2 ? random_pure_state(s.in, seed + 11) : random_density(s.in, seed + 11);
    DensityMatrix out = apply_bipartite(s.channel, rho, s.out);
    t.at_most(what, ek(out, cfg), ek(rho, cfg), 1e-5);
  }
}

// Pre- and post-processing chosen locally, optionally mixed by shared
// randomness.
void superchannel_monotonicity(Tally& t, int samples, std::uint64_t base, const sdp::SolverConfig& cfg) {
  for (int k = 0; k < samples; ++k) {
    std::uint64_t seed = base + 13 * static_cast<std::uint64_t>(k);
    QuantumChannel n = random_qubit_channel(seed);
    int d_pre = 2 + k % 2, d_post = 2 + (k / 2) % 2;
    auto sandwich = [&](std::uint64_t s) {
      return compose(random_rect_channel(2, d_post, s + 1), compose(n, random_rect_channel(d_pre, 2, s + 2)));
    };
    QuantumChannel out = sandwich(seed);
    if (k % 3 == 2) out = mix({out, sandwich(seed + 5)}, {0.5, 0.5});
    t.at_most("sandwich #" + std::to_string(k), ekc(out, cfg), ekc(n, cfg), 1e-5);
  }
}

// ---- acceptance criteria -------------------------------------------------

Outcome ac_normalization(const sdp::SolverConfig& cfg) {
  Tally t;
  for (int m = 2; m <= 5; ++m) t.near(tag("M", m), ek(phi(m), cfg), std::log2(m), 1e-5);
  return t.outcome();
}

Outcome ac_isotropic(const sdp::SolverConfig& cfg) {
  Tally t;
  for (int d : {2, 3}) {
    for (int k = 1; k <= 10; ++k) {
      double tt = k / 10.0;
      double want = tt > 1.0 / d ? std::log2(d * tt) : 0.0;
      std::string what = tag("d", d) + " " + tag("t", tt);
      t.near(what, ek(make_isotropic(tt, d), cfg), want, 1e-5);
      StateFamily f;
      f.kind = StateFamily::Kind::Isotropic;
      f.t = tt;
      f.d = d;
      double cf = *closed_form_state(f);
      if (tt <= 1.0 / d) t.holds(what + " closed form exactly 0", cf == 0.0);
    }
  }
  return t.outcome();
}

Outcome ac_werner(const sdp::SolverConfig& cfg) {
  Tally t;
  for (int d : {2, 3}) {
    for (int k = 0; k <= 10; ++k) {
      double p = k / 10.0;
      double want = p > 0.5 ? std::log2((2.0 / d) * (2 * p - 1) + 1) : 0.0;
      t.near(tag("d", d) + " " + tag("p", p), ek(make_werner(p, d), cfg), want, 1e-5);
    }
  }
  return t.outcome();
}

Outcome ac_max_correlated(const sdp::SolverConfig& cfg) {
  Tally t;
  for (int d : {2, 3}) {
    for (std::uint64_t k = 0; k < 20; ++k) {
      ComplexMatrix c = random_c_matrix(d, 1000 * d + k);
      t.near(tag("d", d) + " c#" + std::to_string(k), ek(make_max_correlated(c), cfg), std::log2(sum_abs(c)), 1e-5);
    }
  }
  for (int k = 1; k <= 9; ++k) {
    double a = k / 10.0;
    t.near(tag("omega alpha", a), ek(make_omega_hat(a), cfg), std::log2(1 + a), 1e-5);
  }
  return t.outcome();
}

Outcome ac_rho_v(const sdp::SolverConfig& cfg) {
  Tally t;
  DensityMatrix v = make_rho_v();
  double en = log_negativity(v), e = ek(v, cfg), z = z_upper(v);
  t.near("E_N", en, std::log2(1 + 1 / std::sqrt(2.0)), 1e-4);
  t.near("E_kappa", e, 1.0, 1e-4);
  t.near("log2 Z", z, std::log2(1 + 13 / (4 * std::sqrt(2.0))), 1e-4);
  t.holds("E_N < E_kappa < log2 Z", en < e && e < z);
  return t.outcome();
}

Outcome ac_nonconvex_monogamy(const sdp::SolverConfig& cfg) {
  Tally t;
  NonConvexTriple tr = make_non_convex_triple();
  t.near("rho1", ek(tr.rho1, cfg), 1.0, 1e-5);
  t.near("rho2", ek(tr.rho2, cfg), 0.0, 1e-5);
  t.near("mixture", ek(tr.mixture, cfg), std::log2(1.5), 1e-5);
  TripartiteState m = make_monogamy_triple();
  t.near("monogamy violation", ek(m.ab(), cfg) + ek(m.ac(), cfg) - ek(m.a_bc(), cfg), 2 * std::log2(1.5) - 1, 1e-4);
  return t.outcome();
}

Outcome ac_duality(const sdp::SolverConfig& cfg) {
  Tally t;
  for (std::uint64_t k = 0; k < 100; ++k) {
    BipartitePartition p = k < 50 ? BipartitePartition{2, 2} : BipartitePartition{2, 3};
    StateCertificate c = state_certificate(random_density(p, 2000 + k), cfg);
    std::string what = "state #" + std::to_string(k);
    t.near(what + " gap", c.primal_bits, c.dual_bits, 1e-6);
    t.at_most(what + " witness feasibility", c.worst_violation, 0.0, 1e-7);
  }
  for (std::uint64_t k = 0; k < 30; ++k) {
    ChannelCertificate c = channel_certificate(random_qubit_channel(3000 + k), cfg);
    std::string what = "channel #" + std::to_string(k);
    t.near(what + " gap", c.primal_bits, c.dual_bits, 1e-6);
    t.at_most(what + " witness feasibility", c.worst_violation, 0.0, 1e-7);
  }
  return t.outcome();
}

Outcome ac_additivity(const sdp::SolverConfig& cfg) {
  Tally t;
  for (std::uint64_t k = 0; k < 20; ++k) {
    DensityMatrix a = random_density({2, 2}, 4000 + 2 * k), b = random_density({2, 2}, 4001 + 2 * k);
    t.near("states #" + std::to_string(k), ek(tensor(a, b), cfg), ek(a, cfg) + ek(b, cfg), 1e-4);
  }
  for (std::uint64_t k = 0; k < 10; ++k) {
    QuantumChannel a = random_qubit_channel(5000 + 2 * k), b = random_qubit_channel(5001 + 2 * k);
    t.near("channels #" + std::to_string(k), ekc(tensor(a, b), cfg), ekc(a, cfg) + ekc(b, cfg), 1e-4);
  }
  return t.outcome();
}

Outcome ac_monotonicity(const sdp::SolverConfig& cfg) {
  Tally t;
  state_monotonicity(t, 200, 6000, cfg);
  superchannel_monotonicity(t, 50, 7000, cfg);
  return t.outcome();
}

Outcome ac_one_shot(const sdp::SolverConfig& cfg) {
  Tally t;
  for (std::uint64_t k = 0; k < 30; ++k) {
    BipartitePartition p = k < 20 ? BipartitePartition{2, 2} : BipartitePartition{2, 3};
    OneShotCostResult r = one_shot_ppt_cost(random_density(p, 8000 + k), cfg);
    std::string what = "state #" + std::to_string(k);
    if (r.e_kappa_bits > 1e-7) {
      t.at_most(what + " lower", r.lo_bits, r.cost_bits, 1e-4);
      t.at_most(what + " upper", r.cost_bits, r.hi_bits, 1e-4);
    } else {
      t.near(what + " PPT cost", r.cost_bits, 0.0, 1e-4);
    }
  }
  for (std::uint64_t k = 0; k < 15; ++k) {
    SimulationCostReport r = one_shot_channel_cost(random_qubit_channel(9000 + k), cfg);
    std::string what = "channel #" + std::to_string(k);
    t.at_most(what + " lower", r.lo_bits, *r.one_shot_bits, 1e-4);
    t.at_most(what + " upper", *r.one_shot_bits, r.hi_bits, 1e-4);
  }
  return t.outcome();
}

Outcome ac_constructions(const sdp::SolverConfig& cfg) {
  Tally t;
  std::vector<DensityMatrix> states{phi(2), make_omega_hat(0.5)};
  for (std::uint64_t k = 0; states.size() < 10; ++k) states.push_back(random_density({2, 2}, 10000 + k));
  for (std::size_t i = 0; i < states.size(); ++i) {
    OneShotCostResult r = one_shot_ppt_cost(states[i], cfg);
    VerificationReport v = build_dilution_channel(states[i], r.m_integer, r.g_witness).report;
    std::string what = "dilution #" + std::to_string(i);
    t.holds(what + " tp/cp/cppt/reproduction (cppt min eig " + num(v.cppt_min_eig) + ")", v.all());
  }
  std::vector<QuantumChannel> channels{make_channel(ChannelFamily::identity(2)),
                                       make_channel(ChannelFamily::dephasing(0.25))};
  for (std::uint64_t k = 0; channels.size() < 10; ++k) channels.push_back(random_qubit_channel(11000 + k));
  for (std::size_t i = 0; i < channels.size(); ++i) {
    SimulationCostReport r = one_shot_channel_cost(channels[i], cfg);
    VerificationReport v = build_parallel_simulation(channels[i], r.m_integer, r.q_choi_witness).report;
    std::string what = "simulation #" + std::to_string(i);
    t.holds(what + " tp/cp/cppt/reproduction (cppt min eig " + num(v.cppt_min_eig) + ")", v.all());
  }
  return t.outcome();
}

Outcome ac_channel_closed_forms(const sdp::SolverConfig& cfg) {
  Tally t;
  for (int d : {2, 3}) {
    for (int k = 0; k <= 10; ++k) {
      double p = k / 10.0;
      t.near("erasure " + tag("d", d) + " " + tag("p", p), ekc(make_channel(ChannelFamily::erasure(p, d)), cfg),
             std::log2(d * (1 - p) + p), 1e-5);
      double dep = 1 - p >= 1.0 / d ? std::log2(d * (1 - p)) : 0.0;
      t.near("depolarizing " + tag("d", d) + " " + tag("p", p),
             ekc(make_channel(ChannelFamily::depolarizing(p, d)), cfg), dep, 1e-5);
    }
  }
  for (int k = 0; k <= 10; ++k) {
    double q = k / 10.0;
    t.near("dephasing " + tag("q", q), ekc(make_channel(ChannelFamily::dephasing(q)), cfg),
           std::log2(1 + 2 * std::abs(q - 0.5)), 1e-5);
  }
  return t.outcome();
}

Outcome ac_amplitude_damping(const sdp::SolverConfig& cfg) {
  Tally t;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<AmplitudeDampingRow> rows = sweep_amplitude_damping(21, jobs, cfg);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const AmplitudeDampingRow& row = rows[i];
    std::string what = tag("r", row.r);
    t.holds(what + " solved " + row.error, row.error.empty());
    if (!row.error.empty()) continue;
    t.near(what + " Q_Theta = E_kappa", *row.q_theta_bits, *row.e_kappa_bits, 1e-4);
    if (i > 0 && rows[i - 1].e_kappa_bits)
      t.at_most(what + " monotone", *row.e_kappa_bits, *rows[i - 1].e_kappa_bits, 1e-6);
  }
  if (rows.front().e_kappa_bits) t.near("r=0 endpoint", *rows.front().e_kappa_bits, 1.0, 1e-5);
  if (rows.back().e_kappa_bits) t.near("r=1 endpoint", *rows.back().e_kappa_bits, 0.0, 1e-5);
  return t.outcome();
}

GaussianChannelParams gaussian(GaussianChannelParams::Kind kind, double a = 0, double b = 0) {
  GaussianChannelParams p;
  p.kind = kind;
  switch (kind) {
    case GaussianChannelParams::Kind::Thermal:
    case GaussianChannelParams::Kind::PureLoss:
      p.eta = a;
      p.n_b = b;
      break;
    case GaussianChannelParams::Kind::Amplifier:
    case GaussianChannelParams::Kind::PureAmplifier:
      p.gain = a;
      p.n_b = b;
      break;
    case GaussianChannelParams::Kind::AdditiveNoise:
      p.xi = a;
      break;
    default:
      break;
  }
  return p;
}

Outcome ac_gaussian(const sdp::SolverConfig&) {
  using K = GaussianChannelParams::Kind;
  using Tag = GaussianCost::Tag;
  Tally t;
  GaussianCost th = gaussian_cost(gaussian(K::Thermal, 0.5, 0.25));
  t.holds("Thermal(1/2, 1/4) = 1 exactly", th.tag == Tag::Value && th.bits == 1.0);
  GaussianCost an = gaussian_cost(gaussian(K::AdditiveNoise, 0.5));
  t.holds("AdditiveNoise(1/2) = 1", an.tag == Tag::Value && an.bits == 1.0);
  for (auto [eta, nb] : {std::pair{0.6, 0.1}, {0.9, 0.05}, {0.3, 0.2}}) {
    GaussianCost c = gaussian_cost(gaussian(K::Thermal, eta, nb));
    t.holds("thermal value tag", c.tag == Tag::Value);
    t.near("thermal " + tag("eta", eta) + " " + tag("N_B", nb), c.bits,
           std::log2((1 + eta) / ((1 - eta) * (2 * nb + 1))), 1e-12);
  }
  for (auto [eta, nb] : {std::pair{0.2, 0.25}, {1.0 / 3, 1.0}, {0.5, 1.0}, {0.1, 5.0}})
    t.holds("thermal breaking " + tag("eta", eta), gaussian_cost(gaussian(K::Thermal, eta, nb)).tag == Tag::Zero);
  for (auto [g, nb] : {std::pair{2.0, 1.0}, {1.5, 3.0}, {3.0, 0.5}})
    t.holds("amplifier breaking " + tag("G", g), gaussian_cost(gaussian(K::Amplifier, g, nb)).tag == Tag::Zero);
  for (double xi : {1.0, 1.5, 3.0})
    t.holds("additive noise breaking " + tag("xi", xi), gaussian_cost(gaussian(K::AdditiveNoise, xi)).tag == Tag::Zero);
  // Conjectured values: only the tag is checked.
  for (double eta : {0.3, 0.5, 0.9})
    t.holds("pure loss tagged", gaussian_cost(gaussian(K::PureLoss, eta)).tag == Tag::Conjecture);
  for (double g : {1.5, 2.0})
    t.holds("pure amplifier tagged", gaussian_cost(gaussian(K::PureAmplifier, g)).tag == Tag::Conjecture);
  return t.outcome();
}

void covariant_collapse(Tally& t, const std::vector<double>& params, const sdp::SolverConfig& cfg) {
  for (double x : params) {
    for (const ChannelFamily& f :
         {ChannelFamily::erasure(x, 2), ChannelFamily::depolarizing(x, 2), ChannelFamily::dephasing(x)}) {
      QuantumChannel n = make_channel(f);
      t.near(to_string(f.kind) + " " + tag("param", x), ekc(n, cfg), ek(n.choi_state(), cfg), 1e-5);
    }
  }
}

Outcome ac_covariant(const sdp::SolverConfig& cfg) {
  Tally t;
  covariant_collapse(t, {0.1, 0.3, 0.5, 0.7, 0.9}, cfg);
  return t.outcome();
}

Outcome ac_teleportation(const sdp::SolverConfig&) {
  Tally t;
  for (std::uint64_t k = 0; k < 50; ++k) {
    int d_in = 2 + k % 2, d_out = 2 + (k / 2) % 2, d_c = 1 + (k / 4) % 3;
    int nk = 2 + static_cast<int>(k % 2);
    std::vector<ComplexMatrix> kraus = random_kraus(d_in, d_out, nk, 12000 + k);
    QuantumChannel n = choi_from_kraus(kraus, d_in, d_out);
    ComplexMatrix x = random_density({d_c, d_in}, 13000 + k).matrix();
    t.near("pair #" + std::to_string(k), max_abs_diff(apply_operator(n, x, d_c), apply_kraus(kraus, x, d_c)), 0.0,
           1e-12);
  }
  return t.outcome();
}

// ---- invariant suites ----------------------------------------------------

std::vector<DensityMatrix> random_states(int count, std::uint64_t base) {
  const BipartitePartition shapes[] = {{2, 2}, {2, 3}, {3, 3}};
  std::vector<DensityMatrix> out;
  for (int k = 0; k < count; ++k) {
    std::uint64_t seed = base + static_cast<std::uint64_t>(k);
    const BipartitePartition& p = shapes[k % 3];
    out.push_back(k % 4 == 3 ? random_pure_state(p, seed) : random_density(p, seed));
  }
  return out;
}

Outcome inv_normalization(const sdp::SolverConfig& cfg) {
  Tally t;
  for (int m = 2; m <= 5; ++m) t.near(tag("M", m), ek(phi(m), cfg), std::log2(m), 1e-6);
  return t.outcome();
}

Outcome inv_dimension_bound(const sdp::SolverConfig& cfg) {
  Tally t;
  for (const DensityMatrix& rho : random_states(12, 20000)) {
    const BipartitePartition& p = rho.partition();
    t.at_most(tag("dims", p.dim()), ek(rho, cfg), std::log2(std::min(p.d_a, p.d_b)), 1e-6);
  }
  return t.outcome();
}

Outcome inv_faithfulness(const sdp::SolverConfig& cfg) {
  Tally t;
  for (int d : {2, 3}) {
    for (int k = 0; k < 10; ++k) {
      double x = 0.05 + 0.1 * k;
      DensityMatrix iso = make_isotropic(x, d), wer = make_werner(x, d);
      t.holds("isotropic " + tag("t", x), (ek(iso, cfg) <= 1e-6) == (pt_min_eig(iso) >= -1e-7));
      t.holds("werner " + tag("p", x), (ek(wer, cfg) <= 1e-6) == (pt_min_eig(wer) >= -1e-7));
    }
  }
  return t.outcome();
}

Outcome inv_ordering(const sdp::SolverConfig& cfg) {
  Tally t;
  std::vector<DensityMatrix> states = random_states(12, 21000);
  states.push_back(make_rho_v());
  for (const DensityMatrix& rho : states) {
    double e = ek(rho, cfg);
    t.at_most("E_N <= E_kappa", log_negativity(rho), e, 1e-6);
    t.at_most("E_kappa <= log2 Z", e, z_upper(rho), 1e-6);
  }
  return t.outcome();
}

Outcome inv_binegativity(const sdp::SolverConfig& cfg) {
  Tally t;
  for (std::uint64_t k = 0; k < 10; ++k) {
    DensityMatrix rho = random_density({2, 2}, 22000 + k);
    t.holds("two-qubit binegativity", binegativity_holds(rho));
    t.near("two-qubit collapse", ek(rho, cfg), log_negativity(rho), 1e-6);
  }
  for (const DensityMatrix& rho : random_states(9, 22100)) {
    if (binegativity_holds(rho)) t.near(tag("collapse dims", rho.dim()), ek(rho, cfg), log_negativity(rho), 1e-6);
  }
  return t.outcome();
}

Outcome inv_state_additivity(const sdp::SolverConfig& cfg) {
  Tally t;
  for (std::uint64_t k = 0; k < 4; ++k) {
    DensityMatrix a = random_density({2, 2}, 23000 + 2 * k), b = random_pure_state({2, 2}, 23001 + 2 * k);
    t.near("pair #" + std::to_string(k), ek(tensor(a, b), cfg), ek(a, cfg) + ek(b, cfg), 1e-4);
  }
  return t.outcome();
}

Outcome inv_state_monotonicity(const sdp::SolverConfig& cfg) {
  Tally t;
  state_monotonicity(t, 40, 24000, cfg);
  return t.outcome();
}

Outcome inv_state_nonconvexity(const sdp::SolverConfig& cfg) {
  Tally t;
  NonConvexTriple tr = make_non_convex_triple();
  t.holds("mixture exceeds average by 0.05",
          ek(tr.mixture, cfg) > 0.5 * ek(tr.rho1, cfg) + 0.5 * ek(tr.rho2, cfg) + 0.05);
  return t.outcome();
}

Outcome inv_nonmonogamy(const sdp::SolverConfig& cfg) {
  Tally t;
  TripartiteState m = make_monogamy_triple();
  t.near("violation", ek(m.ab(), cfg) + ek(m.ac(), cfg) - ek(m.a_bc(), cfg), 2 * std::log2(1.5) - 1, 1e-4);
  return t.outcome();
}

Outcome inv_state_sandwich(const sdp::SolverConfig& cfg) {
  Tally t;
  std::vector<DensityMatrix> states{phi(2), make_omega_hat(0.4), make_rho_v()};
  for (std::uint64_t k = 0; k < 6; ++k) states.push_back(random_density({2, 2}, 25000 + k));
  for (std::size_t i = 0; i < states.size(); ++i) {
    OneShotCostResult r = one_shot_ppt_cost(states[i], cfg);
    if (r.e_kappa_bits <= 1e-7) continue;
    std::string what = "state #" + std::to_string(i);
    t.at_most(what + " lower", r.lo_bits, r.cost_bits, 1e-4);
    t.at_most(what + " upper", r.cost_bits, r.hi_bits, 1e-4);
  }
  return t.outcome();
}

Outcome inv_dilution(const sdp::SolverConfig& cfg) {
  Tally t;
  std::vector<DensityMatrix> states{phi(2), make_isotropic(0.4, 2)};
  for (std::uint64_t k = 0; k < 4; ++k) states.push_back(random_density({2, 2}, 26000 + k));
  for (std::size_t i = 0; i < states.size(); ++i) {
    OneShotCostResult r = one_shot_ppt_cost(states[i], cfg);
    VerificationReport v = build_dilution_channel(states[i], r.m_integer, r.g_witness).report;
    t.holds("state #" + std::to_string(i) + " (cppt min eig " + num(v.cppt_min_eig) + ")", v.all());
  }
  return t.outcome();
}

Outcome inv_channel_additivity(const sdp::SolverConfig& cfg) {
  Tally t;
  for (std::uint64_t k = 0; k < 4; ++k) {
    QuantumChannel a = random_qubit_channel(27000 + 2 * k), b = random_qubit_channel(27001 + 2 * k);
    t.near("pair #" + std::to_string(k), ekc(tensor(a, b), cfg), ekc(a, cfg) + ekc(b, cfg), 1e-4);
  }
  return t.outcome();
}

// N applied to the middle factor of rho on A' A B' (Alice A' A, Bob B');
// the output is on A' | B' B.
DensityMatrix apply_middle(const QuantumChannel& n, const ComplexMatrix& rho) {
  ComplexMatrix moved = permute_systems(rho, {2, n.d_in(), 2}, {0, 2, 1});
  return DensityMatrix(HermitianOperator(apply_operator(n, moved, 4)), {2, 2 * n.d_out()});
}

Outcome inv_amortization(const sdp::SolverConfig& cfg) {
  Tally t;
  for (std::uint64_t c = 0; c < 4; ++c) {
    QuantumChannel n = c == 0 ? make_channel(ChannelFamily::amplitude_damping(0.3)) : random_qubit_channel(28000 + c);
    ChannelMeasureResult en = e_kappa_channel(n, cfg);
    std::string what = "channel #" + std::to_string(c);
    for (std::uint64_t k = 0; k < 3; ++k) {
      DensityMatrix rho = random_density({4, 2}, 28100 + 10 * c + k);
      double gain = ek(apply_middle(n, rho.matrix()), cfg) - ek(rho, cfg);
      t.at_most(what + " input #" + std::to_string(k), gain, en.value_bits, 1e-5);
    }
    // The dual optimizer rho_A gives the input (sqrt(rho_A) (x) I)|Gamma> on
    // A' A with B' in |0>, which attains the bound.
    EigenDecomposition eig = hermitian_eig(en.dual_witness->rho_a);
    RealVector root = eig.values.cwiseMax(0.0).cwiseSqrt();
    ComplexMatrix sq = eig.vectors * root.asDiagonal() * eig.vectors.adjoint();
    ComplexVector psi(8);
    psi.setZero();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) psi(4 * i + 2 * j) = sq(i, j);
    psi.normalize();
    ComplexMatrix rho = psi * psi.adjoint();
    double input = ek(DensityMatrix(HermitianOperator(rho), {4, 2}), cfg);
    t.near(what + " attained", ek(apply_middle(n, rho), cfg) - input, en.value_bits, 1e-5);
  }
  return t.outcome();
}

Outcome inv_superchannel(const sdp::SolverConfig& cfg) {
  Tally t;
  superchannel_monotonicity(t, 15, 29000, cfg);
  return t.outcome();
}

std::vector<QuantumChannel> mixed_channel_pool(std::uint64_t base) {
  std::vector<QuantumChannel> pool{make_channel(ChannelFamily::dephasing(0.5)),
                                   make_channel(ChannelFamily::erasure(1.0, 2)),
                                   make_channel(ChannelFamily::depolarizing(0.8, 2)),
                                   make_channel(ChannelFamily::amplitude_damping(1.0)),
                                   make_channel(ChannelFamily::identity(3))};
  const std::pair<int, int> dims[] = {{2, 2}, {2, 3}, {3, 2}};
  for (std::uint64_t k = 0; k < 6; ++k) {
    auto [a, b] = dims[k % 3];
    pool.push_back(random_rect_channel(a, b, base + k));
  }
  return pool;
}

Outcome inv_channel_faithfulness(const sdp::SolverConfig& cfg) {
  Tally t;
  std::vector<QuantumChannel> pool = mixed_channel_pool(30000);
  for (std::size_t i = 0; i < pool.size(); ++i)
    t.holds("channel #" + std::to_string(i), (ekc(pool[i], cfg) <= 1e-6) == channel_checks(pool[i]).ppt_binding);
  return t.outcome();
}

Outcome inv_channel_normalization(const sdp::SolverConfig& cfg) {
  Tally t;
  std::vector<QuantumChannel> pool = mixed_channel_pool(31000);
  for (std::size_t i = 0; i < pool.size(); ++i)
    t.at_most("channel #" + std::to_string(i), ekc(pool[i], cfg),
              std::log2(std::min(pool[i].d_in(), pool[i].d_out())), 1e-6);
  return t.outcome();
}

Outcome inv_channel_nonconvexity(const sdp::SolverConfig& cfg) {
  Tally t;
  QuantumChannel id = make_channel(ChannelFamily::identity(2));
  QuantumChannel full = make_channel(ChannelFamily::dephasing(0.5));
  double e = ekc(mix({id, full}, {0.5, 0.5}), cfg);
  t.near("mixture value", e, std::log2(1.5), 1e-6);
  t.holds("mixture exceeds average", e > 0.5 * (ekc(id, cfg) + ekc(full, cfg)));
  return t.outcome();
}

Outcome inv_covariant(const sdp::SolverConfig& cfg) {
  Tally t;
  covariant_collapse(t, {0.2, 0.5, 0.8}, cfg);
  return t.outcome();
}

Outcome inv_q_theta(const sdp::SolverConfig& cfg) {
  Tally t;
  std::vector<QuantumChannel> pool = mixed_channel_pool(32000);
  for (std::size_t i = 0; i < pool.size(); ++i)
    t.at_most("channel #" + std::to_string(i), q_theta(pool[i], cfg), ekc(pool[i], cfg), 1e-5);
  for (std::uint64_t k = 0; k < 6; ++k) {
    QuantumChannel n = random_qubit_channel(32100 + k);
    t.near("qubit channel #" + std::to_string(k), q_theta(n, cfg), ekc(n, cfg), 1e-4);
  }
  return t.outcome();
}

}  // namespace

std::vector<Check> acceptance_checks() {
  const std::string s = "acceptance";
  return {
      {"1", s, "normalization on Phi^M", ac_normalization},
      {"2", s, "isotropic closed form", ac_isotropic},
      {"3", s, "Werner closed form", ac_werner},
      {"4", s, "maximally correlated closed form", ac_max_correlated},
      {"5", s, "rho_v strict ordering triple", ac_rho_v},
      {"6", s, "non-convexity and non-monogamy fixtures", ac_nonconvex_monogamy},
      {"7", s, "strong duality", ac_duality},
      {"8", s, "additivity", ac_additivity},
      {"9", s, "monotonicity under CPPT channels and superchannels", ac_monotonicity},
      {"10", s, "one-shot sandwiches", ac_one_shot},
      {"11", s, "constructive simulations", ac_constructions},
      {"12", s, "channel closed forms", ac_channel_closed_forms},
      {"13", s, "amplitude damping sweep", ac_amplitude_damping},
      {"14", s, "Gaussian formula evaluator", ac_gaussian},
      {"15", s, "covariant collapse", ac_covariant},
      {"16", s, "teleportation identity", ac_teleportation},
  };
}

std::vector<Check> invariant_checks() {
  const std::string st = "state_measures", ch = "channel_measures";
  return {
      {"S1", st, "normalization", inv_normalization},
      {"S2", st, "dimension bound", inv_dimension_bound},
      {"S3", st, "faithfulness", inv_faithfulness},
      {"S4", st, "ordering chain", inv_ordering},
      {"S5", st, "binegativity collapse", inv_binegativity},
      {"S6", st, "additivity", inv_state_additivity},
      {"S7", st, "monotonicity", inv_state_monotonicity},
      {"S8", st, "non-convexity witness", inv_state_nonconvexity},
      {"S9", st, "non-monogamy witness", inv_nonmonogamy},
      {"S10", st, "one-shot sandwich", inv_state_sandwich},
      {"S11", st, "dilution round trip", inv_dilution},
      {"C1", ch, "channel additivity", inv_channel_additivity},
      {"C2", ch, "amortization inequality", inv_amortization},
      {"C3", ch, "superchannel monotonicity", inv_superchannel},
      {"C4", ch, "channel faithfulness", inv_channel_faithfulness},
      {"C5", ch, "channel normalization bound", inv_channel_normalization},
      {"C6", ch, "channel non-convexity witness", inv_channel_nonconvexity},
      {"C7", ch, "covariant collapse", inv_covariant},
      {"C8", ch, "Q_Theta bound and qubit equality", inv_q_theta},
  };
}

CheckResult run_check(const Check& c, const sdp::SolverConfig& cfg) {
  CheckResult r;
  r.id = c.id;
  r.suite = c.suite;
  r.title = c.title;
  auto start = std::chrono::steady_clock::now();
  try {
    Outcome o = c.run(cfg);
    r.passed = o.passed;
    r.cases = o.cases;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace kappa::verify
