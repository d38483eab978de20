#include "kappa/channel_measures.hpp"

#include <algorithm>
#include <cmath>

#include "kappa/random.hpp"

namespace kappa {

namespace {

using sdp::LmiBuilder;
using sdp::Sense;

// Below this E is treated as zero in the bound formulas.
constexpr double kZeroBits = 1e-7;

ComplexMatrix pt_out(const ComplexMatrix& m, int din, int dout) {
  return partial_transpose(m, {din, dout}, {false, true});
}

ComplexMatrix trace_out(const ComplexMatrix& m, int din, int dout) {
  return partial_trace(m, {din, dout}, {true, false});
}

double clamp_bits(double value) { return std::max(0.0, log2_safe(value)); }

// Tr_B Q = I_A as d_in^2 real equalities over the Hermitian variable Q.
void add_unital_marginal(LmiBuilder& b, const std::vector<int>& q, int din, int dout) {
  std::vector<ComplexMatrix> qb = sdp::hermitian_basis(din * dout);
  std::vector<ComplexMatrix> marg;
  marg.reserve(qb.size());
  for (const ComplexMatrix& e : qb) marg.push_back(trace_out(e, din, dout));
  for (const ComplexMatrix& f : sdp::hermitian_basis(din)) {
    std::vector<std::pair<int, double>> row;
    for (size_t i = 0; i < qb.size(); ++i) {
      double c = (f * marg[i]).trace().real();
      if (c != 0.0) row.emplace_back(q[i], c);
    }
    b.add_equality(row, f.trace().real());
  }
}

double channel_dual_violation(const ChannelDualWitness& d, int din, int dout) {
  ComplexMatrix bound = kron(d.rho_a.matrix(), ComplexMatrix::Identity(dout, dout));
  double a = lambda_min(HermitianOperator(bound - d.v.matrix() - d.w.matrix()));
  double b = lambda_min(HermitianOperator(pt_out(d.v.matrix(), din, dout)));
  double c = lambda_min(HermitianOperator(pt_out(d.w.matrix(), din, dout)));
  double r = lambda_min(d.rho_a);
  double t = std::abs(d.rho_a.trace() - 1.0);
  return std::max({0.0, -a, -b, -c, -r, t});
}

ChannelMeasureResult e_kappa_channel_dual(const QuantumChannel& n, const sdp::SolverConfig& cfg) {
  int din = n.d_in(), dout = n.d_out(), dim = din * dout;
  const ComplexMatrix& j = n.choi().matrix();
  auto transpose_out = [&](const ComplexMatrix& e) { return pt_out(e, din, dout); };
  auto negate = [](const ComplexMatrix& e) { return ComplexMatrix(-e); };

  LmiBuilder b(Sense::Maximize);
  std::vector<int> v = b.add_hermitian(dim, j);
  std::vector<int> w = b.add_hermitian(dim, -j);
  std::vector<int> r = b.add_hermitian(din, ComplexMatrix());
  int b0 = b.add_block(dim), b1 = b.add_block(dim), b2 = b.add_block(dim), b3 = b.add_block(din);
  b.add_hermitian_term(b0, r, din, [&](const ComplexMatrix& e) {
    return kron(e, ComplexMatrix::Identity(dout, dout));
  });
  b.add_hermitian_term(b0, v, dim, negate);
  b.add_hermitian_term(b0, w, dim, negate);
  b.add_hermitian_term(b1, v, dim, transpose_out);
  b.add_hermitian_term(b2, w, dim, transpose_out);
  b.add_hermitian_term(b3, r, din, [](const ComplexMatrix& e) { return e; });
  std::vector<std::pair<int, double>> trace_row;
  for (int i = 0; i < din; ++i) trace_row.emplace_back(r[i], 1.0);
  b.add_equality(trace_row, 1.0);

  sdp::SdpSolution sol = sdp::solve(b.build(), cfg);
  require_solved(sol, "channel kappa-entanglement dual");

  ChannelMeasureResult out;
  out.label = "E_kappa (dual)";
  out.dual_witness = ChannelDualWitness{HermitianOperator(LmiBuilder::hermitian_value(sol.y, v, dim)),
                                        HermitianOperator(LmiBuilder::hermitian_value(sol.y, w, dim)),
                                        HermitianOperator(LmiBuilder::hermitian_value(sol.y, r, din))};
  out.dual_bits = clamp_bits(b.lmi_objective(sol));
  out.q_witness = LmiBuilder::multiplier(sol, b0);
  out.primal_bits = clamp_bits(sol.primal_obj);
  out.value_bits = out.dual_bits;
  out.gap = std::abs(out.primal_bits - out.dual_bits);
  out.solver_iterations = sol.iterations;
  return out;
}

// Shifts Q up by its most negative eigenvalue, keeping Tr_B Q = I.
HermitianOperator repair_choi_witness(const HermitianOperator& q, int dout) {
  double lmin = lambda_min(q);
  if (lmin >= 0) return q;
  double eps = -lmin;
  return (q + HermitianOperator::identity(q.dim()) * eps) * (1.0 / (1.0 + eps * dout));
}

}  // namespace

ChannelMeasureResult e_kappa_channel(const QuantumChannel& n, const sdp::SolverConfig& cfg) {
  int din = n.d_in(), dout = n.d_out(), dim = din * dout;
  ComplexMatrix jt = pt_out(n.choi().matrix(), din, dout);
  auto transpose_out = [&](const ComplexMatrix& e) { return pt_out(e, din, dout); };

  LmiBuilder b(Sense::Minimize);
  int t = b.add_scalar(1.0);
  std::vector<int> q = b.add_hermitian(dim, ComplexMatrix());
  int b0 = b.add_block(dim), b1 = b.add_block(dim), b2 = b.add_block(dim), b3 = b.add_block(din);
  b.add_hermitian_term(b0, q, dim, [](const ComplexMatrix& e) { return e; });
  b.set_constant(b1, -jt);
  b.add_hermitian_term(b1, q, dim, transpose_out);
  b.set_constant(b2, jt);
  b.add_hermitian_term(b2, q, dim, transpose_out);
  b.add_term(b3, t, ComplexMatrix::Identity(din, din));
  b.add_hermitian_term(b3, q, dim, [&](const ComplexMatrix& e) { return ComplexMatrix(-trace_out(e, din, dout)); });

  sdp::SdpSolution sol = sdp::solve(b.build(), cfg);
  require_solved(sol, "channel kappa-entanglement primal");

  ChannelMeasureResult out;
  out.label = "E_kappa";
  out.q_witness = HermitianOperator(LmiBuilder::hermitian_value(sol.y, q, dim));
  out.primal_bits = clamp_bits(sol.y(t));
  out.solver_iterations = sol.iterations;

  ChannelDualWitness d{HermitianOperator(pt_out(LmiBuilder::multiplier(sol, b1).matrix(), din, dout)),
                       HermitianOperator(pt_out(LmiBuilder::multiplier(sol, b2).matrix(), din, dout)),
                       LmiBuilder::multiplier(sol, b3)};
  if (channel_dual_violation(d, din, dout) > kSolverAcceptTol) {
    ChannelMeasureResult dual = e_kappa_channel_dual(n, cfg);
    out.dual_bits = dual.dual_bits;
    out.dual_witness = dual.dual_witness;
    out.solver_iterations += dual.solver_iterations;
  } else {
    out.dual_bits = clamp_bits((n.choi().matrix() * (d.v - d.w).matrix()).trace().real());
    out.dual_witness = d;
  }
  out.value_bits = out.primal_bits;
  out.gap = std::abs(out.primal_bits - out.dual_bits);
  return out;
}

double e_kappa_channel_lower_by_states(const QuantumChannel& n, int trials, std::uint64_t seed,
                                       const sdp::SolverConfig& cfg) {
  int d = n.d_in();
  BipartitePartition p{d, d};
  double best = e_kappa_primal(apply(n, DensityMatrix(max_entangled(d), p)), cfg).value_bits;
  Rng rng(seed);
  for (int i = 0; i < trials; ++i) {
    DensityMatrix phi = pure_state(random_pure(d * d, rng), p);
    best = std::max(best, e_kappa_primal(apply(n, phi), cfg).value_bits);
  }
  return best;
}

ChannelFeasibilityResult one_shot_channel_feasibility(const QuantumChannel& n, double m,
                                                      const sdp::SolverConfig& cfg) {
  if (!(m >= 1)) throw ParameterError("one-shot feasibility needs m >= 1");
  int din = n.d_in(), dout = n.d_out(), dim = din * dout;
  ComplexMatrix jt = pt_out(n.choi().matrix(), din, dout);
  ComplexMatrix id = ComplexMatrix::Identity(dim, dim);

  LmiBuilder b(Sense::Maximize);
  std::vector<int> q = b.add_hermitian(dim, ComplexMatrix());
  int s = b.add_scalar(1.0);
  int b0 = b.add_block(dim), b1 = b.add_block(dim), b2 = b.add_block(dim);
  b.add_hermitian_term(b0, q, dim, [](const ComplexMatrix& e) { return e; });
  b.set_constant(b1, -jt);
  b.add_hermitian_term(b1, q, dim, [&](const ComplexMatrix& e) {
    return ComplexMatrix((m + 1) * pt_out(e, din, dout));
  });
  b.add_term(b1, s, -id);
  b.set_constant(b2, jt);
  if (m > 1) {
    b.add_hermitian_term(b2, q, dim, [&](const ComplexMatrix& e) {
      return ComplexMatrix((m - 1) * pt_out(e, din, dout));
    });
  }
  b.add_term(b2, s, -id);
  add_unital_marginal(b, q, din, dout);

  sdp::SdpSolution sol = sdp::solve(b.build(), cfg);
  require_solved(sol, "one-shot channel feasibility");
  return {sol.y(s), HermitianOperator(LmiBuilder::hermitian_value(sol.y, q, dim))};
}

std::pair<double, double> SimulationCostReport::sequential(int uses) const {
  return sequential_bounds(e_kappa_bits, uses);
}

SimulationCostReport one_shot_channel_cost(const QuantumChannel& n, const sdp::SolverConfig& cfg) {
  SimulationCostReport out;
  out.e_kappa_bits = e_kappa_channel(n, cfg).value_bits;
  if (out.e_kappa_bits <= kZeroBits) {
    out.lo_bits = 0;
  } else {
    out.lo_bits = std::log2(std::exp2(out.e_kappa_bits) - 1.0);
  }
  out.hi_bits = std::log2(std::exp2(out.e_kappa_bits) + 1.0);

  auto feasible = [&](double m) {
    ++out.feasibility_solves;
    return one_shot_channel_feasibility(n, m, cfg).slack >= -kFeasibilitySlack;
  };
  double cap = std::exp2(n.d_in());
  out.m_real = sdp::bisect_threshold(feasible, 1.0, cap, kBisectionTol);
  out.one_shot_bits = std::log2(out.m_real);
  out.m_integer = std::max(1, static_cast<int>(std::ceil(out.m_real - kBisectionTol)));

  sdp::SolverConfig tight = cfg;
  tight.gap_tol = std::min(cfg.gap_tol, 1e-11);
  tight.feas_tol = std::min(cfg.feas_tol, 1e-11);
  ChannelFeasibilityResult f;
  try {
    f = one_shot_channel_feasibility(n, out.m_integer, tight);
  } catch (const SolverError&) {
    f = one_shot_channel_feasibility(n, out.m_integer, cfg);
  }
  ++out.feasibility_solves;
  out.q_choi_witness = repair_choi_witness(f.q, n.d_out());
  return out;
}

SimulationCostReport asymptotic_costs(const QuantumChannel& n, const sdp::SolverConfig& cfg) {
  SimulationCostReport out;
  out.e_kappa_bits = e_kappa_channel(n, cfg).value_bits;
  out.parallel_asymptotic_bits = out.e_kappa_bits;
  out.sequential_asymptotic_bits = out.e_kappa_bits;
  if (n.family() && n.family()->covariant()) {
    out.choi_state_bits = e_kappa_primal(n.choi_state(), cfg).value_bits;
  }
  return out;
}

ParallelSimulation build_parallel_simulation(const QuantumChannel& n, int m, const HermitianOperator& q) {
  if (m < 1) throw ParameterError("parallel simulation needs m >= 1");
  int din = n.d_in(), dout = n.d_out(), dim = din * dout;
  if (q.dim() != dim) throw DimensionError("Q must live on the Choi space of the channel");
  ComplexMatrix jt = pt_out(n.choi().matrix(), din, dout);
  ComplexMatrix qt = pt_out(q.matrix(), din, dout);
  double marginal = max_abs_diff(trace_out(q.matrix(), din, dout), ComplexMatrix::Identity(din, din));
  if (marginal > 1e-7) {
    throw InfeasibleWitness("Tr_B Q = I violated: deviation " + std::to_string(marginal));
  }
  double psd = lambda_min(q);
  if (psd < -1e-7) throw InfeasibleWitness("Q >= 0 violated: eigenvalue " + std::to_string(psd));
  double upper = lambda_min(HermitianOperator((m + 1.0) * qt - jt));
  if (upper < -1e-7) {
    throw InfeasibleWitness("J^T <= (m+1) Q^T violated: eigenvalue " + std::to_string(upper));
  }
  double lower = lambda_min(HermitianOperator(jt + (m - 1.0) * qt));
  if (lower < -1e-7) {
    throw InfeasibleWitness("-(m-1) Q^T <= J^T violated: eigenvalue " + std::to_string(lower));
  }

  int dm = m * m;
  ComplexMatrix phi = max_entangled(m).matrix();
  ComplexMatrix rest = ComplexMatrix::Identity(dm, dm) - phi;
  ComplexMatrix k = kron(n.choi().matrix(), phi) + kron(q.matrix(), rest);
  // (R_A, B, A-hat, B-hat) -> (R_A, A-hat, B-hat, B)
  ComplexMatrix choi = permute_systems(k, {din, dout, m, m}, {0, 2, 3, 1});

  ParallelSimulation out;
  out.channel = QuantumChannel(HermitianOperator(choi), din * dm, dout, 1e-6);
  out.layout = {{din, m, m}, {dout}, {false, false, true}, {true}};

  ChannelChecks c = channel_checks(out.channel);
  VerificationReport& r = out.report;
  r.tp_error = c.tp_error;
  r.tp = c.tp;
  r.cp_min_eig = c.cp_min_eig;
  r.cp = c.cp;
  r.cppt_min_eig = cppt_min_eig(out.channel.choi(), out.layout);
  r.cppt = is_cppt_bipartite(out.channel.choi(), out.layout);
  ComplexMatrix input = kron(gamma_operator(din).matrix(), phi);
  r.reproduction_error = max_abs_diff(apply_operator(out.channel, input, din), n.choi().matrix());
  r.reproduces = r.reproduction_error <= 1e-9;
  return out;
}

std::pair<double, double> sequential_bounds(double e, int uses) {
  if (uses < 1) throw ParameterError("sequential bounds need n >= 1");
  if (e < 0) throw ParameterError("E_kappa must be nonnegative");
  if (e <= kZeroBits) return {0.0, 0.0};
  double lo = std::log2(std::exp2(uses * e) - 1.0);
  double hi = std::log2((std::exp2((uses + 1) * e) - 1.0) / (std::exp2(e) - 1.0));
  return {lo, hi};
}

double q_theta(const QuantumChannel& n, const sdp::SolverConfig& cfg) {
  int din = n.d_in(), dout = n.d_out(), dim = din * dout;
  ComplexMatrix k = pt_out(n.choi().matrix(), din, dout);

  LmiBuilder b(Sense::Minimize);
  int t0 = b.add_scalar(0.5), t1 = b.add_scalar(0.5);
  std::vector<int> y0 = b.add_hermitian(dim, ComplexMatrix());
  std::vector<int> y1 = b.add_hermitian(dim, ComplexMatrix());
  int big = b.add_block(2 * dim), m0 = b.add_block(din), m1 = b.add_block(din);
  ComplexMatrix off = ComplexMatrix::Zero(2 * dim, 2 * dim);
  off.topRightCorner(dim, dim) = -k;
  off.bottomLeftCorner(dim, dim) = -k.adjoint();
  b.set_constant(big, off);
  b.add_hermitian_term(big, y0, dim, [&](const ComplexMatrix& e) {
    ComplexMatrix z = ComplexMatrix::Zero(2 * dim, 2 * dim);
    z.topLeftCorner(dim, dim) = e;
    return z;
  });
  b.add_hermitian_term(big, y1, dim, [&](const ComplexMatrix& e) {
    ComplexMatrix z = ComplexMatrix::Zero(2 * dim, 2 * dim);
    z.bottomRightCorner(dim, dim) = e;
    return z;
  });
  ComplexMatrix ia = ComplexMatrix::Identity(din, din);
  auto neg_marginal = [&](const ComplexMatrix& e) { return ComplexMatrix(-trace_out(e, din, dout)); };
  b.add_term(m0, t0, ia);
  b.add_hermitian_term(m0, y0, dim, neg_marginal);
  b.add_term(m1, t1, ia);
  b.add_hermitian_term(m1, y1, dim, neg_marginal);

  sdp::SdpSolution sol = sdp::solve(b.build(), cfg);
  require_solved(sol, "diamond norm");
  return clamp_bits(b.lmi_objective(sol));
}

std::optional<double> closed_form_channel(const ChannelFamily& f) {
  using K = ChannelFamily::Kind;
  switch (f.kind) {
    case K::Identity:
      return std::log2(f.d);
    case K::Erasure:
      return std::log2(f.d * (1 - f.p) + f.p);
    case K::Depolarizing:
      return 1 - f.p >= 1.0 / f.d ? std::log2(f.d * (1 - f.p)) : 0.0;
    case K::Dephasing:
      // Choi state is maximally correlated with off-diagonal weight 1 - q d/(d-1).
      return std::log2(1 + std::abs(f.d - 1 - f.d * f.q));
    default:
      return std::nullopt;
  }
}

std::string to_string(GaussianCost::Tag t) {
  switch (t) {
    case GaussianCost::Tag::Value:
      return "value";
    case GaussianCost::Tag::Zero:
      return "zero";
    case GaussianCost::Tag::Infinite:
      return "infinite";
    case GaussianCost::Tag::Conjecture:
      return "conjecture";
  }
  return "unknown";
}

GaussianCost gaussian_cost(const GaussianChannelParams& p) {
  using K = GaussianChannelParams::Kind;
  using T = GaussianCost::Tag;
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ParameterError(what);
  };
  switch (p.kind) {
    case K::Thermal:
      require(p.eta > 0 && p.eta < 1, "thermal channel needs eta in (0, 1)");
      require(p.n_b >= 0, "thermal photon number must be nonnegative");
      if (p.n_b == 0) return {T::Conjecture, std::log2((1 + p.eta) / (1 - p.eta))};
      if ((1 - p.eta) * p.n_b >= p.eta) return {T::Zero, 0.0};
      return {T::Value, std::log2((1 + p.eta) / ((1 - p.eta) * (2 * p.n_b + 1)))};
    case K::Amplifier:
      require(p.gain > 1, "amplifier channel needs gain > 1");
      require(p.n_b >= 0, "thermal photon number must be nonnegative");
      if (p.n_b == 0) return {T::Conjecture, std::log2((p.gain + 1) / (p.gain - 1))};
      if ((p.gain - 1) * p.n_b >= 1) return {T::Zero, 0.0};
      return {T::Value, std::log2((p.gain + 1) / ((p.gain - 1) * (2 * p.n_b + 1)))};
    case K::AdditiveNoise:
      require(p.xi >= 0, "noise variance must be nonnegative");
      if (p.xi == 0) return {T::Infinite, INFINITY};
      if (p.xi >= 1) return {T::Zero, 0.0};
      return {T::Value, std::log2(1 / p.xi)};
    case K::PureLoss:
      require(p.eta > 0 && p.eta < 1, "pure-loss channel needs eta in (0, 1)");
      return {T::Conjecture, std::log2((1 + p.eta) / (1 - p.eta))};
    case K::PureAmplifier:
      require(p.gain > 1, "pure amplifier needs gain > 1");
      return {T::Conjecture, std::log2((p.gain + 1) / (p.gain - 1))};
    case K::Identity:
    case K::ClassB1:
      return {T::Infinite, INFINITY};
    case K::ClassA:
    case K::ClassD:
      return {T::Zero, 0.0};
    case K::GeneralConjecture: {
      require(p.det_y > 0, "noise matrix determinant must be positive");
      double ratio = (1 + p.det_x) * (1 + p.det_x) / p.det_y;
      return {T::Conjecture, 0.5 * std::log2(std::max(ratio, 1.0))};
    }
  }
  throw ParameterError("unknown Gaussian channel kind");
}

}  // namespace kappa
