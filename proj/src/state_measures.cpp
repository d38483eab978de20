#include "kappa/state_measures.hpp"

#include <algorithm>
#include <cmath>

namespace kappa {

void require_solved(const sdp::SdpSolution& s, const char* what) {
  if (s.status == sdp::Status::Optimal) return;
  bool near = (s.status == sdp::Status::MaxIterations || s.status == sdp::Status::NumericalFailure) &&
              s.gap <= kSolverAcceptTol && s.primal_infeas <= kSolverAcceptTol &&
              s.dual_infeas <= kSolverAcceptTol;
  if (near) return;
  throw SolverError(std::string(what) + ": solver returned " + sdp::to_string(s.status) +
                        " (gap " + std::to_string(s.gap) + ")",
                    s.status, s.gap, s.iterations);
}

namespace {

using sdp::LmiBuilder;
using sdp::Sense;

ComplexMatrix pt_b(const ComplexMatrix& m, const BipartitePartition& p) {
  return partial_transpose(m, {p.d_a, p.d_b}, {false, true});
}

double clamp_bits(double value) { return std::max(0.0, log2_safe(value)); }

// Largest eigenvalue violation of V + W <= I, V^T >= 0, W^T >= 0.
double dual_violation(const HermitianOperator& v, const HermitianOperator& w,
                      const BipartitePartition& p) {
  int n = p.dim();
  double a = lambda_min(HermitianOperator::identity(n) - v - w);
  double b = lambda_min(HermitianOperator(pt_b(v.matrix(), p)));
  double c = lambda_min(HermitianOperator(pt_b(w.matrix(), p)));
  return std::max({0.0, -a, -b, -c});
}

HermitianOperator project_to_density(const HermitianOperator& g) {
  EigenDecomposition e = hermitian_eig(g);
  RealVector lam = e.values.cwiseMax(0.0);
  double total = lam.sum();
  if (!(total > 0)) throw InfeasibleWitness("witness has no positive part");
  lam /= total;
  return HermitianOperator(e.vectors * lam.asDiagonal() * e.vectors.adjoint());
}

}  // namespace

MeasureResult e_kappa_primal(const DensityMatrix& rho, const sdp::SolverConfig& cfg) {
  const BipartitePartition& p = rho.partition();
  int n = p.dim();
  ComplexMatrix rt = pt_b(rho.matrix(), p);
  auto transpose_b = [&](const ComplexMatrix& e) { return pt_b(e, p); };

  LmiBuilder b(Sense::Minimize);
  std::vector<int> s = b.add_hermitian(n, ComplexMatrix::Identity(n, n));
  int b0 = b.add_block(n), b1 = b.add_block(n), b2 = b.add_block(n);
  b.add_hermitian_term(b0, s, n, [](const ComplexMatrix& e) { return e; });
  b.set_constant(b1, -rt);
  b.add_hermitian_term(b1, s, n, transpose_b);
  b.set_constant(b2, rt);
  b.add_hermitian_term(b2, s, n, transpose_b);
  sdp::SdpSolution sol = sdp::solve(b.build(), cfg);
  require_solved(sol, "kappa-entanglement primal");

  MeasureResult r;
  r.label = "E_kappa";
  HermitianOperator s_op(LmiBuilder::hermitian_value(sol.y, s, n));
  r.witness_primal = s_op;
  r.primal_bits = clamp_bits(s_op.trace());
  HermitianOperator v(pt_b(LmiBuilder::multiplier(sol, b1).matrix(), p));
  HermitianOperator w(pt_b(LmiBuilder::multiplier(sol, b2).matrix(), p));
  r.solver_iterations = sol.iterations;
  if (dual_violation(v, w, p) > kSolverAcceptTol) {
    MeasureResult d = e_kappa_dual(rho, cfg);
    r.dual_bits = d.dual_bits;
    r.witness_dual = d.witness_dual;
    r.solver_iterations += d.solver_iterations;
  } else {
    r.dual_bits = clamp_bits((rho.matrix() * (v - w).matrix()).trace().real());
    r.witness_dual = std::make_pair(v, w);
  }
  r.value_bits = r.primal_bits;
  r.gap = std::abs(r.primal_bits - r.dual_bits);
  return r;
}

MeasureResult e_kappa_dual(const DensityMatrix& rho, const sdp::SolverConfig& cfg) {
  const BipartitePartition& p = rho.partition();
  int n = p.dim();
  auto transpose_b = [&](const ComplexMatrix& e) { return pt_b(e, p); };
  auto negate = [](const ComplexMatrix& e) { return ComplexMatrix(-e); };

  LmiBuilder b(Sense::Maximize);
  std::vector<int> v = b.add_hermitian(n, rho.matrix());
  std::vector<int> w = b.add_hermitian(n, -rho.matrix());
  int b0 = b.add_block(n), b1 = b.add_block(n), b2 = b.add_block(n);
  b.set_constant(b0, ComplexMatrix::Identity(n, n));
  b.add_hermitian_term(b0, v, n, negate);
  b.add_hermitian_term(b0, w, n, negate);
  b.add_hermitian_term(b1, v, n, transpose_b);
  b.add_hermitian_term(b2, w, n, transpose_b);
  sdp::SdpSolution sol = sdp::solve(b.build(), cfg);
  require_solved(sol, "kappa-entanglement dual");

  MeasureResult r;
  r.label = "E_kappa (dual)";
  HermitianOperator v_op(LmiBuilder::hermitian_value(sol.y, v, n));
  HermitianOperator w_op(LmiBuilder::hermitian_value(sol.y, w, n));
  r.witness_dual = std::make_pair(v_op, w_op);
  r.dual_bits = clamp_bits(b.lmi_objective(sol));
  HermitianOperator s_op = LmiBuilder::multiplier(sol, b0);
  r.witness_primal = s_op;
  r.primal_bits = clamp_bits(s_op.trace());
  r.value_bits = r.dual_bits;
  r.gap = std::abs(r.primal_bits - r.dual_bits);
  r.solver_iterations = sol.iterations;
  return r;
}

MeasureResult exact_cost(const DensityMatrix& rho, const sdp::SolverConfig& cfg) {
  MeasureResult r = e_kappa_primal(rho, cfg);
  r.label = "E_PPT";
  return r;
}

double log_negativity(const DensityMatrix& rho) {
  HermitianOperator pt(pt_b(rho.matrix(), rho.partition()));
  return std::max(0.0, std::log2(trace_norm(pt)));
}

double binegativity_min_eig(const DensityMatrix& rho) {
  HermitianOperator pt(pt_b(rho.matrix(), rho.partition()));
  HermitianOperator bineg(pt_b(abs_op(pt).matrix(), rho.partition()));
  return lambda_min(bineg);
}

bool binegativity_holds(const DensityMatrix& rho) { return binegativity_min_eig(rho) >= -1e-9; }

double z_upper(const DensityMatrix& rho) {
  HermitianOperator pt(pt_b(rho.matrix(), rho.partition()));
  Norms nm = norms(pt);
  double lmin = lambda_min(HermitianOperator(pt_b(nm.abs_op.matrix(), rho.partition())));
  double z = nm.trace_norm + rho.dim() * std::max(0.0, -lmin);
  return std::log2(z);
}

std::pair<double, double> one_shot_sandwich(double e) {
  double hi = std::log2(std::exp2(e) + 1.0);
  if (e <= 1e-7) return {0.0, hi};
  return {std::log2(std::exp2(e) - 1.0), hi};
}

FeasibilityResult one_shot_feasibility(const DensityMatrix& rho, double m,
                                       const sdp::SolverConfig& cfg) {
  if (!(m >= 1)) throw ParameterError("one-shot feasibility needs m >= 1");
  const BipartitePartition& p = rho.partition();
  int n = p.dim();
  ComplexMatrix rt = pt_b(rho.matrix(), p);
  ComplexMatrix id = ComplexMatrix::Identity(n, n);

  LmiBuilder b(Sense::Maximize);
  std::vector<int> g = b.add_hermitian(n, ComplexMatrix());
  int s = b.add_scalar(1.0);
  int b0 = b.add_block(n), b1 = b.add_block(n), b2 = b.add_block(n);
  b.add_hermitian_term(b0, g, n, [](const ComplexMatrix& e) { return e; });
  b.set_constant(b1, -rt);
  b.add_hermitian_term(b1, g, n, [&](const ComplexMatrix& e) { return ComplexMatrix((m + 1) * pt_b(e, p)); });
  b.add_term(b1, s, -id);
  b.set_constant(b2, rt);
  if (m > 1) {
    b.add_hermitian_term(b2, g, n, [&](const ComplexMatrix& e) { return ComplexMatrix((m - 1) * pt_b(e, p)); });
  }
  b.add_term(b2, s, -id);
  std::vector<std::pair<int, double>> trace_row;
  for (int i = 0; i < n; ++i) trace_row.emplace_back(g[i], 1.0);
  b.add_equality(trace_row, 1.0);

  sdp::SdpSolution sol = sdp::solve(b.build(), cfg);
  require_solved(sol, "one-shot feasibility");
  return {sol.y(s), HermitianOperator(LmiBuilder::hermitian_value(sol.y, g, n))};
}

OneShotCostResult one_shot_ppt_cost(const DensityMatrix& rho, const sdp::SolverConfig& cfg) {
  OneShotCostResult out;
  out.e_kappa_bits = e_kappa_primal(rho, cfg).value_bits;
  std::tie(out.lo_bits, out.hi_bits) = one_shot_sandwich(out.e_kappa_bits);

  auto feasible = [&](double m) {
    ++out.feasibility_solves;
    return one_shot_feasibility(rho, m, cfg).slack >= -kFeasibilitySlack;
  };
  double cap = std::exp2(rho.partition().d_a);
  out.m_real = sdp::bisect_threshold(feasible, 1.0, cap, kBisectionTol);
  out.cost_bits = std::log2(out.m_real);
  out.m_integer = std::max(1, static_cast<int>(std::ceil(out.m_real - kBisectionTol)));

  // The witness is re-solved at the integer point with tighter tolerances so
  // the dilution channel built from it passes its checks with margin.
  sdp::SolverConfig tight = cfg;
  tight.gap_tol = std::min(cfg.gap_tol, 1e-11);
  tight.feas_tol = std::min(cfg.feas_tol, 1e-11);
  FeasibilityResult f;
  try {
    f = one_shot_feasibility(rho, out.m_integer, tight);
  } catch (const SolverError&) {
    f = one_shot_feasibility(rho, out.m_integer, cfg);
  }
  ++out.feasibility_solves;
  out.g_witness = DensityMatrix(project_to_density(f.g), rho.partition());
  return out;
}

DilutionChannel build_dilution_channel(const DensityMatrix& rho, int m, const DensityMatrix& g) {
  if (m < 1) throw ParameterError("dilution channel needs m >= 1");
  if (!(g.partition() == rho.partition())) throw DimensionError("G must have the shape of rho");
  const BipartitePartition& p = rho.partition();
  ComplexMatrix rt = pt_b(rho.matrix(), p);
  ComplexMatrix gt = pt_b(g.matrix(), p);
  double upper = lambda_min(HermitianOperator((m + 1.0) * gt - rt));
  double lower = lambda_min(HermitianOperator(rt + (m - 1.0) * gt));
  if (upper < -1e-7) {
    throw InfeasibleWitness("rho^T <= (m+1) G^T violated: eigenvalue " + std::to_string(upper));
  }
  if (lower < -1e-7) {
    throw InfeasibleWitness("-(m-1) G^T <= rho^T violated: eigenvalue " + std::to_string(lower));
  }

  int dm = m * m;
  ComplexMatrix phi = max_entangled(m).matrix();
  ComplexMatrix rest = ComplexMatrix::Identity(dm, dm) - phi;
  ComplexMatrix choi = kron(phi, rho.matrix()) + kron(rest, g.matrix());

  DilutionChannel out;
  out.channel = QuantumChannel(HermitianOperator(choi), dm, p.dim(), 1e-6);
  out.layout = {{m, m}, {p.d_a, p.d_b}, {false, true}, {false, true}};

  ChannelChecks c = channel_checks(out.channel);
  VerificationReport& r = out.report;
  r.tp_error = c.tp_error;
  r.tp = c.tp;
  r.cp_min_eig = c.cp_min_eig;
  r.cp = c.cp;
  r.cppt_min_eig = cppt_min_eig(out.channel.choi(), out.layout);
  r.cppt = is_cppt_bipartite(out.channel.choi(), out.layout);
  r.reproduction_error = max_abs_diff(apply_operator(out.channel, phi, 1), rho.matrix());
  r.reproduces = r.reproduction_error <= 1e-9;
  return out;
}

std::optional<double> closed_form_state(const StateFamily& f) {
  using K = StateFamily::Kind;
  switch (f.kind) {
    case K::Isotropic:
      return f.t > 1.0 / f.d ? std::log2(f.d * f.t) : 0.0;
    case K::Werner:
      return f.p > 0.5 ? std::log2((2.0 / f.d) * (2 * f.p - 1) + 1) : 0.0;
    case K::MaxCorrelated:
      return std::log2(f.c.cwiseAbs().sum());
    case K::OmegaHat:
      return std::log2(1.0 + f.alpha);
    case K::AntisymRhoV:
      return 1.0;
    case K::NonConvexMixture:
      return std::log2(1.5);
    case K::BellMix: {
      // Two-qubit states satisfy binegativity, so the value is E_N, which for a
      // Bell-diagonal state is log2(2 w_max) above 1/2.
      double w = *std::max_element(f.weights.begin(), f.weights.end());
      return w > 0.5 ? std::log2(2 * w) : 0.0;
    }
    case K::Explicit:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace kappa
