#pragma once

#include <optional>
#include <string>
#include <utility>

#include "kappa/channels.hpp"
#include "kappa/sdp.hpp"
#include "kappa/states.hpp"

namespace kappa {

// Thrown when an SDP needed for a measure does not reach an acceptable point.
struct SolverError : Error {
  SolverError(const std::string& what, sdp::Status s, double gap, int iterations)
      : Error(what), status(s), gap(gap), iterations(iterations) {}
  sdp::Status status;
  double gap;
  int iterations;
};

struct InfeasibleWitness : Error {
  using Error::Error;
};

// Solutions that stop short of Optimal but are within this of feasibility and
// optimality are still used.
inline constexpr double kSolverAcceptTol = 1e-6;

// Throws SolverError unless the solution is Optimal or within kSolverAcceptTol.
void require_solved(const sdp::SdpSolution& s, const char* what);

struct MeasureResult {
  std::string label;
  double value_bits = 0;
  double primal_bits = 0;
  double dual_bits = 0;
  double gap = 0;
  HermitianOperator witness_primal;
  std::optional<std::pair<HermitianOperator, HermitianOperator>> witness_dual;
  int solver_iterations = 0;
};

struct OneShotCostResult {
  double m_real = 1;
  int m_integer = 1;
  double cost_bits = 0;
  DensityMatrix g_witness;
  double e_kappa_bits = 0;
  double lo_bits = 0;
  double hi_bits = 0;
  int feasibility_solves = 0;
};

struct VerificationReport {
  double tp_error = 0;
  double cp_min_eig = 0;
  double cppt_min_eig = 0;
  double reproduction_error = 0;
  bool tp = false;
  bool cp = false;
  bool cppt = false;
  bool reproduces = false;

  bool all() const { return tp && cp && cppt && reproduces; }
};

struct DilutionChannel {
  QuantumChannel channel;  // (A-hat B-hat) -> (A B)
  SystemLayout layout;
  VerificationReport report;
};

// Slack accepted for the inner feasibility problems of the one-shot costs.
inline constexpr double kFeasibilitySlack = 1e-8;
// Bisection resolution in m.
inline constexpr double kBisectionTol = 1e-6;

MeasureResult e_kappa_primal(const DensityMatrix& rho, const sdp::SolverConfig& cfg = {});
MeasureResult e_kappa_dual(const DensityMatrix& rho, const sdp::SolverConfig& cfg = {});
MeasureResult exact_cost(const DensityMatrix& rho, const sdp::SolverConfig& cfg = {});

double log_negativity(const DensityMatrix& rho);
bool binegativity_holds(const DensityMatrix& rho);
double binegativity_min_eig(const DensityMatrix& rho);
// log2 Z(rho).
double z_upper(const DensityMatrix& rho);

// Sandwich (log2(2^E - 1), log2(2^E + 1)); the lower end is reported as 0
// instead of -inf when E vanishes.
std::pair<double, double> one_shot_sandwich(double e_kappa_bits);

// Largest s such that some density matrix G satisfies
// (m+1) G^T - rho^T >= s I and rho^T + (m-1) G^T >= s I.
struct FeasibilityResult {
  double slack = 0;
  HermitianOperator g;
};
FeasibilityResult one_shot_feasibility(const DensityMatrix& rho, double m,
                                       const sdp::SolverConfig& cfg = {});
OneShotCostResult one_shot_ppt_cost(const DensityMatrix& rho, const sdp::SolverConfig& cfg = {});

// Measure-prepare channel X -> rho Tr[Phi^m X] + g Tr[(I - Phi^m) X] with its
// four verification checks. Rejects (m, g) outside the feasible set.
DilutionChannel build_dilution_channel(const DensityMatrix& rho, int m, const DensityMatrix& g);

std::optional<double> closed_form_state(const StateFamily& family);

}  // namespace kappa
