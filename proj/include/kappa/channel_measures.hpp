#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "kappa/channels.hpp"
#include "kappa/sdp.hpp"
#include "kappa/state_measures.hpp"

namespace kappa {

struct ChannelDualWitness {
  HermitianOperator v;
  HermitianOperator w;
  HermitianOperator rho_a;
};

struct ChannelMeasureResult {
  std::string label;
  double value_bits = 0;
  double primal_bits = 0;
  double dual_bits = 0;
  double gap = 0;
  HermitianOperator q_witness;
  std::optional<ChannelDualWitness> dual_witness;
  int solver_iterations = 0;
};

// log2 min ||Tr_B Q||_inf s.t. -Q^T <= J^T <= Q^T, Q >= 0, with the dual
// solved as a separate program.
ChannelMeasureResult e_kappa_channel(const QuantumChannel& n, const sdp::SolverConfig& cfg = {});

// Largest E_kappa of N applied to one half of sampled pure inputs, the
// maximally entangled input included.
double e_kappa_channel_lower_by_states(const QuantumChannel& n, int trials, std::uint64_t seed,
                                       const sdp::SolverConfig& cfg = {});

// Largest s such that some Q with Q >= 0 and Tr_B Q = I satisfies
// (m+1) Q^T - J^T >= s I and J^T + (m-1) Q^T >= s I.
struct ChannelFeasibilityResult {
  double slack = 0;
  HermitianOperator q;
};
ChannelFeasibilityResult one_shot_channel_feasibility(const QuantumChannel& n, double m,
                                                      const sdp::SolverConfig& cfg = {});

struct SimulationCostReport {
  double e_kappa_bits = 0;

  std::optional<double> one_shot_bits;
  double m_real = 1;
  int m_integer = 1;
  HermitianOperator q_choi_witness;
  double lo_bits = 0;
  double hi_bits = 0;
  int feasibility_solves = 0;

  std::optional<double> parallel_asymptotic_bits;
  std::optional<double> sequential_asymptotic_bits;
  // E_kappa of the normalized Choi state, set for covariant families.
  std::optional<double> choi_state_bits;

  std::pair<double, double> sequential(int uses) const;
};

SimulationCostReport one_shot_channel_cost(const QuantumChannel& n, const sdp::SolverConfig& cfg = {});
SimulationCostReport asymptotic_costs(const QuantumChannel& n, const sdp::SolverConfig& cfg = {});

// Bipartite channel (A, A-hat, B-hat) -> B with Choi
// J^N (x) Phi^m + Q (x) (I - Phi^m), Bob holding B-hat and B.
struct ParallelSimulation {
  QuantumChannel channel;
  SystemLayout layout;
  VerificationReport report;
};
ParallelSimulation build_parallel_simulation(const QuantumChannel& n, int m, const HermitianOperator& q);

// n-use sequential cost bounds; (0, 0) when E vanishes.
std::pair<double, double> sequential_bounds(double e_kappa_bits, int uses);

// Closed-form E_kappa for families with known values; nullopt otherwise.
std::optional<double> closed_form_channel(const ChannelFamily& family);

// log2 of the diamond norm of N composed with transposition.
double q_theta(const QuantumChannel& n, const sdp::SolverConfig& cfg = {});

struct GaussianCost {
  enum class Tag { Value, Zero, Infinite, Conjecture };
  Tag tag = Tag::Value;
  double bits = 0;
};
std::string to_string(GaussianCost::Tag t);

// Closed-form exact cost of a single-mode Gaussian channel. Parameters outside
// the known formulas throw ParameterError.
GaussianCost gaussian_cost(const GaussianChannelParams& p);

}  // namespace kappa
