#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kappa/matcore.hpp"
#include "kappa/states.hpp"

namespace kappa {

inline constexpr double kChannelTol = 1e-9;

struct ChannelFamily {
  enum class Kind {
    Identity,
    Erasure,
    Depolarizing,
    Dephasing,
    AmplitudeDamping,
    IsotropicTwirl,
    MeasurePrepare,
    Explicit
  };

  Kind kind = Kind::Explicit;
  int d = 2;      // Identity, Erasure, Depolarizing, Dephasing
  int m = 2;      // IsotropicTwirl
  double p = 0;   // Erasure, Depolarizing
  double q = 0;   // Dephasing
  double r = 0;   // AmplitudeDamping
  // MeasurePrepare: X -> sum_x sigma_x Tr[M_x X]
  std::vector<ComplexMatrix> povm;
  std::vector<ComplexMatrix> prepared;

  static ChannelFamily identity(int d);
  static ChannelFamily erasure(double p, int d);
  static ChannelFamily depolarizing(double p, int d);
  static ChannelFamily dephasing(double q, int d = 2);
  static ChannelFamily amplitude_damping(double r);
  static ChannelFamily isotropic_twirl(int m);

  // Families whose Choi state determines the cost through group covariance.
  bool covariant() const;
};

std::string to_string(ChannelFamily::Kind k);

// Channel N: A -> B stored as its Choi operator J = sum_ij |i><j| (x) N(|i><j|)
// on R (x) B, with R a copy of the input.
class QuantumChannel {
 public:
  QuantumChannel() = default;
  // Validates CP and TP within tol.
  QuantumChannel(HermitianOperator choi, int d_in, int d_out, double tol = kChannelTol);

  const HermitianOperator& choi() const { return choi_; }
  int d_in() const { return d_in_; }
  int d_out() const { return d_out_; }
  const std::optional<ChannelFamily>& family() const { return family_; }
  QuantumChannel with_family(ChannelFamily f) const;

  // Normalized Choi state J / d_in as a bipartite state on R|B.
  DensityMatrix choi_state() const;

 private:
  HermitianOperator choi_;
  int d_in_ = 0;
  int d_out_ = 0;
  std::optional<ChannelFamily> family_;
};

// Kraus operators map C^{d_in} -> C^{d_out} (each d_out x d_in).
QuantumChannel choi_from_kraus(const std::vector<ComplexMatrix>& kraus, int d_in, int d_out);
std::vector<ComplexMatrix> kraus_operators(const ChannelFamily& family);
QuantumChannel make_channel(const ChannelFamily& family);
QuantumChannel measure_prepare(const std::vector<ComplexMatrix>& povm,
                               const std::vector<ComplexMatrix>& prepared);
QuantumChannel swap_channel(int d);
QuantumChannel random_channel(int d_in, int d_out, int num_kraus, std::uint64_t seed);
std::vector<ComplexMatrix> random_kraus(int d_in, int d_out, int num_kraus, std::uint64_t seed);

// <Gamma|_{SR} (X_{CS} (x) J_{RB}) |Gamma>_{SR}: applies the channel to the
// last tensor factor of an operator on C (x) A.
ComplexMatrix apply_operator(const QuantumChannel& n, const ComplexMatrix& x, int d_c);
// Kraus-sum application on the last factor, (I (x) E_k) X (I (x) E_k)^dagger.
ComplexMatrix apply_kraus(const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& x, int d_c);
// Acts on the B factor of rho, keeping the A factor as the reference C.
DensityMatrix apply(const QuantumChannel& n, const DensityMatrix& rho);
// Acts on the whole state (both factors) and re-partitions the output.
DensityMatrix apply_bipartite(const QuantumChannel& n, const DensityMatrix& rho,
                              const BipartitePartition& out);

QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first);
// N (x) M with Choi factors grouped as (R1 R2) (x) (B1 B2).
QuantumChannel tensor(const QuantumChannel& n, const QuantumChannel& m);
QuantumChannel mix(const std::vector<QuantumChannel>& channels, const std::vector<double>& weights);

// Reorders Choi factors R1 B1 R2 B2 into R1 R2 B1 B2 (and the inverse).
ComplexMatrix interleave_choi(const ComplexMatrix& kron_choi, int r1, int b1, int r2, int b2);

struct ChannelChecks {
  bool cp = false;
  bool tp = false;
  bool ppt_binding = false;
  double cp_min_eig = 0;
  double tp_error = 0;
  double binding_min_eig = 0;
};
ChannelChecks channel_checks(const QuantumChannel& n, double tol = kChannelTol);

// Input and output tensor factors of a bipartite channel and which of them
// belong to Bob. The Choi is ordered (inputs...) (x) (outputs...).
struct SystemLayout {
  std::vector<int> in_dims;
  std::vector<int> out_dims;
  std::vector<bool> bob_in;
  std::vector<bool> bob_out;

  int d_in() const;
  int d_out() const;
};

// Partial transpose of the Choi over every Bob factor, input and output.
ComplexMatrix bob_partial_transpose(const HermitianOperator& choi, const SystemLayout& layout);
bool is_cppt_bipartite(const HermitianOperator& choi, const SystemLayout& layout,
                       double tol = kChannelTol);
double cppt_min_eig(const HermitianOperator& choi, const SystemLayout& layout);

// Layout of a product channel N_A (x) M_B acting on a bipartite state.
SystemLayout local_layout(int a_in, int b_in, int a_out, int b_out);

struct GaussianChannelParams {
  enum class Kind {
    Thermal,
    Amplifier,
    AdditiveNoise,
    PureLoss,
    PureAmplifier,
    Identity,
    ClassB1,
    ClassA,
    ClassD,
    // Quantum-limited evaluator in terms of det X and det Y.
    GeneralConjecture
  };
  Kind kind = Kind::Thermal;
  double eta = 0;
  double gain = 0;
  double n_b = 0;
  double xi = 0;
  double det_x = 0;
  double det_y = 0;
};

std::string to_string(GaussianChannelParams::Kind k);

}  // namespace kappa
