#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kappa/matcore.hpp"

namespace kappa {

inline constexpr double kStateTol = 1e-9;

struct StateFamily {
  enum class Kind {
    Isotropic,
    Werner,
    MaxCorrelated,
    OmegaHat,
    AntisymRhoV,
    NonConvexMixture,
    BellMix,
    Explicit
  };

  Kind kind = Kind::Explicit;
  double t = 0;      // Isotropic
  double p = 0;      // Werner
  double alpha = 0;  // OmegaHat
  int d = 0;         // Isotropic, Werner
  ComplexMatrix c;   // MaxCorrelated
  std::array<double, 4> weights{};  // BellMix: Phi+, Phi-, Psi+, Psi-
};

std::string to_string(StateFamily::Kind k);

class DensityMatrix {
 public:
  DensityMatrix() = default;
  // Validates PSD and unit trace within tol.
  DensityMatrix(HermitianOperator op, BipartitePartition p, double tol = kStateTol);

  const HermitianOperator& op() const { return op_; }
  const ComplexMatrix& matrix() const { return op_.matrix(); }
  const BipartitePartition& partition() const { return partition_; }
  int dim() const { return op_.dim(); }

  const std::optional<StateFamily>& family() const { return family_; }
  DensityMatrix with_family(StateFamily f) const;

 private:
  HermitianOperator op_;
  BipartitePartition partition_;
  std::optional<StateFamily> family_;
};

DensityMatrix make_isotropic(double t, int d);
DensityMatrix make_werner(double p, int d);
DensityMatrix make_max_correlated(const ComplexMatrix& c);
DensityMatrix make_omega_hat(double alpha);
DensityMatrix make_rho_v();
// Two-qubit Bell-diagonal state with weights on Phi+, Phi-, Psi+, Psi-.
DensityMatrix make_bell_mix(const std::array<double, 4>& weights);

// The pair used to show E_kappa is not convex and their equal mixture.
struct NonConvexTriple {
  DensityMatrix rho1;  // Phi^2
  DensityMatrix rho2;  // (|00><00| + |11><11|) / 2
  DensityMatrix mixture;
};
NonConvexTriple make_non_convex_triple();

// Three-qubit pure state (|000> + |011> + sqrt(2)|110>) / 2 on A B C with
// the bipartite regroupings used to test monogamy.
struct TripartiteState {
  ComplexMatrix op;  // 8 x 8, ordering A B C with C fastest
  DensityMatrix ab() const;
  DensityMatrix ac() const;
  DensityMatrix a_bc() const;
};
TripartiteState make_monogamy_triple();

enum class SpecialState { OmegaHat, AntisymRhoV, NonConvexMixture };
DensityMatrix make_special(SpecialState kind, double alpha = 0);

DensityMatrix make_state(const StateFamily& family, const BipartitePartition& explicit_dims = {},
                         const ComplexMatrix& explicit_matrix = {});

// G G^dagger / Tr(G G^dagger) with G a seeded complex Gaussian matrix.
DensityMatrix random_density(const BipartitePartition& p, std::uint64_t seed);
DensityMatrix random_pure_state(const BipartitePartition& p, std::uint64_t seed);

DensityMatrix tensor(const DensityMatrix& rho, const DensityMatrix& omega);
DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double weight_a);
DensityMatrix pure_state(const ComplexVector& psi, const BipartitePartition& p);

}  // namespace kappa
