#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace kappa {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionError : Error {
  using Error::Error;
};
struct ParameterError : Error {
  using Error::Error;
};

enum class Subsystem { A, B };

struct BipartitePartition {
  int d_a = 1;
  int d_b = 1;

  BipartitePartition() = default;
  BipartitePartition(int a, int b);
  int dim() const { return d_a * d_b; }
  bool operator==(const BipartitePartition&) const = default;
};

// Square complex matrix that is Hermitian to within kHermitianTol (relative to
// its largest entry). Construction symmetrizes to (M + M^dagger) / 2.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(const ComplexMatrix& m, double tol = kHermitianTol);

  static HermitianOperator zero(int dim);
  static HermitianOperator identity(int dim);

  const ComplexMatrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  double trace() const { return m_.trace().real(); }

  HermitianOperator operator+(const HermitianOperator& o) const;
  HermitianOperator operator-(const HermitianOperator& o) const;
  HermitianOperator operator*(double s) const;

 private:
  ComplexMatrix m_;
};

double hermiticity_defect(const ComplexMatrix& m);
bool is_finite(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b);

// Multipartite index helpers. Factor 0 is the slowest-varying index.
ComplexMatrix partial_transpose(const ComplexMatrix& m, const std::vector<int>& dims,
                                const std::vector<bool>& transpose);
ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& dims,
                            const std::vector<bool>& keep);
// Reorders tensor factors: factor k of the result is factor perm[k] of the input.
ComplexMatrix permute_systems(const ComplexMatrix& m, const std::vector<int>& dims,
                              const std::vector<int>& perm);

HermitianOperator partial_transpose(const HermitianOperator& m, const BipartitePartition& p,
                                    Subsystem subsystem);
HermitianOperator partial_trace(const HermitianOperator& m, const BipartitePartition& p,
                                Subsystem traced);

struct EigenDecomposition {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns are eigenvectors
};

EigenDecomposition hermitian_eig(const HermitianOperator& m);
RealVector hermitian_eigenvalues(const HermitianOperator& m);
double lambda_min(const HermitianOperator& m);
double lambda_max(const HermitianOperator& m);

struct Norms {
  double trace_norm = 0;
  double op_norm = 0;
  HermitianOperator abs_op;
};

Norms norms(const HermitianOperator& m);
double trace_norm(const HermitianOperator& m);
double op_norm(const HermitianOperator& m);
HermitianOperator abs_op(const HermitianOperator& m);

// True iff lambda_min(m) >= -tol * max(1, ||m||_inf).
bool psd_check(const HermitianOperator& m, double tol);

struct StandardOperators {
  HermitianOperator phi;  // Gamma / d
  HermitianOperator gamma;
  HermitianOperator swap;
  HermitianOperator proj_sym;
  HermitianOperator proj_antisym;
};

StandardOperators standard_operators(int d);
HermitianOperator max_entangled(int d);
HermitianOperator gamma_operator(int d);
HermitianOperator swap_operator(int d);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double log2_safe(double x);

}  // namespace kappa
