#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kappa/matcore.hpp"

namespace kappa::sdp {

// One coefficient of a symmetric matrix inside a PSD block. Off-diagonal
// entries (row < col) stand for both (row, col) and (col, row).
struct Entry {
  int block = 0;
  int row = 0;
  int col = 0;
  double value = 0;
};

// A linear functional <A, X> + a_f . x_free over the problem coordinates.
struct SparseRow {
  std::vector<Entry> entries;
  std::vector<std::pair<int, double>> free_coeffs;
};

enum class Sense { Minimize, Maximize };

enum class Status { Optimal, PrimalInfeasible, DualInfeasible, MaxIterations, NumericalFailure };

std::string to_string(Status s);

// Standard form:
//   optimize <C, X> + c_f . x_f  s.t.  <A_i, X> + a_fi . x_f = b_i,  X = diag(X_k) PSD.
// Dual (for minimization):
//   maximize b . y  s.t.  C - sum_i y_i A_i = Z PSD,  c_f = sum_i y_i a_fi.
struct SdpProblem {
  std::vector<int> block_dims;
  int num_free = 0;
  SparseRow objective;
  std::vector<SparseRow> constraints;
  std::vector<double> rhs;
  Sense sense = Sense::Minimize;

  int add_block(int dim);
  int add_free();
  int add_constraint(SparseRow row, double b);
  void validate() const;
};

struct SolverConfig {
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  int max_iters = 200;
  double step_fraction = 0.98;

  void validate() const;
};

struct SdpSolution {
  Status status = Status::NumericalFailure;
  double primal_obj = 0;
  double dual_obj = 0;
  double gap = 0;
  double primal_infeas = 0;
  double dual_infeas = 0;
  std::vector<RealMatrix> x_blocks;
  RealVector x_free;
  RealVector y;
  std::vector<RealMatrix> z_blocks;
  int iterations = 0;
};

SdpSolution solve(const SdpProblem& p, const SolverConfig& cfg = {});

// [[Re h, -Im h], [Im h, Re h]].
RealMatrix embed_hermitian(const ComplexMatrix& h);
RealMatrix embed_hermitian(const HermitianOperator& h);
// Inverse of embed_hermitian on its range; general symmetric input is first
// projected onto the embedded subspace by averaging.
HermitianOperator deembed(const RealMatrix& x);

// Returns the smallest t in [lo, hi] (to within tol) at which a monotone
// predicate holds. Throws InfeasibleAtCap when feasible(hi) is false.
struct InfeasibleAtCap : Error {
  using Error::Error;
};
double bisect_threshold(const std::function<bool(double)>& feasible, double lo, double hi,
                        double tol);

// Builder for problems in linear-matrix-inequality form over Hermitian blocks:
//   optimize sum_i b_i y_i  s.t.  F_k0 + sum_i y_i F_ki PSD for every block k,
//                                sum_i g_ji y_i = h_j for every equality j.
// The y variables are the constraint multipliers of the underlying standard
// form, so a single solve returns both the LMI optimum (from y, Z) and the
// multipliers of each block (from X).
class LmiBuilder {
 public:
  explicit LmiBuilder(Sense sense) : sense_(sense) {}

  int add_block(int complex_dim);
  int add_scalar(double objective);
  // n^2 real variables parameterizing a Hermitian n x n matrix, in the order
  // of hermitian_basis(n). The objective contributes Re tr(objective * H).
  std::vector<int> add_hermitian(int n, const ComplexMatrix& objective);
  void set_constant(int block, const ComplexMatrix& f0);
  void add_term(int block, int var, const ComplexMatrix& coeff);
  // Adds, for every basis element E_i of the Hermitian variable, the block
  // term map(E_i).
  void add_hermitian_term(int block, const std::vector<int>& vars, int n,
                          const std::function<ComplexMatrix(const ComplexMatrix&)>& map);
  void add_equality(const std::vector<std::pair<int, double>>& coeffs, double rhs);

  int num_vars() const { return static_cast<int>(objective_.size()); }
  SdpProblem build() const;

  // Value of the LMI objective at the solver's y (the problem's own sense).
  double lmi_objective(const SdpSolution& s) const;
  // Hermitian matrix assembled from y for a Hermitian variable.
  static ComplexMatrix hermitian_value(const RealVector& y, const std::vector<int>& vars, int n);
  // Multiplier of block k as a complex Hermitian operator.
  static HermitianOperator multiplier(const SdpSolution& s, int block);
  // Slack value of block k, i.e. F_k0 + sum_i y_i F_ki.
  static HermitianOperator slack(const SdpSolution& s, int block);

 private:
  Sense sense_;
  std::vector<int> block_dims_;  // complex dims
  std::vector<ComplexMatrix> constants_;
  std::vector<double> objective_;
  // terms_[var] = list of (block, coefficient matrix)
  std::vector<std::vector<std::pair<int, ComplexMatrix>>> terms_;
  std::vector<std::pair<std::vector<std::pair<int, double>>, double>> equalities_;
};

// Orthogonal Hermitian basis with n^2 elements: E_pp, then for p < q the pair
// (|p><q| + |q><p|) and (i|p><q| - i|q><p|).
std::vector<ComplexMatrix> hermitian_basis(int n);

}  // namespace kappa::sdp
