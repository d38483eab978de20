#include "kappa/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kappa {

namespace {

int product(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

void require_square(const ComplexMatrix& m, int dim, const char* what) {
  if (m.rows() != m.cols() || m.rows() != dim) {
    throw DimensionError(std::string(what) + ": operator dimension " + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()) + " does not match " +
                         std::to_string(dim));
  }
}

// Splits a flat index into per-factor digits, factor 0 slowest.
void split_index(int idx, const std::vector<int>& dims, std::vector<int>& digits) {
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    digits[k] = idx % dims[k];
    idx /= dims[k];
  }
}

int join_index(const std::vector<int>& digits, const std::vector<int>& dims) {
  int idx = 0;
  for (size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
  return idx;
}

}  // namespace

BipartitePartition::BipartitePartition(int a, int b) : d_a(a), d_b(b) {
  if (a < 1 || b < 1) throw DimensionError("bipartite dimensions must be >= 1");
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (!std::isfinite(m.data()[i].real()) || !std::isfinite(m.data()[i].imag())) return false;
  }
  return true;
}

HermitianOperator::HermitianOperator(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw DimensionError("Hermitian operator must be square");
  if (!is_finite(m)) throw ParameterError("operator has non-finite entries");
  double scale = m.size() ? std::max(1.0, m.cwiseAbs().maxCoeff()) : 1.0;
  if (hermiticity_defect(m) > tol * scale) {
    throw ParameterError("operator is not Hermitian (defect " +
                         std::to_string(hermiticity_defect(m)) + ")");
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianOperator HermitianOperator::zero(int dim) {
  return HermitianOperator(ComplexMatrix::Zero(dim, dim));
}

HermitianOperator HermitianOperator::identity(int dim) {
  return HermitianOperator(ComplexMatrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
  if (o.dim() != dim()) throw DimensionError("sum of operators with different dimensions");
  return HermitianOperator(m_ + o.m_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
  if (o.dim() != dim()) throw DimensionError("difference of operators with different dimensions");
  return HermitianOperator(m_ - o.m_);
}

HermitianOperator HermitianOperator::operator*(double s) const { return HermitianOperator(s * m_); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator(kron(a.matrix(), b.matrix()));
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const std::vector<int>& dims,
                                const std::vector<bool>& transpose) {
  if (dims.size() != transpose.size()) throw DimensionError("partial_transpose: mask size");
  int n = product(dims);
  require_square(m, n, "partial_transpose");
  ComplexMatrix out(n, n);
  std::vector<int> rd(dims.size()), cd(dims.size());
  for (int r = 0; r < n; ++r) {
    split_index(r, dims, rd);
    for (int c = 0; c < n; ++c) {
      split_index(c, dims, cd);
      std::vector<int> nr = rd, nc = cd;
      for (size_t k = 0; k < dims.size(); ++k) {
        if (transpose[k]) std::swap(nr[k], nc[k]);
      }
      out(join_index(nr, dims), join_index(nc, dims)) = m(r, c);
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& dims,
                            const std::vector<bool>& keep) {
  if (dims.size() != keep.size()) throw DimensionError("partial_trace: mask size");
  int n = product(dims);
  require_square(m, n, "partial_trace");
  std::vector<int> kept_dims;
  for (size_t k = 0; k < dims.size(); ++k) {
    if (keep[k]) kept_dims.push_back(dims[k]);
  }
  int nk = product(kept_dims);
  ComplexMatrix out = ComplexMatrix::Zero(nk, nk);
  std::vector<int> rd(dims.size()), cd(dims.size());
  std::vector<int> kr(kept_dims.size()), kc(kept_dims.size());
  for (int r = 0; r < n; ++r) {
    split_index(r, dims, rd);
    for (int c = 0; c < n; ++c) {
      split_index(c, dims, cd);
      bool diagonal = true;
      size_t j = 0;
      for (size_t k = 0; k < dims.size(); ++k) {
        if (keep[k]) {
          kr[j] = rd[k];
          kc[j] = cd[k];
          ++j;
        } else if (rd[k] != cd[k]) {
          diagonal = false;
          break;
        }
      }
      if (diagonal) out(join_index(kr, kept_dims), join_index(kc, kept_dims)) += m(r, c);
    }
  }
  return out;
}

ComplexMatrix permute_systems(const ComplexMatrix& m, const std::vector<int>& dims,
                              const std::vector<int>& perm) {
  if (perm.size() != dims.size()) throw DimensionError("permute_systems: permutation size");
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (size_t k = 0; k < sorted.size(); ++k) {
    if (sorted[k] != static_cast<int>(k)) throw DimensionError("permute_systems: not a permutation");
  }
  int n = product(dims);
  if (m.rows() != n || m.cols() != n) throw DimensionError("permute_systems: operator dimension");
  std::vector<int> new_dims(dims.size());
  for (size_t k = 0; k < dims.size(); ++k) new_dims[k] = dims[perm[k]];
  // Map each old flat index to its new flat index once.
  std::vector<int> map(n);
  std::vector<int> od(dims.size()), nd(dims.size());
  for (int i = 0; i < n; ++i) {
    split_index(i, dims, od);
    for (size_t k = 0; k < dims.size(); ++k) nd[k] = od[perm[k]];
    map[i] = join_index(nd, new_dims);
  }
  ComplexMatrix out(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) out(map[r], map[c]) = m(r, c);
  }
  return out;
}

HermitianOperator partial_transpose(const HermitianOperator& m, const BipartitePartition& p,
                                    Subsystem subsystem) {
  require_square(m.matrix(), p.dim(), "partial_transpose");
  return HermitianOperator(partial_transpose(m.matrix(), {p.d_a, p.d_b},
                                             {subsystem == Subsystem::A, subsystem == Subsystem::B}));
}

HermitianOperator partial_trace(const HermitianOperator& m, const BipartitePartition& p,
                                Subsystem traced) {
  require_square(m.matrix(), p.dim(), "partial_trace");
  return HermitianOperator(
      partial_trace(m.matrix(), {p.d_a, p.d_b}, {traced != Subsystem::A, traced != Subsystem::B}));
}

EigenDecomposition hermitian_eig(const HermitianOperator& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m.matrix());
  if (es.info() != Eigen::Success) throw Error("Hermitian eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

RealVector hermitian_eigenvalues(const HermitianOperator& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("Hermitian eigensolver did not converge");
  return es.eigenvalues();
}

double lambda_min(const HermitianOperator& m) { return hermitian_eigenvalues(m)(0); }

double lambda_max(const HermitianOperator& m) {
  RealVector ev = hermitian_eigenvalues(m);
  return ev(ev.size() - 1);
}

Norms norms(const HermitianOperator& m) {
  EigenDecomposition e = hermitian_eig(m);
  RealVector a = e.values.cwiseAbs();
  Norms out;
  out.trace_norm = a.sum();
  out.op_norm = a.size() ? a.maxCoeff() : 0.0;
  out.abs_op = HermitianOperator(e.vectors * a.asDiagonal() * e.vectors.adjoint());
  return out;
}

double trace_norm(const HermitianOperator& m) { return hermitian_eigenvalues(m).cwiseAbs().sum(); }

double op_norm(const HermitianOperator& m) {
  RealVector ev = hermitian_eigenvalues(m);
  return ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
}

HermitianOperator abs_op(const HermitianOperator& m) { return norms(m).abs_op; }

bool psd_check(const HermitianOperator& m, double tol) {
  if (m.dim() == 0) return true;
  RealVector ev = hermitian_eigenvalues(m);
  double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  return ev(0) >= -tol * scale;
}

HermitianOperator gamma_operator(int d) {
  if (d < 1) throw DimensionError("dimension must be >= 1");
  ComplexMatrix g = ComplexMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i * d + i, j * d + j) = 1.0;
  }
  return HermitianOperator(g);
}

HermitianOperator max_entangled(int d) { return gamma_operator(d) * (1.0 / d); }

HermitianOperator swap_operator(int d) {
  if (d < 1) throw DimensionError("dimension must be >= 1");
  ComplexMatrix f = ComplexMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
  }
  return HermitianOperator(f);
}

StandardOperators standard_operators(int d) {
  HermitianOperator f = swap_operator(d);
  HermitianOperator id = HermitianOperator::identity(d * d);
  return {max_entangled(d), gamma_operator(d), f, (id + f) * 0.5, (id - f) * 0.5};
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double log2_safe(double x) { return x > 0 ? std::log2(x) : -INFINITY; }

}  // namespace kappa
