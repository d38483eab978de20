#pragma once

// Reference computations written directly from definitions, without the
// library's tensor helpers, for cross-checking.

#include <Eigen/SVD>
#include <vector>

#include "kappa/matcore.hpp"

namespace kappa::oracle {

// Partial transpose on the second factor by explicit index swap.
inline ComplexMatrix pt_second(const ComplexMatrix& m, int da, int db) {
  ComplexMatrix out(m.rows(), m.cols());
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int a2 = 0; a2 < da; ++a2)
        for (int b2 = 0; b2 < db; ++b2) out(a * db + b, a2 * db + b2) = m(a * db + b2, a2 * db + b);
  return out;
}

inline double trace_norm_svd(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

inline double log_negativity(const ComplexMatrix& rho, int da, int db) {
  return std::log2(trace_norm_svd(pt_second(rho, da, db)));
}

// sum_k (I_c (x) K) X (I_c (x) K)^dagger with explicit Kronecker products.
inline ComplexMatrix apply_kraus_on_last(const std::vector<ComplexMatrix>& kraus,
                                         const ComplexMatrix& x, int dc) {
  ComplexMatrix out;
  for (const ComplexMatrix& k : kraus) {
    ComplexMatrix big = ComplexMatrix::Zero(dc * k.rows(), dc * k.cols());
    for (int c = 0; c < dc; ++c) big.block(c * k.rows(), c * k.cols(), k.rows(), k.cols()) = k;
    ComplexMatrix term = big * x * big.adjoint();
    out = out.size() == 0 ? term : ComplexMatrix(out + term);
  }
  return out;
}

// Choi operator sum_ij |i><j| (x) N(|i><j|) from Kraus operators.
inline ComplexMatrix choi_from_kraus(const std::vector<ComplexMatrix>& kraus) {
  int din = static_cast<int>(kraus.front().cols());
  int dout = static_cast<int>(kraus.front().rows());
  ComplexMatrix j = ComplexMatrix::Zero(din * dout, din * dout);
  for (int i = 0; i < din; ++i)
    for (int k = 0; k < din; ++k) {
      ComplexMatrix e = ComplexMatrix::Zero(din, din);
      e(i, k) = 1.0;
      ComplexMatrix img = ComplexMatrix::Zero(dout, dout);
      for (const ComplexMatrix& a : kraus) img += a * e * a.adjoint();
      j.block(i * dout, k * dout, dout, dout) = img;
    }
  return j;
}

}  // namespace kappa::oracle
