#include "kappa/random.hpp"

#include <cmath>

namespace kappa {

ComplexMatrix gaussian_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix a(rows, cols);
  // Filled row by row so the stream order does not depend on storage order.
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      double re = g(rng);
      double im = g(rng);
      a(i, j) = Complex(re, im);
    }
  }
  return a;
}

ComplexMatrix random_unitary(int n, Rng& rng) { return random_isometry(n, n, rng); }

ComplexMatrix random_isometry(int rows, int cols, Rng& rng) {
  if (rows < cols) throw DimensionError("isometry needs rows >= cols");
  ComplexMatrix a = gaussian_matrix(rows, cols, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  ComplexMatrix r = qr.matrixQR().topLeftCorner(cols, cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

ComplexVector random_pure(int n, Rng& rng) {
  ComplexVector v = gaussian_matrix(n, 1, rng).col(0);
  return v / v.norm();
}

}  // namespace kappa
