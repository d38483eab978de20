#pragma once

#include <cstdint>
#include <random>

#include "kappa/matcore.hpp"

namespace kappa {

// All sampling goes through std::mt19937_64 seeded with the caller's seed;
// Gaussian variates come from std::normal_distribution, so streams are
// reproducible for a given standard library.
using Rng = std::mt19937_64;

ComplexMatrix gaussian_matrix(int rows, int cols, Rng& rng);
// Haar unitary via QR of a Gaussian matrix with phase correction.
ComplexMatrix random_unitary(int n, Rng& rng);
// Isometry V (rows x cols, rows >= cols) with V^dagger V = I.
ComplexMatrix random_isometry(int rows, int cols, Rng& rng);
ComplexVector random_pure(int n, Rng& rng);

}  // namespace kappa
