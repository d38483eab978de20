#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kappa/sdp.hpp"

namespace kappa {

// steps evenly spaced points from lo to hi inclusive; steps >= 2.
std::vector<double> linear_grid(double lo, double hi, int steps);

// Runs fn(i) for i in [0, count) on up to jobs threads. Exceptions escaping fn
// are rethrown after all workers finish.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

struct AmplitudeDampingRow {
  double r = 0;
  std::optional<double> e_kappa_bits;
  std::optional<double> q_theta_bits;
  std::string error;
};

// E_kappa and Q_Theta over an even r-grid on [0, 1], rows in grid order. A
// failed grid point keeps its row with the error message filled in.
std::vector<AmplitudeDampingRow> sweep_amplitude_damping(int steps, int jobs,
                                                         const sdp::SolverConfig& cfg = {});

}  // namespace kappa
