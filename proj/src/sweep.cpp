#include "kappa/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "kappa/channel_measures.hpp"

namespace kappa {

std::vector<double> linear_grid(double lo, double hi, int steps) {
  if (steps < 2) throw ParameterError("grid needs at least 2 steps");
  if (!(lo <= hi)) throw ParameterError("grid needs lo <= hi");
  std::vector<double> g(steps);
  for (int k = 0; k < steps; ++k) g[k] = lo + (hi - lo) * k / (steps - 1);
  g.back() = hi;
  return g;
}

void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  int workers = std::clamp(jobs, 1, std::max(1, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!first) first = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

std::vector<AmplitudeDampingRow> sweep_amplitude_damping(int steps, int jobs, const sdp::SolverConfig& cfg) {
  std::vector<double> grid = linear_grid(0.0, 1.0, steps);
  std::vector<AmplitudeDampingRow> rows(grid.size());
  parallel_for(static_cast<int>(grid.size()), jobs, [&](int i) {
    AmplitudeDampingRow& row = rows[i];
    row.r = grid[i];
    try {
      QuantumChannel n = make_channel(ChannelFamily::amplitude_damping(row.r));
      row.e_kappa_bits = e_kappa_channel(n, cfg).value_bits;
      row.q_theta_bits = q_theta(n, cfg);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  return rows;
}

}  // namespace kappa
