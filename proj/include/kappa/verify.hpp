#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kappa/sdp.hpp"

namespace kappa::verify {

struct Outcome {
  bool passed = false;
  int cases = 0;
  std::string detail;
};

struct Check {
  std::string id;
  std::string suite;
  std::string title;
  std::function<Outcome(const sdp::SolverConfig&)> run;
};

struct CheckResult {
  std::string id;
  std::string suite;
  std::string title;
  bool passed = false;
  int cases = 0;
  std::string detail;
  double seconds = 0;
};

// The sixteen numbered acceptance criteria, tolerances fixed in the checks.
std::vector<Check> acceptance_checks();
// Invariant suites "state_measures" and "channel_measures".
std::vector<Check> invariant_checks();

// Runs one check; an escaping exception counts as a failure.
CheckResult run_check(const Check& c, const sdp::SolverConfig& cfg);

}  // namespace kappa::verify
