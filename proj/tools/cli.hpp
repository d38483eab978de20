#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kappa/channel_measures.hpp"

namespace kappa::cli {

inline constexpr const char* kSchema = "kappa-cost/1";
// Relative tolerance of the closed-form agreement flags.
inline constexpr double kAgreementTol = 1e-5;

enum ExitCode { kOk = 0, kParseError = 2, kDimensionError = 3, kSolverFailure = 4, kSelftestFailure = 5 };

// Malformed JSON or an invalid job description.
struct ParseError : Error {
  using Error::Error;
};

using Json = nlohmann::ordered_json;

// Parses text as JSON; errors carry the line and column.
Json parse_json_text(const std::string& text);
// Inline JSON when the argument starts with '{', otherwise a file path.
std::string read_input_text(const std::string& arg);

Json encode_matrix(const ComplexMatrix& m);
ComplexMatrix decode_matrix(const Json& j, const std::string& what);

enum class ObjectKind { State, Channel, Gaussian };

struct Input {
  ObjectKind kind = ObjectKind::State;
  Json echo;
  std::optional<DensityMatrix> state;
  std::optional<QuantumChannel> channel;
  std::optional<GaussianChannelParams> gaussian;
};

// Decodes {"kind": ..., "params": {...}} or the explicit forms. seed is used
// by the "random" kinds when their params carry no seed.
Input decode_input(const Json& j, std::uint64_t seed);

// Explicit encodings that decode back to the same operator.
Json encode_state(const DensityMatrix& rho);
Json encode_channel(const QuantumChannel& n);

struct Options {
  std::string command;
  std::string input;
  std::vector<std::string> quantities;
  std::string output;
  std::string format = "json";
  int steps = 21;
  int jobs = 1;
  std::uint64_t seed = 0;
  bool witnesses = false;
  sdp::SolverConfig solver;
  // Sweeps over a family parameter; the amplitude-damping r on [0, 1] when no
  // input is given.
  std::string param;
  std::optional<double> lo;
  std::optional<double> hi;
  // Largest n reported by sequential_bounds.
  int uses = 1;
};

struct RunResult {
  Json report;
  // Rows for --format csv, header included.
  std::string csv;
  int exit_code = kOk;
};

// Executes one job. Throws ParseError, DimensionError or ParameterError for
// invalid jobs; solver failures are recorded per quantity.
RunResult run(const Options& opts);

std::string format_number(double x);

}  // namespace kappa::cli
