#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <Eigen/Core>

#include "kappa/random.hpp"
#include "kappa/sweep.hpp"
#include "kappa/verify.hpp"

#ifndef KAPPA_VERSION
#define KAPPA_VERSION "0.0.0"
#endif

namespace kappa::cli {
namespace {

const std::set<std::string> kStateKinds{"isotropic", "werner",  "max_correlated",     "omega_hat", "rho_v",
                                        "bell_mix",  "random", "non_convex_mixture"};
const std::set<std::string> kChannelKinds{"identity",  "erasure",         "depolarizing",   "dephasing",
                                          "amplitude_damping", "isotropic_twirl", "random_channel", "kraus"};
const std::set<std::string> kGaussianKinds{"thermal", "amplifier", "additive_noise", "pure_loss", "pure_amplifier",
                                           "general_conjecture"};
const std::set<std::string> kQuantities{"e_kappa", "e_n",     "z_upper",  "one_shot",
                                        "q_theta", "closed_form", "gaussian", "sequential_bounds"};

// Reads typed parameters and rejects keys nobody asked for.
class Params {
 public:
  Params(const Json& j, std::string kind) : kind_(std::move(kind)) {
    if (j.is_null()) return;
    if (!j.is_object()) throw ParseError(kind_ + ": \"params\" must be an object");
    j_ = j;
  }
  double num(const std::string& key) {
    if (!j_.contains(key)) throw ParseError(kind_ + ": missing parameter \"" + key + "\"");
    return num(key, 0);
  }
  double num(const std::string& key, double def) {
    used_.insert(key);
    if (!j_.contains(key)) return def;
    if (!j_[key].is_number()) throw ParseError(kind_ + ": parameter \"" + key + "\" must be a number");
    return j_[key].get<double>();
  }
  int integer(const std::string& key) {
    if (!j_.contains(key)) throw ParseError(kind_ + ": missing parameter \"" + key + "\"");
    return integer(key, 0);
  }
  int integer(const std::string& key, int def) {
    used_.insert(key);
    if (!j_.contains(key)) return def;
    if (!j_[key].is_number_integer()) throw ParseError(kind_ + ": parameter \"" + key + "\" must be an integer");
    return j_[key].get<int>();
  }
  bool flag(const std::string& key, bool def) {
    used_.insert(key);
    if (!j_.contains(key)) return def;
    if (!j_[key].is_boolean()) throw ParseError(kind_ + ": parameter \"" + key + "\" must be true or false");
    return j_[key].get<bool>();
  }
  const Json& raw(const std::string& key) {
    used_.insert(key);
    if (!j_.contains(key)) throw ParseError(kind_ + ": missing parameter \"" + key + "\"");
    return j_[key];
  }
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!used_.count(it.key())) throw ParseError(kind_ + ": unknown parameter \"" + it.key() + "\"");
  }

 private:
  std::string kind_;
  Json j_ = Json::object();
  std::set<std::string> used_;
};

std::pair<int, int> decode_dims(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ParseError(what + ": \"dims\" must be a pair of integers");
  int a = j[0].get<int>(), b = j[1].get<int>();
  if (a < 1 || b < 1) throw DimensionError(what + ": dimensions must be positive");
  return {a, b};
}

const Json& field(const Json& j, const std::string& key, const std::string& what) {
  if (!j.contains(key)) throw ParseError(what + ": missing \"" + key + "\"");
  return j[key];
}

DensityMatrix decode_state(const std::string& kind, const Json& j, std::uint64_t seed) {
  if (kind == "explicit") {
    auto [a, b] = decode_dims(field(j, "dims", "explicit state"), "explicit state");
    ComplexMatrix m = decode_matrix(field(j, "matrix", "explicit state"), "explicit state matrix");
    if (m.rows() != a * b) throw DimensionError("explicit state: matrix size does not match dims");
    return DensityMatrix(HermitianOperator(m), {a, b});
  }
  Params p(j.contains("params") ? j["params"] : Json(), kind);
  DensityMatrix rho;
  if (kind == "isotropic") {
    double t = p.num("t");
    rho = make_isotropic(t, p.integer("d"));
  } else if (kind == "werner") {
    double q = p.num("p");
    rho = make_werner(q, p.integer("d"));
  } else if (kind == "max_correlated") {
    rho = make_max_correlated(decode_matrix(p.raw("c"), "max_correlated c"));
  } else if (kind == "omega_hat") {
    rho = make_omega_hat(p.num("alpha"));
  } else if (kind == "rho_v") {
    rho = make_rho_v();
  } else if (kind == "non_convex_mixture") {
    rho = make_non_convex_triple().mixture;
  } else if (kind == "bell_mix") {
    const Json& w = p.raw("weights");
    if (!w.is_array() || w.size() != 4) throw ParseError("bell_mix: \"weights\" must hold 4 numbers");
    std::array<double, 4> ws{};
    for (int i = 0; i < 4; ++i) {
      if (!w[i].is_number()) throw ParseError("bell_mix: weights must be numbers");
      ws[i] = w[i].get<double>();
    }
    rho = make_bell_mix(ws);
  } else {  // random
    const Json& d = p.raw("dims");
    auto [a, b] = decode_dims(d, "random state");
    std::uint64_t s = static_cast<std::uint64_t>(p.integer("seed", static_cast<int>(seed)));
    bool pure = p.flag("pure", false);
    rho = pure ? random_pure_state({a, b}, s) : random_density({a, b}, s);
  }
  p.finish();
  return rho;
}

QuantumChannel decode_channel(const std::string& kind, const Json& j, std::uint64_t seed) {
  if (kind == "explicit") {
    auto [a, b] = decode_dims(field(j, "dims", "explicit channel"), "explicit channel");
    ComplexMatrix m = decode_matrix(field(j, "choi", "explicit channel"), "explicit channel choi");
    if (m.rows() != a * b) throw DimensionError("explicit channel: Choi size does not match dims");
    return QuantumChannel(HermitianOperator(m), a, b);
  }
  if (kind == "kraus") {
    auto [a, b] = decode_dims(field(j, "dims", "kraus channel"), "kraus channel");
    const Json& ks = field(j, "kraus", "kraus channel");
    if (!ks.is_array() || ks.empty()) throw ParseError("kraus channel: \"kraus\" must be a non-empty array");
    std::vector<ComplexMatrix> kraus;
    for (const Json& k : ks) kraus.push_back(decode_matrix(k, "Kraus operator"));
    return choi_from_kraus(kraus, a, b);
  }
  Params p(j.contains("params") ? j["params"] : Json(), kind);
  QuantumChannel n;
  if (kind == "identity") {
    n = make_channel(ChannelFamily::identity(p.integer("d")));
  } else if (kind == "erasure") {
    double e = p.num("p");
    n = make_channel(ChannelFamily::erasure(e, p.integer("d", 2)));
  } else if (kind == "depolarizing") {
    double e = p.num("p");
    n = make_channel(ChannelFamily::depolarizing(e, p.integer("d", 2)));
  } else if (kind == "dephasing") {
    double q = p.num("q");
    n = make_channel(ChannelFamily::dephasing(q, p.integer("d", 2)));
  } else if (kind == "amplitude_damping") {
    n = make_channel(ChannelFamily::amplitude_damping(p.num("r")));
  } else if (kind == "isotropic_twirl") {
    n = make_channel(ChannelFamily::isotropic_twirl(p.integer("m")));
  } else {  // random_channel
    int a = p.integer("d_in"), b = p.integer("d_out"), k = p.integer("kraus", 2);
    std::uint64_t s = static_cast<std::uint64_t>(p.integer("seed", static_cast<int>(seed)));
    n = random_channel(a, b, k, s);
  }
  p.finish();
  return n;
}

GaussianChannelParams decode_gaussian(const std::string& kind, const Json& j) {
  using K = GaussianChannelParams::Kind;
  Params p(j.contains("params") ? j["params"] : Json(), kind);
  GaussianChannelParams g;
  if (kind == "thermal") {
    g.kind = K::Thermal;
    g.eta = p.num("eta");
    g.n_b = p.num("n_b");
  } else if (kind == "amplifier") {
    g.kind = K::Amplifier;
    g.gain = p.num("g");
    g.n_b = p.num("n_b");
  } else if (kind == "additive_noise") {
    g.kind = K::AdditiveNoise;
    g.xi = p.num("xi");
  } else if (kind == "pure_loss") {
    g.kind = K::PureLoss;
    g.eta = p.num("eta");
  } else if (kind == "pure_amplifier") {
    g.kind = K::PureAmplifier;
    g.gain = p.num("g");
  } else {
    g.kind = K::GeneralConjecture;
    g.det_x = p.num("det_x");
    g.det_y = p.num("det_y");
  }
  p.finish();
  return g;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json report_header(const Options& o, const std::string& command) {
  Json r;
  r["schema"] = kSchema;
  r["command"] = command;
  Json solver;
  solver["gap_tol"] = o.solver.gap_tol;
  solver["feas_tol"] = o.solver.feas_tol;
  solver["max_iters"] = o.solver.max_iters;
  r["solver"] = solver;
  Json versions;
  versions["kappa"] = KAPPA_VERSION;
  versions["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                      std::to_string(EIGEN_MINOR_VERSION);
  versions["nlohmann_json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  r["versions"] = versions;
  return r;
}

Json verification_json(const VerificationReport& v) {
  Json j;
  j["tp"] = v.tp;
  j["cp"] = v.cp;
  j["cppt"] = v.cppt;
  j["reproduces"] = v.reproduces;
  j["tp_error"] = v.tp_error;
  j["cp_min_eig"] = v.cp_min_eig;
  j["cppt_min_eig"] = v.cppt_min_eig;
  j["reproduction_error"] = v.reproduction_error;
  return j;
}

struct Evaluation {
  Json results = Json::array();
  Json cross_checks = Json::array();
  bool solver_failed = false;
};

// Runs body, filling status and message; solver failures stay local.
template <class F>
Json guarded(const std::string& q, bool& solver_failed, F body) {
  Json out;
  out["quantity"] = q;
  try {
    Json b = body();
    out["status"] = b.contains("status") ? b["status"] : Json("ok");
    for (auto it = b.begin(); it != b.end(); ++it)
      if (it.key() != "status") out[it.key()] = it.value();
  } catch (const SolverError& e) {
    out["status"] = "solver_error";
    out["message"] = e.what();
    solver_failed = true;
  } catch (const InfeasibleWitness& e) {
    out["status"] = "witness_error";
    out["message"] = e.what();
    solver_failed = true;
  }
  return out;
}

Json closed_form_json(const std::optional<double>& v) {
  Json j;
  if (!v) {
    j["status"] = "unavailable";
  } else {
    j["value_bits"] = *v;
  }
  return j;
}

void add_cross_check(Evaluation& ev, double sdp, const std::optional<double>& closed) {
  if (!closed) return;
  Json c;
  c["quantity"] = "e_kappa";
  c["sdp_bits"] = sdp;
  c["closed_form_bits"] = *closed;
  c["rel_tol"] = kAgreementTol;
  c["agree"] = std::abs(sdp - *closed) <= kAgreementTol * std::max(1.0, std::abs(*closed));
  ev.cross_checks.push_back(c);
}

void require_applicable(const std::string& q, const std::set<std::string>& allowed, const std::string& object) {
  if (!allowed.count(q)) throw ParseError("quantity \"" + q + "\" does not apply to " + object);
}

Evaluation evaluate_state(const DensityMatrix& rho, const std::vector<std::string>& qs, const Options& o) {
  static const std::set<std::string> allowed{"e_kappa", "e_n", "z_upper", "one_shot", "closed_form"};
  Evaluation ev;
  std::optional<double> closed = rho.family() ? closed_form_state(*rho.family()) : std::nullopt;
  for (const std::string& q : qs) {
    require_applicable(q, allowed, "states");
    ev.results.push_back(guarded(q, ev.solver_failed, [&]() -> Json {
      Json j;
      if (q == "e_kappa") {
        MeasureResult r = e_kappa_primal(rho, o.solver);
        j["value_bits"] = r.value_bits;
        j["primal_bits"] = r.primal_bits;
        j["dual_bits"] = r.dual_bits;
        j["gap"] = r.gap;
        j["iterations"] = r.solver_iterations;
        if (o.witnesses) {
          j["witness"]["s"] = encode_matrix(r.witness_primal.matrix());
          if (r.witness_dual) {
            j["witness"]["v"] = encode_matrix(r.witness_dual->first.matrix());
            j["witness"]["w"] = encode_matrix(r.witness_dual->second.matrix());
          }
        }
        add_cross_check(ev, r.value_bits, closed);
      } else if (q == "e_n") {
        j["value_bits"] = log_negativity(rho);
        j["binegativity"] = binegativity_holds(rho);
      } else if (q == "z_upper") {
        j["value_bits"] = z_upper(rho);
      } else if (q == "closed_form") {
        j = closed_form_json(closed);
      } else {
        OneShotCostResult r = one_shot_ppt_cost(rho, o.solver);
        j["value_bits"] = r.cost_bits;
        j["m_real"] = r.m_real;
        j["m_integer"] = r.m_integer;
        j["e_kappa_bits"] = r.e_kappa_bits;
        j["lo_bits"] = r.lo_bits;
        j["hi_bits"] = r.hi_bits;
        j["feasibility_solves"] = r.feasibility_solves;
        j["dilution_check"] = verification_json(build_dilution_channel(rho, r.m_integer, r.g_witness).report);
        if (o.witnesses) j["witness"]["g"] = encode_matrix(r.g_witness.matrix());
      }
      return j;
    }));
  }
  return ev;
}

Evaluation evaluate_channel(const QuantumChannel& n, const std::vector<std::string>& qs, const Options& o) {
  static const std::set<std::string> allowed{"e_kappa", "q_theta", "one_shot", "closed_form", "sequential_bounds"};
  Evaluation ev;
  std::optional<double> closed = n.family() ? closed_form_channel(*n.family()) : std::nullopt;
  for (const std::string& q : qs) {
    require_applicable(q, allowed, "finite-dimensional channels");
    ev.results.push_back(guarded(q, ev.solver_failed, [&]() -> Json {
      Json j;
      if (q == "e_kappa") {
        ChannelMeasureResult r = e_kappa_channel(n, o.solver);
        j["value_bits"] = r.value_bits;
        j["primal_bits"] = r.primal_bits;
        j["dual_bits"] = r.dual_bits;
        j["gap"] = r.gap;
        j["iterations"] = r.solver_iterations;
        if (o.witnesses) {
          j["witness"]["q"] = encode_matrix(r.q_witness.matrix());
          if (r.dual_witness) {
            j["witness"]["v"] = encode_matrix(r.dual_witness->v.matrix());
            j["witness"]["w"] = encode_matrix(r.dual_witness->w.matrix());
            j["witness"]["rho_a"] = encode_matrix(r.dual_witness->rho_a.matrix());
          }
        }
        add_cross_check(ev, r.value_bits, closed);
      } else if (q == "q_theta") {
        j["value_bits"] = q_theta(n, o.solver);
      } else if (q == "closed_form") {
        j = closed_form_json(closed);
      } else if (q == "one_shot") {
        SimulationCostReport r = one_shot_channel_cost(n, o.solver);
        j["value_bits"] = *r.one_shot_bits;
        j["m_real"] = r.m_real;
        j["m_integer"] = r.m_integer;
        j["e_kappa_bits"] = r.e_kappa_bits;
        j["lo_bits"] = r.lo_bits;
        j["hi_bits"] = r.hi_bits;
        j["feasibility_solves"] = r.feasibility_solves;
        j["simulation_check"] =
            verification_json(build_parallel_simulation(n, r.m_integer, r.q_choi_witness).report);
        if (o.witnesses) j["witness"]["q"] = encode_matrix(r.q_choi_witness.matrix());
      } else {
        SimulationCostReport r = asymptotic_costs(n, o.solver);
        j["value_bits"] = r.e_kappa_bits;
        j["parallel_asymptotic_bits"] = *r.parallel_asymptotic_bits;
        j["sequential_asymptotic_bits"] = *r.sequential_asymptotic_bits;
        if (r.choi_state_bits) j["choi_state_bits"] = *r.choi_state_bits;
        Json bounds = Json::array();
        for (int k = 1; k <= o.uses; ++k) {
          auto [lo, hi] = r.sequential(k);
          Json b;
          b["uses"] = k;
          b["lo_bits"] = lo;
          b["hi_bits"] = hi;
          bounds.push_back(b);
        }
        j["bounds"] = bounds;
      }
      return j;
    }));
  }
  return ev;
}

Evaluation evaluate_gaussian(const GaussianChannelParams& g, const std::vector<std::string>& qs) {
  Evaluation ev;
  for (const std::string& q : qs) {
    require_applicable(q, {"gaussian"}, "Gaussian channels (no finite Choi operator)");
    GaussianCost c = gaussian_cost(g);
    Json j;
    j["quantity"] = q;
    j["status"] = "ok";
    j["tag"] = to_string(c.tag);
    j["value_bits"] = number_or_null(c.bits);
    ev.results.push_back(j);
  }
  return ev;
}

Evaluation evaluate(const Input& in, const std::vector<std::string>& qs, const Options& o) {
  switch (in.kind) {
    case ObjectKind::State:
      return evaluate_state(*in.state, qs, o);
    case ObjectKind::Channel:
      return evaluate_channel(*in.channel, qs, o);
    default:
      return evaluate_gaussian(*in.gaussian, qs);
  }
}

std::vector<std::string> default_quantities(const std::string& command, ObjectKind kind) {
  if (kind == ObjectKind::Gaussian) return {"gaussian"};
  if (command == "one-shot") return {"one_shot"};
  if (command == "sweep") return kind == ObjectKind::State ? std::vector<std::string>{"e_kappa"}
                                                           : std::vector<std::string>{"e_kappa", "q_theta"};
  if (kind == ObjectKind::State) return {"e_kappa", "e_n", "z_upper", "closed_form"};
  return {"e_kappa", "q_theta", "closed_form"};
}

std::vector<std::string> quantities_for(const Options& o, ObjectKind kind) {
  std::vector<std::string> qs = o.quantities.empty() ? default_quantities(o.command, kind) : o.quantities;
  for (const std::string& q : qs)
    if (!kQuantities.count(q)) throw ParseError("unknown quantity \"" + q + "\"");
  return qs;
}

Json options_json(const Options& o, const std::vector<std::string>& qs) {
  Json j;
  j["quantities"] = qs;
  j["seed"] = o.seed;
  j["witnesses"] = o.witnesses;
  if (o.command == "sweep") j["steps"] = o.steps;
  if (std::find(qs.begin(), qs.end(), "sequential_bounds") != qs.end()) j["uses"] = o.uses;
  return j;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\n") == std::string::npos) {
      s += c;
    } else {
      s += '"';
      for (char ch : c) s += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      s += '"';
    }
  }
  return s + "\n";
}

std::string json_number_cell(const Json& j) { return j.is_number() ? format_number(j.get<double>()) : ""; }

RunResult run_measure(const Options& o, const std::string& expected) {
  auto t0 = std::chrono::steady_clock::now();
  if (o.input.empty()) throw ParseError(o.command + " needs --input");
  Json input = parse_json_text(read_input_text(o.input));
  Input in = decode_input(input, o.seed);
  if (expected == "state" && in.kind != ObjectKind::State) throw ParseError("state-measure needs a state input");
  if (expected == "channel" && in.kind == ObjectKind::State) throw ParseError("channel-measure needs a channel input");
  if (expected == "either" && in.kind == ObjectKind::Gaussian)
    throw ParseError("one-shot needs a finite-dimensional state or channel");
  std::vector<std::string> qs = quantities_for(o, in.kind);
  Evaluation ev = evaluate(in, qs, o);

  RunResult rr;
  rr.report = report_header(o, o.command);
  rr.report["input"] = in.echo;
  rr.report["options"] = options_json(o, qs);
  rr.report["results"] = ev.results;
  rr.report["cross_checks"] = ev.cross_checks;
  rr.report["wall_clock_seconds"] = seconds_since(t0);
  rr.csv = csv_line({"quantity", "status", "value_bits"});
  for (const Json& r : ev.results)
    rr.csv += csv_line({r["quantity"].get<std::string>(), r["status"].get<std::string>(),
                        r.contains("value_bits") ? json_number_cell(r["value_bits"]) : ""});
  rr.exit_code = ev.solver_failed ? kSolverFailure : kOk;
  return rr;
}

RunResult run_sweep(const Options& o) {
  auto t0 = std::chrono::steady_clock::now();
  if (o.steps < 2) throw ParseError("sweep needs --steps >= 2");
  Json base;
  std::string param = o.param;
  if (o.input.empty()) {
    base = Json::parse(R"({"kind": "amplitude_damping", "params": {"r": 0}})");
    if (param.empty()) param = "r";
  } else {
    base = parse_json_text(read_input_text(o.input));
  }
  if (param.empty()) throw ParseError("sweep over an input family needs --param");
  if (!base.is_object() || !base.contains("params") || !base["params"].is_object())
    throw ParseError("sweep needs a parametric family input");
  Input probe = decode_input(base, o.seed);
  if (!base["params"].contains(param) || !base["params"][param].is_number())
    throw ParseError("sweep parameter \"" + param + "\" is not a numeric parameter of the input family");
  std::vector<std::string> qs = quantities_for(o, probe.kind);
  std::vector<double> grid = linear_grid(o.lo.value_or(0.0), o.hi.value_or(1.0), o.steps);

  std::vector<Json> rows(grid.size());
  std::vector<char> failed(grid.size(), 0);
  parallel_for(static_cast<int>(grid.size()), o.jobs, [&](int i) {
    Json row;
    row[param] = grid[i];
    std::string error;
    try {
      Json point = base;
      point["params"][param] = grid[i];
      Input in = decode_input(point, o.seed);
      Evaluation ev = evaluate(in, qs, o);
      for (const Json& r : ev.results) {
        std::string key = r["quantity"].get<std::string>() + "_bits";
        row[key] = r.contains("value_bits") ? r["value_bits"] : Json(nullptr);
        if (r["status"] != "ok" && error.empty())
          error = r["quantity"].get<std::string>() + ": " + r.value("message", r["status"].get<std::string>());
      }
      failed[i] = ev.solver_failed;
    } catch (const std::exception& e) {
      error = e.what();
      failed[i] = 1;
    }
    row["error"] = error;
    rows[i] = row;
  });

  RunResult rr;
  rr.report = report_header(o, "sweep");
  rr.report["input"] = base;
  Json opts = options_json(o, qs);
  opts["param"] = param;
  opts["lo"] = grid.front();
  opts["hi"] = grid.back();
  rr.report["options"] = opts;
  rr.report["rows"] = rows;
  rr.report["wall_clock_seconds"] = seconds_since(t0);
  std::vector<std::string> header{param};
  for (const std::string& q : qs) header.push_back(q + "_bits");
  header.push_back("error");
  rr.csv = csv_line(header);
  for (const Json& row : rows) {
    std::vector<std::string> cells{format_number(row[param].get<double>())};
    for (const std::string& q : qs) {
      std::string key = q + "_bits";
      cells.push_back(row.contains(key) ? json_number_cell(row[key]) : "");
    }
    cells.push_back(row["error"].get<std::string>());
    rr.csv += csv_line(cells);
  }
  bool any_failed = std::any_of(failed.begin(), failed.end(), [](char c) { return c != 0; });
  rr.exit_code = any_failed ? kSolverFailure : kOk;
  return rr;
}

RunResult run_selftest(const Options& o) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<verify::Check> checks = verify::acceptance_checks();
  for (verify::Check& c : verify::invariant_checks()) checks.push_back(std::move(c));
  std::vector<verify::CheckResult> results(checks.size());
  parallel_for(static_cast<int>(checks.size()), o.jobs,
               [&](int i) { results[i] = verify::run_check(checks[i], o.solver); });

  Json suites = Json::array();
  Json rows = Json::array();
  std::vector<std::string> order;
  for (const verify::CheckResult& r : results)
    if (std::find(order.begin(), order.end(), r.suite) == order.end()) order.push_back(r.suite);
  bool all = true;
  for (const std::string& s : order) {
    int n = 0, passed = 0, cases = 0;
    for (const verify::CheckResult& r : results) {
      if (r.suite != s) continue;
      ++n;
      passed += r.passed;
      cases += r.cases;
    }
    all = all && passed == n;
    Json j;
    j["suite"] = s;
    j["checks"] = n;
    j["passed"] = passed;
    j["cases"] = cases;
    suites.push_back(j);
  }
  RunResult rr;
  rr.csv = csv_line({"suite", "id", "title", "passed", "cases", "detail"});
  for (const verify::CheckResult& r : results) {
    Json j;
    j["suite"] = r.suite;
    j["id"] = r.id;
    j["title"] = r.title;
    j["passed"] = r.passed;
    j["cases"] = r.cases;
    j["detail"] = r.detail;
    j["wall_clock_seconds"] = r.seconds;
    rows.push_back(j);
    rr.csv += csv_line({r.suite, r.id, r.title, r.passed ? "true" : "false", std::to_string(r.cases), r.detail});
  }
  rr.report = report_header(o, "selftest");
  rr.report["suites"] = suites;
  rr.report["checks"] = rows;
  rr.report["passed"] = all;
  rr.report["wall_clock_seconds"] = seconds_since(t0);
  rr.exit_code = all ? kOk : kSelftestFailure;
  return rr;
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("JSON parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                     e.what());
  }
}

std::string read_input_text(const std::string& arg) {
  auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  std::ifstream f(arg);
  if (!f) throw ParseError("cannot read input file \"" + arg + "\"");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Json encode_matrix(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(row);
  }
  return rows;
}

ComplexMatrix decode_matrix(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
    throw ParseError(what + ": expected a non-empty array of rows");
  std::size_t rows = j.size(), cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array()) throw ParseError(what + ": row " + std::to_string(i) + " is not an array");
    if (j[i].size() != cols) throw DimensionError(what + ": ragged rows");
    for (std::size_t k = 0; k < cols; ++k) {
      const Json& e = j[i][k];
      if (e.is_number()) {
        m(i, k) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ParseError(what + ": entry (" + std::to_string(i) + ", " + std::to_string(k) +
                         ") must be a number or a [re, im] pair");
      }
    }
  }
  return m;
}

Input decode_input(const Json& j, std::uint64_t seed) {
  if (!j.is_object()) throw ParseError("input must be a JSON object");
  std::string kind;
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) throw ParseError("\"kind\" must be a string");
    kind = j["kind"].get<std::string>();
  } else if (j.contains("choi")) {
    kind = "explicit";
  } else {
    throw ParseError("input needs a \"kind\"");
  }
  Input in;
  in.echo = j;
  if (kind == "explicit") {
    if (j.contains("choi")) {
      in.kind = ObjectKind::Channel;
      in.channel = decode_channel(kind, j, seed);
    } else {
      in.kind = ObjectKind::State;
      in.state = decode_state(kind, j, seed);
    }
  } else if (kStateKinds.count(kind)) {
    in.kind = ObjectKind::State;
    in.state = decode_state(kind, j, seed);
  } else if (kChannelKinds.count(kind)) {
    in.kind = ObjectKind::Channel;
    in.channel = decode_channel(kind, j, seed);
  } else if (kGaussianKinds.count(kind)) {
    in.kind = ObjectKind::Gaussian;
    in.gaussian = decode_gaussian(kind, j);
  } else {
    throw ParseError("unknown kind \"" + kind + "\"");
  }
  return in;
}

Json encode_state(const DensityMatrix& rho) {
  Json j;
  j["kind"] = "explicit";
  j["dims"] = {rho.partition().d_a, rho.partition().d_b};
  j["matrix"] = encode_matrix(rho.matrix());
  return j;
}

Json encode_channel(const QuantumChannel& n) {
  Json j;
  j["kind"] = "explicit";
  j["dims"] = {n.d_in(), n.d_out()};
  j["choi"] = encode_matrix(n.choi().matrix());
  return j;
}

std::string format_number(double x) {
  if (!std::isfinite(x)) return "";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

RunResult run(const Options& o) {
  o.solver.validate();
  if (o.jobs < 1) throw ParseError("--jobs must be at least 1");
  if (o.uses < 1) throw ParseError("--uses must be at least 1");
  if (o.format != "json" && o.format != "csv") throw ParseError("--format must be json or csv");
  if (o.command == "state-measure") return run_measure(o, "state");
  if (o.command == "channel-measure") return run_measure(o, "channel");
  if (o.command == "one-shot") return run_measure(o, "either");
  if (o.command == "sweep") return run_sweep(o);
  if (o.command == "selftest") return run_selftest(o);
  throw ParseError("unknown command \"" + o.command + "\"");
}

}  // namespace kappa::cli
