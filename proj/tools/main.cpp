#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

namespace {

using kappa::cli::Json;

void add_common(CLI::App* sub, kappa::cli::Options& o) {
  sub->add_option("--input", o.input, "JSON file, or inline JSON starting with '{'");
  sub->add_option("--quantities", o.quantities, "e_kappa e_n z_upper one_shot q_theta closed_form gaussian "
                                                "sequential_bounds")
      ->delimiter(',');
  sub->add_option("--output", o.output, "report path (default stdout)");
  sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--steps", o.steps, "sweep grid points")->envname("KAPPA_COST_STEPS");
  sub->add_option("--jobs", o.jobs, "worker threads")->envname("KAPPA_COST_JOBS");
  sub->add_option("--seed", o.seed, "seed for random inputs")->envname("KAPPA_COST_SEED");
  sub->add_flag("--witnesses", o.witnesses, "include optimizer witnesses");
  sub->add_option("--gap-tol", o.solver.gap_tol, "SDP relative gap tolerance")->envname("KAPPA_COST_GAP_TOL");
  sub->add_option("--feas-tol", o.solver.feas_tol, "SDP feasibility tolerance")->envname("KAPPA_COST_FEAS_TOL");
  sub->add_option("--max-iters", o.solver.max_iters, "SDP iteration cap")->envname("KAPPA_COST_MAX_ITERS");
  sub->add_option("--param", o.param, "sweep parameter name");
  sub->add_option("--lo", o.lo, "sweep lower end (default 0)");
  sub->add_option("--hi", o.hi, "sweep upper end (default 1)");
  sub->add_option("--uses", o.uses, "largest channel-use count for sequential_bounds");
}

void print_selftest_table(const Json& report) {
  for (const Json& c : report["checks"]) {
    std::printf("%s %-16s %-4s %s [%s]\n", c["passed"].get<bool>() ? "PASS" : "FAIL",
                c["suite"].get<std::string>().c_str(), c["id"].get<std::string>().c_str(),
                c["title"].get<std::string>().c_str(), c["detail"].get<std::string>().c_str());
  }
  std::printf("\n%-18s %7s %7s %8s\n", "suite", "checks", "passed", "cases");
  for (const Json& s : report["suites"]) {
    std::printf("%-18s %7d %7d %8d\n", s["suite"].get<std::string>().c_str(), s["checks"].get<int>(),
                s["passed"].get<int>(), s["cases"].get<int>());
  }
}

}  // namespace

int main(int argc, char** argv) {
  kappa::cli::Options o;
  CLI::App app{"Exact PPT entanglement cost of states and channels"};
  app.require_subcommand(1);
  const char* commands[][2] = {
      {"state-measure", "measures of a bipartite state"},
      {"channel-measure", "measures of a channel"},
      {"one-shot", "one-shot exact cost of a state or channel"},
      {"sweep", "parameter sweep (amplitude damping by default)"},
      {"selftest", "acceptance criteria and invariant suites"},
  };
  for (auto& c : commands) add_common(app.add_subcommand(c[0], c[1]), o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kappa::cli::kParseError;
  }
  o.command = app.get_subcommands().front()->get_name();

  kappa::cli::RunResult r;
  try {
    r = kappa::cli::run(o);
  } catch (const kappa::DimensionError& e) {
    std::fprintf(stderr, "dimension error: %s\n", e.what());
    return kappa::cli::kDimensionError;
  } catch (const kappa::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kappa::cli::kParseError;
  }

  std::string text = o.format == "csv" ? r.csv : r.report.dump(2) + "\n";
  if (o.command == "selftest") print_selftest_table(r.report);
  if (!o.output.empty()) {
    std::ofstream f(o.output, std::ios::binary);
    if (!f || !(f << text)) {
      std::fprintf(stderr, "error: cannot write %s\n", o.output.c_str());
      return kappa::cli::kParseError;
    }
  } else if (o.command != "selftest") {
    std::fwrite(text.data(), 1, text.size(), stdout);
  }
  return r.exit_code;
}
