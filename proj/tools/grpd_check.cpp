// Command-line front end: `run` executes check suites over the example
// registry, `list` prints the registry. Exit codes: 0 all outcomes match
// expectations, 1 mismatch, 2 usage or configuration error.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "grpd/runner.hpp"

namespace {

// --tol CLASS=VALUE with classes algebraic, derivative, subspace
void apply_tolerance(grpd::Tolerances& tol, const std::string& spec) {
  auto eq = spec.find('=');
  if (eq == std::string::npos)
    throw grpd::config_error("--tol expects CLASS=VALUE, got: " + spec);
  const std::string cls = spec.substr(0, eq);
  double v = 0.0;
  try {
    v = std::stod(spec.substr(eq + 1));
  } catch (const std::exception&) {
    throw grpd::config_error("--tol value is not a number: " + spec);
  }
  if (!(v > 0)) throw grpd::config_error("--tol value must be positive");
  if (cls == "algebraic")
    tol.algebraic = v;
  else if (cls == "derivative")
    tol.derivative = v;
  else if (cls == "subspace")
    tol.subspace = v;
  else
    throw grpd::config_error("unknown tolerance class: " + cls);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical checks for groupoid connections and bundles"};
  app.require_subcommand(1);

  grpd::RunConfig cfg;
  std::vector<std::string> tol_specs;
  std::string report_path;

  CLI::App* run_cmd = app.add_subcommand("run", "execute checks and report");
  run_cmd->add_option("--example", cfg.examples,
                      "example name, repeatable; default is the full registry");
  run_cmd->add_option("--samples", cfg.n_samples, "sample count per check");
  run_cmd->add_option("--seed", cfg.seed, "base seed for all sampling");
  run_cmd->add_option("--tol", tol_specs,
                      "override CLASS=VALUE (algebraic, derivative, subspace)");
  run_cmd->add_option("--report", report_path, "report file path");
  run_cmd->add_flag("--quiet", cfg.quiet, "suppress report on stdout");

  CLI::App* list_cmd = app.add_subcommand("list", "print the example registry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list_cmd->parsed()) {
      std::cout << grpd::list_text();
      return 0;
    }

    for (const auto& spec : tol_specs) apply_tolerance(cfg.tol, spec);
    if (std::find(cfg.examples.begin(), cfg.examples.end(), "all") !=
        cfg.examples.end())
      cfg.examples.clear();

    if (report_path.empty()) {
      if (const char* dir = std::getenv("GRPD_REPORT_DIR"))
        report_path = std::string(dir) + "/report.txt";
    }
    cfg.report_path = report_path;

    grpd::Report rep = grpd::run(cfg);
    std::string text = grpd::format_report(cfg, rep);
    if (!cfg.report_path.empty())
      grpd::write_report_atomic(cfg.report_path, text);
    if (!cfg.quiet) std::cout << text;
    return rep.all_match() ? 0 : 1;
  } catch (const grpd::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
