#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  using haarlab::cli::RunConfig;
  RunConfig config;
  if (const char* env = std::getenv("HAARLAB_MAX_ORDER")) {
    try {
      config.max_order = std::stoul(env);
    } catch (const std::exception&) {
      std::cerr << "haarlab: HAARLAB_MAX_ORDER must be a nonnegative integer\n";
      return haarlab::cli::kInputError;
    }
  }

  CLI::App app{"Finite Haar measure verification reports"};
  app.add_option("command", config.command,
                 "enumerate | verify-haar | construct | quotient | counterexample | fubini | plane")
      ->required();
  app.add_option("--input", config.input_path, "JSON input file")->required();
  app.add_option("--output", config.output_path, "report path (default stdout)");
  app.add_option("--max-order", config.max_order, "largest accepted group order");
  std::string probe;
  auto* probe_opt = app.add_option("--probe-bound", probe, "counterexample mass bound, p/q");
  app.add_option("--jobs", config.jobs, "worker threads (0: one per core)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : haarlab::cli::kInputError;
  }
  if (probe_opt->count() > 0) config.probe_bound = probe;
  return haarlab::cli::run(config, std::cout, std::cerr);
}
