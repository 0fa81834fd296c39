#include "hamgeom/cli/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Verify and generate Hamiltonian structures for dynamical systems"};
  app.set_version_flag("--version", std::string(HAMGEOM_VERSION));
  app.require_subcommand(1);

  hamgeom::cli::RunOptions opt;
  const std::pair<const char*, const char*> commands[] = {
      {"verify", "check i_G w = dH for each verify request"},
      {"factorize", "factor linear fields as Lambda * H"},
      {"altgen", "generate alternative descriptions"},
      {"resonance", "resonance lattices and integrability type"},
      {"period", "energy-period scans and the equivalence obstruction"},
      {"normalform", "check the normal-form conditions"},
      {"validate", "validate tangent, cotangent and linear structures"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", opt.file, "system file")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", opt.seed, "seed for all randomness")->capture_default_str();
    sub->add_option("--out", opt.out, "write the JSON report to this file");
    if (std::string(name) == "period") {
      sub->add_option("--rtol", opt.rtol, "relative tolerance")->capture_default_str()->check(CLI::PositiveNumber);
      sub->add_option("--atol", opt.atol, "absolute tolerance")->capture_default_str()->check(CLI::PositiveNumber);
      sub->add_option("--eps", opt.eps, "return-ball radius")->capture_default_str()->check(CLI::PositiveNumber);
      sub->add_option("--tmax", opt.tmax, "integration horizon")->capture_default_str()->check(CLI::PositiveNumber);
      sub->add_option("--compare", opt.compare, "second system file for the obstruction test")
          ->check(CLI::ExistingFile);
      sub->add_option("--csv-dir", opt.csv_dir, "directory for CSV period tables");
      sub->add_flag("--dump-trajectories", opt.dump_trajectories, "also write trajectories to --csv-dir");
    }
    sub->callback([&opt, sub] { opt.command = sub->get_name(); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  return hamgeom::cli::run_main(opt, std::cout, std::cerr);
}
