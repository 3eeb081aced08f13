#include <iostream>

#include <CLI11.hpp>

#include "iqc/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Indirect quantum control analyses for a target qubit steered through an accessor qubit"};
  app.require_subcommand(1);

  iqc::RunConfig cfg;
  std::uint64_t seed = 0;
  std::size_t draws = 0;
  double tol_rank = 0;
  double tol_eq = 0;
  std::string config;
  std::string output;

  struct Spec {
    const char* name;
    const char* help;
    bool needs_config;
  };
  const Spec specs[] = {
      {"classify", "Predict the Lie algebra case and cross-check it against the numeric closure", true},
      {"closure", "Dimension (and optionally a basis) of the dynamical Lie algebra", true},
      {"negat", "Trace-image obstruction test for the states rho_S and rho_A in the model file", true},
      {"steer", "Residual of the pure-accessor steering construction", false},
      {"fic", "Residual of the state-transfer construction", false},
      {"sample", "Bloch points of states reachable in the Ising example (CSV)", false},
      {"verify", "Residuals of the bracket identity suites over seeded random draws", false},
  };

  for (const auto& spec : specs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    auto* opt = sub->add_option("config", config, "JSON config file");
    if (spec.needs_config) opt->required();
    sub->add_option("--seed", seed, "PRNG seed (overrides the config file)");
    sub->add_option("--draws", draws, "Number of random draws or sample points")->check(CLI::PositiveNumber);
    sub->add_option("-o,--output", output, "Write the result to this file instead of stdout");
    sub->add_option("--tol-rank", tol_rank, "Rank tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--tol-eq", tol_eq, "Equality tolerance")->check(CLI::PositiveNumber);
    if (std::string(spec.name) == "closure") sub->add_flag("--basis", cfg.basis, "Include the orthonormal basis");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.subcommand = sub->get_name();
  if (sub->count("config")) cfg.config_path = config;
  if (sub->count("--output")) cfg.output_path = output;
  if (sub->count("--seed")) cfg.seed = seed;
  if (sub->count("--draws")) cfg.draws = draws;
  if (sub->count("--tol-rank")) cfg.tol_rank = tol_rank;
  if (sub->count("--tol-eq")) cfg.tol_eq = tol_eq;
  return iqc::run(cfg, std::cout, std::cerr);
}
