#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fracpm/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Fractional Perona-Malik solver and verification suite"};
  app.require_subcommand(1, 1);

  fracpm::CommandOptions opt;
  std::string config, out;
  std::uint64_t seed = 0;
  for (const char* name : {"fracfield", "evolve", "spectrum", "verify"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "run configuration file");
    sub->add_option("--seed", seed, "seed for randomized inputs");
    sub->add_option("--out", out, "output directory");
    sub->add_flag("--list", opt.list, "list criteria without running (verify)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  auto* sub = app.get_subcommands().front();
  if (sub->count("--config")) opt.config = config;
  if (sub->count("--seed")) opt.seed = seed;
  if (sub->count("--out")) opt.out = out;
  return fracpm::run_command(sub->get_name(), opt, std::cout, std::cerr);
}
