#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "berwald/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generalized Berwald surfaces: verification, parallel transport, figures and the torus theorem"};
  app.require_subcommand(1);

  std::string config;
  std::optional<int> steps, frames;
  std::optional<std::string> out_dir;

  for (const char* name : {"verify", "transport", "figure", "torus"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "Scenario file (key = value)")->required();
    sub->add_option("--steps", steps, "Total RK4 steps along the curve");
    sub->add_option("--frames", frames, "Number of evenly spaced figure frames");
    sub->add_option("--out", out_dir, "Output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : berwald::kExitConfigError;
  }

  berwald::CommandOptions options;
  options.steps = steps;
  options.frames = frames;
  if (out_dir) options.out_dir = *out_dir;
  const std::string command = app.get_subcommands().front()->get_name();
  return berwald::run_command(command, config, options, std::cout, std::cerr);
}
