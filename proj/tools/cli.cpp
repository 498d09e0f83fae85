#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <string>

#include "diffalg/errors.hpp"
#include "diffalg/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact differential-algebra scenario runner"};
  app.require_subcommand(1);

  std::uint64_t seed = 7;
  std::string report = "text";
  app.add_option("--seed", seed, "Seed for randomized property checks")
      ->capture_default_str();
  app.add_option("--report", report, "Report format")
      ->check(CLI::IsMember({"text", "machine"}))
      ->capture_default_str();

  std::string file;
  CLI::App* verify = app.add_subcommand("verify", "Run a scenario file");
  verify->fallthrough();
  verify->add_option("file", file, "Scenario JSON file")->required();

  std::string only;
  CLI::App* examples =
      app.add_subcommand("examples", "Run the bundled example suites");
  examples->fallthrough();
  examples->add_option("--only", only, "Run a single suite by name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    diffalg::Report rep = verify->parsed()
                              ? diffalg::run_scenario_file(file, seed)
                              : diffalg::run_examples(only, seed);
    std::cout << (report == "machine" ? rep.render_machine()
                                      : rep.render_text());
    return rep.exit_status();
  } catch (const diffalg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
