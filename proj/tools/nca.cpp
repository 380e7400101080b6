#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nca/job.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Graded resolutions and regularity for noncommutative algebras"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a job file");
  std::string job_path;
  std::string json_out;
  std::vector<std::string> overrides;
  run->add_option("job", job_path, "Path to the JSON job file")->required();
  run->add_option("--json", json_out, "Write the JSON report to this file");
  run->add_option("--override", overrides,
                  "Override a job field, e.g. --override command.h=6");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  return nca::run_file(job_path, overrides, json_out, std::cout, std::cerr);
}
