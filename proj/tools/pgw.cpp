// pgw: run circuit files, print gate truth tables, run the verification suites.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pgw/circuit.hpp"
#include "pgw/suites.hpp"
#include "pgw/truth_table.hpp"

namespace {

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "pgw: cannot write " << path << "\n";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photonic gate workbench"};
  app.require_subcommand(1);

  std::string circuit_path;
  std::optional<int> sim_cutoff;
  auto* sim = app.add_subcommand("simulate", "Run a circuit file and print its branch table");
  sim->add_option("file", circuit_path, "Circuit file")->required();
  sim->add_option("--cutoff", sim_cutoff, "Photon-number cutoff");

  std::string gate;
  std::string tt_json;
  auto* tt = app.add_subcommand("truth-table", "Print the computational-basis table of a gate");
  tt->add_option("gate", gate, "Gate name")->required();
  tt->add_option("--json", tt_json, "Also write the table as JSON");

  pgw::SuiteOptions opts;
  std::optional<std::uint64_t> seed;
  std::string verify_json;
  auto* verify = app.add_subcommand("verify", "Run the verification suites");
  verify->add_option("--suite", opts.suite, "Suite")->check(CLI::IsMember(pgw::suite_names()));
  verify->add_option("--seed", seed, "Generator seed (default: $PGW_SEED or 1)");
  verify->add_option("--trials", opts.trials, "Randomized trials per check group")->check(CLI::NonNegativeNumber);
  verify->add_option("--json", verify_json, "Also write the report as JSON");
  verify->add_option("--cutoff", opts.cutoff, "Photon-number cutoff")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*sim) {
      const pgw::CircuitFile circuit = pgw::load_circuit(circuit_path);
      pgw::write_branch_table(std::cout, pgw::simulate(circuit, sim_cutoff));
      return 0;
    }
    if (*tt) {
      const pgw::TruthTable table = pgw::make_truth_table(gate);
      pgw::write_text(std::cout, table);
      if (!tt_json.empty() && !write_file(tt_json, pgw::to_json(table))) return 2;
      return 0;
    }
    if (seed) {
      opts.seed = *seed;
    } else if (const char* env = std::getenv("PGW_SEED"); env && *env) {
      opts.seed = std::stoull(env);
    }
    const pgw::Report report = pgw::run_suite(opts);
    pgw::write_text(std::cout, report);
    if (!verify_json.empty() && !write_file(verify_json, pgw::to_json(report))) return 2;
    return report.pass() ? 0 : 1;
  } catch (const pgw::ParseError& e) {
    std::cerr << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "pgw: " << e.what() << "\n";
  }
  return 2;
}
