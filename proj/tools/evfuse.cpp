// evfuse: batch driver for referee-based belief fusion. Parses a
// scenario file, runs the requested engine, and prints the fused
// assignment, with small introspection helpers for the rule and
// lattice catalogs. Exit codes: 0 success, 2 input error, 3 total
// conflict, 4 capacity exceeded.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evfusion/evfusion.hpp"

namespace {

// a, b, ..., z, aa, ab, ... for auto-generated frames.
std::string auto_atom_name(std::size_t index) {
  std::string name;
  ++index;
  while (index > 0) {
    --index;
    name.insert(name.begin(), static_cast<char>('a' + index % 26));
    index /= 26;
  }
  return name;
}

int run_enumerate(const std::string& lattice_name, const std::string& count_text) {
  const auto kind = evfusion::lattice_kind_from_name(lattice_name);
  if (!kind) {
    std::cerr << "evfuse: unknown lattice \"" << lattice_name << "\"\n";
    return 2;
  }
  std::size_t atom_count = 0;
  try {
    std::size_t used = 0;
    atom_count = std::stoull(count_text, &used);
    if (used != count_text.size() || atom_count < 1) throw std::invalid_argument(count_text);
  } catch (const std::exception&) {
    std::cerr << "evfuse: --enumerate needs a positive atom count, got \""
              << count_text << "\"\n";
    return 2;
  }
  std::vector<std::string> names;
  names.reserve(atom_count);
  for (std::size_t i = 0; i < atom_count; ++i) names.push_back(auto_atom_name(i));
  const auto lattice =
      evfusion::make_lattice(*kind, evfusion::FrameSpec(std::move(names)));
  std::string out;
  for (const auto& element : evfusion::enumerate_elements(lattice))
    out += evfusion::render(element) + "\n";
  std::fputs(out.c_str(), stdout);
  return 0;
}

int run_fuse(const std::string& path, const std::string& output_name) {
  const auto mode = evfusion::output_mode_from_name(output_name);
  if (!mode) {
    std::cerr << "evfuse: --output must be 'text' or 'machine'\n";
    return 2;
  }
  std::vector<std::string> warnings;
  const evfusion::Scenario scenario = evfusion::load_scenario(path, &warnings);
  for (const std::string& warning : warnings)
    std::cerr << "evfuse: warning: " << warning << "\n";
  const evfusion::FusionResult result = evfusion::run_scenario(scenario);
  const std::string out = evfusion::format_output(result, *mode);
  std::fputs(out.c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Belief fusion by referee functions over minterm lattices"};
  app.name("evfuse");

  bool list_rules = false;
  bool list_lattices = false;
  std::vector<std::string> enumerate_args;
  app.add_flag("--list-rules", list_rules, "Print the combination rule names");
  app.add_flag("--list-lattices", list_lattices, "Print the lattice kind names");
  app.add_option("--enumerate", enumerate_args,
                 "Print every element of a lattice: <lattice> <atom-count>")
      ->expected(2);

  std::string scenario_path;
  std::string output_name = "text";
  CLI::App* fuse_cmd = app.add_subcommand(
      "fuse", "Run a scenario file and print the fused assignment");
  fuse_cmd->add_option("file", scenario_path, "Scenario file (JSON)")
      ->required();
  fuse_cmd->add_option("--output", output_name,
                       "Output format: text or machine (default text)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list_rules) {
      std::string out;
      for (const auto kind : evfusion::all_referee_kinds())
        out += std::string(evfusion::to_string(kind)) + "\n";
      std::fputs(out.c_str(), stdout);
      return 0;
    }
    if (list_lattices) {
      std::string out;
      for (const auto kind : evfusion::all_lattice_kinds())
        out += std::string(evfusion::to_string(kind)) + "\n";
      std::fputs(out.c_str(), stdout);
      return 0;
    }
    if (!enumerate_args.empty())
      return run_enumerate(enumerate_args[0], enumerate_args[1]);
    if (fuse_cmd->parsed()) return run_fuse(scenario_path, output_name);
    std::cerr << app.help();
    return 2;
  } catch (const evfusion::TotalConflictError& e) {
    std::cerr << "evfuse: " << e.what() << "\n";
    return 3;
  } catch (const evfusion::CapacityError& e) {
    std::cerr << "evfuse: " << e.what() << "\n";
    return 4;
  } catch (const evfusion::Error& e) {
    std::cerr << "evfuse: " << e.what() << "\n";
    return 2;
  }
}
