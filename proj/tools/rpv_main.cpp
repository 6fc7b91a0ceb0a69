// Command-line front end: rpv <command> [scenario] [options].

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rpv/runner.hpp"

namespace {

struct Output {
  bool json = false;
  std::string out_path;
};

int emit(const std::vector<rpv::Report>& reports, const Output& o, bool as_list) {
  std::string text;
  if (o.json) {
    rpv::Json j;
    if (as_list) {
      j["reports"] = rpv::Json::array();
      for (const auto& r : reports) j["reports"].push_back(r.to_json());
    } else {
      j = reports.front().to_json();
    }
    text = j.dump(2) + "\n";
  } else {
    for (const auto& r : reports) text += r.to_text();
  }
  if (o.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << o.out_path << "\n";
      return 2;
    }
    f << text;
  }
  for (const auto& r : reports) {
    if (!r.ok()) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Picard-Vessiot extensions over real differential fields"};
  app.require_subcommand(1);
  app.fallthrough();
  Output output;
  rpv::RunOptions options;
  app.add_flag("--json", output.json, "structured JSON output");
  app.add_option("--out", output.out_path, "write the report to a file");
  app.add_option("--scan-degree", options.scan_degree, "constant scan: generator degree bound");
  app.add_option("--scan-coeff-degree", options.scan_coeff_degree, "constant scan: coefficient degree bound");
  app.add_option("--budget", options.budget, "Buchberger step budget");

  std::string scenario_path;
  std::string demo_name;
  std::string all_dir = "scenarios";
  std::vector<CLI::App*> scenario_commands;
  for (const char* name : {"build", "group", "correspond", "twist"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("scenario", scenario_path, "scenario file")->required();
    scenario_commands.push_back(sub);
  }
  scenario_commands[0]->description("construct the extension and verify its certificates");
  scenario_commands[1]->description("compute Gamma, the defining set S and group checks");
  scenario_commands[2]->description("lattice round trips, normality and weak normality");
  scenario_commands[3]->description("twist by cocycles and search reality witnesses");
  auto* demo = app.add_subcommand("demo", "built-in examples");
  demo->add_option("name", demo_name, "weak-normality, so2-forms, radical-forms or seidenberg")
      ->required()
      ->check(CLI::IsMember(rpv::demo_names()));
  auto* all = app.add_subcommand("all", "every scenario in a directory and every demo");
  all->add_option("dir", all_dir, "scenario directory (default: scenarios)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (demo->parsed()) return emit({rpv::run_demo(demo_name)}, output, false);
    if (all->parsed()) return emit(rpv::run_all(all_dir, options), output, true);
    rpv::Scenario s = rpv::with_overrides(rpv::load_scenario(scenario_path), options);
    if (scenario_commands[0]->parsed()) return emit({rpv::run_build(s)}, output, false);
    if (scenario_commands[1]->parsed()) return emit({rpv::run_group(s)}, output, false);
    if (scenario_commands[2]->parsed()) return emit({rpv::run_correspond(s)}, output, false);
    return emit({rpv::run_twist(s)}, output, false);
  } catch (const rpv::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
