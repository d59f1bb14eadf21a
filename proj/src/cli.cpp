#include "fns/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "fns/checkpoint.hpp"
#include "fns/experiments.hpp"

namespace fns {

namespace {

struct StudyArgs {
  std::string config_path;
  std::string out_dir;
  long seed_override = -1;
  int threads = 1;
  bool json_stdout = false;
};

void add_study_options(CLI::App* cmd, StudyArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config file")
      ->required();
  cmd->add_option("--out", args.out_dir, "output directory for report files");
  cmd->add_option("--seed", args.seed_override, "override the data seed");
  cmd->add_option("--threads", args.threads, "parallel sweep width")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--json", args.json_stdout, "print the report JSON to stdout");
}

int run_study(const StudyArgs& args, const char* forced_kind) {
  ExperimentConfig config;
  try {
    config = load_config(args.config_path);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  if (forced_kind && std::string(to_string(config.kind)) != forced_kind) {
    std::cerr << "config kind '" << to_string(config.kind)
              << "' does not match subcommand '" << forced_kind << "'\n";
    return 2;
  }
  if (args.seed_override >= 0)
    config.data.random.seed = static_cast<std::uint64_t>(args.seed_override);

  ExperimentReport report;
  try {
    report = run_experiment(config, args.threads);
  } catch (const BlowupError& e) {
    std::cerr << "blow-up: " << e.what() << "\n";
    if (!args.out_dir.empty() && e.partial_trajectory) {
      std::filesystem::create_directories(args.out_dir);
      std::ofstream os(std::filesystem::path(args.out_dir) /
                       "blowup_diagnostics.csv");
      os << diagnostics_csv(e.partial_trajectory->diagnostics);
    }
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  if (!args.out_dir.empty()) {
    write_report_files(report, args.out_dir);
    write_checkpoint((std::filesystem::path(args.out_dir) /
                      (std::string(to_string(config.kind)) + "_initial.chk"))
                         .string(),
                     make_initial_data(config), 0.0, config.dt);
  }
  if (args.json_stdout) std::cout << report_to_json(report).dump(2) << "\n";

  for (const auto& v : report.verdicts)
    std::cerr << (v.pass ? "pass" : "FAIL") << "  " << v.name << " = "
              << v.measured << "\n";
  return report.pass ? 0 : 1;
}

int inspect_checkpoint(const std::string& path) {
  try {
    Checkpoint cp = read_checkpoint(path);
    std::cout << "dim          " << cp.grid.dim << "\n"
              << "points       " << cp.grid.points << "\n"
              << "length       " << cp.grid.length << "\n"
              << "time         " << cp.time << "\n"
              << "dt           " << cp.dt << "\n"
              << "values       " << cp.field.size() << "\n"
              << "mass         " << mass(cp.field) << "\n"
              << "max_abs      " << cp.field.max_abs() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{
      "fnslab: pseudospectral simulation and verification lab for the "
      "defocusing cubic fourth-order Schrodinger equation"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* kind;  // nullptr = any
    const char* desc;
  };
  const Sub subs[] = {
      {"run", nullptr, "run the experiment named in the config"},
      {"conserve", "conserve", "mass/energy conservation study"},
      {"identity-check", "identity", "Morawetz action rate identity check"},
      {"acl-sweep", "acl", "almost-conservation decay sweep over N"},
      {"morawetz", "morawetz", "interaction Morawetz ratio and scaling study"},
      {"lemma1", "lemma1", "smoothed-L4 inequality check"},
      {"scatter-proxy", "scatter", "free-flow comparison and Duhamel check"},
  };

  std::vector<std::pair<CLI::App*, std::shared_ptr<StudyArgs>>> studies;
  std::vector<const char*> kinds;
  for (const auto& sub : subs) {
    auto* cmd = app.add_subcommand(sub.name, sub.desc);
    auto args = std::make_shared<StudyArgs>();
    add_study_options(cmd, *args);
    studies.emplace_back(cmd, args);
    kinds.push_back(sub.kind);
  }

  std::string chk_path;
  auto* inspect = app.add_subcommand("inspect-checkpoint",
                                     "print a checkpoint file's header");
  inspect->add_option("path", chk_path, "checkpoint file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostream& os = e.get_exit_code() == 0 ? std::cout : std::cerr;
    int code = app.exit(e, os, os);
    return code == 0 ? 0 : 2;
  }

  if (inspect->parsed()) return inspect_checkpoint(chk_path);
  for (std::size_t i = 0; i < studies.size(); ++i)
    if (studies[i].first->parsed())
      return run_study(*studies[i].second, kinds[i]);
  return 2;
}

}  // namespace fns
