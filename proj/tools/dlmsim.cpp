// Command-line front end: run a config file, list scenarios, or reproduce a
// figure preset. Results go to CSV (stdout when --out is absent).

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dlm/harness.hpp"

namespace {

struct Overrides {
  std::optional<double> alpha;
  std::optional<std::size_t> events;
  std::optional<std::size_t> blocks;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> backend;
  std::string out;
};

void apply(dlm::ExperimentConfig& cfg, const Overrides& o) {
  if (o.alpha) cfg.alpha = *o.alpha;
  if (o.events) cfg.events = *o.events;
  if (o.blocks) cfg.blocks = *o.blocks;
  if (o.seed) cfg.seed = *o.seed;
  if (o.backend) cfg.backend = *o.backend == "slm" ? dlm::Backend::slm : dlm::Backend::dlm;
  cfg.validate();
}

void write(const dlm::ResultTable& t, const std::string& out) {
  if (out.empty() || out == "-")
    std::cout << dlm::to_csv(t);
  else
    dlm::emit_csv(t, out);
}

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--alpha", o.alpha, "learning parameter in (0, 1)");
  cmd->add_option("--events", o.events, "events per block");
  cmd->add_option("--blocks", o.blocks, "number of blocks");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--backend", o.backend, "beam-splitter output selection")->check(CLI::IsMember({"dlm", "slm"}));
  cmd->add_option("--out", o.out, "CSV output path (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event-by-event simulation of deterministic learning machine networks"};
  app.require_subcommand(1);

  Overrides run_o;
  std::string config_path;
  auto* run = app.add_subcommand("run", "run the experiment described by a config file");
  run->add_option("config", config_path, "key = value config file")->required();
  add_overrides(run, run_o);

  auto* list = app.add_subcommand("list-scenarios", "print scenario names and figure presets");

  Overrides rep_o;
  std::string figure;
  auto* reproduce = app.add_subcommand("reproduce", "run a figure preset");
  reproduce->add_option("figure-id", figure, "preset id, see list-scenarios")->required();
  add_overrides(reproduce, rep_o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      auto cfg = dlm::load_config(config_path);
      apply(cfg, run_o);
      write(dlm::run_scenario(cfg), run_o.out);
    } else if (*list) {
      std::cout << "scenarios:\n";
      for (auto s : dlm::all_scenarios())
        std::cout << "  " << dlm::scenario_name(s) << "  " << dlm::scenario_summary(s) << "\n";
      std::cout << "presets:\n";
      for (const auto& p : dlm::presets()) std::cout << "  " << p.id << "  " << p.summary << "\n";
    } else if (*reproduce) {
      const auto& preset = dlm::find_preset(figure);
      dlm::ResultTable out;
      for (auto cfg : preset.runs) {
        apply(cfg, rep_o);
        out.append(dlm::run_scenario(cfg));
      }
      write(out, rep_o.out);
    }
  } catch (const dlm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
