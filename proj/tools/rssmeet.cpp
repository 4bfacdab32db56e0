// rssmeet command-line experiment runner.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "rssmeet/harness.hpp"

namespace {

struct CommonArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
  std::optional<unsigned> jobs;
  std::string out;
  bool trace = false;
  std::vector<std::string> overrides;
  std::optional<std::int64_t> replay;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool simulation) {
  cmd->add_option("--config", args.config, "key=value configuration file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", args.out, "output CSV path (default: stdout)");
  cmd->add_option("--set", args.overrides, "override a configuration key, e.g. --set delta=0.05");
  if (!simulation) return;
  cmd->add_option("--seed", args.seed, "master seed");
  cmd->add_option("--trials", args.trials, "trials per configuration")->check(CLI::PositiveNumber);
  cmd->add_option("--jobs", args.jobs, "worker threads (0: all cores)");
  cmd->add_flag("--trace", args.trace, "write per-turn records to <out>.trace.jsonl");
  cmd->add_option("--replay", args.replay, "rerun only this trial index of every configuration")
      ->check(CLI::NonNegativeNumber);
}

rssmeet::ExperimentSpec build_spec(const CommonArgs& args, rssmeet::Mode mode) {
  rssmeet::ConfigMap cfg;
  if (!args.config.empty()) cfg = rssmeet::ConfigMap::load(args.config);
  for (const auto& o : args.overrides) cfg.set(std::string_view(o));
  if (args.seed) cfg.set("seed", std::to_string(*args.seed));
  if (args.trials) cfg.set("trials", std::to_string(*args.trials));
  if (args.jobs) cfg.set("jobs", std::to_string(*args.jobs));
  if (mode == rssmeet::Mode::TwoPlayer && cfg.has("num_players") &&
      cfg.get_int("num_players") != 2)
    mode = rssmeet::Mode::Multiplayer;
  auto spec = rssmeet::spec_from_config(cfg, mode);
  spec.out = args.out;
  spec.trace = args.trace;
  return spec;
}

// One CSV row per (configuration, policy) for a single trial index.
void replay(const rssmeet::ExperimentSpec& spec, std::int64_t trial, std::ostream& fallback) {
  std::ofstream file;
  if (!spec.out.empty()) {
    file.open(spec.out, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write output file '" + spec.out + "'");
  }
  std::ostream& os = spec.out.empty() ? fallback : file;
  os << "config,policy,trial,met,turns,m,traversed\n";
  for (const auto& p : rssmeet::expand_points(spec)) {
    const auto r = rssmeet::run_point_trial(p, spec.master_seed, trial);
    const auto o = rssmeet::summarize_trial(p, r);
    os << p.config_index << ',' << rssmeet::to_string(p.policy) << ',' << trial << ','
       << (o.met ? 1 : 0) << ',' << o.turns << ','
       << (o.m ? rssmeet::format_number(*o.m) : std::string()) << ','
       << rssmeet::format_number(o.traversed) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo experiments and closed-form bounds for RSS-guided rendezvous"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
    rssmeet::Mode mode;
    bool simulation;
  };
  const Sub subs[] = {
      {"run", "two-player or multiplayer trials", rssmeet::Mode::TwoPlayer, true},
      {"sweep-delta", "metric M over step sizes for every policy", rssmeet::Mode::SweepDelta, true},
      {"sweep-players", "full-merge time over player counts", rssmeet::Mode::SweepPlayers, true},
      {"bounds", "closed-form meeting-time bounds", rssmeet::Mode::Bounds, false},
      {"figure1", "positive-reward probability of the +x arm over N", rssmeet::Mode::Figure1, false},
      {"closest", "closest-player identification probabilities", rssmeet::Mode::ClosestPlayer,
       false},
  };
  std::vector<CommonArgs> args(std::size(subs));
  std::vector<CLI::App*> cmds;
  for (std::size_t i = 0; i < std::size(subs); ++i) {
    cmds.push_back(app.add_subcommand(subs[i].name, subs[i].help));
    add_common(cmds.back(), args[i], subs[i].simulation);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    for (std::size_t i = 0; i < cmds.size(); ++i) {
      if (!cmds[i]->parsed()) continue;
      const auto spec = build_spec(args[i], subs[i].mode);
      if (args[i].replay) {
        if (*args[i].replay >= spec.trials)
          throw std::invalid_argument("--replay index must be below the trial count");
        replay(spec, *args[i].replay, std::cout);
      } else {
        rssmeet::execute(spec, std::cout);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "rssmeet: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
