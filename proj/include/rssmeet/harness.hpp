#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rssmeet/analysis.hpp"
#include "rssmeet/config.hpp"
#include "rssmeet/engine.hpp"

namespace rssmeet {

enum class Mode { TwoPlayer, Multiplayer, SweepDelta, SweepPlayers, Bounds, Figure1, ClosestPlayer };

std::string_view to_string(Mode mode);

struct ExperimentSpec {
  Mode mode = Mode::TwoPlayer;
  TrialConfig base;
  // Policies to run at every configuration. Empty means the base default
  // policy for run modes and all four policies for sweeps.
  std::vector<PolicyKind> policies;
  // Delta values (sweep_delta, bounds) or player counts (sweep_players).
  std::vector<double> sweep;
  // Relative positions of player 2 for bounds and figure1.
  std::vector<Position> scenarios;
  // Fixed relative start for two-player runs: player 1 at (0,0), player 2 here.
  std::optional<Position> start;
  std::vector<long long> n_values;
  double z = analysis::kDefaultZ;
  // Closest-player grid.
  std::vector<double> d12_values, d13_values, d23_values;
  std::int64_t trials = 100;
  std::uint64_t master_seed = 1;
  // Unset: 50 * greedy bound of the corner-to-corner scenario.
  std::optional<std::int64_t> max_turns;
  std::string out;
  bool trace = false;
  unsigned jobs = 0;  // 0: hardware concurrency

  /// Throws std::invalid_argument on an inconsistent spec.
  void validate() const;
};

/// Builds a spec for `mode` from configuration keys. Unknown keys and bad
/// values raise ConfigError naming the key.
ExperimentSpec spec_from_config(const ConfigMap& cfg, Mode mode);

/// One simulated configuration: a sweep point run under one policy.
struct ConfigPoint {
  std::uint64_t config_index = 0;  // seeds are shared across policies
  PolicyKind policy = PolicyKind::Greedy;
  TrialConfig trial;
  bool multiplayer = false;
};

std::vector<ConfigPoint> expand_points(const ExperimentSpec& spec);

struct TrialOutcome {
  bool met = false;
  std::int64_t turns = 0;  // max_turns when unmet
  std::optional<double> m;
  double traversed = 0.0;
};

struct AggregateStats {
  std::uint64_t config_index = 0;
  PolicyKind policy = PolicyKind::Greedy;
  int num_players = 2;
  ChannelParams channel;
  double meet_radius = 0.0;
  std::int64_t max_turns = 0;
  std::int64_t trials = 0;
  std::int64_t met = 0;
  double meeting_rate = 0.0;
  double mean_turns = 0.0;
  double stderr_turns = 0.0;
  std::optional<double> mean_m;
  double mean_traversed = 0.0;
};

/// Runs one trial of one point; identical to its in-batch contribution.
TrialResult run_point_trial(const ConfigPoint& point, std::uint64_t master_seed,
                            std::int64_t trial_index, bool record_trace = false);
TrialOutcome summarize_trial(const ConfigPoint& point, const TrialResult& result);

/// Reduces outcomes in trial-index order.
AggregateStats aggregate(const ConfigPoint& point, const std::vector<TrialOutcome>& outcomes);

/// Called once per finished trial, in (point, trial) order when tracing.
using TrialObserver =
    std::function<void(const ConfigPoint&, std::int64_t trial_index, const TrialResult&)>;

/// Simulation modes: one row per (configuration, policy).
std::vector<AggregateStats> run_experiment(const ExperimentSpec& spec,
                                           const TrialObserver& observer = {});
std::vector<AggregateStats> sweep_delta(ExperimentSpec spec);
std::vector<AggregateStats> sweep_players(ExperimentSpec spec);

struct BoundsRow {
  double x = 0.0, y = 0.0;
  ChannelParams channel;
  double z = 0.0;
  double d = 0.0;
  double drift_x = 0.0, drift_y = 0.0;
  double greedy_bound = 0.0;
  double greedy_traversal = 0.0;
  double roptimal_bound = 0.0;
  bool degraded = false;
};

/// Bounds for every scenario, and for every delta in `sweep` when given.
std::vector<BoundsRow> bounds_table(const ExperimentSpec& spec);

struct Figure1Table {
  std::vector<Position> scenarios;
  std::vector<long long> n_values;
  std::vector<std::vector<double>> prob;  // [n index][scenario index], +x arm
};

Figure1Table figure1_table(const ExperimentSpec& spec);

struct ClosestRow {
  double d12 = 0.0, d13 = 0.0, d23 = 0.0;
  long long n = 1;
  double prob = 0.0;
  double prob_bound = 0.0;
};

/// Grid over d12 x d13 x d23 x N, skipping geometries with d12 > d13 or that
/// violate the triangle inequality.
std::vector<ClosestRow> closest_player_table(const ExperimentSpec& spec);

void write_csv(std::ostream& os, const std::vector<AggregateStats>& rows);
void write_csv(std::ostream& os, const std::vector<BoundsRow>& rows);
void write_csv(std::ostream& os, const Figure1Table& table);
void write_csv(std::ostream& os, const std::vector<ClosestRow>& rows);
void write_trace_jsonl(std::ostream& os, const ConfigPoint& point, std::int64_t trial_index,
                       const TrialResult& result);

/// Shortest round-trip decimal, independent of the global locale.
std::string format_number(double v);

/// Runs `spec` and writes its table to spec.out (stdout when empty), plus a
/// trace file next to it when spec.trace is set.
void execute(const ExperimentSpec& spec, std::ostream& fallback);

}  // namespace rssmeet
