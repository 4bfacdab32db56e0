#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "rssmeet/arm.hpp"
#include "rssmeet/channel.hpp"
#include "rssmeet/policies.hpp"

namespace rssmeet {

struct Position {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Position& a, const Position& b);

struct PlayerSpec {
  PolicySpec policy;
  // Identity used to derive this player's RNG streams; defaults to the
  // player index. Swapping stream ids swaps the randomness two players see.
  std::optional<std::uint64_t> stream_id;
};

struct TrialConfig {
  ChannelParams channel;
  int num_players = 2;
  double area_side = 200.0;
  std::optional<double> meet_radius;  // default 2 * delta
  std::int64_t max_turns = 1'000'000;
  int avg_window = 1;
  std::uint64_t seed = 0;
  std::vector<PlayerSpec> players;  // empty: every player runs `default_policy`
  PolicySpec default_policy;
  // Fixed start positions; when empty, players are placed uniformly at
  // random in [0, area_side]^2.
  std::vector<Position> initial_positions;
  bool record_trace = false;

  double effective_meet_radius() const;
  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct TraceRecord {
  std::int64_t turn;
  int player;
  double x;
  double y;
  Arm arm;
  double rss;  // RSS of the tracked link before the move
  std::optional<double> reward;
};

struct TrialResult {
  bool met = false;
  std::int64_t turns = 0;
  double traversed_distance_total = 0.0;
  std::vector<Position> initial_positions;
  std::vector<Position> final_positions;
  std::vector<TraceRecord> trace;
};

/// Two players chasing each other until they come within the meet radius.
TrialResult run_two_player(const TrialConfig& cfg);

/// Groups of players; each group leader chases the group with the highest
/// windowed-average RSS, and groups merge on meeting.
TrialResult run_multiplayer(const TrialConfig& cfg);

/// Argmax of the averaged RSS, ties to the lowest id. Throws on empty input.
int select_target(const std::map<int, double>& avg_rss);

/// Normalized excess traversal (T*2*delta - (x+y)) / (x+y).
double metric_m(double mean_turns, double delta, double x, double y);

/// Players meet when their distance is at most this; RSS is never sampled
/// closer than d_0 / 100.
double clamp_distance(double d, const ChannelParams& params);

}  // namespace rssmeet
