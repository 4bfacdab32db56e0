#include "rssmeet/engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rssmeet {

double distance(const Position& a, const Position& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double TrialConfig::effective_meet_radius() const {
  return meet_radius.value_or(2.0 * channel.delta);
}

void TrialConfig::validate() const {
  channel.validate();
  auto fail = [](const std::string& field, const std::string& rule) {
    throw std::invalid_argument("trial parameter '" + field + "' must be " + rule);
  };
  if (num_players < 2) fail("num_players", ">= 2");
  if (!(area_side >= 0.0)) fail("area_side", ">= 0");
  const double r = effective_meet_radius();
  if (!(r > 0.0)) fail("meet_radius", "> 0");
  if (initial_positions.empty() && !(r < area_side)) fail("meet_radius", "< area_side");
  if (max_turns <= 0) fail("max_turns", "> 0");
  if (avg_window < 1) fail("avg_window", ">= 1");
  if (!players.empty() && static_cast<int>(players.size()) != num_players)
    fail("players", "empty or one entry per player");
  if (!initial_positions.empty() && static_cast<int>(initial_positions.size()) != num_players)
    fail("initial_positions", "empty or one entry per player");
}

double clamp_distance(double d, const ChannelParams& params) {
  return std::max(d, params.d_0 / 100.0);
}

int select_target(const std::map<int, double>& avg_rss) {
  if (avg_rss.empty()) throw std::logic_error("select_target: no candidates");
  auto best = avg_rss.begin();
  for (auto it = std::next(best); it != avg_rss.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

double metric_m(double mean_turns, double delta, double x, double y) {
  const double l1 = x + y;
  if (!(l1 > 0.0)) throw std::domain_error("metric_m: x + y must be > 0");
  return (mean_turns * 2.0 * delta - l1) / l1;
}

namespace {

// Player position kept as origin plus an integer number of steps, so every
// coordinate stays exactly origin + k * delta.
struct Walker {
  Position origin;
  std::int64_t ix = 0;
  std::int64_t iy = 0;

  Position at(double delta) const {
    return {origin.x + static_cast<double>(ix) * delta, origin.y + static_cast<double>(iy) * delta};
  }
  void move(Arm a) {
    const auto s = unit_step(a);
    ix += s.dx;
    iy += s.dy;
  }
};

std::vector<Position> place_players(const TrialConfig& cfg) {
  if (!cfg.initial_positions.empty()) return cfg.initial_positions;
  Rng rng = placement_stream(cfg.seed);
  std::uniform_real_distribution<double> u(0.0, cfg.area_side);
  std::vector<Position> out(cfg.num_players);
  for (auto& p : out) {
    p.x = u(rng);
    p.y = u(rng);
  }
  return out;
}

PolicySpec policy_for(const TrialConfig& cfg, int player) {
  return cfg.players.empty() ? cfg.default_policy : cfg.players[player].policy;
}

std::uint64_t stream_for(const TrialConfig& cfg, int player) {
  if (!cfg.players.empty() && cfg.players[player].stream_id) return *cfg.players[player].stream_id;
  return static_cast<std::uint64_t>(player);
}

struct Link {
  LinkState state;
  Rng rng;
  std::deque<double> window;
  double window_sum = 0.0;
  std::optional<double> last_reward;
};

Link make_link(const TrialConfig& cfg, int tx, int rx) {
  Rng rng = link_stream(cfg.seed, stream_for(cfg, tx), stream_for(cfg, rx));
  LinkState st = init_shadowing(cfg.channel, rng);
  return Link{st, std::move(rng), {}, 0.0, std::nullopt};
}

// Advances shadowing, samples the link at distance d and records the reward.
double observe(Link& link, double d, const ChannelParams& params, int window) {
  link.state = advance_shadowing(link.state, params, link.rng);
  const auto prev = link.state.last_rss;
  auto [rss, next] = sample_rss(link.state, clamp_distance(d, params), params);
  link.state = next;
  link.last_reward = reward(rss, prev);
  link.window.push_back(rss);
  link.window_sum += rss;
  if (static_cast<int>(link.window.size()) > window) {
    link.window_sum -= link.window.front();
    link.window.pop_front();
  }
  return rss;
}

}  // namespace

TrialResult run_two_player(const TrialConfig& cfg) {
  cfg.validate();
  if (cfg.num_players != 2) throw std::invalid_argument("run_two_player: num_players must be 2");
  const double delta = cfg.channel.delta;
  const double radius = cfg.effective_meet_radius();

  TrialResult result;
  result.initial_positions = place_players(cfg);
  std::array<Walker, 2> walkers{Walker{result.initial_positions[0]},
                                Walker{result.initial_positions[1]}};
  // links[i] is what player i hears from the other player.
  std::array<Link, 2> links{make_link(cfg, 1, 0), make_link(cfg, 0, 1)};
  std::array<PolicyState, 2> policies{make_policy(policy_for(cfg, 0)),
                                      make_policy(policy_for(cfg, 1))};
  std::array<Rng, 2> policy_rngs{policy_stream(cfg.seed, stream_for(cfg, 0)),
                                 policy_stream(cfg.seed, stream_for(cfg, 1))};

  std::int64_t turns = 0;
  while (true) {
    const Position p0 = walkers[0].at(delta);
    const Position p1 = walkers[1].at(delta);
    const double d = distance(p0, p1);
    if (d <= radius) {
      result.met = true;
      break;
    }
    if (turns == cfg.max_turns) break;
    const std::int64_t t = turns + 1;

    std::array<double, 2> rss{};
    for (int i = 0; i < 2; ++i) rss[i] = observe(links[i], d, cfg.channel, 1);
    std::array<Arm, 2> arms{};
    for (int i = 0; i < 2; ++i) arms[i] = step(policies[i], t, links[i].last_reward, policy_rngs[i]);
    if (cfg.record_trace) {
      const std::array<Position, 2> pos{p0, p1};
      for (int i = 0; i < 2; ++i)
        result.trace.push_back({t, i, pos[i].x, pos[i].y, arms[i], rss[i], links[i].last_reward});
    }
    for (int i = 0; i < 2; ++i) walkers[i].move(arms[i]);
    turns = t;
  }

  result.turns = turns;
  result.traversed_distance_total = static_cast<double>(turns) * 2.0 * delta;
  for (const auto& w : walkers) result.final_positions.push_back(w.at(delta));
  return result;
}

TrialResult run_multiplayer(const TrialConfig& cfg) {
  cfg.validate();
  const int n = cfg.num_players;
  const double delta = cfg.channel.delta;
  const double radius = cfg.effective_meet_radius();

  TrialResult result;
  result.initial_positions = place_players(cfg);
  std::vector<Walker> walkers;
  walkers.reserve(n);
  for (const auto& p : result.initial_positions) walkers.push_back(Walker{p});

  // links[rx * n + tx]: what rx hears from tx.
  std::vector<Link> links;
  links.reserve(static_cast<std::size_t>(n) * n);
  for (int rx = 0; rx < n; ++rx) {
    for (int tx = 0; tx < n; ++tx) {
      links.push_back(tx == rx ? Link{{}, Rng{}, {}, 0.0, std::nullopt} : make_link(cfg, tx, rx));
    }
  }
  auto link = [&](int tx, int rx) -> Link& { return links[static_cast<std::size_t>(rx) * n + tx]; };

  std::vector<PolicyState> policies;
  std::vector<Rng> policy_rngs;
  for (int i = 0; i < n; ++i) {
    policies.push_back(make_policy(policy_for(cfg, i)));
    policy_rngs.push_back(policy_stream(cfg.seed, stream_for(cfg, i)));
  }

  std::vector<int> leader(n);
  std::iota(leader.begin(), leader.end(), 0);
  auto find = [&](int i) {
    while (leader[i] != i) i = leader[i];
    return i;
  };

  std::int64_t turns = 0;
  std::vector<int> leaders;
  std::vector<Position> pos(n);
  while (true) {
    leaders.clear();
    for (int i = 0; i < n; ++i) {
      if (find(i) == i) leaders.push_back(i);
    }
    for (int i : leaders) pos[i] = walkers[i].at(delta);
    for (std::size_t a = 0; a < leaders.size(); ++a) {
      for (std::size_t b = a + 1; b < leaders.size(); ++b) {
        if (distance(pos[leaders[a]], pos[leaders[b]]) <= radius) {
          const int ra = find(leaders[a]);
          const int rb = find(leaders[b]);
          if (ra != rb) leader[std::max(ra, rb)] = std::min(ra, rb);
        }
      }
    }
    for (int i = 0; i < n; ++i) leader[i] = find(i);
    leaders.erase(std::remove_if(leaders.begin(), leaders.end(), [&](int i) { return leader[i] != i; }),
                  leaders.end());

    if (leaders.size() == 1) {
      result.met = true;
      break;
    }
    if (turns == cfg.max_turns) break;
    const std::int64_t t = turns + 1;

    for (int rx : leaders) {
      for (int tx : leaders) {
        if (tx != rx) observe(link(tx, rx), distance(pos[rx], pos[tx]), cfg.channel, cfg.avg_window);
      }
    }

    std::vector<Arm> arms(n);
    for (int rx : leaders) {
      std::map<int, double> avg;
      for (int tx : leaders) {
        if (tx == rx) continue;
        const Link& l = link(tx, rx);
        avg.emplace(tx, l.window_sum / static_cast<double>(l.window.size()));
      }
      const int target = select_target(avg);
      const Link& tl = link(target, rx);
      arms[rx] = step(policies[rx], t, tl.last_reward, policy_rngs[rx]);
      if (cfg.record_trace) {
        result.trace.push_back({t, rx, pos[rx].x, pos[rx].y, arms[rx], tl.state.last_rss.value_or(0.0),
                                tl.last_reward});
      }
    }
    for (int i = 0; i < n; ++i) walkers[i].move(arms[leader[i]]);

    result.traversed_distance_total += static_cast<double>(leaders.size()) * delta;
    turns = t;
  }

  result.turns = turns;
  for (const auto& w : walkers) result.final_positions.push_back(w.at(delta));
  return result;
}

}  // namespace rssmeet
