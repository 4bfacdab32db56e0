#include "rssmeet/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "rssmeet/rng.hpp"

namespace rssmeet {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::TwoPlayer: return "two_player";
    case Mode::Multiplayer: return "multiplayer";
    case Mode::SweepDelta: return "sweep_delta";
    case Mode::SweepPlayers: return "sweep_players";
    case Mode::Bounds: return "bounds";
    case Mode::Figure1: return "figure1";
    case Mode::ClosestPlayer: return "closest_player";
  }
  return "unknown";
}

namespace {

bool is_simulation(Mode m) {
  return m == Mode::TwoPlayer || m == Mode::Multiplayer || m == Mode::SweepDelta ||
         m == Mode::SweepPlayers;
}

const std::vector<Position> kDefaultScenarios{{40, 70}, {100, 60}, {60, 60}};

std::vector<long long> default_n_values() {
  std::vector<long long> out;
  for (long long decade = 1; decade <= 100'000; decade *= 10) {
    for (long long m : {1, 2, 5}) out.push_back(m * decade);
  }
  out.push_back(1'000'000);
  return out;
}

}  // namespace

void ExperimentSpec::validate() const {
  base.channel.validate();
  if (is_simulation(mode) && trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (max_turns && *max_turns < 1) throw std::invalid_argument("max_turns must be >= 1");
  if (mode == Mode::SweepDelta || mode == Mode::SweepPlayers) {
    if (sweep.empty()) throw std::invalid_argument("sweep list must be non-empty");
  }
  if (mode == Mode::SweepDelta) {
    for (double d : sweep)
      if (!(d > 0.0)) throw std::invalid_argument("sweep: delta values must be > 0");
  }
  if (mode == Mode::SweepPlayers) {
    for (double n : sweep)
      if (!(n >= 2.0) || n != std::floor(n))
        throw std::invalid_argument("sweep: player counts must be integers >= 2");
  }
  if (mode == Mode::Bounds) {
    for (double d : sweep)
      if (!(d > 0.0)) throw std::invalid_argument("sweep: delta values must be > 0");
  }
  if (start && base.num_players != 2)
    throw std::invalid_argument("start_x/start_y require num_players = 2");
  for (long long n : n_values)
    if (n < 1) throw std::invalid_argument("n_values must be >= 1");
  if (!(z > 0.0)) throw std::invalid_argument("z must be > 0");
  if (is_simulation(mode)) {
    TrialConfig probe = base;
    probe.max_turns = max_turns.value_or(1);
    if (mode == Mode::SweepDelta) probe.channel.delta = sweep.front();
    if (mode == Mode::SweepPlayers) probe.num_players = static_cast<int>(sweep.front());
    probe.validate();
  }
}

ExperimentSpec spec_from_config(const ConfigMap& cfg, Mode mode) {
  static const std::set<std::string> kKeys{
      "policy",    "a",          "epsilon",    "sigma",     "n_p",        "x_c",
      "delta",     "p_i",        "d_0",        "log_base",  "num_players", "area_side",
      "meet_radius", "max_turns", "avg_window", "trials",    "seed",       "start_x",
      "start_y",   "sweep",      "scenarios",  "z",         "n_values",   "jobs",
      "d12_values", "d13_values", "d23_values"};
  for (const auto& [key, value] : cfg.values()) {
    if (!kKeys.count(key)) throw ConfigError(key, "unknown key");
  }

  ExperimentSpec spec;
  spec.mode = mode;
  auto& ch = spec.base.channel;
  if (mode == Mode::SweepDelta) {
    ch.sigma = 3.0;
    ch.n_p = 5.0;
  }

  auto read_double = [&](const std::string& key, double& target) {
    if (cfg.has(key)) target = cfg.get_double(key);
  };
  read_double("sigma", ch.sigma);
  read_double("n_p", ch.n_p);
  read_double("x_c", ch.x_c);
  read_double("delta", ch.delta);
  read_double("p_i", ch.p_i);
  read_double("d_0", ch.d_0);
  if (cfg.has("log_base")) {
    const auto& v = cfg.raw("log_base");
    if (v == "e" || v == "natural") ch.log_base = LogBase::Natural;
    else if (v == "10") ch.log_base = LogBase::Base10;
    else throw ConfigError("log_base", "expected 'e' or '10', got '" + v + "'");
  }
  try {
    ch.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("channel", e.what());
  }

  auto& pol = spec.base.default_policy;
  read_double("a", pol.a);
  read_double("epsilon", pol.epsilon);
  if (!(pol.a > 0.0 && pol.a < 1.0)) throw ConfigError("a", "must lie in (0, 1)");
  if (!(pol.epsilon > 0.0)) throw ConfigError("epsilon", "must be > 0");
  if (cfg.has("policy")) {
    for (const auto& name : cfg.get_list("policy")) {
      try {
        spec.policies.push_back(parse_policy_kind(name));
      } catch (const std::invalid_argument&) {
        throw ConfigError("policy", "unknown policy '" + name + "'");
      }
    }
    if (spec.policies.empty()) throw ConfigError("policy", "empty list");
    pol.kind = spec.policies.front();
  }

  if (cfg.has("num_players")) {
    const auto n = cfg.get_int("num_players");
    if (n < 2) throw ConfigError("num_players", "must be >= 2");
    spec.base.num_players = static_cast<int>(n);
  }
  read_double("area_side", spec.base.area_side);
  if (!(spec.base.area_side >= 0.0)) throw ConfigError("area_side", "must be >= 0");
  if (cfg.has("meet_radius")) {
    spec.base.meet_radius = cfg.get_double("meet_radius");
    if (!(*spec.base.meet_radius > 0.0)) throw ConfigError("meet_radius", "must be > 0");
  }
  if (cfg.has("max_turns")) {
    spec.max_turns = cfg.get_int("max_turns");
    if (*spec.max_turns < 1) throw ConfigError("max_turns", "must be >= 1");
  }
  if (cfg.has("avg_window")) {
    const auto w = cfg.get_int("avg_window");
    if (w < 1) throw ConfigError("avg_window", "must be >= 1");
    spec.base.avg_window = static_cast<int>(w);
  }
  if (cfg.has("trials")) {
    spec.trials = cfg.get_int("trials");
    if (spec.trials < 1) throw ConfigError("trials", "must be >= 1");
  }
  if (cfg.has("seed")) spec.master_seed = cfg.get_uint("seed");
  if (cfg.has("jobs")) {
    const auto j = cfg.get_int("jobs");
    if (j < 0) throw ConfigError("jobs", "must be >= 0");
    spec.jobs = static_cast<unsigned>(j);
  }
  if (cfg.has("start_x") != cfg.has("start_y"))
    throw ConfigError(cfg.has("start_x") ? "start_y" : "start_x", "start_x and start_y go together");
  if (cfg.has("start_x")) {
    spec.start = Position{cfg.get_double("start_x"), cfg.get_double("start_y")};
    if (spec.base.num_players != 2) throw ConfigError("start_x", "requires num_players = 2");
  }
  if (cfg.has("sweep")) {
    spec.sweep = cfg.get_double_list("sweep");
    if (spec.sweep.empty()) throw ConfigError("sweep", "empty list");
    for (double v : spec.sweep) {
      if (mode == Mode::SweepPlayers && (!(v >= 2.0) || v != std::floor(v)))
        throw ConfigError("sweep", "player counts must be integers >= 2");
      if (mode != Mode::SweepPlayers && !(v > 0.0))
        throw ConfigError("sweep", "delta values must be > 0");
    }
  }
  if (cfg.has("scenarios")) {
    for (const auto& item : cfg.get_list("scenarios")) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw ConfigError("scenarios", "expected x:y, got '" + item + "'");
      ConfigMap tmp;
      tmp.set("scenarios", trim(item.substr(0, colon)));
      const double x = tmp.get_double("scenarios");
      tmp.set("scenarios", trim(item.substr(colon + 1)));
      const double y = tmp.get_double("scenarios");
      if (x == 0.0 && y == 0.0) throw ConfigError("scenarios", "scenario 0:0 has no direction");
      spec.scenarios.push_back({x, y});
    }
  }
  if (cfg.has("z")) {
    spec.z = cfg.get_double("z");
    if (!(spec.z > 0.0)) throw ConfigError("z", "must be > 0");
  }
  if (cfg.has("n_values")) {
    for (double v : cfg.get_double_list("n_values")) {
      if (!(v >= 1.0) || v != std::floor(v)) throw ConfigError("n_values", "must be integers >= 1");
      spec.n_values.push_back(static_cast<long long>(v));
    }
  }
  for (auto [key, target] : {std::pair{"d12_values", &spec.d12_values},
                             std::pair{"d13_values", &spec.d13_values},
                             std::pair{"d23_values", &spec.d23_values}}) {
    if (!cfg.has(key)) continue;
    *target = cfg.get_double_list(key);
    for (double v : *target)
      if (!(v > 0.0)) throw ConfigError(key, "distances must be > 0");
  }

  if ((mode == Mode::SweepDelta || mode == Mode::SweepPlayers) && spec.sweep.empty())
    throw ConfigError("sweep", "required in this mode");
  if (mode == Mode::Bounds || mode == Mode::Figure1) {
    if (spec.scenarios.empty()) spec.scenarios = kDefaultScenarios;
  }
  if (mode == Mode::Figure1 && spec.n_values.empty()) spec.n_values = default_n_values();
  if (mode == Mode::ClosestPlayer) {
    if (spec.d12_values.empty()) spec.d12_values = {10, 20, 50};
    if (spec.d13_values.empty()) spec.d13_values = {20, 50, 100};
    if (spec.d23_values.empty()) spec.d23_values = {10, 50, 100};
    if (spec.n_values.empty()) spec.n_values = {1, 10, 100};
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("config", e.what());
  }
  return spec;
}

namespace {

std::int64_t default_max_turns(const TrialConfig& trial) {
  const double side = std::max(trial.area_side, trial.channel.delta);
  analysis::Scenario worst{side, side, trial.channel};
  const double cap = std::ceil(50.0 * analysis::greedy_meeting_bound(worst));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::min(cap, 9.0e15)));
}

std::vector<PolicyKind> effective_policies(const ExperimentSpec& spec) {
  if (!spec.policies.empty()) return spec.policies;
  if (spec.mode == Mode::SweepDelta || spec.mode == Mode::SweepPlayers)
    return {kAllPolicies.begin(), kAllPolicies.end()};
  return {spec.base.default_policy.kind};
}

}  // namespace

std::vector<ConfigPoint> expand_points(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<TrialConfig> configs;
  switch (spec.mode) {
    case Mode::TwoPlayer:
    case Mode::Multiplayer:
      configs.push_back(spec.base);
      break;
    case Mode::SweepDelta:
      for (double d : spec.sweep) {
        configs.push_back(spec.base);
        configs.back().channel.delta = d;
      }
      break;
    case Mode::SweepPlayers:
      for (double n : spec.sweep) {
        configs.push_back(spec.base);
        configs.back().num_players = static_cast<int>(n);
      }
      break;
    default:
      throw std::invalid_argument("expand_points: not a simulation mode");
  }
  std::vector<ConfigPoint> points;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    auto& trial = configs[i];
    trial.max_turns = spec.max_turns.value_or(default_max_turns(trial));
    trial.players.clear();
    if (spec.start) trial.initial_positions = {{0.0, 0.0}, *spec.start};
    for (PolicyKind kind : effective_policies(spec)) {
      ConfigPoint p;
      p.config_index = i;
      p.policy = kind;
      p.trial = trial;
      p.trial.default_policy.kind = kind;
      p.multiplayer = spec.mode != Mode::TwoPlayer;
      points.push_back(std::move(p));
    }
  }
  return points;
}

TrialResult run_point_trial(const ConfigPoint& point, std::uint64_t master_seed,
                            std::int64_t trial_index, bool record_trace) {
  TrialConfig cfg = point.trial;
  cfg.seed = trial_seed(master_seed, point.config_index, static_cast<std::uint64_t>(trial_index));
  cfg.record_trace = record_trace;
  return point.multiplayer ? run_multiplayer(cfg) : run_two_player(cfg);
}

TrialOutcome summarize_trial(const ConfigPoint& point, const TrialResult& result) {
  TrialOutcome out;
  out.met = result.met;
  out.turns = result.met ? result.turns : point.trial.max_turns;
  out.traversed = result.traversed_distance_total;
  if (point.trial.num_players == 2 && result.initial_positions.size() == 2) {
    const double x = std::abs(result.initial_positions[1].x - result.initial_positions[0].x);
    const double y = std::abs(result.initial_positions[1].y - result.initial_positions[0].y);
    if (x + y > 0.0)
      out.m = metric_m(static_cast<double>(out.turns), point.trial.channel.delta, x, y);
  }
  return out;
}

AggregateStats aggregate(const ConfigPoint& point, const std::vector<TrialOutcome>& outcomes) {
  AggregateStats s;
  s.config_index = point.config_index;
  s.policy = point.policy;
  s.num_players = point.trial.num_players;
  s.channel = point.trial.channel;
  s.meet_radius = point.trial.effective_meet_radius();
  s.max_turns = point.trial.max_turns;
  s.trials = static_cast<std::int64_t>(outcomes.size());
  if (outcomes.empty()) return s;

  // Integer sums are exact, so the mean does not depend on how trials were
  // partitioned; floating sums run in trial order.
  __int128 sum = 0;
  double sum_m = 0.0;
  double sum_trav = 0.0;
  std::int64_t m_count = 0;
  for (const auto& o : outcomes) {
    sum += o.turns;
    s.met += o.met ? 1 : 0;
    sum_trav += o.traversed;
    if (o.m) {
      sum_m += *o.m;
      ++m_count;
    }
  }
  const double n = static_cast<double>(s.trials);
  s.mean_turns = static_cast<double>(sum) / n;
  s.meeting_rate = static_cast<double>(s.met) / n;
  s.mean_traversed = sum_trav / n;
  if (m_count > 0) s.mean_m = sum_m / static_cast<double>(m_count);
  if (s.trials > 1) {
    double ss = 0.0;
    for (const auto& o : outcomes) {
      const double dev = static_cast<double>(o.turns) - s.mean_turns;
      ss += dev * dev;
    }
    s.stderr_turns = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return s;
}

std::vector<AggregateStats> run_experiment(const ExperimentSpec& spec, const TrialObserver& observer) {
  const auto points = expand_points(spec);
  const auto trials = static_cast<std::size_t>(spec.trials);
  std::vector<std::vector<TrialOutcome>> outcomes(points.size(),
                                                  std::vector<TrialOutcome>(trials));
  const std::size_t total = points.size() * trials;

  if (observer) {
    // Observers see trials in order and may hold large traces; run serially.
    for (std::size_t t = 0; t < total; ++t) {
      const auto& p = points[t / trials];
      const auto trial = static_cast<std::int64_t>(t % trials);
      const auto r = run_point_trial(p, spec.master_seed, trial, spec.trace);
      observer(p, trial, r);
      outcomes[t / trials][t % trials] = summarize_trial(p, r);
    }
  } else {
    unsigned jobs = spec.jobs ? spec.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, total));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto work = [&] {
      for (std::size_t t = next++; t < total; t = next++) {
        try {
          const auto& p = points[t / trials];
          const auto r = run_point_trial(p, spec.master_seed, static_cast<std::int64_t>(t % trials));
          outcomes[t / trials][t % trials] = summarize_trial(p, r);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    if (jobs <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<AggregateStats> rows;
  for (std::size_t i = 0; i < points.size(); ++i) rows.push_back(aggregate(points[i], outcomes[i]));
  return rows;
}

std::vector<AggregateStats> sweep_delta(ExperimentSpec spec) {
  spec.mode = Mode::SweepDelta;
  return run_experiment(spec);
}

std::vector<AggregateStats> sweep_players(ExperimentSpec spec) {
  spec.mode = Mode::SweepPlayers;
  return run_experiment(spec);
}

std::vector<BoundsRow> bounds_table(const ExperimentSpec& spec) {
  std::vector<double> deltas = spec.sweep;
  if (deltas.empty()) deltas.push_back(spec.base.channel.delta);
  const auto& scenarios = spec.scenarios.empty() ? kDefaultScenarios : spec.scenarios;
  std::vector<BoundsRow> rows;
  for (double delta : deltas) {
    for (const auto& pos : scenarios) {
      analysis::Scenario s{pos.x, pos.y, spec.base.channel};
      s.channel.delta = delta;
      BoundsRow r;
      r.x = pos.x;
      r.y = pos.y;
      r.channel = s.channel;
      r.z = spec.z;
      r.d = s.d();
      analysis::Scenario abs_s{std::abs(pos.x), std::abs(pos.y), s.channel};
      r.drift_x = analysis::drift_parameter(abs_s, Axis::X);
      r.drift_y = analysis::drift_parameter(abs_s, Axis::Y);
      r.greedy_bound = analysis::greedy_meeting_bound(s);
      r.greedy_traversal = analysis::greedy_expected_traversal(s);
      r.roptimal_bound = analysis::roptimal_meeting_bound(s, spec.z);
      r.degraded = s.approximation_degraded();
      rows.push_back(r);
    }
  }
  return rows;
}

Figure1Table figure1_table(const ExperimentSpec& spec) {
  Figure1Table t;
  t.scenarios = spec.scenarios.empty() ? kDefaultScenarios : spec.scenarios;
  t.n_values = spec.n_values.empty() ? default_n_values() : spec.n_values;
  for (long long n : t.n_values) {
    std::vector<double> row;
    for (const auto& pos : t.scenarios)
      row.push_back(
          analysis::prob_positive(Arm::PlusX, analysis::Scenario{pos.x, pos.y, spec.base.channel}, n));
    t.prob.push_back(std::move(row));
  }
  return t;
}

std::vector<ClosestRow> closest_player_table(const ExperimentSpec& spec) {
  std::vector<ClosestRow> rows;
  const auto n_values = spec.n_values.empty() ? std::vector<long long>{1} : spec.n_values;
  for (double d12 : spec.d12_values)
    for (double d13 : spec.d13_values)
      for (double d23 : spec.d23_values) {
        if (d12 > d13 || d13 - d12 > d23) continue;
        for (long long n : n_values) {
          ClosestRow r{d12, d13, d23, n, 0.0, 0.0};
          r.prob = analysis::closest_player_prob(d12, d13, d23, spec.base.channel, n);
          r.prob_bound = analysis::closest_player_prob_bound(d12, d23, spec.base.channel, n);
          rows.push_back(r);
        }
      }
  return rows;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

std::string fmt(std::int64_t v) { return std::to_string(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }
std::string fmt(double v) { return format_number(v); }

std::string_view log_base_name(LogBase b) { return b == LogBase::Natural ? "e" : "10"; }

}  // namespace

void write_csv(std::ostream& os, const std::vector<AggregateStats>& rows) {
  os << "config,policy,num_players,delta,sigma,n_p,x_c,log_base,meet_radius,max_turns,trials,met,"
        "meeting_rate,mean_turns,stderr_turns,mean_m,mean_traversed\n";
  for (const auto& r : rows) {
    os << fmt(r.config_index) << ',' << to_string(r.policy) << ',' << r.num_players << ','
       << fmt(r.channel.delta) << ',' << fmt(r.channel.sigma) << ',' << fmt(r.channel.n_p) << ','
       << fmt(r.channel.x_c) << ',' << log_base_name(r.channel.log_base) << ','
       << fmt(r.meet_radius) << ',' << fmt(r.max_turns) << ',' << fmt(r.trials) << ','
       << fmt(r.met) << ',' << fmt(r.meeting_rate) << ',' << fmt(r.mean_turns) << ','
       << fmt(r.stderr_turns) << ',' << (r.mean_m ? fmt(*r.mean_m) : std::string()) << ','
       << fmt(r.mean_traversed) << '\n';
  }
}

void write_csv(std::ostream& os, const std::vector<BoundsRow>& rows) {
  os << "x,y,delta,sigma,n_p,x_c,log_base,z,d,drift_x,drift_y,greedy_bound,greedy_bound_turns,"
        "greedy_traversal,roptimal_bound,roptimal_bound_turns,approx_degraded\n";
  for (const auto& r : rows) {
    os << fmt(r.x) << ',' << fmt(r.y) << ',' << fmt(r.channel.delta) << ',' << fmt(r.channel.sigma)
       << ',' << fmt(r.channel.n_p) << ',' << fmt(r.channel.x_c) << ','
       << log_base_name(r.channel.log_base) << ',' << fmt(r.z) << ',' << fmt(r.d) << ','
       << fmt(r.drift_x) << ',' << fmt(r.drift_y) << ',' << fmt(r.greedy_bound) << ','
       << fmt(static_cast<std::int64_t>(std::llround(r.greedy_bound))) << ','
       << fmt(r.greedy_traversal) << ',' << fmt(r.roptimal_bound) << ','
       << fmt(static_cast<std::int64_t>(std::llround(r.roptimal_bound))) << ','
       << (r.degraded ? 1 : 0) << '\n';
  }
}

void write_csv(std::ostream& os, const Figure1Table& t) {
  os << "n";
  for (const auto& s : t.scenarios) os << ",p_x" << fmt(s.x) << "_y" << fmt(s.y);
  os << '\n';
  for (std::size_t i = 0; i < t.n_values.size(); ++i) {
    os << t.n_values[i];
    for (double p : t.prob[i]) os << ',' << fmt(p);
    os << '\n';
  }
}

void write_csv(std::ostream& os, const std::vector<ClosestRow>& rows) {
  os << "d12,d13,d23,n,prob,prob_bound\n";
  for (const auto& r : rows) {
    os << fmt(r.d12) << ',' << fmt(r.d13) << ',' << fmt(r.d23) << ',' << r.n << ',' << fmt(r.prob)
       << ',' << fmt(r.prob_bound) << '\n';
  }
}

void write_trace_jsonl(std::ostream& os, const ConfigPoint& point, std::int64_t trial_index,
                       const TrialResult& result) {
  for (const auto& rec : result.trace) {
    os << "{\"config\":" << point.config_index << ",\"policy\":\"" << to_string(point.policy)
       << "\",\"trial\":" << trial_index << ",\"turn\":" << rec.turn << ",\"player\":" << rec.player
       << ",\"x\":" << fmt(rec.x) << ",\"y\":" << fmt(rec.y) << ",\"arm\":\"" << to_string(rec.arm)
       << "\",\"rss\":" << fmt(rec.rss)
       << ",\"reward\":" << (rec.reward ? fmt(*rec.reward) : std::string("null")) << "}\n";
  }
}

void execute(const ExperimentSpec& spec, std::ostream& fallback) {
  spec.validate();
  if (spec.trace && spec.out.empty())
    throw std::invalid_argument("--trace needs --out; the trace is written to <out>.trace.jsonl");
  std::ofstream file;
  if (!spec.out.empty()) {
    file.open(spec.out, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write output file '" + spec.out + "'");
  }
  std::ostream& os = spec.out.empty() ? fallback : file;

  switch (spec.mode) {
    case Mode::Bounds: write_csv(os, bounds_table(spec)); break;
    case Mode::Figure1: write_csv(os, figure1_table(spec)); break;
    case Mode::ClosestPlayer: write_csv(os, closest_player_table(spec)); break;
    default: {
      if (spec.trace) {
        const std::string trace_path = spec.out + ".trace.jsonl";
        std::ofstream trace(trace_path, std::ios::binary | std::ios::trunc);
        if (!trace) throw std::runtime_error("cannot write trace file '" + trace_path + "'");
        write_csv(os, run_experiment(spec, [&](const ConfigPoint& p, std::int64_t trial,
                                               const TrialResult& r) {
                    write_trace_jsonl(trace, p, trial, r);
                  }));
        if (!trace) throw std::runtime_error("failed writing trace file '" + trace_path + "'");
      } else {
        write_csv(os, run_experiment(spec));
      }
    }
  }
  os.flush();
  if (!os) throw std::runtime_error("failed writing output");
}

}  // namespace rssmeet
