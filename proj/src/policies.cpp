#include "rssmeet/policies.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rssmeet {

namespace {

Arm random_arm(Rng& rng) {
  std::uniform_int_distribution<int> pick(0, 3);
  return arm_from_index(pick(rng));
}

double uniform01(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(rng);
}

double sample_beta(double alpha, double beta, Rng& rng) {
  std::gamma_distribution<double> ga(alpha, 1.0);
  std::gamma_distribution<double> gb(beta, 1.0);
  const double x = ga(rng);
  const double y = gb(rng);
  return x / (x + y);
}

// Shared two-turn cycle. `update` folds the previous turn's reward into the
// policy tallies; `explore` picks the even-turn arm.
template <class State, class Update, class Explore>
PolicyStep<State> run_cycle(State state, std::int64_t turn, std::optional<double> r, Rng& rng,
                            Update&& update, Explore&& explore) {
  if (turn < 1) throw std::logic_error("policy step: turn numbers start at 1");
  CycleMemory& cycle = state.cycle;
  if (turn >= 2) {
    if (!r) throw std::logic_error("policy step: reward required from turn 2 on");
    if (!cycle.last_arm) throw std::logic_error("policy step: turns must be consecutive");
    update(state, *cycle.last_arm, *r);
  }

  Arm arm;
  if (turn == 1) {
    arm = random_arm(rng);
    cycle.phase = Phase::Commit;
  } else if (turn % 2 == 0) {
    arm = explore(state, rng);
    cycle.phase = Phase::Explore;
  } else {
    arm = sign_rule(*cycle.last_arm, *r);
    cycle.committed_arm = arm;
    cycle.phase = Phase::Commit;
  }
  cycle.last_arm = arm;
  return {arm, std::move(state)};
}

}  // namespace

std::array<double, 4> exp3_probabilities(const std::array<double, 4>& w, double a) {
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::array<double, 4> p{};
  for (int i = 0; i < 4; ++i) p[i] = (1.0 - a) * (w[i] / total) + a / 4.0;
  return p;
}

std::pair<double, double> exp3_axis_weights(const std::array<double, 4>& p) {
  const double dy = std::abs(p[0] - p[1]);
  const double dx = std::abs(p[2] - p[3]);
  const double denom = dy + dx + 1.0;
  return {(dy + 0.5) / denom, (dx + 0.5) / denom};
}

Arm thompson_select(const std::array<double, 4>& theta) {
  const double gap_y = std::abs(theta[0] - theta[1]);
  const double gap_x = std::abs(theta[2] - theta[3]);
  if (gap_y >= gap_x) return theta[0] >= theta[1] ? Arm::PlusY : Arm::MinusY;
  return theta[2] >= theta[3] ? Arm::PlusX : Arm::MinusX;
}

Arm roptimal_select(const std::array<std::int64_t, 4>& p, const std::array<std::int64_t, 4>& c,
                    double alpha) {
  std::array<double, 4> k{};
  for (int i = 0; i < 4; ++i) k[i] = static_cast<double>(p[i]) / static_cast<double>(c[i]);
  if (alpha > 0.5) return k[0] >= k[1] ? Arm::PlusY : Arm::MinusY;
  return k[2] >= k[3] ? Arm::PlusX : Arm::MinusX;
}

PolicyStep<GreedyState> greedy_step(GreedyState state, std::int64_t turn,
                                    std::optional<double> reward, Rng& rng) {
  return run_cycle(
      std::move(state), turn, reward, rng, [](GreedyState&, Arm, double) {},
      [](GreedyState&, Rng& g) { return random_arm(g); });
}

PolicyStep<RExp3State> rexp3_step(RExp3State state, std::int64_t turn,
                                  std::optional<double> reward, Rng& rng) {
  if (!(state.a > 0.0 && state.a < 1.0)) throw std::invalid_argument("R-Exp3: a must lie in (0,1)");
  auto update = [](RExp3State& s, Arm pulled, double r) {
    const int i = index_of(pulled);
    const auto p = exp3_probabilities(s.w, s.a);
    const double transformed = r > 0.0 ? 1.0 / p[i] : 0.0;
    s.w[i] *= std::exp(s.a * transformed / 4.0);
    const double total = std::accumulate(s.w.begin(), s.w.end(), 0.0);
    if (total > kExp3RenormThreshold) {
      for (auto& w : s.w) w /= total;
    }
  };
  auto explore = [](RExp3State& s, Rng& g) {
    const auto p = exp3_probabilities(s.w, s.a);
    const auto [h1, h2] = exp3_axis_weights(p);
    const int l1 = uniform01(g) * (h1 + h2) < h1 ? 1 : 2;
    const double first = l1 == 1 ? p[0] : p[2];
    const double second = l1 == 1 ? p[1] : p[3];
    const int l2 = uniform01(g) * (first + second) < first ? 1 : 2;
    return arm_from_number(exp3_arm_number(l1, l2));
  };
  return run_cycle(std::move(state), turn, reward, rng, update, explore);
}

PolicyStep<RThompsonState> rthompson_step(RThompsonState state, std::int64_t turn,
                                          std::optional<double> reward, Rng& rng) {
  if (!(state.epsilon > 0.0)) throw std::invalid_argument("R-Thompson: epsilon must be > 0");
  auto update = [](RThompsonState& s, Arm pulled, double r) {
    const int i = index_of(pulled);
    if (r > 0.0) {
      s.s[i] += s.epsilon;
    } else {
      s.f[i] += s.epsilon;
    }
  };
  auto explore = [](RThompsonState& s, Rng& g) {
    std::array<double, 4> theta{};
    for (int i = 0; i < 4; ++i) theta[i] = sample_beta(s.s[i] + 1.0, s.f[i] + 1.0, g);
    return thompson_select(theta);
  };
  return run_cycle(std::move(state), turn, reward, rng, update, explore);
}

PolicyStep<ROptimalState> roptimal_step(ROptimalState state, std::int64_t turn,
                                        std::optional<double> reward, Rng& rng) {
  auto update = [](ROptimalState& s, Arm pulled, double r) {
    const int i = index_of(pulled);
    if (r > 0.0) ++s.p[i];
    ++s.c[i];
  };
  auto explore = [](ROptimalState& s, Rng& g) { return roptimal_select(s.p, s.c, uniform01(g)); };
  return run_cycle(std::move(state), turn, reward, rng, update, explore);
}

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Greedy: return "greedy";
    case PolicyKind::RExp3: return "rexp3";
    case PolicyKind::RThompson: return "rthompson";
    case PolicyKind::ROptimal: return "roptimal";
  }
  return "?";
}

PolicyKind parse_policy_kind(std::string_view name) {
  for (auto kind : kAllPolicies) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown policy '" + std::string(name) +
                              "' (expected greedy|rexp3|rthompson|roptimal)");
}

PolicyState make_policy(const PolicySpec& spec) {
  switch (spec.kind) {
    case PolicyKind::Greedy: return GreedyState{};
    case PolicyKind::RExp3: {
      RExp3State s;
      s.a = spec.a;
      return s;
    }
    case PolicyKind::RThompson: {
      RThompsonState s;
      s.epsilon = spec.epsilon;
      return s;
    }
    case PolicyKind::ROptimal: return ROptimalState{};
  }
  throw std::invalid_argument("make_policy: bad policy kind");
}

Arm step(PolicyState& state, std::int64_t turn, std::optional<double> reward, Rng& rng) {
  return std::visit(
      [&](auto& s) -> Arm {
        using S = std::decay_t<decltype(s)>;
        PolicyStep<S> next;
        if constexpr (std::is_same_v<S, GreedyState>) {
          next = greedy_step(std::move(s), turn, reward, rng);
        } else if constexpr (std::is_same_v<S, RExp3State>) {
          next = rexp3_step(std::move(s), turn, reward, rng);
        } else if constexpr (std::is_same_v<S, RThompsonState>) {
          next = rthompson_step(std::move(s), turn, reward, rng);
        } else {
          next = roptimal_step(std::move(s), turn, reward, rng);
        }
        s = std::move(next.state);
        return next.arm;
      },
      state);
}

const CycleMemory& cycle_of(const PolicyState& state) {
  return std::visit([](const auto& s) -> const CycleMemory& { return s.cycle; }, state);
}

}  // namespace rssmeet
