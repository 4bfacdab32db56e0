#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>

#include "rssmeet/arm.hpp"
#include "rssmeet/rng.hpp"

namespace rssmeet {

// Every policy runs two-turn cycles. Turn 1 pulls a random arm. On an even
// turn the policy picks an exploration arm; on the following odd turn it
// sees that arm's reward and commits to the same arm if the reward was
// positive, otherwise to its reverse.
//
// The reward handed to step() at turn t is the reward of the arm pulled at
// turn t-1 (the RSS difference measured after that move). It is absent only
// at turn 1.

enum class Phase : std::uint8_t { Explore, Commit };

struct CycleMemory {
  std::optional<Arm> last_arm;       // arm pulled on the previous turn
  std::optional<Arm> committed_arm;  // arm chosen by the sign rule
  Phase phase = Phase::Commit;
};

struct GreedyState {
  CycleMemory cycle;
};

struct RExp3State {
  std::array<double, 4> w{0.25, 0.25, 0.25, 0.25};
  double a = 1e-3;
  CycleMemory cycle;
};

struct RThompsonState {
  std::array<double, 4> s{};
  std::array<double, 4> f{};
  double epsilon = 1e-3;
  CycleMemory cycle;
};

struct ROptimalState {
  std::array<std::int64_t, 4> p{};            // positive-reward counts
  std::array<std::int64_t, 4> c{1, 1, 1, 1};  // play counts, start at 1
  CycleMemory cycle;
};

template <class State>
struct PolicyStep {
  Arm arm;
  State state;
};

PolicyStep<GreedyState> greedy_step(GreedyState state, std::int64_t turn,
                                    std::optional<double> reward, Rng& rng);
PolicyStep<RExp3State> rexp3_step(RExp3State state, std::int64_t turn,
                                  std::optional<double> reward, Rng& rng);
PolicyStep<RThompsonState> rthompson_step(RThompsonState state, std::int64_t turn,
                                          std::optional<double> reward, Rng& rng);
PolicyStep<ROptimalState> roptimal_step(ROptimalState state, std::int64_t turn,
                                        std::optional<double> reward, Rng& rng);

/// Same arm after a strictly positive reward, reverse arm otherwise.
constexpr Arm sign_rule(Arm explored, double reward) {
  return reward > 0.0 ? explored : reverse(explored);
}

// Pure selection pieces, exposed for testing.

/// p_i = (1-a) w_i / sum(w) + a/4.
std::array<double, 4> exp3_probabilities(const std::array<double, 4>& w, double a);

/// Axis weights (h1 for the up/down pair, h2 for right/left).
std::pair<double, double> exp3_axis_weights(const std::array<double, 4>& p);

/// 1-based arm number from the axis draw l1 and the within-pair draw l2.
constexpr int exp3_arm_number(int l1, int l2) { return l1 * l1 - l1 + l2; }

/// Pair with the larger |theta difference| wins, then its larger theta.
/// Ties go to the lower index.
Arm thompson_select(const std::array<double, 4>& theta);

/// alpha > 0.5 picks within up/down, otherwise within right/left, by the
/// larger empirical positive-reward rate. Ties go to the lower index.
Arm roptimal_select(const std::array<std::int64_t, 4>& p,
                    const std::array<std::int64_t, 4>& c, double alpha);

/// Total weight above which R-Exp3 weights are renormalized.
inline constexpr double kExp3RenormThreshold = 1e300;

enum class PolicyKind : std::uint8_t { Greedy, RExp3, RThompson, ROptimal };

inline constexpr std::array<PolicyKind, 4> kAllPolicies{
    PolicyKind::Greedy, PolicyKind::RExp3, PolicyKind::RThompson, PolicyKind::ROptimal};

struct PolicySpec {
  PolicyKind kind = PolicyKind::Greedy;
  double a = 1e-3;        // R-Exp3 mixing parameter
  double epsilon = 1e-3;  // R-Thompson learning rate
};

std::string_view to_string(PolicyKind kind);

/// Accepts greedy|rexp3|rthompson|roptimal. Throws std::invalid_argument.
PolicyKind parse_policy_kind(std::string_view name);

using PolicyState = std::variant<GreedyState, RExp3State, RThompsonState, ROptimalState>;

PolicyState make_policy(const PolicySpec& spec);

/// Advances whichever policy is held and returns the arm for this turn.
Arm step(PolicyState& state, std::int64_t turn, std::optional<double> reward, Rng& rng);

const CycleMemory& cycle_of(const PolicyState& state);

}  // namespace rssmeet
