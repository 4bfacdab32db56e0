#pragma once

#include <optional>
#include <vector>

#include "rssmeet/arm.hpp"
#include "rssmeet/channel.hpp"

// Closed-form distributions, probabilities and meeting-time bounds for the
// two-player and multiplayer RSS meeting problem. All functions are pure.
//
// The first-order expansion of the positive-reward probability comes in two
// normalizations. TaylorForm::Bound divides by 4*sqrt(2*pi); the drift a and
// both meeting-time bounds are built on it. TaylorForm::Consistent divides by
// 4*sqrt(2)*sqrt(2*pi), which is what Q(x) ~ 1/2 - x/sqrt(2*pi) gives for the
// exact Q argument. The two differ by a factor sqrt(2) in the slope.

namespace rssmeet::analysis {

/// Standard Gaussian tail P(Z > x), via erfc.
double q_function(double x);

struct GaussianSpec {
  double mean = 0.0;
  double variance = 0.0;
};

/// Position of player 2 relative to player 1.
struct Scenario {
  double x = 0.0;
  double y = 0.0;
  ChannelParams channel;

  /// Throws std::domain_error when x = y = 0 and std::invalid_argument on bad
  /// channel parameters.
  void validate() const;
  double d_sq() const { return x * x + y * y; }
  double d() const;
  /// True when d < 20 delta, where the small-step approximations degrade.
  bool approximation_degraded() const;
};

enum class TaylorForm { Bound, Consistent };

struct CycleProbs {
  double a = 0.0;
  double p_stay = 0.0;
  double p_toward = 0.0;
  double p_away = 0.0;
};

struct DriftTimes {
  double a = 0.0;
  double p = 0.0;  // probability of stepping away from the positive states
  double q = 0.0;  // probability of stepping toward them
  double t_gambler = 0.0;
  double t_estimated = 0.0;
};

GaussianSpec rss_distribution(const Scenario& s);

/// Which of the nine move-pair distributions (1..9) applies when player 1
/// pulls `move1` and player 2 pulls `move2`.
int move_pair_case(Arm move1, Arm move2);

/// Reward distribution for a given pair of moves, small-step approximation.
GaussianSpec move_pair_distribution(Arm move1, Arm move2, const Scenario& s);

/// Reward distribution of player 1's arm against a uniformly random opponent,
/// as the sum of the four move-pair Gaussians: variance 8 * sigma_tilde^2.
GaussianSpec reward_distribution(Arm arm, const Scenario& s);

/// Probability that the N-averaged reward of `arm` is positive (exact Q form).
double prob_positive(Arm arm, const Scenario& s, long long n_avg = 1);

/// Q-function argument of prob_positive. The first-order expansion is only
/// meaningful while its magnitude stays well below 0.5.
double taylor_argument(Arm arm, const Scenario& s, long long n_avg = 1);

/// First-order expansion of prob_positive.
double prob_positive_taylor(Arm arm, const Scenario& s, long long n_avg = 1,
                            TaylorForm form = TaylorForm::Bound);

/// Drift a along `axis`; non-negative for non-negative coordinates.
double drift_parameter(const Scenario& s, Axis axis, TaylorForm form = TaylorForm::Bound);

/// Two-turn Greedy cycle: stay 1/2, toward 1/4 + a/2, away 1/4 - a/2.
/// Throws std::domain_error when |a| >= 1/2.
CycleProbs greedy_cycle_probs(const Scenario& s, Axis axis,
                              TaylorForm form = TaylorForm::Bound);

/// Upper bound on expected Greedy meeting turns.
double greedy_meeting_bound(const Scenario& s);

/// Expected collective traversal, bound * 2 delta.
double greedy_expected_traversal(const Scenario& s);

inline constexpr double kDefaultZ = 10.0;

/// Upper bound on expected R-Optimal meeting turns.
double roptimal_meeting_bound(const Scenario& s, double z = kDefaultZ);

/// Gambler's-ruin drift of the R-Optimal tally chain. Empty when the axis
/// has no drift (a = 0).
std::optional<DriftTimes> roptimal_drift(const Scenario& s, Axis axis, double z = kDefaultZ,
                                         TaylorForm form = TaylorForm::Bound);

/// P(averaged RSS from the player at d_i exceeds that from the player at
/// d_k), where d_ik is the distance between the two transmitters.
double pairwise_order_prob(double d_i, double d_k, double d_ik, const ChannelParams& params,
                           long long n_avg = 1);

/// Probability of identifying player 2 (distance d12) as closer than player
/// 3 (distance d13). Requires d12 <= d13 and |d13 - d12| <= d23.
double closest_player_prob(double d12, double d13, double d23, const ChannelParams& params,
                           long long n_avg = 1);

/// Relaxation that replaces d13/d12 with 1 + d23/d12; never below the exact value.
double closest_player_prob_bound(double d12, double d23, const ChannelParams& params,
                                 long long n_avg = 1);

/// Probability that candidate i is found closest among all candidates.
/// `dists_from_receiver[k]` is the receiver-to-candidate distance and
/// `pairwise[k][j]` the candidate-to-candidate distance.
double prob_closest_of_m(const std::vector<double>& dists_from_receiver,
                         const std::vector<std::vector<double>>& pairwise, std::size_t i,
                         const ChannelParams& params, long long n_avg = 1);

}  // namespace rssmeet::analysis
