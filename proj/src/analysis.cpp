#include "rssmeet/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rssmeet::analysis {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
const double kSqrt2Pi = std::sqrt(2.0 * std::numbers::pi);

double sigma_tilde(const ChannelParams& c) { return std::sqrt(c.sigma_tilde_sq()); }

// Signed coordinate that the arm closes in on: +x uses x, -x uses -x, etc.
double toward_coordinate(Arm arm, const Scenario& s) {
  switch (arm) {
    case Arm::PlusX: return s.x;
    case Arm::MinusX: return -s.x;
    case Arm::PlusY: return s.y;
    case Arm::MinusY: return -s.y;
  }
  return 0.0;
}

// Q(-mean / sd) with the sd = 0 limit handled explicitly.
double prob_above_zero(double mean, double sd) {
  if (sd > 0.0) return q_function(-mean / sd);
  if (mean > 0.0) return 1.0;
  if (mean < 0.0) return 0.0;
  return 0.5;
}

}  // namespace

double q_function(double x) { return 0.5 * std::erfc(x / kSqrt2); }

void Scenario::validate() const {
  channel.validate();
  if (!(d_sq() > 0.0)) throw std::domain_error("scenario: relative position must be non-zero");
}

double Scenario::d() const { return std::sqrt(d_sq()); }

bool Scenario::approximation_degraded() const { return d() < 20.0 * channel.delta; }

GaussianSpec rss_distribution(const Scenario& s) {
  s.validate();
  return {path_loss_mean(s.d(), s.channel), s.channel.sigma * s.channel.sigma};
}

int move_pair_case(Arm move1, Arm move2) {
  const auto a = unit_step(move1);
  const auto b = unit_step(move2);
  const int dx = b.dx - a.dx;
  const int dy = b.dy - a.dy;
  if (dx == 1 && dy == 1) return 1;
  if (dx == -1 && dy == 1) return 2;
  if (dx == 1 && dy == -1) return 3;
  if (dx == -1 && dy == -1) return 4;
  if (dx == 2) return 5;
  if (dx == -2) return 6;
  if (dy == 2) return 7;
  if (dy == -2) return 8;
  return 9;
}

GaussianSpec move_pair_distribution(Arm move1, Arm move2, const Scenario& s) {
  s.validate();
  const auto a = unit_step(move1);
  const auto b = unit_step(move2);
  // Relative position moves by (b - a) * delta; the delta^2 term is dropped.
  const double c = 2.0 * s.channel.delta * (s.x * (b.dx - a.dx) + s.y * (b.dy - a.dy));
  const double mean = c == 0.0 ? 0.0 : -5.0 * s.channel.n_p * s.channel.log(1.0 + c / s.d_sq());
  return {mean, 2.0 * s.channel.sigma_tilde_sq()};
}

GaussianSpec reward_distribution(Arm arm, const Scenario& s) {
  s.validate();
  const double u = 4.0 * toward_coordinate(arm, s) * s.channel.delta / s.d_sq();
  const double mean = u == 0.0 ? 0.0 : -2.5 * s.channel.n_p * s.channel.log(1.0 - u);
  return {mean, 8.0 * s.channel.sigma_tilde_sq()};
}

double prob_positive(Arm arm, const Scenario& s, long long n_avg) {
  if (n_avg < 1) throw std::invalid_argument("prob_positive: n_avg must be >= 1");
  const auto g = reward_distribution(arm, s);
  // Averaging N rewards divides the variance by N.
  return prob_above_zero(g.mean, std::sqrt(g.variance / static_cast<double>(n_avg)));
}

double taylor_argument(Arm arm, const Scenario& s, long long n_avg) {
  if (n_avg < 1) throw std::invalid_argument("taylor_argument: n_avg must be >= 1");
  const auto g = reward_distribution(arm, s);
  return -g.mean * std::sqrt(static_cast<double>(n_avg)) / std::sqrt(g.variance);
}

double prob_positive_taylor(Arm arm, const Scenario& s, long long n_avg, TaylorForm form) {
  const double arg = taylor_argument(arm, s, n_avg);
  // Bound: 1/2 - arg * sqrt(2) / sqrt(2 pi). Consistent: 1/2 - arg / sqrt(2 pi).
  const double slope = form == TaylorForm::Bound ? kSqrt2 / kSqrt2Pi : 1.0 / kSqrt2Pi;
  return 0.5 - slope * arg;
}

double drift_parameter(const Scenario& s, Axis axis, TaylorForm form) {
  s.validate();
  const double coord = axis == Axis::X ? s.x : s.y;
  const auto& c = s.channel;
  const double a = 5.0 * c.n_p * coord * c.delta / (kSqrt2Pi * s.d_sq() * sigma_tilde(c));
  return form == TaylorForm::Bound ? a : a / kSqrt2;
}

CycleProbs greedy_cycle_probs(const Scenario& s, Axis axis, TaylorForm form) {
  const double a = drift_parameter(s, axis, form);
  if (!(std::abs(a) < 0.5))
    throw std::domain_error("greedy_cycle_probs: drift a must satisfy |a| < 1/2");
  return {a, 0.5, 0.25 + a / 2.0, 0.25 - a / 2.0};
}

double greedy_meeting_bound(const Scenario& s) {
  s.validate();
  const auto& c = s.channel;
  return s.d_sq() * kSqrt2Pi * sigma_tilde(c) / (5.0 * c.n_p * c.delta * c.delta);
}

double greedy_expected_traversal(const Scenario& s) {
  return greedy_meeting_bound(s) * 2.0 * s.channel.delta;
}

double roptimal_meeting_bound(const Scenario& s, double z) {
  s.validate();
  if (!(z > 0.0)) throw std::invalid_argument("roptimal_meeting_bound: z must be > 0");
  const auto& c = s.channel;
  const double d = s.d();
  return 2.0 * z * d * kSqrt2Pi * sigma_tilde(c) / (5.0 * c.n_p * c.delta) + d / c.delta;
}

std::optional<DriftTimes> roptimal_drift(const Scenario& s, Axis axis, double z, TaylorForm form) {
  if (!(z > 0.0)) throw std::invalid_argument("roptimal_drift: z must be > 0");
  const double a = drift_parameter(s, axis, form);
  if (a == 0.0) return std::nullopt;
  if (a < 0.0) throw std::domain_error("roptimal_drift: drift must be positive (use |x|, |y|)");
  DriftTimes out;
  out.a = a;
  const double norm = 0.5 + 2.0 * a * a;
  out.p = (0.5 - a) * (0.5 - a) / norm;
  out.q = (0.5 + a) * (0.5 + a) / norm;
  out.t_gambler = z * (4.0 * a * a + 1.0) / (4.0 * a);
  out.t_estimated = 1.0 / (2.0 * a);
  return out;
}

double pairwise_order_prob(double d_i, double d_k, double d_ik, const ChannelParams& params,
                           long long n_avg) {
  params.validate();
  if (!(d_i > 0.0 && d_k > 0.0 && d_ik >= 0.0))
    throw std::domain_error("pairwise_order_prob: distances must be positive");
  if (n_avg < 1) throw std::invalid_argument("pairwise_order_prob: n_avg must be >= 1");
  const double mean = 10.0 * params.n_p * params.log(d_k / d_i);
  const double sd = kSqrt2 * params.sigma * std::sqrt(-std::expm1(-d_ik / params.x_c));
  return prob_above_zero(mean * std::sqrt(static_cast<double>(n_avg)), sd);
}

namespace {

void check_triangle(double d_i, double d_k, double d_ik) {
  const double slack = 1e-12 * (d_i + d_k + d_ik);
  if (std::abs(d_k - d_i) > d_ik + slack)
    throw std::domain_error("closest-player probability: triangle inequality violated");
}

}  // namespace

double closest_player_prob(double d12, double d13, double d23, const ChannelParams& params,
                           long long n_avg) {
  if (!(d12 > 0.0 && d13 > 0.0 && d23 > 0.0))
    throw std::domain_error("closest_player_prob: distances must be positive");
  if (d12 > d13) throw std::domain_error("closest_player_prob: requires d12 <= d13");
  check_triangle(d12, d13, d23);
  return pairwise_order_prob(d12, d13, d23, params, n_avg);
}

double closest_player_prob_bound(double d12, double d23, const ChannelParams& params,
                                 long long n_avg) {
  if (!(d12 > 0.0 && d23 > 0.0))
    throw std::domain_error("closest_player_prob_bound: distances must be positive");
  return pairwise_order_prob(d12, d12 + d23, d23, params, n_avg);
}

double prob_closest_of_m(const std::vector<double>& dists_from_receiver,
                         const std::vector<std::vector<double>>& pairwise, std::size_t i,
                         const ChannelParams& params, long long n_avg) {
  const std::size_t m = dists_from_receiver.size();
  if (i >= m) throw std::out_of_range("prob_closest_of_m: index out of range");
  if (pairwise.size() != m) throw std::invalid_argument("prob_closest_of_m: matrix size mismatch");
  for (const auto& row : pairwise) {
    if (row.size() != m) throw std::invalid_argument("prob_closest_of_m: matrix must be square");
  }
  double prob = 1.0;
  for (std::size_t k = 0; k < m; ++k) {
    if (k == i) continue;
    if (pairwise[i][k] != pairwise[k][i])
      throw std::invalid_argument("prob_closest_of_m: matrix must be symmetric");
    if (!(pairwise[i][k] > 0.0))
      throw std::domain_error("prob_closest_of_m: distances must be positive");
    check_triangle(dists_from_receiver[i], dists_from_receiver[k], pairwise[i][k]);
    prob *= pairwise_order_prob(dists_from_receiver[i], dists_from_receiver[k], pairwise[i][k],
                                params, n_avg);
  }
  return prob;
}

}  // namespace rssmeet::analysis
