#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <numbers>

#include "oracles.hpp"
#include "rssmeet/analysis.hpp"

using namespace rssmeet;
using namespace rssmeet::analysis;

namespace {

Scenario scen(double x, double y) { return Scenario{x, y, ChannelParams{}}; }

// sigma * sqrt(1 - exp(-2 delta / x_c)), written out independently.
double sig_tilde(const ChannelParams& c) {
  return c.sigma * std::sqrt(1.0 - std::exp(-2.0 * c.delta / c.x_c));
}

}  // namespace

TEST_CASE("q function agrees with direct integration") {
  for (double x : {-3.0, -1.0, -0.1, 0.0, 0.05, 0.5, 1.0, 2.5, 5.0}) {
    CAPTURE(x);
    CHECK(q_function(x) == doctest::Approx(oracle::q_tail(x)).epsilon(1e-9));
  }
  CHECK(q_function(0.0) == 0.5);
}

TEST_CASE("scenario validation") {
  CHECK_THROWS_AS(scen(0, 0).validate(), std::domain_error);
  CHECK_NOTHROW(scen(1, 0).validate());
  CHECK(scen(1.0, 0.5).approximation_degraded());
  CHECK_FALSE(scen(40, 70).approximation_degraded());
}

TEST_CASE("rss distribution") {
  auto s = scen(1.0, 0.0);
  s.channel.p_i = -20.0;
  CHECK(rss_distribution(s).mean == doctest::Approx(-20.0));
  CHECK(rss_distribution(s).variance == doctest::Approx(16.0));
  CHECK(rss_distribution(scen(40, 70)).mean == doctest::Approx(-175.591).epsilon(1e-5));
  CHECK(rss_distribution(scen(40, 70)).mean ==
        doctest::Approx(-40.0 * std::log(std::hypot(40.0, 70.0))));
  auto zero = scen(3, 4);
  zero.channel.sigma = 0.0;
  CHECK(rss_distribution(zero).variance == 0.0);
  CHECK_THROWS(rss_distribution(scen(0, 0)));
}

TEST_CASE("move-pair table") {
  // Case number by displacement of player 2 relative to player 1.
  CHECK(move_pair_case(Arm::MinusX, Arm::PlusY) == 1);
  CHECK(move_pair_case(Arm::PlusX, Arm::PlusY) == 2);
  CHECK(move_pair_case(Arm::MinusX, Arm::MinusY) == 3);
  CHECK(move_pair_case(Arm::PlusX, Arm::MinusY) == 4);
  CHECK(move_pair_case(Arm::MinusX, Arm::PlusX) == 5);
  CHECK(move_pair_case(Arm::PlusX, Arm::MinusX) == 6);
  CHECK(move_pair_case(Arm::MinusY, Arm::PlusY) == 7);
  CHECK(move_pair_case(Arm::PlusY, Arm::MinusY) == 8);
  for (Arm a : kAllArms) CHECK(move_pair_case(a, a) == 9);

  const auto s = scen(40, 70);
  const double st2 = sig_tilde(s.channel) * sig_tilde(s.channel);
  const auto same = move_pair_distribution(Arm::PlusX, Arm::PlusX, s);
  CHECK(same.mean == 0.0);
  CHECK(same.variance == doctest::Approx(2.0 * st2));

  const auto d1 = move_pair_distribution(Arm::MinusX, Arm::PlusY, s);
  const double c = 2.0 * 40 * 0.1 + 2.0 * 70 * 0.1;
  CHECK(d1.mean == doctest::Approx(-5.0 * 4.0 * std::log(1.0 + c / 6500.0)));
}

TEST_CASE("move-pair means approximate the exact path-loss change") {
  const auto s = scen(40, 70);
  const auto exact = oracle::exact_plus_x_reward_means(40, 70, s.channel);
  for (int k = 0; k < 4; ++k) {
    const double approx = move_pair_distribution(Arm::PlusX, arm_from_index(k), s).mean;
    // Dropped term is O(delta^2 / d^2) relative to O(delta / d).
    CHECK(std::abs(approx - exact[k]) < 1e-3);
  }
}

TEST_CASE("reward distribution of the +x arm") {
  const auto s = scen(40, 70);
  const auto g = reward_distribution(Arm::PlusX, s);
  CHECK(g.mean == doctest::Approx(0.02465).epsilon(1e-3));
  CHECK(g.mean == doctest::Approx(-10.0 * std::log(1.0 - 16.0 / 6500.0)));
  CHECK(g.variance == doctest::Approx(0.34088).epsilon(1e-4));
  CHECK(g.variance == doctest::Approx(8.0 * 16.0 * (1.0 - std::exp(-0.2 / 75.0))));

  double sum = 0.0;
  for (Arm m2 : kAllArms) sum += move_pair_distribution(Arm::PlusX, m2, s).mean;
  CHECK(sum == doctest::Approx(4.0 * g.mean).epsilon(1e-3));
}

TEST_CASE("reward means of reverse arms") {
  for (auto [x, y] : {std::pair{40.0, 70.0}, {100.0, 60.0}, {3.0, 1.0}}) {
    const auto s = scen(x, y);
    const double u = 4.0 * x * 0.1 / (x * x + y * y);
    const double sum =
        reward_distribution(Arm::PlusX, s).mean + reward_distribution(Arm::MinusX, s).mean;
    CHECK(sum == doctest::Approx(-2.5 * 4.0 * std::log(1.0 - u * u)));
    CHECK(sum >= 0.0);
  }
  const auto aligned = scen(0, 50);
  CHECK(reward_distribution(Arm::PlusX, aligned).mean == 0.0);
  CHECK(reward_distribution(Arm::MinusX, aligned).mean == 0.0);
}

TEST_CASE("positive-reward probability") {
  CHECK(prob_positive(Arm::PlusX, scen(0, 50), 1) == 0.5);
  CHECK(prob_positive(Arm::MinusX, scen(0, 50), 1000) == 0.5);
  const auto s = scen(40, 70);
  CHECK(prob_positive(Arm::PlusX, s, 1) == doctest::Approx(0.51684).epsilon(2e-5));

  // Oracle: Q(-mean / sd) by integration, with the mean and variance taken
  // from the closed forms written out here.
  const double mean = -10.0 * std::log(1.0 - 16.0 / 6500.0);
  const double var = 8.0 * std::pow(sig_tilde(s.channel), 2);
  for (long long n : {1LL, 10LL, 1000LL}) {
    CHECK(prob_positive(Arm::PlusX, s, n) ==
          doctest::Approx(oracle::q_tail(-mean * std::sqrt(double(n)) / std::sqrt(var))).epsilon(1e-9));
  }
  CHECK(prob_positive(Arm::PlusX, s, 100000000) == doctest::Approx(1.0));
  CHECK(prob_positive(Arm::MinusX, s, 1) < 0.5);
  CHECK_THROWS_AS(prob_positive(Arm::PlusX, s, 0), std::invalid_argument);
}

TEST_CASE("positive-reward probability is monotone") {
  const auto base = scen(40, 70);
  double prev = 0.0;
  for (long long n = 1; n <= 10000; n *= 10) {
    const double p = prob_positive(Arm::PlusX, base, n);
    CHECK(p > prev);
    prev = p;
  }
  prev = 0.0;
  for (double x : {5.0, 10.0, 20.0, 40.0}) {
    const double p = prob_positive(Arm::PlusX, scen(x, 70), 1);
    CHECK(p > prev);
    prev = p;
  }
  prev = 0.0;
  for (double np : {2.0, 3.0, 4.0, 5.0}) {
    auto s = base;
    s.channel.n_p = np;
    const double p = prob_positive(Arm::PlusX, s, 1);
    CHECK(p > prev);
    prev = p;
  }
  prev = 1.0;
  for (double sigma : {1.0, 2.0, 4.0, 8.0}) {
    auto s = base;
    s.channel.sigma = sigma;
    const double p = prob_positive(Arm::PlusX, s, 1);
    CHECK(p < prev);
    prev = p;
  }
}

TEST_CASE("first-order expansion") {
  CHECK(prob_positive_taylor(Arm::PlusX, scen(0, 30), 1) == 0.5);
  const auto s = scen(40, 70);
  CHECK(prob_positive_taylor(Arm::PlusX, s, 1, TaylorForm::Bound) ==
        doctest::Approx(0.5238).epsilon(1e-4));
  // The Bound form's slope is sqrt(2) times the consistent one.
  const double bound = prob_positive_taylor(Arm::PlusX, s, 1, TaylorForm::Bound) - 0.5;
  const double consistent = prob_positive_taylor(Arm::PlusX, s, 1, TaylorForm::Consistent) - 0.5;
  CHECK(bound / consistent == doctest::Approx(std::numbers::sqrt2));
}

TEST_CASE("consistent expansion tracks the exact probability") {
  for (double x : {5.0, 20.0, 40.0, 80.0})
    for (double y : {10.0, 70.0})
      for (long long n : {1LL, 4LL, 16LL}) {
        const auto s = scen(x, y);
        const double arg = taylor_argument(Arm::PlusX, s, n);
        if (std::abs(arg) >= 0.5) continue;
        const double exact = prob_positive(Arm::PlusX, s, n);
        CHECK(std::abs(prob_positive_taylor(Arm::PlusX, s, n, TaylorForm::Consistent) - exact) <=
              arg * arg);
      }
}

TEST_CASE("greedy cycle") {
  const auto aligned = greedy_cycle_probs(scen(0, 50), Axis::X);
  CHECK(aligned.a == 0.0);
  CHECK(aligned.p_toward == 0.25);
  CHECK(aligned.p_away == 0.25);

  const auto s = scen(40, 70);
  const auto cp = greedy_cycle_probs(s, Axis::X);
  CHECK(cp.a == doctest::Approx(0.02379).epsilon(1e-3));
  const double a_oracle =
      5.0 * 4.0 * 40.0 * 0.1 / (std::sqrt(2.0 * std::numbers::pi) * 6500.0 * sig_tilde(s.channel));
  CHECK(cp.a == doctest::Approx(a_oracle));
  CHECK(drift_parameter(s, Axis::X, TaylorForm::Consistent) ==
        doctest::Approx(a_oracle / std::numbers::sqrt2));

  for (double x : {1.0, 10.0, 40.0, 100.0}) {
    const auto p = greedy_cycle_probs(scen(x, 30), Axis::X);
    CHECK(p.p_stay + p.p_toward + p.p_away == doctest::Approx(1.0));
    CHECK(p.p_toward >= p.p_away);
  }
  auto strong = scen(0.5, 0.1);
  strong.channel.sigma = 0.01;
  CHECK_THROWS_AS(greedy_cycle_probs(strong, Axis::X), std::domain_error);
}

TEST_CASE("greedy meeting bound values") {
  CHECK(std::abs(greedy_meeting_bound(scen(40, 70)) - 16816) <= 1.0);
  CHECK(std::abs(greedy_meeting_bound(scen(100, 60)) - 35184) <= 1.0);
  CHECK(std::abs(greedy_meeting_bound(scen(60, 60)) - 18627) <= 1.0);
  const auto s = scen(40, 70);
  CHECK(greedy_meeting_bound(s) ==
        doctest::Approx(6500.0 * std::sqrt(2.0 * std::numbers::pi) * sig_tilde(s.channel) /
                        (5.0 * 4.0 * 0.01)));
}

TEST_CASE("greedy bound scaling") {
  CHECK(greedy_meeting_bound(scen(80, 140)) == doctest::Approx(4.0 * greedy_meeting_bound(scen(40, 70))));
  double prev = std::numeric_limits<double>::infinity();
  for (double delta = 0.01; delta <= 7.5; delta *= 1.5) {
    auto s = scen(40, 70);
    s.channel.delta = delta;
    const double b = greedy_meeting_bound(s);
    CHECK(b < prev);
    prev = b;
  }
}

TEST_CASE("expected traversal") {
  CHECK(greedy_expected_traversal(scen(40, 70)) == doctest::Approx(3363.2).epsilon(1e-4));
  double prev = std::numeric_limits<double>::infinity();
  for (double delta : {1e-4, 1e-3, 0.01, 0.1, 1.0, 5.0}) {
    auto s = scen(40, 70);
    s.channel.delta = delta;
    const double d = greedy_expected_traversal(s);
    CHECK(d < prev);
    prev = d;
  }
  auto tiny = scen(40, 70);
  tiny.channel.delta = 1e-9;
  CHECK(greedy_expected_traversal(tiny) > 1e6);
}

TEST_CASE("roptimal meeting bound values") {
  CHECK(std::abs(roptimal_meeting_bound(scen(40, 70)) - 1223) <= 1.0);
  CHECK(std::abs(roptimal_meeting_bound(scen(100, 60)) - 1770) <= 1.0);
  CHECK(std::abs(roptimal_meeting_bound(scen(60, 60)) - 1287) <= 1.0);
  for (auto [x, y] : {std::pair{40.0, 70.0}, {100.0, 60.0}, {60.0, 60.0}})
    CHECK(roptimal_meeting_bound(scen(x, y)) < greedy_meeting_bound(scen(x, y)));
  CHECK_THROWS_AS(roptimal_meeting_bound(scen(40, 70), 0.0), std::invalid_argument);
}

TEST_CASE("roptimal traversal converges to twice the distance") {
  auto s = scen(40, 70);
  s.channel.delta = 1e-10;
  CHECK(roptimal_meeting_bound(s) * 2e-10 == doctest::Approx(2.0 * s.d()).epsilon(1e-3));
}

TEST_CASE("roptimal drift") {
  CHECK_FALSE(roptimal_drift(scen(0, 40), Axis::X).has_value());
  const auto s = scen(40, 70);
  const auto d = roptimal_drift(s, Axis::X);
  REQUIRE(d.has_value());
  CHECK(d->p + d->q == doctest::Approx(1.0));
  CHECK(d->q > d->p);
  CHECK(d->t_estimated == doctest::Approx(21.0).epsilon(2e-3));
  CHECK(d->t_estimated == doctest::Approx(6500.0 * std::sqrt(2.0 * std::numbers::pi) *
                                          sig_tilde(s.channel) / (10.0 * 4.0 * 40.0 * 0.1)));
  CHECK(d->t_gambler == doctest::Approx(10.0 / (d->q - d->p)));
  for (double x : {1.0, 5.0, 30.0, 90.0}) {
    const auto r = roptimal_drift(scen(x, 10), Axis::X);
    CHECK(r->p + r->q == doctest::Approx(1.0));
    CHECK(r->q > r->p);
  }
  CHECK_THROWS(roptimal_drift(scen(-40, 70), Axis::X));
}

TEST_CASE("closest player probability") {
  ChannelParams c;
  CHECK(closest_player_prob(30, 30, 20, c) == 0.5);
  CHECK(closest_player_prob(30, 31, 20, c, 1000000) == doctest::Approx(1.0));
  CHECK_THROWS_AS(closest_player_prob(10, 40, 5, c), std::domain_error);
  CHECK_THROWS_AS(closest_player_prob(40, 10, 35, c), std::domain_error);

  const double d12 = 30, d13 = 35, d23 = 12;
  const double sd = std::sqrt(2.0) * 4.0 * std::sqrt(1.0 - std::exp(-d23 / 75.0));
  const double mean = 10.0 * std::sqrt(10.0) * 4.0 * std::log(d13 / d12);
  CHECK(closest_player_prob(d12, d13, d23, c, 10) ==
        doctest::Approx(oracle::q_tail(-mean / sd)).epsilon(1e-9));

  for (double a : {10.0, 30.0, 60.0})
    for (double b : {0.0, 5.0, 20.0})
      for (double e : {5.0, 20.0, 50.0}) {
        const double d13v = a + b;
        if (b > e) continue;
        CHECK(closest_player_prob(a, d13v, e, c) <= closest_player_prob_bound(a, e, c) + 1e-15);
      }
}

TEST_CASE("closest of m") {
  ChannelParams c;
  CHECK(prob_closest_of_m({10.0}, {{0.0}}, 0, c) == 1.0);
  const std::vector<double> d{20.0, 26.0};
  const std::vector<std::vector<double>> pw{{0.0, 15.0}, {15.0, 0.0}};
  CHECK(prob_closest_of_m(d, pw, 0, c, 3) == doctest::Approx(closest_player_prob(20, 26, 15, c, 3)));

  // Adding comparably close candidates lowers the probability.
  double prev = 1.0;
  for (int k = 1; k <= 4; ++k) {
    std::vector<double> dm{20.0};
    for (int j = 1; j <= k; ++j) dm.push_back(22.0 + j);
    std::vector<std::vector<double>> pm(dm.size(), std::vector<double>(dm.size(), 10.0));
    for (std::size_t i = 0; i < dm.size(); ++i) pm[i][i] = 0.0;
    const double p = prob_closest_of_m(dm, pm, 0, c);
    CHECK(p < prev);
    prev = p;
  }
  CHECK_THROWS_AS(prob_closest_of_m(d, {{0.0, 15.0}, {14.0, 0.0}}, 0, c), std::invalid_argument);
  CHECK_THROWS_AS(prob_closest_of_m(d, pw, 2, c), std::out_of_range);
}
