#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <numeric>

#include "rssmeet/policies.hpp"

using namespace rssmeet;

TEST_CASE("arm relations") {
  for (Arm a : kAllArms) {
    CHECK(reverse(reverse(a)) == a);
    CHECK(reverse(a) != a);
    CHECK(axis_of(reverse(a)) == axis_of(a));
    CHECK(arm_from_number(arm_number(a)) == a);
  }
  CHECK(arm_number(Arm::PlusY) == 1);
  CHECK(arm_number(Arm::MinusY) == 2);
  CHECK(arm_number(Arm::PlusX) == 3);
  CHECK(arm_number(Arm::MinusX) == 4);
  CHECK(reverse(Arm::PlusY) == Arm::MinusY);
  CHECK(reverse(Arm::PlusX) == Arm::MinusX);
}

namespace {

// Plays turn 1 and an exploration turn 2; returns the explored arm.
template <class State, class StepFn>
std::pair<Arm, State> explore_once(State s, StepFn fn, Rng& rng) {
  auto first = fn(std::move(s), 1, std::nullopt, rng);
  auto second = fn(std::move(first.state), 2, 0.1, rng);
  return {second.arm, std::move(second.state)};
}

}  // namespace

TEST_CASE("greedy commit follows the sign of the exploration reward") {
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    auto [explored, st] = explore_once(GreedyState{}, greedy_step, rng);
    CHECK(greedy_step(st, 3, 0.3, rng).arm == explored);
    CHECK(greedy_step(st, 3, -0.3, rng).arm == reverse(explored));
    CHECK(greedy_step(st, 3, 0.0, rng).arm == reverse(explored));
  }
}

TEST_CASE("greedy example with the +x arm") {
  Rng rng(2);
  GreedyState s;
  s.cycle.last_arm = Arm::PlusX;
  s.cycle.phase = Phase::Explore;
  CHECK(greedy_step(s, 5, 0.3, rng).arm == Arm::PlusX);
  CHECK(greedy_step(s, 5, -0.3, rng).arm == Arm::MinusX);
}

TEST_CASE("policy step contract violations") {
  Rng rng(3);
  CHECK_THROWS_AS(greedy_step({}, 0, std::nullopt, rng), std::logic_error);
  CHECK_THROWS_AS(greedy_step({}, 2, std::nullopt, rng), std::logic_error);
  auto first = roptimal_step({}, 1, std::nullopt, rng);
  CHECK_THROWS_AS(roptimal_step(first.state, 2, std::nullopt, rng), std::logic_error);
  RExp3State bad;
  bad.a = 1.0;
  CHECK_THROWS_AS(rexp3_step(bad, 1, std::nullopt, rng), std::invalid_argument);
  RThompsonState bad_t;
  bad_t.epsilon = 0.0;
  CHECK_THROWS_AS(rthompson_step(bad_t, 1, std::nullopt, rng), std::invalid_argument);
}

TEST_CASE("turn one pulls a uniformly random arm") {
  Rng rng(4);
  std::array<int, 4> count{};
  for (int i = 0; i < 40000; ++i) ++count[index_of(roptimal_step({}, 1, std::nullopt, rng).arm)];
  for (int c : count) CHECK(c / 40000.0 == doctest::Approx(0.25).epsilon(0.04));
}

TEST_CASE("exp3 arm numbering") {
  CHECK(exp3_arm_number(1, 1) == 1);
  CHECK(exp3_arm_number(1, 2) == 2);
  CHECK(exp3_arm_number(2, 1) == 3);
  CHECK(exp3_arm_number(2, 2) == 4);
  CHECK(arm_from_number(exp3_arm_number(1, 2)) == Arm::MinusY);
  CHECK(arm_from_number(exp3_arm_number(2, 1)) == Arm::PlusX);
}

TEST_CASE("exp3 initial probabilities are symmetric") {
  for (double a : {1e-3, 0.1, 0.5, 0.9}) {
    RExp3State s;
    const auto p = exp3_probabilities(s.w, a);
    for (double v : p) CHECK(v == doctest::Approx(0.25));
    const auto [h1, h2] = exp3_axis_weights(p);
    CHECK(h1 == doctest::Approx(0.5));
    CHECK(h2 == doctest::Approx(0.5));
  }
}

TEST_CASE("exp3 probabilities are scale invariant") {
  const std::array<double, 4> w{0.3, 2.0, 5.0, 0.01};
  const auto p = exp3_probabilities(w, 0.1);
  std::array<double, 4> scaled = w;
  for (auto& v : scaled) v *= 1e250;
  const auto q = exp3_probabilities(scaled, 0.1);
  for (int i = 0; i < 4; ++i) CHECK(p[i] == doctest::Approx(q[i]).epsilon(1e-12));
}

TEST_CASE("exp3 renormalizes before weights overflow") {
  RExp3State s;
  s.a = 0.9;
  s.w = {1e299, 1e299, 1e299, 9e299};
  s.cycle.last_arm = Arm::MinusX;
  Rng rng(5);
  const auto before = exp3_probabilities(s.w, s.a);
  auto next = rexp3_step(s, 2, 1.0, rng);
  const double total = std::accumulate(next.state.w.begin(), next.state.w.end(), 0.0);
  CHECK(std::isfinite(total));
  CHECK(total == doctest::Approx(1.0));
  const auto after = exp3_probabilities(next.state.w, s.a);
  CHECK(after[3] > before[3]);
}

TEST_CASE("exp3 weight update uses the importance-weighted reward") {
  RExp3State s;
  s.a = 0.2;
  s.cycle.last_arm = Arm::PlusX;
  Rng rng(6);
  const double p = exp3_probabilities(s.w, s.a)[2];
  auto pos = rexp3_step(s, 2, 0.5, rng);
  CHECK(pos.state.w[2] == doctest::Approx(0.25 * std::exp(0.2 * (1.0 / p) / 4.0)));
  auto neg = rexp3_step(s, 2, -0.5, rng);
  CHECK(neg.state.w[2] == doctest::Approx(0.25));
}

TEST_CASE("thompson selection examples") {
  CHECK(thompson_select({0.9, 0.1, 0.6, 0.5}) == Arm::PlusY);
  CHECK(thompson_select({0.5, 0.5, 0.2, 0.9}) == Arm::MinusX);
  // Equal gaps go to the first pair, equal thetas to the lower index.
  CHECK(thompson_select({0.5, 0.5, 0.5, 0.5}) == Arm::PlusY);
}

TEST_CASE("thompson exploration is uniform from fresh tallies") {
  Rng rng(7);
  std::array<int, 4> count{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    RThompsonState s;
    s.cycle.last_arm = Arm::PlusY;
    ++count[index_of(rthompson_step(s, 2, 0.0, rng).arm)];
  }
  for (int c : count) CHECK(std::abs(c / double(n) - 0.25) < 0.01);
}

TEST_CASE("roptimal selection examples") {
  const std::array<std::int64_t, 4> p{3, 1, 0, 0};
  const std::array<std::int64_t, 4> c{5, 5, 1, 1};
  CHECK(roptimal_select(p, c, 0.7) == Arm::PlusY);
  CHECK(roptimal_select(p, c, 0.2) == Arm::PlusX);
  const std::array<std::int64_t, 4> zero{};
  const std::array<std::int64_t, 4> one{1, 1, 1, 1};
  CHECK(roptimal_select(zero, one, 0.9) == Arm::PlusY);
  CHECK(roptimal_select(zero, one, 0.1) == Arm::PlusX);
  CHECK(roptimal_select(zero, one, 0.5) == Arm::PlusX);
}

TEST_CASE("roptimal commit reverses after a negative reward on arm 3") {
  ROptimalState s;
  s.cycle.last_arm = Arm::PlusX;
  Rng rng(8);
  auto next = roptimal_step(s, 3, -0.2, rng);
  CHECK(next.arm == Arm::MinusX);
  CHECK(next.state.c[2] == 2);
  CHECK(next.state.p[2] == 0);
}

TEST_CASE("greedy decisions do not depend on older rewards") {
  // Two histories ending in the same explored arm give the same commit and,
  // from identical RNG states, the same next exploration.
  Rng h1(10), h2(11);
  GreedyState a, b;
  std::int64_t t = 1;
  auto sa = greedy_step(a, t, std::nullopt, h1);
  auto sb = greedy_step(b, t, std::nullopt, h2);
  for (t = 2; t <= 9; ++t) {
    sa = greedy_step(sa.state, t, (t % 3) - 1.0, h1);
    sb = greedy_step(sb.state, t, 1.0 - (t % 2), h2);
  }
  GreedyState ca = sa.state, cb = sb.state;
  ca.cycle.last_arm = cb.cycle.last_arm = Arm::MinusY;
  Rng r1(99), r2(99);
  auto na = greedy_step(ca, 10, 0.4, r1);
  auto nb = greedy_step(cb, 10, 0.4, r2);
  CHECK(na.arm == nb.arm);
  auto ma = greedy_step(na.state, 11, -0.1, r1);
  auto mb = greedy_step(nb.state, 11, -0.1, r2);
  CHECK(ma.arm == mb.arm);
}

TEST_CASE("randomized sequences keep every policy invariant") {
  Rng rng(12345);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (PolicyKind kind : kAllPolicies) {
    CAPTURE(to_string(kind));
    for (int seq = 0; seq < 300; ++seq) {
      PolicySpec spec{kind, 0.05, 0.01};
      PolicyState st = make_policy(spec);
      std::array<int, 4> pulls{};
      std::optional<Arm> prev;
      std::optional<double> r;
      for (std::int64_t t = 1; t <= 41; ++t) {
        const Arm arm = step(st, t, r, rng);
        if (t >= 3 && t % 2 == 1) REQUIRE(arm == sign_rule(*prev, *r));
        CHECK(cycle_of(st).phase == (t >= 2 && t % 2 == 0 ? Phase::Explore : Phase::Commit));
        if (prev) ++pulls[index_of(*prev)];
        if (auto* e = std::get_if<RExp3State>(&st)) {
          const auto p = exp3_probabilities(e->w, e->a);
          CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
          for (double v : p) CHECK(v >= e->a / 4.0 - 1e-15);
        }
        if (auto* th = std::get_if<RThompsonState>(&st)) {
          for (int i = 0; i < 4; ++i)
            CHECK(th->s[i] + th->f[i] == doctest::Approx(th->epsilon * pulls[i]));
        }
        if (auto* o = std::get_if<ROptimalState>(&st)) {
          CHECK(std::accumulate(o->c.begin(), o->c.end(), std::int64_t{0}) - 4 == t - 1);
          for (int i = 0; i < 4; ++i) {
            CHECK(o->c[i] >= 1);
            CHECK(o->p[i] <= o->c[i] - 1);
            CHECK(o->c[i] - 1 == pulls[i]);
          }
        }
        prev = arm;
        r = noise(rng);
        if (seq % 7 == 0) r = 0.0;
      }
    }
  }
}

TEST_CASE("policy names round trip") {
  for (PolicyKind k : kAllPolicies) CHECK(parse_policy_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_policy_kind("ucb"), std::invalid_argument);
}
