#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "reslab/attacker.hpp"
#include "reslab/distributions.hpp"
#include "test_util.hpp"

using reslab::AttackerConfig;
using reslab::ThresholdDistribution;

namespace {

ThresholdDistribution u01() { return ThresholdDistribution::uniform(0.0, 1.0); }
ThresholdDistribution exp1() { return ThresholdDistribution::exponential(1.0); }

AttackerConfig small_config(double c, double delta) {
  AttackerConfig config;
  config.cost_rate = c;
  config.discount = delta;
  config.h_max = 1.0;
  config.p_grid = 101;
  config.h_grid = 51;
  config.tol = 1e-9;
  return config;
}

}  // namespace

TEST_CASE("stage reward formula") {
  CHECK(reslab::reward(u01(), 0.0, 0.5, 1.0) ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(reslab::reward(u01(), 0.3, 0.0, 2.5) ==
        doctest::Approx(-0.3).epsilon(1e-14));
  // CDF saturates once h/(1-p) leaves the support
  CHECK(reslab::reward(u01(), 0.5, 0.6, 0.0) ==
        doctest::Approx(0.5).epsilon(1e-14));
  // p = 1: the CDF argument counts as +infinity
  CHECK(reslab::reward(u01(), 1.0, 0.25, 1.0) ==
        doctest::Approx(-0.25).epsilon(1e-14));
}

TEST_CASE("myopic policy equals a brute-force reward scan") {
  for (auto f : {u01(), exp1()}) {
    for (double c : {0.0, 0.7, 2.0}) {
      auto config = small_config(c, 0.0);
      auto sol = reslab::value_iteration(f, config);
      REQUIRE(sol.converged);
      for (std::size_t i = 0; i < sol.policy.grid.size(); ++i) {
        double p = sol.policy.grid[i];
        double best = -1e300;
        double best_h = 0.0;
        for (std::size_t j = 0; j < config.h_grid; ++j) {
          double h = config.h_max * static_cast<double>(j) /
                     static_cast<double>(config.h_grid - 1);
          double r = reslab::reward(f, p, h, c);
          if (r > best) {
            best = r;
            best_h = h;
          }
        }
        CHECK(sol.policy.actions[i] == doctest::Approx(best_h).epsilon(1e-12));
        CHECK(sol.value.values[i] == doctest::Approx(best).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("myopic endpoint policies from the reward slope") {
  auto expensive = reslab::value_iteration(u01(), small_config(2.0, 0.0));
  CHECK(expensive.policy.actions.front() == 0.0);  // dR/dh = 1 - c < 0 at p=0

  auto free = reslab::value_iteration(u01(), small_config(0.0, 0.0));
  CHECK(free.policy.actions.front() == 1.0);  // reward increasing in h
}

TEST_CASE("value iteration contracts and respects the utility bound") {
  auto config = small_config(1.0, 0.9);
  auto sol = reslab::value_iteration(u01(), config);
  REQUIRE(sol.converged);
  for (std::size_t k = 1; k < sol.residuals.size(); ++k) {
    CHECK(sol.residuals[k] <= config.discount * sol.residuals[k - 1] + 1e-12);
  }
  double bound =
      (2.0 + config.cost_rate * config.h_max) / (1.0 - config.discount);
  for (double v : sol.value.values) {
    CHECK(std::abs(v) <= bound + 1e-9);
  }
}

TEST_CASE("deterrence cost equals the density maximum") {
  CHECK(reslab::deterrence_cost(u01(), 1.0) == doctest::Approx(1.0));
  CHECK(reslab::deterrence_cost(exp1(), 1.0) == doctest::Approx(1.0));
  CHECK(reslab::deterrence_cost(ThresholdDistribution::exponential(2.0), 1.0) ==
        doctest::Approx(2.0));
  CHECK_THROWS_AS(
      reslab::deterrence_cost(ThresholdDistribution::empirical({1.0}), 1.0),
      std::invalid_argument);
}

TEST_CASE("pricing harassment above the density maximum deters the attacker") {
  for (auto f : {u01(), exp1()}) {
    double c = reslab::deterrence_cost(f, 1.0) + 0.1;
    for (double delta : {0.0, 0.5, 0.9}) {
      // with irreversible departures the zero policy is optimal everywhere
      auto config = small_config(c, delta);
      config.monotone_transition = true;
      auto sol = reslab::value_iteration(f, config);
      REQUIRE(sol.converged);
      for (double action : sol.policy.actions) {
        CHECK(action == 0.0);
      }
      // the verbatim transition still deters on-path: nothing beats h = 0
      // from the empty-departure start state
      auto verbatim = small_config(c, delta);
      auto sol2 = reslab::value_iteration(f, verbatim);
      CHECK(sol2.policy.actions.front() == 0.0);
    }
  }
}

TEST_CASE("policy rollouts accumulate discounted stage payoffs") {
  auto config = small_config(1.0, 0.9);
  reslab::PolicyTable zero;
  zero.grid = {0.0, 1.0};
  zero.actions = {0.0, 0.0};
  CHECK(reslab::evaluate_policy(u01(), zero, config) == 0.0);

  auto myopic = small_config(0.4, 0.0);
  auto sol = reslab::value_iteration(u01(), myopic);
  double u = reslab::evaluate_policy(u01(), sol.policy, myopic);
  CHECK(u == doctest::Approx(reslab::reward(u01(), 0.0,
                                            sol.policy.actions.front(), 0.4))
                 .epsilon(1e-12));
}

TEST_CASE("optimal policy beats random policies on its own scenario") {
  auto config = small_config(0.6, 0.8);
  auto sol = reslab::value_iteration(u01(), config);
  double u_star = reslab::evaluate_policy(u01(), sol.policy, config);
  testutil::Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    reslab::PolicyTable random_policy;
    random_policy.grid = sol.policy.grid;
    random_policy.actions.resize(random_policy.grid.size());
    for (auto& a : random_policy.actions) a = rng.range(0.0, config.h_max);
    double u = reslab::evaluate_policy(u01(), random_policy, config);
    CHECK(u <= u_star + 1e-6);
  }
}

TEST_CASE("widen family hits the requested sup-norm distance") {
  auto family_u = reslab::make_widen_family(u01());
  for (double eps : {0.0, 0.05, 0.2}) {
    double d = reslab::cdf_sup_distance(u01(), family_u(eps), 20001);
    CHECK(std::abs(d - eps) < 1e-4);
  }
  auto family_e = reslab::make_widen_family(exp1());
  for (double eps : {0.05, 0.2}) {
    double d = reslab::cdf_sup_distance(exp1(), family_e(eps), 20001);
    CHECK(std::abs(d - eps) < 1e-3);
  }
}

TEST_CASE("value of information regret curve") {
  auto config = small_config(0.6, 0.8);
  config.tol = 1e-6;
  auto family = reslab::make_widen_family(u01());
  auto curve = reslab::voi_curve(u01(), family, {0.0, 0.02, 0.05, 0.1}, config);
  REQUIRE(curve.size() == 4);
  CHECK(curve[0].regret == 0.0);  // same inputs, same deterministic pipeline
  for (const auto& point : curve) {
    CHECK(point.regret >= -config.tol);
  }
}
