#include <doctest.h>

#include <random>

#include "cac/dynamics.hpp"
#include "cac/solver.hpp"
#include "test_support.hpp"

using namespace cac;

TEST_CASE("bounded draws are uniform and reproducible") {
  Rng a(42);
  Rng b(42);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 70'000; ++i) {
    const auto v = a.uniform_index(7);
    REQUIRE(v == b.uniform_index(7));
    ++hist[v];
  }
  for (int h : hist) CHECK(std::abs(h - 10'000) < 500);
  // First draws of mt19937_64 seeded with 42, reduced mod 10.
  std::mt19937_64 reference(42);
  Rng c(42);
  for (int i = 0; i < 5; ++i) CHECK(c.uniform_index(10) == reference() % 10);
}

TEST_CASE("a Nash profile is fixed under both schedules") {
  auto pop = testing::uniform_kind(AgentKind::Coordinating, 6, Rational(1, 2));
  auto x = ActionProfile::uniform(6, 1);
  Rng rng(1);
  for (int i = 0; i < 20; ++i) CHECK(step_async(pop, x, rng).profile == x);
  CHECK(step_sync(pop, x) == x);
  auto result = run(pop, x, Synchronous{});
  REQUIRE(std::holds_alternative<ConvergedToNash>(result.outcome));
  CHECK(std::get<ConvergedToNash>(result.outcome).steps == 0);
}

TEST_CASE("sync fixed points are exactly the Nash profiles") {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 8);
    auto pop = testing::random_population(gen, n, testing::KindMix::Any);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      auto x = ActionProfile::from_mask(m, n);
      REQUIRE((step_sync(pop, x) == x) == is_nash(pop, x));
    }
  }
}

TEST_CASE("constant-threshold anti-coordination oscillates under sync updates") {
  auto pop = testing::uniform_kind(AgentKind::AntiCoordinating, 8, Rational(1, 2));
  auto up = ActionProfile::uniform(8, 1);
  auto down = ActionProfile::uniform(8, -1);
  CHECK(step_sync(pop, up) == down);
  CHECK(step_sync(pop, down) == up);
  auto result = run(pop, up, Synchronous{}, {1000, true});
  REQUIRE(std::holds_alternative<CycleDetected>(result.outcome));
  CHECK(std::get<CycleDetected>(result.outcome).period == 2);
}

TEST_CASE("discoordination never settles") {
  auto pop = testing::discoordination();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto result = run(pop, ActionProfile::parse("+-"), Asynchronous{seed}, {1000, true});
    CHECK(std::holds_alternative<StepLimit>(result.outcome));
    CHECK(result.trajectory.size() == 1001);
  }
  auto sync = run(pop, ActionProfile::parse("++"), Synchronous{}, {1000, true});
  CHECK(std::holds_alternative<CycleDetected>(sync.outcome));
}

TEST_CASE("async runs are reproducible and converge on coordination games") {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 50;
    std::vector<Agent> agents;
    std::uniform_int_distribution<long long> w(-49, 49);
    for (std::size_t i = 0; i < n; ++i) agents.push_back({AgentKind::Coordinating, Rational(w(gen))});
    Population pop(std::move(agents));
    auto x0 = ActionProfile::from_mask(gen(), n);
    auto a = run(pop, x0, Asynchronous{static_cast<std::uint64_t>(trial)});
    auto b = run(pop, x0, Asynchronous{static_cast<std::uint64_t>(trial)});
    REQUIRE(std::holds_alternative<ConvergedToNash>(a.outcome));
    const auto& c = std::get<ConvergedToNash>(a.outcome);
    CHECK(c.steps == std::get<ConvergedToNash>(b.outcome).steps);
    CHECK(c.profile == std::get<ConvergedToNash>(b.outcome).profile);
    CHECK(a.trajectory.size() == b.trajectory.size());
    CHECK(is_nash(pop, c.profile));
    CHECK(a.rng_algorithm == Rng::kAlgorithm);
    // The terminal triple is one of the solver's.
    CHECK(solve_for_count(pop, c.profile.plus_count()).has_value());
  }
}

TEST_CASE("run validates its inputs") {
  auto pop = testing::discoordination();
  CHECK_THROWS_AS(run(pop, ActionProfile::parse("+-+"), Synchronous{}), std::invalid_argument);
  CHECK_THROWS_AS(run(pop, ActionProfile::parse("+-"), Synchronous{}, {0, true}),
                  std::invalid_argument);
}
