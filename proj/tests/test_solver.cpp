#include <doctest.h>

#include <random>
#include <set>

#include "cac/oracle.hpp"
#include "cac/solver.hpp"
#include "test_support.hpp"

using namespace cac;

namespace {

std::vector<Rational> solution_zs(const EquilibriumSet& set) {
  std::vector<Rational> zs;
  for (const auto& r : set.records) zs.push_back(r.triple.z());
  return zs;
}

std::set<std::string> solver_profiles(const Population& pop) {
  std::set<std::string> out;
  for (const auto& rec : solve_triples(pop).records) {
    enumerate_equilibria(pop, rec, [&](const ActionProfile& x) { out.insert(x.to_string()); },
                         {std::nullopt, true});
  }
  return out;
}

}  // namespace

TEST_CASE("binomial") {
  CHECK(binomial(19, 9) == 92378);
  CHECK(binomial(19, 10) == 92378);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(5, 6) == 0);
  CHECK(binomial(0, 0) == 1);
  // Pascal's rule against a table.
  for (std::size_t n = 1; n < 30; ++n) {
    for (std::size_t k = 1; k < n; ++k) {
      REQUIRE(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
  }
}

TEST_CASE("classify_game") {
  CHECK(classify_game(testing::uniform_kind(AgentKind::Coordinating, 3, 0)) ==
        GameClass::PureCoordination);
  CHECK(classify_game(testing::uniform_kind(AgentKind::AntiCoordinating, 3, 0)) ==
        GameClass::PureAntiCoordination);
  CHECK(classify_game(testing::discoordination()) == GameClass::Mixed);
}

TEST_CASE("discoordination has no solutions") {
  auto pop = testing::discoordination();
  auto set = solve_triples(pop);
  CHECK(set.records.empty());
  CHECK(count_equilibria(pop) == 0);
}

TEST_CASE("staircase coordination thresholds solve at every grid point") {
  for (std::size_t n : {2u, 5u, 10u}) {
    auto pop = testing::staircase_coordination(n);
    auto set = solve_triples(pop);
    REQUIRE(set.records.size() == n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      CHECK(set.records[k].triple.z() == Rational(k, n));
      CHECK(set.records[k].equilibrium_count == 1);
    }
    CHECK(count_equilibria(pop) == n + 1);
  }
}

TEST_CASE("split coordination thresholds keep only consensus") {
  const std::size_t n = 9;
  SUBCASE("all eps zero") {
    auto pop = testing::split_coordination(n, std::vector<Rational>(n, 0));
    CHECK(solution_zs(solve_triples(pop)) == std::vector<Rational>{0, 1});
  }
  SUBCASE("positive eps: a fixed point that is not a solution") {
    auto pop = testing::split_coordination(n, std::vector<Rational>(n, Rational(1, 16)));
    auto f = build_cdf(pop.thresholds());
    const Rational z(n - 1, 2 * n);
    CHECK(f.eval(Rational(n, n - 1) * z) == z);
    auto zs = solution_zs(solve_triples(pop));
    CHECK(zs == std::vector<Rational>{0, 1});
    CHECK_FALSE(solve_for_count(pop, (n - 1) / 2).has_value());
  }
}

TEST_CASE("constant-threshold anti-coordination") {
  auto pop = testing::anti19();
  auto set = solve_triples(pop);
  REQUIRE(solution_zs(set) == std::vector<Rational>{Rational(9, 19), Rational(10, 19)});
  for (const auto& r : set.records) {
    CHECK(r.free_anti == 19);
    CHECK(r.forced_plus_anti == 0);
    CHECK(r.equilibrium_count == 92378);
    // The two-point form: z_1 = G_a(b), z_2 = G_a^-(a).
    auto g = build_ccdf(pop.thresholds());
    const Rational z1 = g.eval(r.upper);
    const Rational z2 = g.eval_left(r.lower);
    CHECK(z1 == 0);
    CHECK(z2 == 1);
    CHECK(r.equilibrium_count == binomial(static_cast<std::size_t>(numerator(19 * (z2 - z1))),
                                          static_cast<std::size_t>(numerator(19 * (r.triple.z() - z1)))));
  }
  CHECK(set.total_count == 184756);
  CHECK(anti_first_crossing(build_ccdf(pop.thresholds()), 19) == Rational(9, 19));
}

TEST_CASE("anti_first_crossing with stubborn-high thresholds") {
  auto pop = testing::uniform_kind(AgentKind::AntiCoordinating, 5, Rational(3, 2));
  auto g = build_ccdf(pop.thresholds());
  CHECK(anti_first_crossing(g, 5) == 1);
  CHECK(solution_zs(solve_triples(pop)) == std::vector<Rational>{1});
}

TEST_CASE("construct_equilibrium") {
  SUBCASE("coordination consensus") {
    auto pop = testing::uniform_kind(AgentKind::Coordinating, 6, Rational(1, 3));
    auto set = solve_triples(pop);
    REQUIRE(set.records.back().triple.z() == 1);
    CHECK(construct_equilibrium(pop, set.records.back()) == ActionProfile::uniform(6, 1));
    CHECK(construct_equilibrium(pop, set.records.front()) == ActionProfile::uniform(6, -1));
  }
  SUBCASE("canonical fill uses the lowest free indices") {
    auto pop = testing::anti19();
    auto rec = solve_triples(pop).records.front();
    auto x = construct_equilibrium(pop, rec);
    CHECK(x.to_string() == "+++++++++----------");
    CHECK(is_nash(pop, x));
    CHECK(fractions(pop, x) == rec.triple);
  }
  SUBCASE("no freedom means one profile and idempotent construction") {
    auto pop = testing::staircase_coordination(6);
    for (const auto& rec : solve_triples(pop).records) {
      CHECK(rec.free_anti == 0);
      CHECK(construct_equilibrium(pop, rec) == construct_equilibrium(pop, rec));
      std::uint64_t seen = enumerate_equilibria(pop, rec, [](const ActionProfile&) {});
      CHECK(seen == 1);
    }
  }
  SUBCASE("foreign record is rejected") {
    auto rec = solve_triples(testing::anti19()).records.front();
    CHECK_THROWS_AS(construct_equilibrium(testing::staircase_coordination(19), rec),
                    RecordMismatch);
    auto other = testing::uniform_kind(AgentKind::AntiCoordinating, 19, Rational(1, 3));
    CHECK_THROWS_AS(construct_equilibrium(other, rec), RecordMismatch);
  }
}

TEST_CASE("enumeration order, limit and guard") {
  auto pop = testing::uniform_kind(AgentKind::AntiCoordinating, 5, Rational(1, 2));
  auto set = solve_triples(pop);
  REQUIRE(set.records.size() == 2);
  const auto& rec = set.records.front();  // z = 2/5, choose 2 of 5
  std::vector<std::string> seen;
  enumerate_equilibria(pop, rec, [&](const ActionProfile& x) { seen.push_back(x.to_string()); });
  const std::vector<std::string> expected{"++---", "+-+--", "+--+-", "+---+", "-++--",
                                          "-+-+-", "-+--+", "--++-", "--+-+", "---++"};
  CHECK(seen == expected);

  std::uint64_t limited = enumerate_equilibria(pop, rec, [](const ActionProfile&) {}, {3, false});
  CHECK(limited == 3);

  auto big = testing::uniform_kind(AgentKind::AntiCoordinating, 25, Rational(1, 2));
  auto big_rec = solve_triples(big).records.front();
  CHECK(big_rec.equilibrium_count > kEnumerationGuard);
  CHECK_THROWS_AS(EquilibriumEnumerator(big, big_rec), EnumerationTooLarge);
  EquilibriumEnumerator capped(big, big_rec, {10, false});
  int k = 0;
  while (auto x = capped.next()) {
    CHECK(is_nash(big, *x));
    ++k;
  }
  CHECK(k == 10);
}

TEST_CASE("solver matches brute force on random small instances") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 8);
    const auto mix = static_cast<testing::KindMix>(trial % 4);
    auto pop = testing::random_population(rng, n, mix);
    auto brute = brute_force_nash(pop);
    std::set<std::string> expected;
    std::set<FractionTriple, bool (*)(const FractionTriple&, const FractionTriple&)> triples(
        [](const FractionTriple& a, const FractionTriple& b) { return a.plus < b.plus; });
    for (const auto& x : brute.nash_profiles) {
      expected.insert(x.to_string());
      triples.insert(fractions(pop, x));
    }
    auto set = solve_triples(pop);
    REQUIRE(set.records.size() == triples.size());
    std::size_t j = 0;
    for (const auto& t : triples) REQUIRE(set.records[j++].triple == t);
    REQUIRE(solver_profiles(pop) == expected);
    REQUIRE(set.total_count == brute.count);
    for (const auto& rec : set.records) {
      auto x = construct_equilibrium(pop, rec);
      REQUIRE(is_nash(pop, x));
      REQUIRE(nash_condition_thresholds(pop, x));
      REQUIRE(fractions(pop, x) == rec.triple);
      REQUIRE(rec.needed_plus_among_free <= rec.free_anti);
      REQUIRE(rec.equilibrium_count >= 1);
    }
    REQUIRE(set.records.size() <= n + 1);
  }
}

TEST_CASE("pure anti-coordination: at most two solutions, first crossing among them") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 15);
    auto pop = testing::random_population(rng, n, testing::KindMix::Anti);
    auto set = solve_triples(pop);
    REQUIRE(set.records.size() >= 1);
    REQUIRE(set.records.size() <= 2);
    if (set.records.size() == 2) {
      REQUIRE(set.records[1].triple.plus == set.records[0].triple.plus + 1);
    }
    auto z = anti_first_crossing(build_ccdf(pop.thresholds()), n);
    REQUIRE(z == set.records.front().triple.z());
    // The count is 1 exactly when z* sits at an end of [z_1, z_2].
    for (const auto& rec : set.records) {
      const bool at_end = rec.needed_plus_among_free == 0 ||
                          rec.needed_plus_among_free == rec.free_anti;
      REQUIRE((rec.equilibrium_count == 1) == at_end);
    }
  }
}
