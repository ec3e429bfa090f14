#include <doctest.h>

#include <random>

#include "cac/distribution.hpp"

using namespace cac;

TEST_CASE("single jump is right-continuous") {
  std::vector<Rational> t{Rational(1, 2)};
  auto f = build_cdf(t);
  CHECK(f.eval(Rational(2, 5)) == 0);
  CHECK(f.eval(Rational(1, 2)) == 1);
  CHECK(f.eval_left(Rational(1, 2)) == 0);
}

TEST_CASE("cdf counts thresholds at or below") {
  std::vector<Rational> t{0, Rational(1, 2), 1};
  auto f = build_cdf(t);
  CHECK(f.eval(Rational(1, 2)) == Rational(2, 3));
  CHECK(f.eval(-1) == 0);
  CHECK(f.eval(1) == 1);
}

TEST_CASE("staircase thresholds give n jumps of 1/n") {
  const std::size_t n = 10;
  std::vector<Rational> t;
  for (std::size_t i = 0; i < n; ++i) t.emplace_back(i, n - 1);
  auto f = build_cdf(t);
  CHECK(f.jumps().size() == n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational at(i, n - 1);
    CHECK(f.eval(at) - f.eval_left(at) == Rational(1, n));
  }
}

TEST_CASE("ccdf of constant thresholds") {
  std::vector<Rational> t(19, Rational(1, 2));
  auto g = build_ccdf(t);
  CHECK(g.eval(Rational(49, 100)) == 1);
  CHECK(g.eval(Rational(1, 2)) == 0);
  CHECK(g.eval_left(Rational(1, 2)) == 1);
  CHECK(g.eval(-1000) == 1);
  CHECK(g.denominator() == 19);
}

TEST_CASE("empty multiset is rejected") {
  std::vector<Rational> none;
  CHECK_THROWS_AS(build_cdf(none), EmptyPopulation);
  CHECK_THROWS_AS(build_ccdf(none), EmptyPopulation);
}

namespace {

std::vector<Rational> random_thresholds(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(1, 15);
  std::uniform_int_distribution<long long> num(-12, 24);
  std::uniform_int_distribution<long long> den(1, 6);
  std::vector<Rational> t(static_cast<std::size_t>(size(rng)));
  for (auto& r : t) r = Rational(num(rng), den(rng));
  return t;
}

}  // namespace

TEST_CASE("step function properties on random multisets") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = random_thresholds(rng);
    const auto f = build_cdf(t);
    const auto g = build_ccdf(t);
    REQUIRE(f.complement().eval(Rational(1, 3)) == g.eval(Rational(1, 3)));

    // Probe points: every jump, midpoints between jumps, and beyond both ends.
    std::vector<Rational> probes{f.jumps().front() - 1, f.jumps().back() + 1};
    Rational min_gap = 1;
    for (std::size_t j = 0; j < f.jumps().size(); ++j) {
      probes.push_back(f.jumps()[j]);
      if (j > 0) {
        probes.push_back((f.jumps()[j] + f.jumps()[j - 1]) / 2);
        min_gap = std::min(min_gap, f.jumps()[j] - f.jumps()[j - 1]);
      }
    }
    std::sort(probes.begin(), probes.end());
    Rational prev_f = -1;
    Rational prev_g = 2;
    for (const auto& z : probes) {
      std::size_t le = 0;
      std::size_t lt = 0;
      for (const auto& r : t) {
        le += r <= z;
        lt += r < z;
      }
      const Rational denom(t.size());
      REQUIRE(f.eval(z) == Rational(le) / denom);
      REQUIRE(f.eval_left(z) == Rational(lt) / denom);
      REQUIRE(f.eval(z) + g.eval(z) == 1);
      REQUIRE(f.eval_left(z) <= f.eval(z));
      REQUIRE(g.eval_left(z) >= g.eval(z));
      REQUIRE(f.eval(z) >= prev_f);
      REQUIRE(g.eval(z) <= prev_g);
      prev_f = f.eval(z);
      prev_g = g.eval(z);
      // Left limit equals the value a bit to the left.
      const Rational eps = min_gap / 3;
      REQUIRE(f.eval_left(z) == f.eval(z - eps));
      REQUIRE(g.eval_left(z) == g.eval(z - eps));
    }

    // Flatness test: constant on [a, b) iff eval(a) == eval_left(b).
    for (std::size_t p = 0; p + 1 < probes.size(); ++p) {
      const Rational& a = probes[p];
      const Rational& b = probes[p + 1];
      if (a == b) continue;
      bool jump_inside = false;
      for (const auto& r : t) jump_inside = jump_inside || (r > a && r < b);
      REQUIRE((f.eval(a) == f.eval_left(b)) == !jump_inside);
    }
  }
}

TEST_CASE("plot points show both sides of each jump") {
  std::vector<Rational> t(3, Rational(1, 2));
  auto g = build_ccdf(t);
  auto pts = g.plot_points(0, 1);
  REQUIRE(pts.size() == 4);
  CHECK(pts[0] == std::pair<Rational, Rational>{0, 1});
  CHECK(pts[1] == std::pair<Rational, Rational>{Rational(1, 2), 1});
  CHECK(pts[2] == std::pair<Rational, Rational>{Rational(1, 2), 0});
  CHECK(pts[3] == std::pair<Rational, Rational>{1, 0});

  auto samples = g.sample(0, 1, 4);
  REQUIRE(samples.size() == 5);
  CHECK(samples[2].second == 0);
  CHECK(samples[1].second == 1);
}
