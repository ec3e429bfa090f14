#pragma once

// Instance builders and random generators shared by the test suites.

#include <cstdint>
#include <random>
#include <vector>

#include "cac/core.hpp"

namespace cac::testing {

inline Population discoordination() {
  return Population({{AgentKind::Coordinating, 0}, {AgentKind::AntiCoordinating, 0}});
}

inline Population uniform_kind(AgentKind kind, std::size_t n, const Rational& threshold) {
  std::vector<AgentKind> kinds(n, kind);
  std::vector<Rational> rs(n, threshold);
  return Population::from_thresholds(kinds, rs);
}

// Coordination game with thresholds 0, 1/(n-1), ..., 1.
inline Population staircase_coordination(std::size_t n) {
  std::vector<AgentKind> kinds(n, AgentKind::Coordinating);
  std::vector<Rational> rs;
  for (std::size_t i = 0; i < n; ++i) rs.emplace_back(i, n - 1);
  return Population::from_thresholds(kinds, rs);
}

// Coordination game, n odd: the first (n-1)/2 agents at 1/2 - eps_i, the
// rest at 1/2 + eps_i, with every eps_i in [0, 1/(n-1)).
inline Population split_coordination(std::size_t n, const std::vector<Rational>& eps) {
  std::vector<AgentKind> kinds(n, AgentKind::Coordinating);
  std::vector<Rational> rs;
  for (std::size_t i = 0; i < n; ++i) {
    rs.push_back(i < (n - 1) / 2 ? Rational(1, 2) - eps[i] : Rational(1, 2) + eps[i]);
  }
  return Population::from_thresholds(kinds, rs);
}

inline Population anti19() {
  return uniform_kind(AgentKind::AntiCoordinating, 19, Rational(1, 2));
}

enum class KindMix { Any, Coordination, Anti, Mixed };

// Random weights: a third are exact ties (2m - (n-1) for some m, so the
// indifference case is reachable), the rest random fractions with small
// denominators over a range that includes stubborn agents.
inline Rational random_weight(std::mt19937_64& rng, std::size_t n) {
  const auto span = static_cast<long long>(n) + 1;
  std::uniform_int_distribution<int> pick(0, 2);
  if (pick(rng) == 0) {
    std::uniform_int_distribution<long long> m(0, static_cast<long long>(n) - 1);
    return Rational(2 * m(rng) - (static_cast<long long>(n) - 1));
  }
  static const long long dens[] = {1, 2, 3, 4, 6};
  std::uniform_int_distribution<int> di(0, 4);
  const long long q = dens[di(rng)];
  std::uniform_int_distribution<long long> p(-span * q, span * q);
  return Rational(p(rng), q);
}

inline Population random_population(std::mt19937_64& rng, std::size_t n, KindMix mix) {
  std::vector<Agent> agents;
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < n; ++i) {
    AgentKind kind;
    switch (mix) {
      case KindMix::Coordination:
        kind = AgentKind::Coordinating;
        break;
      case KindMix::Anti:
        kind = AgentKind::AntiCoordinating;
        break;
      default:
        kind = coin(rng) ? AgentKind::Coordinating : AgentKind::AntiCoordinating;
    }
    agents.push_back({kind, random_weight(rng, n)});
  }
  if (mix == KindMix::Mixed) {
    agents[0].kind = AgentKind::Coordinating;
    agents[1].kind = AgentKind::AntiCoordinating;
  }
  return Population(std::move(agents));
}

// Coordination game with every threshold in [0, 1] and no stubborn agent.
inline Population random_unstubborn_coordination(std::mt19937_64& rng, std::size_t n) {
  std::vector<AgentKind> kinds(n, AgentKind::Coordinating);
  std::vector<Rational> rs;
  std::uniform_int_distribution<long long> p(0, 60);
  for (std::size_t i = 0; i < n; ++i) rs.emplace_back(p(rng), 60);
  return Population::from_thresholds(kinds, rs);
}

}  // namespace cac::testing
