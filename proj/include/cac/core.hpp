#pragma once

// Game semantics for mixed coordination/anti-coordination threshold games on
// the complete graph. Every agent observes only how many of the other n-1
// agents play +1; coordinating agents want to follow that majority once it
// clears their threshold, anti-coordinating agents want to oppose it.
//
// Everything here is exact. Weights and thresholds are rationals and every
// best-response decision is a rational sign test.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cac/rational.hpp"

namespace cac {

class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class AgentKind : std::int8_t { Coordinating = +1, AntiCoordinating = -1 };

// +1 for coordinating, -1 for anti-coordinating.
constexpr int delta(AgentKind kind) { return static_cast<int>(kind); }

std::string_view to_string(AgentKind kind);

struct Agent {
  AgentKind kind;
  Rational weight;
};

// r = 1/2 + d / (2(n-1)).
Rational threshold_of(const Rational& weight, std::size_t n);
// d = (2r - 1)(n - 1).
Rational weight_of(const Rational& threshold, std::size_t n);

class Population {
 public:
  explicit Population(std::vector<Agent> agents);

  // Builds a population from thresholds instead of weights.
  static Population from_thresholds(std::span<const AgentKind> kinds,
                                    std::span<const Rational> thresholds);

  std::size_t size() const { return agents_.size(); }
  std::size_t coordinating_count() const { return n_coord_; }
  std::size_t anti_count() const { return agents_.size() - n_coord_; }
  // Fraction of coordinating agents, n_c / n.
  Rational alpha() const;

  const Agent& agent(std::size_t i) const { return agents_.at(i); }
  AgentKind kind(std::size_t i) const { return agents_.at(i).kind; }
  const Rational& weight(std::size_t i) const { return agents_.at(i).weight; }
  const Rational& threshold(std::size_t i) const { return thresholds_.at(i); }

  std::span<const Agent> agents() const { return agents_; }
  std::span<const Rational> thresholds() const { return thresholds_; }

  // Thresholds of one kind, in index order.
  std::vector<Rational> thresholds_of(AgentKind kind) const;

 private:
  std::vector<Agent> agents_;
  std::vector<Rational> thresholds_;
  std::size_t n_coord_ = 0;
};

// A configuration of actions, one of {-1, +1} per agent.
class ActionProfile {
 public:
  ActionProfile() = default;
  explicit ActionProfile(std::vector<std::int8_t> actions);

  static ActionProfile uniform(std::size_t n, int action);
  // Bit i of mask set means agent i plays +1.
  static ActionProfile from_mask(std::uint64_t mask, std::size_t n);
  // "+-+-" or "1,-1,1,-1".
  static ActionProfile parse(std::string_view text);

  std::size_t size() const { return actions_.size(); }
  int operator[](std::size_t i) const { return actions_[i]; }
  int at(std::size_t i) const { return actions_.at(i); }
  void set(std::size_t i, int action);
  void flip(std::size_t i) { actions_.at(i) = static_cast<std::int8_t>(-actions_.at(i)); }

  std::size_t plus_count() const;
  std::span<const std::int8_t> actions() const { return actions_; }

  // "+" / "-" per agent.
  std::string to_string() const;

  friend bool operator==(const ActionProfile&, const ActionProfile&) = default;

 private:
  std::vector<std::int8_t> actions_;
};

// Shares of +1 players in the population and in each class. The exact
// counts are kept alongside; a class fraction is absent when the class is
// empty.
struct FractionTriple {
  std::size_t n = 0;
  std::size_t n_coord = 0;
  std::size_t n_anti = 0;
  std::size_t plus = 0;
  std::size_t plus_coord = 0;
  std::size_t plus_anti = 0;

  Rational z() const { return Rational(plus, n); }
  std::optional<Rational> z_coord() const;
  std::optional<Rational> z_anti() const;

  friend bool operator==(const FractionTriple&, const FractionTriple&) = default;
};

// The best-response set B_i as a pair of membership flags; never empty.
struct BestResponse {
  bool plus = false;
  bool minus = false;

  bool contains(int action) const { return action > 0 ? plus : minus; }
  bool indifferent() const { return plus && minus; }
  friend bool operator==(const BestResponse&, const BestResponse&) = default;
};

Rational utility(const Population& pop, const ActionProfile& x, std::size_t i);

std::size_t count_plus_others(const ActionProfile& x, std::size_t i);

// Sign of delta_i (2 m - (n-1) - d_i) where m counts the other agents at +1.
// Positive means +1 is the unique best response.
int response_sign(const Population& pop, std::size_t i, std::size_t plus_others);

BestResponse best_response(const Population& pop, const ActionProfile& x, std::size_t i);

// The action an agent plays no matter what the others do, if any.
std::optional<int> stubborn_action(const Population& pop, std::size_t i);

FractionTriple fractions(const Population& pop, const ActionProfile& x);

bool is_nash(const Population& pop, const ActionProfile& x);

// First agent whose action is not a best response.
std::optional<std::size_t> first_deviator(const Population& pop, const ActionProfile& x);

// Nash test phrased through thresholds and the renormalized fraction
// n^+(x)/(n-1). Coordinating agents at +1 need r_i <= z~ - 1/(n-1), at -1
// need r_i >= z~; anti-coordinating agents at +1 need r_i >= z~ - 1/(n-1),
// at -1 need r_i <= z~. Kept independent of best_response as a cross-check.
bool nash_condition_thresholds(const Population& pop, const ActionProfile& x);

// Precomputed response signs for every agent and every count of others at
// +1, for hot loops (exhaustive search, dynamics). O(n^2) memory.
class ResponseTable {
 public:
  explicit ResponseTable(const Population& pop);

  std::size_t size() const { return n_; }
  int sign(std::size_t i, std::size_t plus_others) const {
    return signs_[i * n_ + plus_others];
  }
  // Whether action is a best response when `plus_total` agents (including
  // agent i itself when it plays +1) are at +1.
  bool is_best(std::size_t i, int action, std::size_t plus_total) const {
    int s = action > 0 ? sign(i, plus_total - 1) : sign(i, plus_total);
    return action > 0 ? s >= 0 : s <= 0;
  }

 private:
  std::size_t n_;
  std::vector<std::int8_t> signs_;
};

}  // namespace cac
