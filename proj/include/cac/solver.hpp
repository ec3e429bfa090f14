#pragma once

// Characterization of pure Nash equilibria through fraction triples.
//
// Fix the number k of agents playing +1 and let a = (k-1)/(n-1) and
// b = k/(n-1). An agent at +1 sees k-1 others at +1, an agent at -1 sees k.
// A profile with k agents at +1 is an equilibrium iff
//   * coordinating agents with r <= a play +1, those with r >= b play -1,
//     and no coordinating threshold lies strictly inside (a, b);
//   * anti-coordinating agents with r < a play -1, those with r > b play +1,
//     and those with a <= r <= b (the free ones) may play either;
//   * the counts add up to k.
// In distribution terms: F_c(a) = F_c^-(b) fixes z_c, and
// G_a^-(a) >= z_a >= G_a(b) bounds z_a. Each feasible k yields one
// SolutionRecord and C(free, needed) equilibria.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cac/core.hpp"
#include "cac/distribution.hpp"
#include "cac/rational.hpp"

namespace cac {

enum class GameClass { PureCoordination, PureAntiCoordination, Mixed };

std::string_view to_string(GameClass c);

GameClass classify_game(const Population& pop);

struct SolutionRecord {
  FractionTriple triple;
  // (k-1)/(n-1) and k/(n-1) with k = n z*.
  Rational lower;
  Rational upper;
  std::size_t forced_plus_anti = 0;
  std::size_t free_anti = 0;
  std::size_t needed_plus_among_free = 0;
  BigInt equilibrium_count;

  friend bool operator==(const SolutionRecord&, const SolutionRecord&) = default;
};

struct EquilibriumSet {
  std::vector<SolutionRecord> records;  // ascending z*
  BigInt total_count;
};

// The record for exactly k agents at +1, if that count admits an
// equilibrium.
std::optional<SolutionRecord> solve_for_count(const Population& pop, std::size_t k);

EquilibriumSet solve_triples(const Population& pop);

class RecordMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The canonical equilibrium of a record: free anti-coordinating agents are
// filled with +1 in ascending index order.
ActionProfile construct_equilibrium(const Population& pop, const SolutionRecord& rec);

class EnumerationTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerateOptions {
  std::optional<std::uint64_t> limit;
  // Allow streams longer than kEnumerationGuard without a limit.
  bool allow_large = false;
};

inline constexpr std::uint64_t kEnumerationGuard = 1'000'000;

// Streams every equilibrium of a record. Free agents receiving +1 are
// chosen as index subsets in lexicographic order.
class EquilibriumEnumerator {
 public:
  EquilibriumEnumerator(const Population& pop, const SolutionRecord& rec,
                        EnumerateOptions options = {});

  std::optional<ActionProfile> next();
  std::uint64_t emitted() const { return emitted_; }

 private:
  ActionProfile base_;
  std::vector<std::size_t> free_;  // indices of the free anti agents
  std::vector<std::size_t> choice_;  // positions into free_
  std::optional<std::uint64_t> limit_;
  std::uint64_t emitted_ = 0;
  bool done_ = false;
};

// Calls `visit` for each equilibrium; returns how many were visited.
std::uint64_t enumerate_equilibria(const Population& pop, const SolutionRecord& rec,
                                   const std::function<void(const ActionProfile&)>& visit,
                                   EnumerateOptions options = {});

BigInt count_equilibria(const Population& pop);

// Smallest z* on the grid {0, 1/n, ..., 1} where the bisector first reaches
// the CCDF: z* - 1/n < G_a(n/(n-1)(z* - 1/n)) and z* >= G_a(n/(n-1) z*).
// Intended for pure anti-coordination games, where it is always a solution.
Rational anti_first_crossing(const StepFunction& ccdf, std::size_t n);

BigInt binomial(std::size_t n, std::size_t k);

}  // namespace cac
