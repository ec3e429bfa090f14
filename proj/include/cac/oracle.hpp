#pragma once

// Ground truth by exhaustion: every profile, every unilateral deviation.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cac/core.hpp"

namespace cac {

class SizeLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleReport {
  std::vector<ActionProfile> nash_profiles;  // empty in count-only mode
  std::uint64_t count = 0;
  std::chrono::nanoseconds elapsed{0};
};

struct OracleOptions {
  std::size_t max_n = 20;
  bool count_only = false;
  // Contiguous mask ranges are scanned on this many threads.
  unsigned threads = 1;
};

// Scans all 2^n profiles. Profiles are reported in ascending mask order,
// agent i being bit i.
OracleReport brute_force_nash(const Population& pop, OracleOptions options = {});

// Phi_c(x) = 1/2 sum_{i != j} x_i x_j - sum_i d_i x_i.
Rational potential_value_coord(const Population& pop, const ActionProfile& x);
// Phi_a = -Phi_c.
Rational potential_value_anti(const Population& pop, const ActionProfile& x);

enum class PotentialKind { Coordination, AntiCoordination };

inline constexpr std::size_t kPotentialCheckMaxN = 12;

// Whether every unilateral utility change equals the change of the chosen
// potential. The overload without a kind picks Phi_c for coordination and
// Phi_a for anti-coordination games, Phi_c for mixed ones.
bool verify_exact_potential(const Population& pop, PotentialKind kind,
                            std::size_t max_n = kPotentialCheckMaxN);
bool verify_exact_potential(const Population& pop, std::size_t max_n = kPotentialCheckMaxN);

// Path-independence test for an exact potential: around every four-cycle
// of two agents flipping, the deviating players' utility changes sum to zero.
bool four_cycle_potential_test(const Population& pop, std::size_t max_n = kPotentialCheckMaxN);

}  // namespace cac
