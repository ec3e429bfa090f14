#pragma once

// Best-response dynamics. An agent that is indifferent keeps its action, so
// the fixed points of either schedule are exactly the Nash equilibria.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "cac/core.hpp"

namespace cac {

// mt19937_64 with unbiased bounded draws by rejection, so a seed gives the
// same activation sequence on any standard library.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64+rejection";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on {0, ..., bound - 1}.
  std::size_t uniform_index(std::size_t bound);

 private:
  std::mt19937_64 engine_;
};

struct AsyncStep {
  ActionProfile profile;
  std::size_t activated;
};

AsyncStep step_async(const Population& pop, ActionProfile x, Rng& rng);

ActionProfile step_sync(const Population& pop, const ActionProfile& x);

struct Asynchronous {
  std::uint64_t seed = 0;
};
struct Synchronous {};
using Schedule = std::variant<Asynchronous, Synchronous>;

struct TrajectoryPoint {
  std::uint64_t step;
  Rational z;
  std::optional<std::size_t> activated;
};

struct ConvergedToNash {
  ActionProfile profile;
  std::uint64_t steps;
};
struct CycleDetected {
  std::uint64_t period;
};
struct StepLimit {};
using DynamicsOutcome = std::variant<ConvergedToNash, CycleDetected, StepLimit>;

struct DynamicsRun {
  Schedule schedule;
  std::string rng_algorithm;
  std::vector<TrajectoryPoint> trajectory;
  DynamicsOutcome outcome;
  ActionProfile final_profile;
};

struct RunOptions {
  std::uint64_t step_limit = 100'000;
  // Record the fraction after every step; otherwise only the endpoints.
  bool record_trajectory = true;
};

// Async steps are single activations; sync steps update everyone at once.
// A sync run that revisits a profile stops with the cycle's period.
DynamicsRun run(const Population& pop, ActionProfile x0, const Schedule& schedule,
                RunOptions options = {});

std::string describe(const DynamicsOutcome& outcome);

}  // namespace cac
