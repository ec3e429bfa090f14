#include "cac/dynamics.hpp"

#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace cac {

std::size_t Rng::uniform_index(std::size_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  const std::uint64_t b = bound;
  // Largest multiple of b representable; draws at or above it are rejected.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % b;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return static_cast<std::size_t>(v % b);
}

namespace {

// Keep-on-indifference best response given the current total at +1.
int respond(const ResponseTable& table, std::size_t i, int current, std::size_t plus_total) {
  const std::size_t others = plus_total - (current > 0 ? 1 : 0);
  const int s = table.sign(i, others);
  return s == 0 ? current : s;
}

bool table_nash(const ResponseTable& table, const ActionProfile& x, std::size_t plus) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!table.is_best(i, x[i], plus)) return false;
  }
  return true;
}

void check_profile(const Population& pop, const ActionProfile& x) {
  if (x.size() != pop.size()) {
    throw std::invalid_argument("initial profile has " + std::to_string(x.size()) +
                                " actions for " + std::to_string(pop.size()) + " agents");
  }
}

struct ProfileHash {
  std::size_t operator()(const ActionProfile& x) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto a : x.actions()) h = (h ^ static_cast<std::size_t>(a & 0xff)) * 1099511628211ULL;
    return h;
  }
};

}  // namespace

AsyncStep step_async(const Population& pop, ActionProfile x, Rng& rng) {
  check_profile(pop, x);
  const std::size_t i = rng.uniform_index(pop.size());
  const int s = response_sign(pop, i, count_plus_others(x, i));
  if (s != 0) x.set(i, s);
  return {std::move(x), i};
}

ActionProfile step_sync(const Population& pop, const ActionProfile& x) {
  check_profile(pop, x);
  const std::size_t plus = x.plus_count();
  ActionProfile next = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int s = response_sign(pop, i, plus - (x[i] > 0 ? 1 : 0));
    if (s != 0) next.set(i, s);
  }
  return next;
}

DynamicsRun run(const Population& pop, ActionProfile x0, const Schedule& schedule,
                RunOptions options) {
  check_profile(pop, x0);
  if (options.step_limit < 1) throw std::invalid_argument("step limit must be at least 1");

  const ResponseTable table(pop);
  const std::size_t n = pop.size();
  DynamicsRun result{schedule, "", {}, StepLimit{}, {}};
  ActionProfile x = std::move(x0);
  std::size_t plus = x.plus_count();
  result.trajectory.push_back({0, Rational(plus, n), std::nullopt});

  auto finish = [&](DynamicsOutcome outcome, std::uint64_t step,
                    std::optional<std::size_t> activated) {
    if (!options.record_trajectory && step > 0) {
      result.trajectory.push_back({step, Rational(plus, n), activated});
    }
    result.outcome = std::move(outcome);
    result.final_profile = x;
    return result;
  };

  if (table_nash(table, x, plus)) return finish(ConvergedToNash{x, 0}, 0, std::nullopt);

  if (const auto* async = std::get_if<Asynchronous>(&schedule)) {
    result.rng_algorithm = Rng::kAlgorithm;
    Rng rng(async->seed);
    for (std::uint64_t step = 1; step <= options.step_limit; ++step) {
      const std::size_t i = rng.uniform_index(n);
      const int next = respond(table, i, x[i], plus);
      const bool changed = next != x[i];
      if (changed) {
        x.set(i, next);
        plus = next > 0 ? plus + 1 : plus - 1;
      }
      if (options.record_trajectory) result.trajectory.push_back({step, Rational(plus, n), i});
      // Nash status can only change when the profile does.
      if (changed && table_nash(table, x, plus)) return finish(ConvergedToNash{x, step}, step, i);
      if (step == options.step_limit) return finish(StepLimit{}, step, i);
    }
  } else {
    std::unordered_map<ActionProfile, std::uint64_t, ProfileHash> seen;
    seen.emplace(x, 0);
    for (std::uint64_t step = 1; step <= options.step_limit; ++step) {
      ActionProfile next = x;
      for (std::size_t i = 0; i < n; ++i) next.set(i, respond(table, i, x[i], plus));
      const bool fixed = next == x;
      x = std::move(next);
      plus = x.plus_count();
      if (options.record_trajectory) {
        result.trajectory.push_back({step, Rational(plus, n), std::nullopt});
      }
      if (fixed) return finish(ConvergedToNash{x, step - 1}, step, std::nullopt);
      auto [it, inserted] = seen.emplace(x, step);
      if (!inserted) return finish(CycleDetected{step - it->second}, step, std::nullopt);
      if (step == options.step_limit) return finish(StepLimit{}, step, std::nullopt);
    }
  }
  return finish(StepLimit{}, options.step_limit, std::nullopt);
}

std::string describe(const DynamicsOutcome& outcome) {
  if (const auto* c = std::get_if<ConvergedToNash>(&outcome)) {
    return "converged to Nash after " + std::to_string(c->steps) + " steps: " +
           c->profile.to_string();
  }
  if (const auto* c = std::get_if<CycleDetected>(&outcome)) {
    return "cycle detected with period " + std::to_string(c->period);
  }
  return "step limit reached";
}

}  // namespace cac
