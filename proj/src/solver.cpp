#include "cac/solver.hpp"

#include <algorithm>

namespace cac {

std::string_view to_string(GameClass c) {
  switch (c) {
    case GameClass::PureCoordination:
      return "coordination";
    case GameClass::PureAntiCoordination:
      return "anti-coordination";
    case GameClass::Mixed:
      return "mixed";
  }
  return "unknown";
}

GameClass classify_game(const Population& pop) {
  if (pop.anti_count() == 0) return GameClass::PureCoordination;
  if (pop.coordinating_count() == 0) return GameClass::PureAntiCoordination;
  return GameClass::Mixed;
}

BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

namespace {

// Step functions of both classes, absent for an empty class.
struct ClassDistributions {
  std::optional<StepFunction> coord_cdf;
  std::optional<StepFunction> anti_ccdf;

  explicit ClassDistributions(const Population& pop) {
    if (pop.coordinating_count() > 0) {
      coord_cdf = build_cdf(pop.thresholds_of(AgentKind::Coordinating));
    }
    if (pop.anti_count() > 0) {
      anti_ccdf = build_ccdf(pop.thresholds_of(AgentKind::AntiCoordinating));
    }
  }
};

std::optional<SolutionRecord> solve_with(const Population& pop, const ClassDistributions& dist,
                                         std::size_t k) {
  const std::size_t n = pop.size();
  const Rational lower(static_cast<long long>(k) - 1, static_cast<long long>(n - 1));
  const Rational upper(k, n - 1);

  std::size_t plus_coord = 0;
  if (dist.coord_cdf) {
    plus_coord = dist.coord_cdf->count_at(lower);
    // F_c must be flat on [lower, upper).
    if (dist.coord_cdf->count_left(upper) != plus_coord) return std::nullopt;
  }
  if (plus_coord > k) return std::nullopt;
  const std::size_t plus_anti = k - plus_coord;

  std::size_t forced = 0;
  std::size_t reachable = 0;
  if (dist.anti_ccdf) {
    forced = dist.anti_ccdf->count_at(upper);     // r > upper
    reachable = dist.anti_ccdf->count_left(lower);  // r >= lower
  }
  if (plus_anti < forced || plus_anti > reachable) return std::nullopt;

  SolutionRecord rec;
  rec.triple.n = n;
  rec.triple.n_coord = pop.coordinating_count();
  rec.triple.n_anti = pop.anti_count();
  rec.triple.plus = k;
  rec.triple.plus_coord = plus_coord;
  rec.triple.plus_anti = plus_anti;
  rec.lower = lower;
  rec.upper = upper;
  rec.forced_plus_anti = forced;
  rec.free_anti = reachable - forced;
  rec.needed_plus_among_free = plus_anti - forced;
  rec.equilibrium_count = binomial(rec.free_anti, rec.needed_plus_among_free);
  return rec;
}

}  // namespace

std::optional<SolutionRecord> solve_for_count(const Population& pop, std::size_t k) {
  if (k > pop.size()) return std::nullopt;
  return solve_with(pop, ClassDistributions(pop), k);
}

EquilibriumSet solve_triples(const Population& pop) {
  const ClassDistributions dist(pop);
  EquilibriumSet out;
  out.total_count = 0;
  for (std::size_t k = 0; k <= pop.size(); ++k) {
    if (auto rec = solve_with(pop, dist, k)) {
      out.total_count += rec->equilibrium_count;
      out.records.push_back(std::move(*rec));
    }
  }
  return out;
}

namespace {

void check_record(const Population& pop, const SolutionRecord& rec) {
  if (rec.triple.n != pop.size() || rec.triple.n_coord != pop.coordinating_count()) {
    throw RecordMismatch("solution record belongs to a different population");
  }
  auto fresh = solve_for_count(pop, rec.triple.plus);
  if (!fresh || !(*fresh == rec)) {
    throw RecordMismatch("solution record is not a solution of this population");
  }
}

// Profile with every determined agent set; free agents start at -1.
ActionProfile determined_part(const Population& pop, const SolutionRecord& rec,
                              std::vector<std::size_t>* free) {
  auto x = ActionProfile::uniform(pop.size(), -1);
  for (std::size_t i = 0; i < pop.size(); ++i) {
    const Rational& r = pop.threshold(i);
    if (pop.kind(i) == AgentKind::Coordinating) {
      if (r <= rec.lower) x.set(i, 1);
    } else if (r > rec.upper) {
      x.set(i, 1);
    } else if (r >= rec.lower && free) {
      free->push_back(i);
    }
  }
  return x;
}

}  // namespace

ActionProfile construct_equilibrium(const Population& pop, const SolutionRecord& rec) {
  check_record(pop, rec);
  std::vector<std::size_t> free;
  auto x = determined_part(pop, rec, &free);
  for (std::size_t j = 0; j < rec.needed_plus_among_free; ++j) x.set(free[j], 1);
  return x;
}

EquilibriumEnumerator::EquilibriumEnumerator(const Population& pop, const SolutionRecord& rec,
                                             EnumerateOptions options)
    : limit_(options.limit) {
  check_record(pop, rec);
  if (!limit_ && !options.allow_large && rec.equilibrium_count > kEnumerationGuard) {
    throw EnumerationTooLarge("record has " + to_string(rec.equilibrium_count) +
                              " equilibria; pass a limit or allow large enumerations");
  }
  base_ = determined_part(pop, rec, &free_);
  choice_.resize(rec.needed_plus_among_free);
  for (std::size_t j = 0; j < choice_.size(); ++j) choice_[j] = j;
}

std::optional<ActionProfile> EquilibriumEnumerator::next() {
  if (done_ || (limit_ && emitted_ >= *limit_)) return std::nullopt;
  ActionProfile x = base_;
  for (std::size_t p : choice_) x.set(free_[p], 1);
  ++emitted_;

  // Advance to the next combination in lexicographic order.
  const std::size_t m = free_.size();
  const std::size_t r = choice_.size();
  std::size_t j = r;
  while (j > 0 && choice_[j - 1] == m - r + j - 1) --j;
  if (j == 0) {
    done_ = true;
  } else {
    ++choice_[j - 1];
    for (std::size_t t = j; t < r; ++t) choice_[t] = choice_[t - 1] + 1;
  }
  return x;
}

std::uint64_t enumerate_equilibria(const Population& pop, const SolutionRecord& rec,
                                   const std::function<void(const ActionProfile&)>& visit,
                                   EnumerateOptions options) {
  EquilibriumEnumerator it(pop, rec, options);
  while (auto x = it.next()) visit(*x);
  return it.emitted();
}

BigInt count_equilibria(const Population& pop) { return solve_triples(pop).total_count; }

Rational anti_first_crossing(const StepFunction& ccdf, std::size_t n) {
  if (n < 2) throw InvalidInstance("a game needs at least two agents");
  for (std::size_t k = 0; k <= n; ++k) {
    const Rational z(k, n);
    const Rational lower(static_cast<long long>(k) - 1, static_cast<long long>(n - 1));
    const Rational upper(k, n - 1);
    if (z - Rational(1, n) < ccdf.eval(lower) && z >= ccdf.eval(upper)) return z;
  }
  // Unreachable for a CCDF: at z = 1 the bisector lies on or above it.
  throw std::logic_error("no crossing found");
}

}  // namespace cac
