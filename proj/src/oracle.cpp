#include "cac/oracle.hpp"

#include <bit>
#include <thread>

#include "cac/solver.hpp"

namespace cac {

namespace {

struct Chunk {
  std::vector<ActionProfile> profiles;
  std::uint64_t count = 0;
};

void scan(const ResponseTable& table, std::size_t n, std::uint64_t begin, std::uint64_t end,
          bool count_only, Chunk& out) {
  for (std::uint64_t mask = begin; mask < end; ++mask) {
    const auto plus = static_cast<std::size_t>(std::popcount(mask));
    bool nash = true;
    for (std::size_t i = 0; i < n && nash; ++i) {
      const int action = (mask >> i) & 1U ? 1 : -1;
      nash = table.is_best(i, action, plus);
    }
    if (!nash) continue;
    ++out.count;
    if (!count_only) out.profiles.push_back(ActionProfile::from_mask(mask, n));
  }
}

void check_size(const Population& pop, std::size_t max_n) {
  if (pop.size() > max_n) {
    throw SizeLimitExceeded("exhaustive check refused: " + std::to_string(pop.size()) +
                            " agents exceeds the limit of " + std::to_string(max_n));
  }
}

}  // namespace

OracleReport brute_force_nash(const Population& pop, OracleOptions options) {
  const auto start = std::chrono::steady_clock::now();
  check_size(pop, std::min<std::size_t>(options.max_n, 63));
  const std::size_t n = pop.size();
  const ResponseTable table(pop);
  const std::uint64_t total = std::uint64_t{1} << n;

  const unsigned threads = std::max(1U, options.threads);
  std::vector<Chunk> chunks(threads);
  if (threads == 1) {
    scan(table, n, 0, total, options.count_only, chunks[0]);
  } else {
    std::vector<std::thread> workers;
    const std::uint64_t span = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t begin = std::min(total, t * span);
      const std::uint64_t end = std::min(total, begin + span);
      workers.emplace_back(scan, std::cref(table), n, begin, end, options.count_only,
                           std::ref(chunks[t]));
    }
    for (auto& w : workers) w.join();
  }

  OracleReport report;
  for (auto& c : chunks) {
    report.count += c.count;
    report.nash_profiles.insert(report.nash_profiles.end(),
                                std::make_move_iterator(c.profiles.begin()),
                                std::make_move_iterator(c.profiles.end()));
  }
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

Rational potential_value_coord(const Population& pop, const ActionProfile& x) {
  if (x.size() != pop.size()) throw std::invalid_argument("profile length does not match population");
  long long pairs = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (i != j) pairs += x[i] * x[j];
    }
  }
  Rational value(pairs, 2);
  for (std::size_t i = 0; i < x.size(); ++i) value -= pop.weight(i) * x[i];
  return value;
}

Rational potential_value_anti(const Population& pop, const ActionProfile& x) {
  return -potential_value_coord(pop, x);
}

bool verify_exact_potential(const Population& pop, PotentialKind kind, std::size_t max_n) {
  check_size(pop, max_n);
  const std::size_t n = pop.size();
  auto potential = [&](const ActionProfile& x) {
    return kind == PotentialKind::Coordination ? potential_value_coord(pop, x)
                                               : potential_value_anti(pop, x);
  };
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const auto x = ActionProfile::from_mask(mask, n);
    const Rational phi_x = potential(x);
    for (std::size_t i = 0; i < n; ++i) {
      auto y = x;
      y.flip(i);
      if (utility(pop, y, i) - utility(pop, x, i) != potential(y) - phi_x) return false;
    }
  }
  return true;
}

bool verify_exact_potential(const Population& pop, std::size_t max_n) {
  const auto kind = classify_game(pop) == GameClass::PureAntiCoordination
                        ? PotentialKind::AntiCoordination
                        : PotentialKind::Coordination;
  return verify_exact_potential(pop, kind, max_n);
}

bool four_cycle_potential_test(const Population& pop, std::size_t max_n) {
  check_size(pop, max_n);
  const std::size_t n = pop.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const auto x = ActionProfile::from_mask(mask, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        auto xi = x;  // i deviated
        xi.flip(i);
        auto xij = xi;  // both deviated
        xij.flip(j);
        auto xj = x;  // j deviated
        xj.flip(j);
        const Rational cycle = (utility(pop, xi, i) - utility(pop, x, i)) +
                               (utility(pop, xij, j) - utility(pop, xi, j)) +
                               (utility(pop, xj, i) - utility(pop, xij, i)) +
                               (utility(pop, x, j) - utility(pop, xj, j));
        if (cycle != 0) return false;
      }
    }
  }
  return true;
}

}  // namespace cac
