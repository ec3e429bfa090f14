#include "cac/core.hpp"

#include <algorithm>

namespace cac {

std::string_view to_string(AgentKind kind) {
  return kind == AgentKind::Coordinating ? "coord" : "anti";
}

Rational threshold_of(const Rational& weight, std::size_t n) {
  if (n < 2) throw InvalidInstance("a game needs at least two agents");
  return Rational(1, 2) + weight / (2 * Rational(n - 1));
}

Rational weight_of(const Rational& threshold, std::size_t n) {
  if (n < 2) throw InvalidInstance("a game needs at least two agents");
  return (2 * threshold - 1) * Rational(n - 1);
}

Population::Population(std::vector<Agent> agents) : agents_(std::move(agents)) {
  if (agents_.size() < 2) throw InvalidInstance("a game needs at least two agents");
  thresholds_.reserve(agents_.size());
  for (const Agent& a : agents_) {
    if (a.kind != AgentKind::Coordinating && a.kind != AgentKind::AntiCoordinating) {
      throw InvalidInstance("unknown agent kind");
    }
    thresholds_.push_back(threshold_of(a.weight, agents_.size()));
    if (a.kind == AgentKind::Coordinating) ++n_coord_;
  }
}

Population Population::from_thresholds(std::span<const AgentKind> kinds,
                                       std::span<const Rational> thresholds) {
  if (kinds.size() != thresholds.size()) {
    throw InvalidInstance("kinds and thresholds differ in length");
  }
  std::vector<Agent> agents;
  agents.reserve(kinds.size());
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    agents.push_back({kinds[i], weight_of(thresholds[i], kinds.size())});
  }
  return Population(std::move(agents));
}

Rational Population::alpha() const { return Rational(n_coord_, agents_.size()); }

std::vector<Rational> Population::thresholds_of(AgentKind kind) const {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    if (agents_[i].kind == kind) out.push_back(thresholds_[i]);
  }
  return out;
}

ActionProfile::ActionProfile(std::vector<std::int8_t> actions) : actions_(std::move(actions)) {
  for (auto a : actions_) {
    if (a != 1 && a != -1) throw std::invalid_argument("actions must be +1 or -1");
  }
}

ActionProfile ActionProfile::uniform(std::size_t n, int action) {
  if (action != 1 && action != -1) throw std::invalid_argument("actions must be +1 or -1");
  return ActionProfile(std::vector<std::int8_t>(n, static_cast<std::int8_t>(action)));
}

ActionProfile ActionProfile::from_mask(std::uint64_t mask, std::size_t n) {
  std::vector<std::int8_t> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = (mask >> i) & 1U ? 1 : -1;
  return ActionProfile(std::move(a));
}

ActionProfile ActionProfile::parse(std::string_view text) {
  std::vector<std::int8_t> a;
  if (text.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find(',', start);
      if (end == std::string_view::npos) end = text.size();
      auto tok = text.substr(start, end - start);
      while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
      while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
      if (tok == "1" || tok == "+1") {
        a.push_back(1);
      } else if (tok == "-1") {
        a.push_back(-1);
      } else {
        throw std::invalid_argument("bad action '" + std::string(tok) + "' in profile");
      }
      start = end + 1;
    }
  } else {
    for (char c : text) {
      if (c == '+') {
        a.push_back(1);
      } else if (c == '-') {
        a.push_back(-1);
      } else {
        throw std::invalid_argument(std::string("bad action character '") + c + "' in profile");
      }
    }
  }
  return ActionProfile(std::move(a));
}

void ActionProfile::set(std::size_t i, int action) {
  if (action != 1 && action != -1) throw std::invalid_argument("actions must be +1 or -1");
  actions_.at(i) = static_cast<std::int8_t>(action);
}

std::size_t ActionProfile::plus_count() const {
  return static_cast<std::size_t>(std::count(actions_.begin(), actions_.end(), 1));
}

std::string ActionProfile::to_string() const {
  std::string s;
  s.reserve(actions_.size());
  for (auto a : actions_) s.push_back(a > 0 ? '+' : '-');
  return s;
}

std::optional<Rational> FractionTriple::z_coord() const {
  if (n_coord == 0) return std::nullopt;
  return Rational(plus_coord, n_coord);
}

std::optional<Rational> FractionTriple::z_anti() const {
  if (n_anti == 0) return std::nullopt;
  return Rational(plus_anti, n_anti);
}

namespace {

void check_profile(const Population& pop, const ActionProfile& x) {
  if (x.size() != pop.size()) {
    throw std::invalid_argument("profile has " + std::to_string(x.size()) +
                                " actions for " + std::to_string(pop.size()) + " agents");
  }
}

void check_index(const Population& pop, std::size_t i) {
  if (i >= pop.size()) throw std::out_of_range("agent index " + std::to_string(i) + " out of range");
}

}  // namespace

Rational utility(const Population& pop, const ActionProfile& x, std::size_t i) {
  check_profile(pop, x);
  check_index(pop, i);
  long long agreement = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j != i) agreement += x[i] * x[j];
  }
  return delta(pop.kind(i)) * (Rational(agreement) - pop.weight(i) * x[i]);
}

std::size_t count_plus_others(const ActionProfile& x, std::size_t i) {
  if (i >= x.size()) throw std::out_of_range("agent index " + std::to_string(i) + " out of range");
  return x.plus_count() - (x[i] > 0 ? 1 : 0);
}

int response_sign(const Population& pop, std::size_t i, std::size_t plus_others) {
  check_index(pop, i);
  const auto n = static_cast<long long>(pop.size());
  Rational gap = Rational(2 * static_cast<long long>(plus_others) - (n - 1)) - pop.weight(i);
  return delta(pop.kind(i)) * sign(gap);
}

BestResponse best_response(const Population& pop, const ActionProfile& x, std::size_t i) {
  check_profile(pop, x);
  int s = response_sign(pop, i, count_plus_others(x, i));
  return {s >= 0, s <= 0};
}

std::optional<int> stubborn_action(const Population& pop, std::size_t i) {
  check_index(pop, i);
  int first = response_sign(pop, i, 0);
  if (first == 0) return std::nullopt;
  for (std::size_t m = 1; m < pop.size(); ++m) {
    if (response_sign(pop, i, m) != first) return std::nullopt;
  }
  return first;
}

FractionTriple fractions(const Population& pop, const ActionProfile& x) {
  check_profile(pop, x);
  FractionTriple t;
  t.n = pop.size();
  t.n_coord = pop.coordinating_count();
  t.n_anti = pop.anti_count();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0) continue;
    ++t.plus;
    if (pop.kind(i) == AgentKind::Coordinating) {
      ++t.plus_coord;
    } else {
      ++t.plus_anti;
    }
  }
  return t;
}

std::optional<std::size_t> first_deviator(const Population& pop, const ActionProfile& x) {
  check_profile(pop, x);
  const std::size_t plus = x.plus_count();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::size_t others = plus - (x[i] > 0 ? 1 : 0);
    const int s = response_sign(pop, i, others);
    const bool ok = x[i] > 0 ? s >= 0 : s <= 0;
    if (!ok) return i;
  }
  return std::nullopt;
}

bool is_nash(const Population& pop, const ActionProfile& x) {
  return !first_deviator(pop, x).has_value();
}

bool nash_condition_thresholds(const Population& pop, const ActionProfile& x) {
  check_profile(pop, x);
  const std::size_t n = pop.size();
  const Rational z_tilde(x.plus_count(), n - 1);
  const Rational step(1, n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational& r = pop.threshold(i);
    const bool coord = pop.kind(i) == AgentKind::Coordinating;
    bool ok;
    if (x[i] > 0) {
      ok = coord ? r <= z_tilde - step : r >= z_tilde - step;
    } else {
      ok = coord ? r >= z_tilde : r <= z_tilde;
    }
    if (!ok) return false;
  }
  return true;
}

ResponseTable::ResponseTable(const Population& pop) : n_(pop.size()), signs_(n_ * n_) {
  // The gap 2m - (n-1) - d_i changes sign once, at m = c := ((n-1) + d_i) / 2.
  const auto n = static_cast<long long>(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const Rational c = (Rational(n - 1) + pop.weight(i)) / 2;
    const BigInt num = boost::multiprecision::numerator(c);
    const BigInt den = boost::multiprecision::denominator(c);
    BigInt fl = num / den;
    if (num < 0 && fl * den != num) fl -= 1;
    const bool integral = den == 1;
    // Only the position of floor(c) relative to [0, n) matters.
    long long floor_c;
    if (fl < -1) {
      floor_c = -2;
    } else if (fl > n) {
      floor_c = n + 1;
    } else {
      floor_c = fl.convert_to<long long>();
    }
    const int d = delta(pop.kind(i));
    for (long long m = 0; m < n; ++m) {
      int s = m > floor_c ? 1 : (m == floor_c && integral ? 0 : -1);
      signs_[i * n_ + static_cast<std::size_t>(m)] = static_cast<std::int8_t>(d * s);
    }
  }
}

}  // namespace cac
