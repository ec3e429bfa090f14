#include "cac/distribution.hpp"

#include <algorithm>

namespace cac {

StepFunction::StepFunction(std::span<const Rational> thresholds, Orientation orientation)
    : orientation_(orientation), denom_(thresholds.size()) {
  if (thresholds.empty()) throw EmptyPopulation("step function needs at least one threshold");
  std::vector<Rational> sorted(thresholds.begin(), thresholds.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (jumps_.empty() || jumps_.back() != sorted[i]) {
      jumps_.push_back(sorted[i]);
      cumulative_.push_back(i + 1);
    } else {
      cumulative_.back() = i + 1;
    }
  }
}

std::size_t StepFunction::at_most(const Rational& z) const {
  auto it = std::upper_bound(jumps_.begin(), jumps_.end(), z);
  if (it == jumps_.begin()) return 0;
  return cumulative_[static_cast<std::size_t>(it - jumps_.begin()) - 1];
}

std::size_t StepFunction::below(const Rational& z) const {
  auto it = std::lower_bound(jumps_.begin(), jumps_.end(), z);
  if (it == jumps_.begin()) return 0;
  return cumulative_[static_cast<std::size_t>(it - jumps_.begin()) - 1];
}

std::size_t StepFunction::count_at(const Rational& z) const {
  const std::size_t le = at_most(z);
  return orientation_ == Orientation::Cdf ? le : denom_ - le;
}

std::size_t StepFunction::count_left(const Rational& z) const {
  const std::size_t lt = below(z);
  return orientation_ == Orientation::Cdf ? lt : denom_ - lt;
}

StepFunction StepFunction::complement() const {
  StepFunction f = *this;
  f.orientation_ = orientation_ == Orientation::Cdf ? Orientation::Ccdf : Orientation::Cdf;
  return f;
}

std::vector<std::pair<Rational, Rational>> StepFunction::plot_points(const Rational& lo,
                                                                     const Rational& hi) const {
  std::vector<std::pair<Rational, Rational>> out;
  out.emplace_back(lo, eval(lo));
  for (const Rational& j : jumps_) {
    if (j <= lo || j >= hi) continue;
    out.emplace_back(j, eval_left(j));
    out.emplace_back(j, eval(j));
  }
  if (hi > lo) {
    // A jump exactly at hi still shows its left limit.
    if (std::binary_search(jumps_.begin(), jumps_.end(), hi)) out.emplace_back(hi, eval_left(hi));
    out.emplace_back(hi, eval(hi));
  }
  return out;
}

std::vector<std::pair<Rational, Rational>> StepFunction::sample(const Rational& lo,
                                                                const Rational& hi,
                                                                std::size_t resolution) const {
  if (resolution == 0) throw std::invalid_argument("resolution must be positive");
  std::vector<std::pair<Rational, Rational>> out;
  out.reserve(resolution + 1);
  for (std::size_t k = 0; k <= resolution; ++k) {
    Rational z = lo + (hi - lo) * Rational(k, resolution);
    out.emplace_back(z, eval(z));
  }
  return out;
}

StepFunction build_cdf(std::span<const Rational> thresholds) {
  return StepFunction(thresholds, Orientation::Cdf);
}

StepFunction build_ccdf(std::span<const Rational> thresholds) {
  return StepFunction(thresholds, Orientation::Ccdf);
}

}  // namespace cac
