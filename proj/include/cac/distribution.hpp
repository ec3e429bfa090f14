#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cac/rational.hpp"

namespace cac {

class EmptyPopulation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Orientation { Cdf, Ccdf };

// Empirical threshold distribution as an exact, right-continuous step
// function. A CDF reports the share of thresholds <= z, a CCDF the share
// > z. Both jump exactly at the distinct thresholds.
class StepFunction {
 public:
  StepFunction(std::span<const Rational> thresholds, Orientation orientation);

  Orientation orientation() const { return orientation_; }
  std::size_t denominator() const { return denom_; }

  // Distinct jump locations, ascending.
  const std::vector<Rational>& jumps() const { return jumps_; }

  // Numerators of eval / eval_left over denominator().
  std::size_t count_at(const Rational& z) const;
  std::size_t count_left(const Rational& z) const;

  Rational eval(const Rational& z) const { return Rational(count_at(z), denom_); }
  // Left limit at z.
  Rational eval_left(const Rational& z) const { return Rational(count_left(z), denom_); }

  // The complementary function over the same threshold multiset.
  StepFunction complement() const;

  // Breakpoints for plotting on [lo, hi]: the endpoints plus, at every jump
  // inside, the left limit followed by the value.
  std::vector<std::pair<Rational, Rational>> plot_points(const Rational& lo,
                                                         const Rational& hi) const;

  // `resolution` + 1 evenly spaced samples on [lo, hi].
  std::vector<std::pair<Rational, Rational>> sample(const Rational& lo, const Rational& hi,
                                                    std::size_t resolution) const;

 private:
  StepFunction() = default;
  std::size_t at_most(const Rational& z) const;
  std::size_t below(const Rational& z) const;

  Orientation orientation_ = Orientation::Cdf;
  std::size_t denom_ = 0;
  std::vector<Rational> jumps_;
  // cumulative_[j] = number of thresholds <= jumps_[j].
  std::vector<std::size_t> cumulative_;
};

StepFunction build_cdf(std::span<const Rational> thresholds);
StepFunction build_ccdf(std::span<const Rational> thresholds);

}  // namespace cac
