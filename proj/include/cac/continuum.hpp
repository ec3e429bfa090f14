#pragma once

// Infinite-population limit. With a share alpha of coordinating agents whose
// thresholds follow F_c and anti-coordinating agents whose thresholds have
// CCDF G_a, equilibria are the fixed points of
//   H_alpha(z) = alpha F_c(z) + (1 - alpha) G_a(z).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cac/distribution.hpp"

namespace cac {

struct Uniform {
  double lo = 0.0;
  double hi = 1.0;
};

struct Gaussian {
  double mean = 0.0;
  double stddev = 1.0;
};

// Linear interpolation between (z, F) knots with strictly increasing z and
// non-decreasing F in [0, 1]; constant beyond the outer knots.
struct PiecewiseLinear {
  std::vector<std::pair<double, double>> knots;
};

struct EmpiricalStep {
  StepFunction cdf;
};

class ContinuumDistribution {
 public:
  using Kind = std::variant<Uniform, Gaussian, PiecewiseLinear, EmpiricalStep>;

  explicit ContinuumDistribution(Kind kind);

  static ContinuumDistribution uniform(double lo, double hi);
  static ContinuumDistribution gaussian(double mean, double stddev);
  static ContinuumDistribution piecewise_linear(std::vector<std::pair<double, double>> knots);
  static ContinuumDistribution empirical(StepFunction cdf);

  // "uniform:lo,hi", "normal:mean,sd", "pwl:z0:f0,z1:f1,...".
  static ContinuumDistribution parse(std::string_view spec);

  double cdf(double z) const;
  double ccdf(double z) const { return 1.0 - cdf(z); }
  bool is_continuous() const { return !std::holds_alternative<EmpiricalStep>(kind_); }
  const Kind& kind() const { return kind_; }
  std::string describe() const;

 private:
  Kind kind_;
};

// Standard normal CDF, accurate to double precision in both tails.
double normal_cdf(double z);

struct ContinuumSolution {
  double z_star = 0.0;
  double z_c_star = 0.0;
  double z_a_star = 0.0;
  double residual = 0.0;
};

// alpha F_c(z) + (1 - alpha) G_a(z), where F_c is the CDF of the coordinating
// thresholds and G_a the CCDF of the anti-coordinating thresholds.
double h_alpha(double alpha, const ContinuumDistribution& coord,
               const ContinuumDistribution& anti, double z);

struct ContinuumOptions {
  double tolerance = 1e-12;
  std::size_t grid_cells = 10'000;
};

class DiscontinuousDistribution : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Fixed points of H_alpha on [0, 1], found by scanning a uniform grid for
// sign changes of H_alpha(z) - z and bisecting each bracket. Grid nodes
// where the difference is exactly zero are roots; a run of consecutive zero
// nodes is reported by its two ends. Tangential roots between nodes can be
// missed. Sorted by z*.
std::vector<ContinuumSolution> solve_continuum(double alpha, const ContinuumDistribution& coord,
                                               const ContinuumDistribution& anti,
                                               ContinuumOptions options = {});

// `resolution` + 1 samples of a curve on [lo, hi].
template <class F>
std::vector<std::pair<double, double>> sample_curve(F&& f, double lo, double hi,
                                                    std::size_t resolution) {
  std::vector<std::pair<double, double>> out;
  out.reserve(resolution + 1);
  for (std::size_t k = 0; k <= resolution; ++k) {
    const double z = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(resolution);
    out.emplace_back(z, f(z));
  }
  return out;
}

}  // namespace cac
