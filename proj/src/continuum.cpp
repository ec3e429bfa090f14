#include "cac/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cac {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double parse_double(std::string_view text) {
  std::string s(text);
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto end = s.find(sep, start);
    parts.push_back(s.substr(start, end == std::string_view::npos ? s.size() - start : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

void validate(const ContinuumDistribution::Kind& kind) {
  std::visit(Overloaded{
                 [](const Uniform& u) {
                   if (!(u.lo < u.hi)) throw std::invalid_argument("uniform needs lo < hi");
                 },
                 [](const Gaussian& g) {
                   if (!(g.stddev > 0)) throw std::invalid_argument("normal needs stddev > 0");
                 },
                 [](const PiecewiseLinear& p) {
                   if (p.knots.empty()) throw std::invalid_argument("pwl needs at least one knot");
                   for (std::size_t i = 0; i < p.knots.size(); ++i) {
                     const auto [z, f] = p.knots[i];
                     if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("pwl values must lie in [0,1]");
                     if (i > 0 && !(z > p.knots[i - 1].first)) {
                       throw std::invalid_argument("pwl knots must be strictly increasing");
                     }
                     if (i > 0 && f < p.knots[i - 1].second) {
                       throw std::invalid_argument("pwl values must be non-decreasing");
                     }
                   }
                 },
                 [](const EmpiricalStep&) {},
             },
             kind);
}

}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

ContinuumDistribution::ContinuumDistribution(Kind kind) : kind_(std::move(kind)) { validate(kind_); }

ContinuumDistribution ContinuumDistribution::uniform(double lo, double hi) {
  return ContinuumDistribution(Uniform{lo, hi});
}

ContinuumDistribution ContinuumDistribution::gaussian(double mean, double stddev) {
  return ContinuumDistribution(Gaussian{mean, stddev});
}

ContinuumDistribution ContinuumDistribution::piecewise_linear(
    std::vector<std::pair<double, double>> knots) {
  return ContinuumDistribution(PiecewiseLinear{std::move(knots)});
}

ContinuumDistribution ContinuumDistribution::empirical(StepFunction cdf) {
  if (cdf.orientation() != Orientation::Cdf) cdf = cdf.complement();
  return ContinuumDistribution(EmpiricalStep{std::move(cdf)});
}

ContinuumDistribution ContinuumDistribution::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("distribution spec '" + std::string(spec) + "' lacks a ':'");
  }
  const auto name = spec.substr(0, colon);
  const auto args = split(spec.substr(colon + 1), ',');
  auto two = [&]() {
    if (args.size() != 2) throw std::invalid_argument(std::string(name) + " takes two parameters");
    return std::pair{parse_double(args[0]), parse_double(args[1])};
  };
  if (name == "uniform") {
    auto [lo, hi] = two();
    return uniform(lo, hi);
  }
  if (name == "normal" || name == "gaussian") {
    auto [m, s] = two();
    return gaussian(m, s);
  }
  if (name == "pwl") {
    std::vector<std::pair<double, double>> knots;
    for (auto a : args) {
      auto zf = split(a, ':');
      if (zf.size() != 2) throw std::invalid_argument("pwl knots are z:F pairs");
      knots.emplace_back(parse_double(zf[0]), parse_double(zf[1]));
    }
    return piecewise_linear(std::move(knots));
  }
  if (name == "step") {
    std::vector<Rational> thresholds;
    for (auto a : args) thresholds.push_back(parse_rational(a));
    return empirical(build_cdf(thresholds));
  }
  throw std::invalid_argument("unknown distribution '" + std::string(name) + "'");
}

double ContinuumDistribution::cdf(double z) const {
  return std::visit(
      Overloaded{
          [z](const Uniform& u) { return std::clamp((z - u.lo) / (u.hi - u.lo), 0.0, 1.0); },
          [z](const Gaussian& g) { return normal_cdf((z - g.mean) / g.stddev); },
          [z](const PiecewiseLinear& p) {
            const auto& k = p.knots;
            if (z <= k.front().first) return k.front().second;
            if (z >= k.back().first) return k.back().second;
            auto it = std::upper_bound(k.begin(), k.end(), z,
                                       [](double v, const auto& knot) { return v < knot.first; });
            const auto& [z1, f1] = *it;
            const auto& [z0, f0] = *(it - 1);
            return f0 + (f1 - f0) * (z - z0) / (z1 - z0);
          },
          [z](const EmpiricalStep& e) {
            // Exact evaluation at the rational value of the double.
            return to_double(e.cdf.eval(Rational(z)));
          },
      },
      kind_);
}

std::string ContinuumDistribution::describe() const {
  std::ostringstream os;
  os.precision(15);
  std::visit(Overloaded{
                 [&](const Uniform& u) { os << "uniform(" << u.lo << ", " << u.hi << ")"; },
                 [&](const Gaussian& g) { os << "normal(" << g.mean << ", " << g.stddev << ")"; },
                 [&](const PiecewiseLinear& p) { os << "pwl(" << p.knots.size() << " knots)"; },
                 [&](const EmpiricalStep& e) { os << "step(" << e.cdf.denominator() << " thresholds)"; },
             },
             kind_);
  return os.str();
}

double h_alpha(double alpha, const ContinuumDistribution& coord, const ContinuumDistribution& anti,
               double z) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0,1]");
  return alpha * coord.cdf(z) + (1.0 - alpha) * anti.ccdf(z);
}

std::vector<ContinuumSolution> solve_continuum(double alpha, const ContinuumDistribution& coord,
                                               const ContinuumDistribution& anti,
                                               ContinuumOptions options) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0,1]");
  if (!coord.is_continuous() || !anti.is_continuous()) {
    throw DiscontinuousDistribution(
        "step-function thresholds describe a finite population; use the finite solver");
  }
  if (options.grid_cells == 0) throw std::invalid_argument("grid must have at least one cell");
  if (!(options.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");

  auto gap = [&](double z) { return h_alpha(alpha, coord, anti, z) - z; };
  auto complete = [&](double z) {
    return ContinuumSolution{z, coord.cdf(z), anti.ccdf(z), std::abs(gap(z))};
  };
  auto bisect = [&](double lo, double hi, double gap_lo) {
    const bool lo_positive = gap_lo > 0;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = lo + (hi - lo) / 2;
      if (mid <= lo || mid >= hi) break;
      const double g = gap(mid);
      if (g == 0.0) return mid;
      if ((g > 0) == lo_positive) {
        lo = mid;
      } else {
        hi = mid;
      }
      if (hi - lo <= options.tolerance * 1e-3 && std::abs(gap(lo)) <= options.tolerance &&
          std::abs(gap(hi)) <= options.tolerance) {
        break;
      }
    }
    return std::abs(gap(lo)) <= std::abs(gap(hi)) ? lo : hi;
  };

  const std::size_t cells = options.grid_cells;
  std::vector<double> nodes(cells + 1);
  std::vector<double> gaps(cells + 1);
  for (std::size_t j = 0; j <= cells; ++j) {
    nodes[j] = static_cast<double>(j) / static_cast<double>(cells);
    gaps[j] = gap(nodes[j]);
  }

  std::vector<ContinuumSolution> out;
  std::size_t j = 0;
  while (j <= cells) {
    if (gaps[j] == 0.0) {
      std::size_t end = j;
      while (end + 1 <= cells && gaps[end + 1] == 0.0) ++end;
      out.push_back(complete(nodes[j]));
      if (end != j) out.push_back(complete(nodes[end]));
      j = end + 1;
      continue;
    }
    if (j < cells && gaps[j + 1] != 0.0 && (gaps[j] > 0) != (gaps[j + 1] > 0)) {
      out.push_back(complete(bisect(nodes[j], nodes[j + 1], gaps[j])));
    }
    ++j;
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.z_star < b.z_star; });
  return out;
}

}  // namespace cac
