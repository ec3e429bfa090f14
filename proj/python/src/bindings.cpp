#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cac/continuum.hpp"
#include "cac/dynamics.hpp"
#include "cac/instance.hpp"
#include "cac/oracle.hpp"
#include "cac/solver.hpp"

namespace py = pybind11;
using namespace cac;

namespace {

// Exact values cross the boundary as fractions.Fraction and Python int.
py::object to_fraction(const Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(to_string(r));
}

py::object to_int(const BigInt& v) { return py::int_(py::str(to_string(v))); }

py::object optional_fraction(const std::optional<Rational>& r) {
  return r ? to_fraction(*r) : py::none();
}

Rational from_python(const py::handle& value) {
  return parse_rational(py::str(value).cast<std::string>());
}

AgentKind parse_kind(const std::string& s) {
  if (s == "coord" || s == "coordinating") return AgentKind::Coordinating;
  if (s == "anti" || s == "anti-coordinating") return AgentKind::AntiCoordinating;
  throw std::invalid_argument("unknown agent kind '" + s + "' (expected coord or anti)");
}

std::string kind_name(AgentKind k) { return k == AgentKind::Coordinating ? "coord" : "anti"; }

py::dict record_dict(const Population& pop, const SolutionRecord& rec) {
  py::dict d;
  d["z"] = to_fraction(rec.triple.z());
  d["z_c"] = optional_fraction(rec.triple.z_coord());
  d["z_a"] = optional_fraction(rec.triple.z_anti());
  d["plus"] = rec.triple.plus;
  d["window"] = py::make_tuple(to_fraction(rec.lower), to_fraction(rec.upper));
  d["forced_plus_anti"] = rec.forced_plus_anti;
  d["free_anti"] = rec.free_anti;
  d["needed_plus_among_free"] = rec.needed_plus_among_free;
  d["count"] = to_int(rec.equilibrium_count);
  d["canonical"] = construct_equilibrium(pop, rec).to_string();
  return d;
}

SolutionRecord record_for(const Population& pop, std::size_t plus) {
  auto rec = solve_for_count(pop, plus);
  if (!rec) throw std::invalid_argument("no equilibrium with " + std::to_string(plus) + " agents at +1");
  return *rec;
}

}  // namespace

PYBIND11_MODULE(_cac, m) {
  m.doc() = "Pure Nash equilibria of threshold games mixing coordinating and anti-coordinating agents";

  py::register_exception<SizeLimitExceeded>(m, "SizeLimitExceeded", PyExc_RuntimeError);
  py::register_exception<EnumerationTooLarge>(m, "EnumerationTooLarge", PyExc_RuntimeError);
  py::register_exception<InstanceError>(m, "InstanceError", PyExc_ValueError);

  py::class_<Population>(m, "Population")
      .def(py::init([](const std::vector<std::string>& kinds, const py::sequence& weights) {
             if (kinds.size() != py::len(weights)) {
               throw std::invalid_argument("kinds and weights differ in length");
             }
             std::vector<Agent> agents;
             for (std::size_t i = 0; i < kinds.size(); ++i) {
               agents.push_back({parse_kind(kinds[i]), from_python(weights[i])});
             }
             return Population(std::move(agents));
           }),
           py::arg("kinds"), py::arg("weights"))
      .def_static(
          "from_thresholds",
          [](const std::vector<std::string>& kinds, const py::sequence& thresholds) {
            if (kinds.size() != py::len(thresholds)) {
              throw std::invalid_argument("kinds and thresholds differ in length");
            }
            std::vector<AgentKind> ks;
            std::vector<Rational> rs;
            for (std::size_t i = 0; i < kinds.size(); ++i) {
              ks.push_back(parse_kind(kinds[i]));
              rs.push_back(from_python(thresholds[i]));
            }
            return Population::from_thresholds(ks, rs);
          },
          py::arg("kinds"), py::arg("thresholds"))
      .def_static(
          "load", [](const std::string& path) { return load_instance(path).population; },
          py::arg("path"))
      .def("__len__", &Population::size)
      .def_property_readonly("kinds",
                             [](const Population& p) {
                               std::vector<std::string> out;
                               for (std::size_t i = 0; i < p.size(); ++i) out.push_back(kind_name(p.kind(i)));
                               return out;
                             })
      .def_property_readonly("thresholds",
                             [](const Population& p) {
                               py::list out;
                               for (const auto& r : p.thresholds()) out.append(to_fraction(r));
                               return out;
                             })
      .def_property_readonly("game_class",
                             [](const Population& p) { return std::string(to_string(classify_game(p))); })
      .def("__repr__", [](const Population& p) {
        return "<Population n=" + std::to_string(p.size()) + " " +
               std::string(to_string(classify_game(p))) + ">";
      });

  m.def(
      "solve",
      [](const Population& pop) {
        py::list out;
        for (const auto& rec : solve_triples(pop).records) out.append(record_dict(pop, rec));
        return out;
      },
      py::arg("population"), "Solution triples with their equilibrium counts.");

  m.def(
      "count", [](const Population& pop) { return to_int(count_equilibria(pop)); },
      py::arg("population"), "Number of pure Nash equilibria as an exact int.");

  m.def(
      "construct",
      [](const Population& pop, std::size_t plus) {
        return construct_equilibrium(pop, record_for(pop, plus)).to_string();
      },
      py::arg("population"), py::arg("plus"), "Canonical equilibrium with `plus` agents at +1.");

  m.def(
      "enumerate",
      [](const Population& pop, std::size_t plus, std::optional<std::uint64_t> limit) {
        std::vector<std::string> out;
        enumerate_equilibria(pop, record_for(pop, plus),
                             [&](const ActionProfile& x) { out.push_back(x.to_string()); },
                             {limit, false});
        return out;
      },
      py::arg("population"), py::arg("plus"), py::arg("limit") = py::none());

  m.def(
      "is_nash",
      [](const Population& pop, const std::string& profile) {
        return is_nash(pop, ActionProfile::parse(profile));
      },
      py::arg("population"), py::arg("profile"));

  m.def(
      "brute_force",
      [](const Population& pop, std::size_t max_n) {
        OracleOptions options;
        options.max_n = max_n;
        std::vector<std::string> out;
        for (const auto& x : brute_force_nash(pop, options).nash_profiles) out.push_back(x.to_string());
        return out;
      },
      py::arg("population"), py::arg("max_n") = 20, "Every Nash profile by exhaustive search.");

  m.def(
      "is_exact_potential", [](const Population& pop) { return verify_exact_potential(pop); },
      py::arg("population"));
  m.def(
      "four_cycle_test", [](const Population& pop) { return four_cycle_potential_test(pop); },
      py::arg("population"));

  m.def(
      "solve_continuum",
      [](double alpha, const std::string& coord, const std::string& anti, double tol,
         std::size_t grid) {
        py::list out;
        for (const auto& s : solve_continuum(alpha, ContinuumDistribution::parse(coord),
                                             ContinuumDistribution::parse(anti), {tol, grid})) {
          py::dict d;
          d["z"] = s.z_star;
          d["z_c"] = s.z_c_star;
          d["z_a"] = s.z_a_star;
          d["residual"] = s.residual;
          out.append(d);
        }
        return out;
      },
      py::arg("alpha"), py::arg("coord") = "uniform:0,1", py::arg("anti") = "uniform:0,1",
      py::arg("tol") = ContinuumOptions{}.tolerance, py::arg("grid") = ContinuumOptions{}.grid_cells);

  m.def(
      "run_dynamics",
      [](const Population& pop, std::optional<std::string> x0, const std::string& schedule,
         std::uint64_t seed, std::uint64_t steps) {
        Schedule sched;
        if (schedule == "async") {
          sched = Asynchronous{seed};
        } else if (schedule == "sync") {
          sched = Synchronous{};
        } else {
          throw std::invalid_argument("schedule must be async or sync");
        }
        const auto start = x0 ? ActionProfile::parse(*x0) : ActionProfile::uniform(pop.size(), 1);
        const auto result = run(pop, start, sched, {steps, true});
        py::dict d;
        d["outcome"] = describe(result.outcome);
        d["converged"] = std::holds_alternative<ConvergedToNash>(result.outcome);
        d["final"] = result.final_profile.to_string();
        d["rng_algorithm"] = result.rng_algorithm;
        py::list traj;
        for (const auto& p : result.trajectory) traj.append(to_fraction(p.z));
        d["trajectory"] = traj;
        return d;
      },
      py::arg("population"), py::arg("x0") = py::none(), py::arg("schedule") = "async",
      py::arg("seed") = 0, py::arg("steps") = RunOptions{}.step_limit);
}
