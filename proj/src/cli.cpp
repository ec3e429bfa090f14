#include "cac/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cac/continuum.hpp"
#include "cac/distribution.hpp"
#include "cac/dynamics.hpp"
#include "cac/instance.hpp"
#include "cac/oracle.hpp"
#include "cac/solver.hpp"

namespace cac {

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string decimal(double v) {
  std::ostringstream os;
  os << std::setprecision(15) << v;
  return os.str();
}

std::string decimal(const Rational& v) { return decimal(to_double(v)); }

std::string optional_fraction(const std::optional<Rational>& v) {
  return v ? to_string(*v) : "-";
}

ordered_json optional_fraction_json(const std::optional<Rational>& v) {
  return v ? ordered_json(to_string(*v)) : ordered_json(nullptr);
}

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw OutputError("cannot write " + path.string());
  return out;
}

// ---- solve / count / enumerate ---------------------------------------------

struct SolveArgs {
  std::string instance;
  bool json = false;
  bool enumerate = false;
  std::uint64_t max_enumerate = 10'000;
};

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  const auto inst = load_instance(args.instance);
  const Population& pop = inst.population;
  const auto set = solve_triples(pop);
  std::uint64_t budget = args.max_enumerate;
  bool truncated = false;

  auto enumerate_record = [&](const SolutionRecord& rec) {
    std::vector<std::string> profiles;
    if (!args.enumerate || budget == 0) {
      truncated = truncated || args.enumerate;
      return profiles;
    }
    EquilibriumEnumerator it(pop, rec, {budget, false});
    while (auto x = it.next()) profiles.push_back(x->to_string());
    budget -= profiles.size();
    if (rec.equilibrium_count > profiles.size()) truncated = true;
    return profiles;
  };

  if (args.json) {
    ordered_json doc;
    if (inst.name) doc["name"] = *inst.name;
    doc["class"] = std::string(to_string(classify_game(pop)));
    doc["n"] = pop.size();
    doc["n_coord"] = pop.coordinating_count();
    doc["n_anti"] = pop.anti_count();
    ordered_json sols = ordered_json::array();
    for (const auto& rec : set.records) {
      ordered_json s;
      s["z"] = to_string(rec.triple.z());
      s["z_c"] = optional_fraction_json(rec.triple.z_coord());
      s["z_a"] = optional_fraction_json(rec.triple.z_anti());
      s["window"] = {to_string(rec.lower), to_string(rec.upper)};
      s["forced_plus_anti"] = rec.forced_plus_anti;
      s["free_anti"] = rec.free_anti;
      s["needed_plus_among_free"] = rec.needed_plus_among_free;
      s["equilibrium_count"] = to_string(rec.equilibrium_count);
      s["canonical"] = construct_equilibrium(pop, rec).to_string();
      if (args.enumerate) s["equilibria"] = enumerate_record(rec);
      sols.push_back(std::move(s));
    }
    doc["solutions"] = std::move(sols);
    doc["total_count"] = to_string(set.total_count);
    if (args.enumerate) doc["enumeration_truncated"] = truncated;
    out << doc.dump(2) << "\n";
  } else {
    if (inst.name) out << "instance: " << *inst.name << "\n";
    out << "game: " << to_string(classify_game(pop)) << "\n";
    out << "agents: " << pop.size() << " (coordinating " << pop.coordinating_count()
        << ", anti-coordinating " << pop.anti_count() << ")\n";
    out << set.records.size() << (set.records.size() == 1 ? " solution" : " solutions") << "\n";
    for (const auto& rec : set.records) {
      out << "z=" << to_string(rec.triple.z()) << " z_c=" << optional_fraction(rec.triple.z_coord())
          << " z_a=" << optional_fraction(rec.triple.z_anti()) << " window=["
          << to_string(rec.lower) << ", " << to_string(rec.upper) << "]"
          << " forced=" << rec.forced_plus_anti << " free=" << rec.free_anti
          << " needed=" << rec.needed_plus_among_free
          << " equilibria=" << to_string(rec.equilibrium_count) << "\n";
      out << "  canonical " << construct_equilibrium(pop, rec).to_string() << "\n";
      for (const auto& p : enumerate_record(rec)) out << "  equilibrium " << p << "\n";
    }
    out << "total equilibria: " << to_string(set.total_count) << "\n";
  }
  if (truncated) err << "note: enumeration truncated at " << args.max_enumerate << " profiles\n";
  return set.records.empty() ? exit_code::kNoEquilibrium : exit_code::kFound;
}

int cmd_count(const SolveArgs& args, std::ostream& out) {
  const auto inst = load_instance(args.instance);
  const auto set = solve_triples(inst.population);
  if (args.json) {
    ordered_json doc;
    doc["solutions"] = set.records.size();
    doc["total_count"] = to_string(set.total_count);
    out << doc.dump(2) << "\n";
  } else {
    out << to_string(set.total_count) << "\n";
  }
  return set.records.empty() ? exit_code::kNoEquilibrium : exit_code::kFound;
}

struct EnumerateArgs {
  std::string instance;
  std::string z;
  std::uint64_t max_enumerate = 10'000;
};

int cmd_enumerate(const EnumerateArgs& args, std::ostream& out, std::ostream& err) {
  const auto inst = load_instance(args.instance);
  const Population& pop = inst.population;
  const auto set = solve_triples(pop);
  std::optional<Rational> only;
  if (!args.z.empty()) only = parse_rational(args.z);
  std::uint64_t budget = args.max_enumerate;
  bool truncated = false;
  for (const auto& rec : set.records) {
    if (only && rec.triple.z() != *only) continue;
    if (budget == 0) {
      truncated = true;
      break;
    }
    EquilibriumEnumerator it(pop, rec, {budget, false});
    while (auto x = it.next()) out << to_string(rec.triple.z()) << " " << x->to_string() << "\n";
    budget -= it.emitted();
    if (rec.equilibrium_count > it.emitted()) truncated = true;
  }
  if (truncated) err << "note: enumeration truncated at " << args.max_enumerate << " profiles\n";
  return set.records.empty() ? exit_code::kNoEquilibrium : exit_code::kFound;
}

// ---- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string instance;
  std::string profile;
  bool oracle = false;
  bool json = false;
  std::size_t max_n = 20;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  const auto inst = load_instance(args.instance);
  const Population& pop = inst.population;
  if (!args.oracle) {
    const auto x = ActionProfile::parse(args.profile);
    if (x.size() != pop.size()) {
      throw std::invalid_argument("profile has " + std::to_string(x.size()) + " actions for " +
                                  std::to_string(pop.size()) + " agents");
    }
    const auto deviator = first_deviator(pop, x);
    if (args.json) {
      ordered_json doc;
      doc["profile"] = x.to_string();
      doc["nash"] = !deviator;
      doc["deviating_agent"] = deviator ? ordered_json(*deviator) : ordered_json(nullptr);
      out << doc.dump(2) << "\n";
    } else {
      out << "Nash: " << (deviator ? "no" : "yes") << "\n";
      if (deviator) {
        const auto br = best_response(pop, x, *deviator);
        out << "agent " << *deviator << " (" << to_string(pop.kind(*deviator)) << ", threshold "
            << to_string(pop.threshold(*deviator)) << ") plays " << (x[*deviator] > 0 ? "+1" : "-1")
            << " but its best response is " << (br.plus ? "+1" : "-1") << "\n";
      }
    }
    return deviator ? exit_code::kNoEquilibrium : exit_code::kFound;
  }

  OracleOptions options;
  options.max_n = args.max_n;
  const auto brute = brute_force_nash(pop, options);
  std::set<std::string> expected;
  for (const auto& x : brute.nash_profiles) expected.insert(x.to_string());

  const auto set = solve_triples(pop);
  std::set<std::string> found;
  for (const auto& rec : set.records) {
    enumerate_equilibria(pop, rec, [&](const ActionProfile& x) { found.insert(x.to_string()); },
                         {std::nullopt, true});
  }
  std::vector<std::string> missing;
  std::vector<std::string> spurious;
  std::set_difference(expected.begin(), expected.end(), found.begin(), found.end(),
                      std::back_inserter(missing));
  std::set_difference(found.begin(), found.end(), expected.begin(), expected.end(),
                      std::back_inserter(spurious));
  const bool counts_match = set.total_count == brute.count;
  const bool match = missing.empty() && spurious.empty() && counts_match;

  if (args.json) {
    ordered_json doc;
    doc["oracle_count"] = brute.count;
    doc["solver_count"] = to_string(set.total_count);
    doc["missing_from_solver"] = missing;
    doc["not_nash"] = spurious;
    doc["match"] = match;
    out << doc.dump(2) << "\n";
  } else {
    out << "oracle equilibria: " << brute.count << "\n";
    out << "solver equilibria: " << to_string(set.total_count) << "\n";
    for (const auto& m : missing) out << "missing from solver: " << m << "\n";
    for (const auto& s : spurious) out << "solver profile is not Nash: " << s << "\n";
    out << (match ? "match" : "MISMATCH") << "\n";
  }
  return match ? exit_code::kFound : exit_code::kMismatch;
}

// ---- continuum -----------------------------------------------------------------

struct ContinuumArgs {
  double alpha = 0.5;
  std::string coord = "uniform:0,1";
  std::string anti = "uniform:0,1";
  double tol = 1e-12;
  std::size_t grid = 10'000;
  bool json = false;
};

int cmd_continuum(const ContinuumArgs& args, std::ostream& out) {
  const auto coord = ContinuumDistribution::parse(args.coord);
  const auto anti = ContinuumDistribution::parse(args.anti);
  const auto sols = solve_continuum(args.alpha, coord, anti, {args.tol, args.grid});
  if (args.json) {
    ordered_json doc;
    doc["alpha"] = args.alpha;
    doc["coord"] = coord.describe();
    doc["anti"] = anti.describe();
    ordered_json list = ordered_json::array();
    for (const auto& s : sols) {
      list.push_back({{"z", s.z_star}, {"z_c", s.z_c_star}, {"z_a", s.z_a_star},
                      {"residual", s.residual}});
    }
    doc["solutions"] = std::move(list);
    out << std::setprecision(15) << doc.dump(2) << "\n";
  } else {
    out << "alpha=" << decimal(args.alpha) << " coord=" << coord.describe()
        << " anti=" << anti.describe() << "\n";
    out << sols.size() << (sols.size() == 1 ? " fixed point" : " fixed points") << "\n";
    for (const auto& s : sols) {
      out << "z*=" << decimal(s.z_star) << " z_c*=" << decimal(s.z_c_star)
          << " z_a*=" << decimal(s.z_a_star) << " residual=" << decimal(s.residual) << "\n";
    }
  }
  return sols.empty() ? exit_code::kNoEquilibrium : exit_code::kFound;
}

// ---- plot-data -------------------------------------------------------------------

struct PlotArgs {
  std::string instance;
  std::vector<double> alphas;
  std::string coord = "uniform:0,1";
  std::string anti = "uniform:0,1";
  std::string out_dir = ".";
  std::size_t resolution = 1000;
};

template <class Points>
void write_curve(const fs::path& path, const std::string& name, const Points& points,
                 std::vector<std::string>& written) {
  auto file = open_output(path);
  file << "z," << name << "\n";
  for (const auto& [z, v] : points) file << decimal(z) << "," << decimal(v) << "\n";
  if (!file) throw OutputError("cannot write " + path.string());
  written.push_back(path.string());
}

int cmd_plot_data(const PlotArgs& args, std::ostream& out) {
  const fs::path dir(args.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw OutputError("cannot create directory " + dir.string());
  std::vector<std::string> written;

  if (!args.instance.empty()) {
    const auto inst = load_instance(args.instance);
    const Population& pop = inst.population;
    const std::size_t n = pop.size();
    const Rational scale(n - 1, n);
    Rational lo = 0;
    Rational hi = 1;
    for (const auto& r : pop.thresholds()) {
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    auto scaled = [&](AgentKind kind) {
      auto ts = pop.thresholds_of(kind);
      for (auto& t : ts) t *= scale;
      return ts;
    };
    if (pop.coordinating_count() > 0) {
      const auto f = build_cdf(pop.thresholds_of(AgentKind::Coordinating));
      write_curve(dir / "F_c.csv", "F_c", f.plot_points(lo, hi), written);
      // F_c(n/(n-1) z) as a function of z.
      const auto fs = build_cdf(scaled(AgentKind::Coordinating));
      write_curve(dir / "F_c_scaled.csv", "F_c_scaled", fs.plot_points(Rational(0), Rational(1)),
                  written);
    }
    if (pop.anti_count() > 0) {
      const auto g = build_ccdf(pop.thresholds_of(AgentKind::AntiCoordinating));
      write_curve(dir / "G_a.csv", "G_a", g.plot_points(lo, hi), written);
      const auto gs = build_ccdf(scaled(AgentKind::AntiCoordinating));
      write_curve(dir / "G_a_scaled.csv", "G_a_scaled", gs.plot_points(Rational(0), Rational(1)),
                  written);
    }
    std::vector<std::pair<Rational, Rational>> grid;
    for (std::size_t k = 0; k <= n; ++k) grid.emplace_back(Rational(k, n), Rational(k, n));
    write_curve(dir / "bisector.csv", "bisector", grid, written);
  } else {
    if (args.alphas.empty()) throw std::invalid_argument("plot-data needs --instance or --alpha");
    const auto coord = ContinuumDistribution::parse(args.coord);
    const auto anti = ContinuumDistribution::parse(args.anti);
    const std::size_t res = std::max<std::size_t>(1, args.resolution);
    write_curve(dir / "F_c.csv", "F_c",
                sample_curve([&](double z) { return coord.cdf(z); }, 0.0, 1.0, res), written);
    write_curve(dir / "G_a.csv", "G_a",
                sample_curve([&](double z) { return anti.ccdf(z); }, 0.0, 1.0, res), written);
    write_curve(dir / "bisector.csv", "bisector",
                sample_curve([](double z) { return z; }, 0.0, 1.0, res), written);
    for (double alpha : args.alphas) {
      if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0,1]");
      write_curve(dir / ("H_alpha_" + decimal(alpha) + ".csv"), "H_alpha",
                  sample_curve([&](double z) { return h_alpha(alpha, coord, anti, z); }, 0.0, 1.0,
                               res),
                  written);
    }
  }
  for (const auto& w : written) out << "wrote " << w << "\n";
  return exit_code::kFound;
}

// ---- dynamics --------------------------------------------------------------------

struct DynamicsArgs {
  std::string instance;
  std::string schedule = "async";
  std::uint64_t seed = 0;
  std::uint64_t steps = 100'000;
  std::string x0;
  std::string out_csv;
  bool json = false;
};

int cmd_dynamics(const DynamicsArgs& args, std::ostream& out) {
  const auto inst = load_instance(args.instance);
  const Population& pop = inst.population;
  ActionProfile x0 = args.x0.empty() ? ActionProfile::uniform(pop.size(), 1)
                                     : ActionProfile::parse(args.x0);
  if (x0.size() != pop.size()) {
    throw std::invalid_argument("--x0 has " + std::to_string(x0.size()) + " actions for " +
                                std::to_string(pop.size()) + " agents");
  }
  Schedule schedule;
  if (args.schedule == "async") {
    schedule = Asynchronous{args.seed};
  } else if (args.schedule == "sync") {
    schedule = Synchronous{};
  } else {
    throw std::invalid_argument("--schedule must be async or sync");
  }
  const auto result = run(pop, x0, schedule, {args.steps, true});

  if (!args.out_csv.empty()) {
    auto file = open_output(args.out_csv);
    file << "step,z,plus,activated\n";
    for (const auto& p : result.trajectory) {
      file << p.step << "," << decimal(p.z) << ","
           << boost::multiprecision::numerator(p.z * Rational(pop.size())) << ",";
      if (p.activated) file << *p.activated;
      file << "\n";
    }
    if (!file) throw OutputError("cannot write " + args.out_csv);
  }

  if (args.json) {
    ordered_json doc;
    doc["schedule"] = args.schedule;
    if (args.schedule == "async") {
      doc["seed"] = args.seed;
      doc["rng"] = result.rng_algorithm;
    }
    if (const auto* c = std::get_if<ConvergedToNash>(&result.outcome)) {
      doc["outcome"] = "converged";
      doc["steps"] = c->steps;
      doc["profile"] = c->profile.to_string();
      doc["z"] = to_string(Rational(c->profile.plus_count(), pop.size()));
    } else if (const auto* c = std::get_if<CycleDetected>(&result.outcome)) {
      doc["outcome"] = "cycle";
      doc["period"] = c->period;
    } else {
      doc["outcome"] = "step-limit";
    }
    doc["final_profile"] = result.final_profile.to_string();
    out << doc.dump(2) << "\n";
  } else {
    out << "schedule: " << args.schedule;
    if (args.schedule == "async") out << " (seed " << args.seed << ", " << result.rng_algorithm << ")";
    out << "\n" << describe(result.outcome) << "\n";
  }
  return exit_code::kFound;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pure Nash equilibria of coordination/anti-coordination threshold games", "cac"};
  app.require_subcommand(1);
  std::function<int()> action;

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solution triples, counts and canonical equilibria");
  solve->add_option("instance", solve_args.instance, "Instance file")->required();
  solve->add_flag("--json", solve_args.json, "Emit JSON");
  solve->add_flag("--enumerate", solve_args.enumerate, "List equilibria of every triple");
  solve->add_option("--max-enumerate", solve_args.max_enumerate, "Cap on listed equilibria");
  solve->callback([&] { action = [&] { return cmd_solve(solve_args, out, err); }; });

  SolveArgs count_args;
  auto* count = app.add_subcommand("count", "Number of pure Nash equilibria");
  count->add_option("instance", count_args.instance, "Instance file")->required();
  count->add_flag("--json", count_args.json, "Emit JSON");
  count->callback([&] { action = [&] { return cmd_count(count_args, out); }; });

  EnumerateArgs enum_args;
  auto* enumerate = app.add_subcommand("enumerate", "Stream equilibria, one per line");
  enumerate->add_option("instance", enum_args.instance, "Instance file")->required();
  enumerate->add_option("--z", enum_args.z, "Only the triple with this z (p/q)");
  enumerate->add_option("--max-enumerate", enum_args.max_enumerate, "Cap on listed equilibria");
  enumerate->callback([&] { action = [&] { return cmd_enumerate(enum_args, out, err); }; });

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Check a profile, or the solver against brute force");
  verify->add_option("instance", verify_args.instance, "Instance file")->required();
  auto* profile_opt = verify->add_option("--profile", verify_args.profile, "Profile such as +-+");
  auto* oracle_opt = verify->add_flag("--oracle", verify_args.oracle, "Compare with brute force");
  profile_opt->excludes(oracle_opt);
  verify->add_option("--max-n", verify_args.max_n, "Brute-force size cap");
  verify->add_flag("--json", verify_args.json, "Emit JSON");
  verify->callback([&] {
    if (verify_args.profile.empty() && !verify_args.oracle) {
      throw CLI::ValidationError("verify", "one of --profile or --oracle is required");
    }
    action = [&] { return cmd_verify(verify_args, out); };
  });

  ContinuumArgs cont_args;
  auto* continuum = app.add_subcommand("continuum", "Fixed points of the infinite-population map");
  continuum->add_option("--alpha", cont_args.alpha, "Share of coordinating agents")->required();
  continuum->add_option("--dist-coord", cont_args.coord, "Coordinating threshold distribution");
  continuum->add_option("--dist-anti", cont_args.anti, "Anti-coordinating threshold distribution");
  continuum->add_option("--tol", cont_args.tol, "Residual tolerance");
  continuum->add_option("--grid", cont_args.grid, "Scan cells on [0,1]");
  continuum->add_flag("--json", cont_args.json, "Emit JSON");
  continuum->callback([&] { action = [&] { return cmd_continuum(cont_args, out); }; });

  PlotArgs plot_args;
  auto* plot = app.add_subcommand("plot-data", "Write curve samples as CSV");
  plot->add_option("--instance", plot_args.instance, "Finite instance file");
  plot->add_option("--alpha", plot_args.alphas, "Continuum alpha (repeatable)");
  plot->add_option("--dist-coord", plot_args.coord, "Coordinating threshold distribution");
  plot->add_option("--dist-anti", plot_args.anti, "Anti-coordinating threshold distribution");
  plot->add_option("--resolution", plot_args.resolution, "Continuum samples per curve");
  plot->add_option("--out", plot_args.out_dir, "Output directory")->required();
  plot->callback([&] { action = [&] { return cmd_plot_data(plot_args, out); }; });

  DynamicsArgs dyn_args;
  auto* dynamics = app.add_subcommand("dynamics", "Simulate best-response dynamics");
  dynamics->add_option("instance", dyn_args.instance, "Instance file")->required();
  dynamics->add_option("--schedule", dyn_args.schedule, "async or sync");
  dynamics->add_option("--seed", dyn_args.seed, "Seed for async activation");
  dynamics->add_option("--steps", dyn_args.steps, "Step limit");
  dynamics->add_option("--x0", dyn_args.x0, "Initial profile (default all +1)");
  dynamics->add_option("--out", dyn_args.out_csv, "Trajectory CSV path");
  dynamics->add_flag("--json", dyn_args.json, "Emit JSON");
  dynamics->callback([&] { action = [&] { return cmd_dynamics(dyn_args, out); }; });

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : exit_code::kInputError;
  }

  try {
    return action();
  } catch (const SizeLimitExceeded& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kSizeRefusal;
  } catch (const EnumerationTooLarge& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kSizeRefusal;
  } catch (const DiscontinuousDistribution& e) {
    err << "error: " << e.what() << " (run `cac solve` on an instance file)\n";
    return exit_code::kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInputError;
  }
}

}  // namespace cac
