// Command-line entry point: monoext <subcommand> [options].

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "monoext/acceptance.hpp"
#include "monoext/continuous_bound.hpp"
#include "monoext/discrete_solver.hpp"
#include "monoext/error.hpp"
#include "monoext/io.hpp"
#include "monoext/oracle.hpp"
#include "monoext/process_bound.hpp"

namespace {

using monoext::io::Json;

constexpr int kExitValidation = 2;
constexpr int kExitCap = 3;
constexpr int kExitUsage = 64;

struct RunConfig {
  double tol = monoext::kDefaultQuadratureTol;
  std::size_t cap = monoext::kDefaultEnumerationCap;
  std::uint64_t seed = 0;
  std::string format = "json";
  int verbosity = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void merge_config(RunConfig& cfg, const Json& j) {
  if (!j.is_object()) throw monoext::ParseError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "tol") {
      cfg.tol = value.get<double>();
    } else if (key == "cap") {
      cfg.cap = value.get<std::size_t>();
    } else if (key == "seed") {
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "format") {
      cfg.format = value.get<std::string>();
    } else if (key == "verbosity") {
      cfg.verbosity = value.get<int>();
    } else {
      throw monoext::ParseError("unknown config key '" + key + "'");
    }
  }
}

void validate(const RunConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw monoext::ParseError("tol must be positive");
  if (cfg.cap < 1) throw monoext::ParseError("cap must be at least 1");
  if (cfg.format != "json" && cfg.format != "csv") throw monoext::ParseError("format must be json or csv");
}

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw monoext::ParseError("MONOEXT_SEED must be an unsigned integer, got '" + text + "'");
  }
}

std::string csv_cell(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void emit(const Json& out, const RunConfig& cfg) {
  if (cfg.format == "csv") {
    // Arrays of flat records become tables; objects become key,value rows.
    for (const auto& [key, value] : out.items()) {
      if (value.is_array() && !value.empty() && value.front().is_object()) {
        bool header = true;
        for (const auto& row : value) {
          std::string line;
          for (const auto& [k, v] : row.items()) line += (line.empty() ? "" : ",") + (header ? k : csv_cell(v));
          if (header) {
            std::cout << line << '\n';
            header = false;
            line.clear();
            for (const auto& [k, v] : row.items()) line += (line.empty() ? "" : ",") + csv_cell(v);
          }
          std::cout << line << '\n';
        }
      } else if (!value.is_structured()) {
        std::cout << key << ',' << csv_cell(value) << '\n';
      }
    }
    return;
  }
  std::cout << out.dump(2) << '\n';
}

Json error_object(const std::string& code, const std::string& message) {
  Json e;
  e["error"] = {{"code", code}, {"message", message}};
  return e;
}

struct DiscreteArgs {
  std::string poset, scale, query, mode = "min";
  bool witness = false;
};

struct Problem {
  monoext::Poset poset;
  monoext::ValueScale scale;
  monoext::QuerySet query;
};

Problem load_problem(const DiscreteArgs& a) {
  auto poset = monoext::io::poset_from_json(monoext::io::load_json(a.poset));
  auto scale = monoext::io::scale_from_json(monoext::io::load_json(a.scale));
  auto query = monoext::io::query_from_json(poset, monoext::io::load_json(a.query));
  return Problem{std::move(poset), std::move(scale), std::move(query)};
}

Json result_json(const Problem& p, const monoext::BoundResult& r, bool witness) {
  Json j = monoext::io::to_json(p.poset, p.query, p.scale, r);
  if (!witness) {
    j.erase("witness_fn");
    j.erase("witness_order");
  }
  return j;
}

Json run_solve(const DiscreteArgs& a, const RunConfig& cfg) {
  const auto p = load_problem(a);
  auto one = [&](monoext::Mode mode) {
    return result_json(p, monoext::solve(p.poset, p.scale, p.query, mode, cfg.cap), a.witness);
  };
  if (a.mode == "min") return one(monoext::Mode::min);
  if (a.mode == "max") return one(monoext::Mode::max);
  Json out;
  out["min"] = one(monoext::Mode::min);
  out["max"] = one(monoext::Mode::max);
  return out;
}

Json run_oracle(const DiscreteArgs& a, const RunConfig& cfg) {
  const auto p = load_problem(a);
  const auto brute = monoext::brute_min_max(p.poset, p.scale, p.query, cfg.cap);
  Json out;
  if (a.mode == "max") {
    out = result_json(p, brute.max, a.witness);
  } else if (a.mode == "min") {
    out = result_json(p, brute.min, a.witness);
  } else {
    out["min"] = result_json(p, brute.min, a.witness);
    out["max"] = result_json(p, brute.max, a.witness);
  }
  out["count"] = brute.count;
  return out;
}

Json run_grid_exp(double alpha, const std::vector<std::size_t>& ns, std::size_t k) {
  Json out;
  Json records = Json::array();
  double num = 0.0, den = 0.0;
  for (std::size_t n : ns) {
    const auto rec = monoext::grid_experiment(alpha, n, k);
    records.push_back(monoext::io::to_json(rec));
    num += rec.error / static_cast<double>(n);
    den += 1.0 / static_cast<double>(n * n);
  }
  out["records"] = records;
  out["fitted_constant"] = num / den;
  return out;
}

Json run_cont_bound(const std::string& m, const std::string& t, const RunConfig& cfg) {
  Json out;
  out["bound"] =
      monoext::line_integral_bound(monoext::io::map_from_argument(m), monoext::io::map_from_argument(t), cfg.tol);
  return out;
}

Json run_cont_extremal(const std::string& m_arg, const std::string& t_arg, std::size_t grid,
                       const std::string& out_path, const RunConfig& cfg, bool& passed) {
  const auto m = monoext::io::map_from_argument(m_arg);
  const auto t = monoext::io::map_from_argument(t_arg);
  const monoext::ExtremalSurface f(m, t);
  if (!out_path.empty()) {
    std::ofstream csv(out_path);
    if (!csv) throw monoext::ParseError("cannot write '" + out_path + "'");
    csv.precision(17);
    csv << "x,y,value\n";
    const double h = 1.0 / static_cast<double>(grid);
    for (std::size_t i = 0; i < grid; ++i) {
      for (std::size_t j = 0; j < grid; ++j) {
        const double x = (static_cast<double>(i) + 0.5) * h;
        const double y = (static_cast<double>(j) + 0.5) * h;
        csv << x << ',' << y << ',' << f(x, y) << '\n';
      }
    }
  }
  const auto report = monoext::check_surface_membership(f, m, grid);
  passed = report.passed;
  Json out;
  out["bound"] = monoext::line_integral_bound(m, t, cfg.tol);
  out["surface_integral"] = monoext::line_integral_on_surface(m, t, cfg.tol);
  out["membership_report"] = monoext::io::to_json(report);
  return out;
}

monoext::EmpiricalRV load_tau(const std::string& path, std::optional<double> jitter, std::uint64_t seed) {
  auto tau = monoext::io::samples_from_csv(path);
  if (jitter) tau = monoext::jitter_tau(tau, *jitter, seed);
  return tau;
}

std::pair<std::size_t, std::size_t> parse_grid_pair(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) {
      const auto n = std::stoul(text);
      return {n, n};
    }
    return {std::stoul(text.substr(0, comma)), std::stoul(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("--verify expects grid_t,grid_y, got '" + text + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extremal values of sums of monotone functions on posets and their continuous analogues",
               "monoext"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  std::optional<std::uint64_t> seed_flag;
  std::optional<double> tol_flag;
  std::optional<std::size_t> cap_flag;
  std::optional<std::string> format_flag;
  int verbosity_flag = 0;
  app.add_option("--config", config_path, "JSON file with tol, cap, seed, format, verbosity")->check(CLI::ExistingFile);
  app.add_option("--seed", seed_flag, "Random seed (MONOEXT_SEED overrides the config file)");
  app.add_option("--tol", tol_flag, "Quadrature tolerance");
  app.add_option("--cap", cap_flag, "Enumeration cap");
  app.add_option("--format", format_flag, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("-v,--verbose", verbosity_flag, "Report timings on standard error");

  DiscreteArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Exact min/max of the query sum over monotone bijections");
  solve->add_option("--poset", solve_args.poset, "Poset JSON")->required()->check(CLI::ExistingFile);
  solve->add_option("--scale", solve_args.scale, "Scale JSON")->required()->check(CLI::ExistingFile);
  solve->add_option("--query", solve_args.query, "Query JSON")->required()->check(CLI::ExistingFile);
  solve->add_option("--mode", solve_args.mode, "min, max or both")->check(CLI::IsMember({"min", "max", "both"}));
  solve->add_flag("--witness", solve_args.witness, "Include the full witness function");

  DiscreteArgs oracle_args;
  oracle_args.mode = "both";
  auto* oracle = app.add_subcommand("oracle", "Brute force over all linear extensions");
  oracle->add_option("--poset", oracle_args.poset, "Poset JSON")->required()->check(CLI::ExistingFile);
  oracle->add_option("--scale", oracle_args.scale, "Scale JSON")->required()->check(CLI::ExistingFile);
  oracle->add_option("--query", oracle_args.query, "Query JSON")->required()->check(CLI::ExistingFile);
  oracle->add_option("--mode", oracle_args.mode, "min, max or both")->check(CLI::IsMember({"min", "max", "both"}));
  oracle->add_flag("--witness", oracle_args.witness, "Include the full witness function");

  double alpha = 0.5;
  std::vector<std::size_t> grid_ns;
  std::size_t grid_k = 10;
  auto* grid_exp = app.add_subcommand("grid-exp", "Discretized constant-path construction on the n x n grid");
  grid_exp->add_option("--alpha", alpha, "Path level in (0,1]")->required();
  grid_exp->add_option("--n", grid_ns, "Grid sizes (repeatable)")->required();
  grid_exp->add_option("--k", grid_k, "Block size dividing n");

  std::string m_arg, t_arg;
  auto* cont_bound = app.add_subcommand("cont-bound", "Lower bound for the line integral along a monotone path");
  cont_bound->add_option("--m", m_arg, "Map JSON or shorthand (id, pow:p)")->required();
  cont_bound->add_option("--t", t_arg, "Path JSON or shorthand (lin, const:a)")->required();

  std::size_t surface_grid = 400;
  std::string surface_out;
  auto* cont_extremal = app.add_subcommand("cont-extremal", "Sample the extremal surface and check membership");
  cont_extremal->add_option("--m", m_arg, "Map JSON or shorthand")->required();
  cont_extremal->add_option("--t", t_arg, "Path JSON or shorthand")->required();
  cont_extremal->add_option("--grid", surface_grid, "Cells per side")->check(CLI::Range(2, 100000));
  cont_extremal->add_option("--out", surface_out, "CSV file for x,y,value rows");

  std::string tau_path;
  bool simplified = false;
  std::optional<double> jitter;
  auto* proc_bound = app.add_subcommand("proc-bound", "Lower bound for the expectation at a random time");
  proc_bound->add_option("--m", m_arg, "Map JSON or shorthand")->required();
  proc_bound->add_option("--tau", tau_path, "Samples CSV")->required()->check(CLI::ExistingFile);
  proc_bound->add_flag("--simplified", simplified, "Also report the m = id closed form");
  proc_bound->add_option("--jitter", jitter, "Spread tied samples by less than this width");

  std::size_t trials = 100'000;
  std::string verify_arg;
  auto* proc_sim = app.add_subcommand("proc-sim", "Monte Carlo expectation of the extremal process");
  proc_sim->add_option("--m", m_arg, "Map JSON or shorthand")->required();
  proc_sim->add_option("--tau", tau_path, "Samples CSV")->required()->check(CLI::ExistingFile);
  proc_sim->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  proc_sim->add_option("--verify", verify_arg, "Membership grid as grid_t,grid_y");
  proc_sim->add_option("--jitter", jitter, "Spread tied samples by less than this width");

  std::vector<int> only;
  std::size_t selftest_trials = 1'000'000;
  auto* selftest = app.add_subcommand("selftest", "Run every acceptance criterion");
  selftest->add_option("--only", only, "Criterion ids to run")->check(CLI::Range(1, monoext::acceptance::kCriterionCount));
  selftest->add_option("--trials", selftest_trials, "Monte Carlo trials")->check(CLI::PositiveNumber);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (!config_path.empty()) merge_config(cfg, monoext::io::load_json(config_path));
    if (const char* env = std::getenv("MONOEXT_SEED")) cfg.seed = parse_seed(env);
    if (seed_flag) cfg.seed = *seed_flag;
    if (tol_flag) cfg.tol = *tol_flag;
    if (cap_flag) cfg.cap = *cap_flag;
    if (format_flag) cfg.format = *format_flag;
    if (verbosity_flag) cfg.verbosity = verbosity_flag;
    validate(cfg);

    int status = 0;
    Json out;
    if (*solve) {
      out = run_solve(solve_args, cfg);
    } else if (*oracle) {
      out = run_oracle(oracle_args, cfg);
    } else if (*grid_exp) {
      out = run_grid_exp(alpha, grid_ns, grid_k);
    } else if (*cont_bound) {
      out = run_cont_bound(m_arg, t_arg, cfg);
    } else if (*cont_extremal) {
      bool passed = false;
      out = run_cont_extremal(m_arg, t_arg, surface_grid, surface_out, cfg, passed);
      if (!passed) status = kExitValidation;
    } else if (*proc_bound) {
      const auto m = monoext::io::map_from_argument(m_arg);
      const auto tau = load_tau(tau_path, jitter, cfg.seed);
      out["bound"] = monoext::expectation_bound(m, tau, cfg.tol);
      if (simplified) out["simplified"] = monoext::simplified_bound(tau);
    } else if (*proc_sim) {
      const auto m = monoext::io::map_from_argument(m_arg);
      const monoext::ExtremalProcess proc(m, load_tau(tau_path, jitter, cfg.seed));
      const auto est = monoext::expectation_at_tau(proc, monoext::ExpectationMode::montecarlo, trials, cfg.seed);
      out["bound"] = monoext::expectation_bound(m, proc.tau(), cfg.tol);
      out["expectation"] = est.value;
      out["stderr"] = est.std_error;
      out["trials"] = est.trials;
      out["seed"] = cfg.seed;
      if (!verify_arg.empty()) {
        const auto [gt, gy] = parse_grid_pair(verify_arg);
        const auto report = monoext::check_process_membership(
            [&](double t, double y) { return proc(t, y); }, m, gt, gy, 1.0 / static_cast<double>(proc.tau().size()));
        out["membership_report"] = monoext::io::to_json(report);
        if (!report.passed) status = kExitValidation;
      }
    } else if (*selftest) {
      monoext::acceptance::Options opt;
      if (cfg.seed != 0) opt.seed = cfg.seed;
      opt.mc_trials = selftest_trials;
      bool all = true;
      auto report = [&](const monoext::acceptance::CriterionResult& r) {
        std::cout << monoext::acceptance::format_line(r) << std::endl;
        all = all && r.passed;
      };
      if (only.empty()) {
        monoext::acceptance::run_all(opt, report);
      } else {
        for (int id : only) report(monoext::acceptance::run_criterion(id, opt));
      }
      std::cout << (all ? "selftest passed" : "selftest FAILED") << std::endl;
      return all ? 0 : 1;
    }
    emit(out, cfg);
    return status;
  } catch (const UsageError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const monoext::CapExceeded& e) {
    emit(error_object(e.code(), e.what()), RunConfig{});
    return kExitCap;
  } catch (const monoext::Error& e) {
    emit(error_object(e.code(), e.what()), RunConfig{});
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    emit(error_object("ParseError", e.what()), RunConfig{});
    return kExitValidation;
  }
}
