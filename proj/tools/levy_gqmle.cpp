// levy_gqmle: simulate, fit and analyse Levy-driven SDEs from the command line.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "levy_gqmle/asymptotics.hpp"
#include "levy_gqmle/errors.hpp"
#include "levy_gqmle/experiment.hpp"
#include "levy_gqmle/file_io.hpp"
#include "levy_gqmle/gqmle.hpp"
#include "levy_gqmle/json_io.hpp"
#include "levy_gqmle/moments.hpp"
#include "levy_gqmle/report.hpp"
#include "levy_gqmle/sde.hpp"

using namespace levy_gqmle;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string out_dir;
  std::vector<std::string> formats;
};

Json load_config(const Common& c) {
  if (c.config.empty()) return Json::object();
  return parse_json(read_file(c.config));
}

// --seed, then LEVY_GQMLE_SEED, then the config file, then 0.
std::uint64_t resolve_seed(const Common& c, const Json& cfg) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("LEVY_GQMLE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Usage, "LEVY_GQMLE_SEED must be a non-negative integer");
    }
  }
  if (cfg.contains("seed")) return cfg.at("seed").get<std::uint64_t>();
  return 0;
}

unsigned resolve_threads(const Common& c) {
  return c.threads && *c.threads > 0 ? *c.threads : default_threads();
}

bool wants(const Common& c, const std::string& f) {
  if (c.formats.empty()) return true;
  for (const auto& x : c.formats) {
    if (x == f) return true;
  }
  return false;
}

void emit(const Common& c, const std::string& name, const std::string& body) {
  if (c.out_dir.empty()) {
    std::cout << body;
  } else {
    const auto target = std::filesystem::path(c.out_dir) / name;
    write_file_atomic(target, body);
    std::cerr << "wrote " << target.string() << "\n";
  }
}

LevyLawSpec noise_from(const Json& cfg, const std::string& case_name) {
  if (!case_name.empty()) return noise_for(noise_case_from_string(case_name));
  if (cfg.contains("noise")) return levy_spec_from_json(cfg.at("noise"));
  if (cfg.contains("case")) return noise_for(noise_case_from_string(cfg.at("case")));
  return noise_for(NoiseCase::I);
}

TrueModel truth_from(const Json& cfg) {
  return cfg.contains("true_model") ? true_model_from_json(cfg.at("true_model"))
                                    : reference_true_model();
}

ModelSpec model_from(const Json& cfg) {
  return cfg.contains("model") ? model_spec_from_json(cfg.at("model")) : reference_fit_model();
}

SamplePath read_path_csv(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + file);
  return load_path(in);
}

std::string g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage:
    case ErrorKind::GridFormat:
    case ErrorKind::Io:
    case ErrorKind::ParameterDomain:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation, staged Gaussian quasi-likelihood fitting and asymptotic analysis "
               "for Levy-driven SDEs"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--config", common.config, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", common.seed, "master seed (fallback: LEVY_GQMLE_SEED)");
  app.add_option("--threads", common.threads, "worker threads (default: all cores)");
  app.add_option("--out-dir", common.out_dir, "directory for output files (default: stdout)");
  app.add_option("--format", common.formats, "output formats")
      ->check(CLI::IsMember({"csv", "json", "svg"}));

  // simulate
  auto* sim = app.add_subcommand("simulate", "Euler-Maruyama path to CSV (t,x)");
  std::string sim_case;
  std::optional<long> sim_n;
  std::optional<double> sim_h;
  std::optional<double> sim_x0;
  std::optional<int> sim_refine;
  sim->add_option("--case", sim_case, "noise case i|ii|iii|diffusion");
  sim->add_option("--n", sim_n, "number of steps");
  sim->add_option("--step", sim_h, "observation step h");
  sim->add_option("--x0", sim_x0, "initial state");
  sim->add_option("--refine", sim_refine, "Euler sub-steps per observation step");

  // estimate
  auto* est = app.add_subcommand("estimate", "staged GQMLE on a path CSV");
  std::string est_path;
  bool est_newton = false;
  bool est_literal = false;
  est->add_option("path", est_path, "path CSV (t,x)")->required();
  est->add_flag("--force-newton", est_newton, "use Newton instead of the closed forms");
  est->add_flag("--literal-denominator", est_literal,
                "also report the display variant of the explicit alpha estimator");

  // mc
  auto* mc = app.add_subcommand("mc", "Monte Carlo replication study");
  std::vector<std::string> mc_cases;
  std::optional<long> mc_reps;
  std::optional<double> mc_step;
  mc->add_option("--case", mc_cases, "noise cases (default: all four)");
  mc->add_option("--replications", mc_reps, "replications per design");
  mc->add_option("--max-sim-step", mc_step, "Euler sub-step cap (0: observation grid)");

  // asymptotics
  auto* asy = app.add_subcommand("asymptotics", "Gamma, Sigma and V at the optimal value");
  std::string asy_case = "i";
  std::optional<double> asy_horizon;
  std::optional<long> asy_paths;
  std::optional<double> asy_tmax;
  asy->add_option("--case", asy_case, "noise case i|ii|iii");
  asy->add_option("--horizon", asy_horizon, "invariant-sample time span");
  asy->add_option("--inner-paths", asy_paths, "EPE inner Monte Carlo paths");
  asy->add_option("--t-max", asy_tmax, "EPE time truncation");

  // optimal
  auto* opt = app.add_subcommand("optimal", "closed-form optimal values");
  std::string opt_case = "i";
  opt->add_option("--case", opt_case, "noise case i|ii|iii|diffusion");

  // moments
  auto* mom = app.add_subcommand("moments", "residual method of moments on a path CSV");
  std::string mom_path;
  std::vector<int> mom_orders{2, 3, 4};
  mom->add_option("path", mom_path, "path CSV (t,x)")->required();
  mom->add_option("--r", mom_orders, "moment orders (>= 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const Json cfg = load_config(common);
    const std::uint64_t seed = resolve_seed(common, cfg);
    const unsigned threads = resolve_threads(common);

    if (*sim) {
      PathConfig pc = cfg.contains("path") ? path_config_from_json(cfg.at("path")) : PathConfig{};
      if (sim_n) pc.n = *sim_n;
      if (sim_h) pc.h = *sim_h;
      if (sim_x0) pc.x0 = *sim_x0;
      if (sim_refine) pc.refine = *sim_refine;
      pc.seed = seed;
      const SamplePath path = simulate_euler(truth_from(cfg), noise_from(cfg, sim_case), pc);
      std::ostringstream out;
      write_path(path, out);
      emit(common, "path.csv", out.str());
    } else if (*est) {
      const SamplePath path = read_path_csv(est_path);
      EstimationOptions eo;
      eo.force_newton = est_newton;
      const ModelSpec model = model_from(cfg);
      Json j = to_json(estimate_staged(path, model, eo));
      j["n"] = path.n();
      j["h"] = path.h;
      if (est_literal) j["alpha_hat_literal_denominator"] = closed_form_example(path, true).alpha_hat;
      emit(common, "estimate.json", j.dump(2) + "\n");
    } else if (*mc) {
      ExperimentDesign base =
          cfg.contains("experiment") ? experiment_design_from_json(cfg.at("experiment"))
                                     : ExperimentDesign{};
      if (mc_reps) base.replications = *mc_reps;
      if (mc_step) base.max_sim_step = *mc_step;
      base.seed = seed;
      base.threads = threads;
      std::vector<NoiseCase> cases;
      if (!mc_cases.empty()) {
        for (const auto& c : mc_cases) cases.push_back(noise_case_from_string(c));
      } else if (cfg.contains("experiment") && cfg.at("experiment").contains("case")) {
        cases.push_back(base.noise_case);
      } else {
        cases = all_noise_cases();
      }
      std::vector<McSummary> summaries;
      for (NoiseCase c : cases) {
        ExperimentDesign d = base;
        d.noise_case = c;
        summaries.push_back(run_mc(d));
      }
      if (common.out_dir.empty()) {
        std::cout << table_csv(summaries);
      } else {
        std::vector<std::string> formats = common.formats;
        if (formats.empty()) formats = {"csv", "json", "svg"};
        for (const auto& f : emit_report(summaries, common.out_dir, formats)) {
          std::cerr << "wrote " << f << "\n";
        }
      }
    } else if (*asy) {
      const NoiseCase c = noise_case_from_string(asy_case);
      AsymptoticsOptions ao;
      if (asy_horizon) ao.budget.horizon = *asy_horizon;
      if (asy_paths) ao.epe.inner_paths = *asy_paths;
      if (asy_tmax) ao.epe.t_max = *asy_tmax;
      ao.epe.threads = threads;
      ao.sigma.threads = threads;
      const AsymptoticsResult r = compute_asymptotics(reference_fit_model(), reference_true_model(),
                                                      noise_for(c), optimal_values(c), seed, ao);
      Json j = to_json(r);
      j["case"] = to_string(c);
      j["seed"] = seed;
      std::ostringstream csv;
      csv << "x,f1,f2,se_f1,se_f2\n";
      for (std::size_t i = 0; i < r.f1.grid.size(); ++i) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.f1.grid[i],
                      r.f1.values[i], r.f2.values[i], r.f1.se[i], r.f2.se[i]);
        csv << buf;
      }
      if (wants(common, "json")) emit(common, "asymptotics.json", j.dump(2) + "\n");
      if (wants(common, "csv")) emit(common, "epe.csv", csv.str());
    } else if (*opt) {
      const NoiseCase c = noise_case_from_string(opt_case);
      const ThetaStar t = optimal_values(c);
      if (!common.formats.empty() && common.formats.front() == "json") {
        Json j{{"case", to_string(c)}, {"alpha_star", t.alpha}, {"gamma_star", t.gamma}};
        emit(common, "optimal.json", j.dump(2) + "\n");
      } else {
        emit(common, "optimal.txt",
             "alpha_star " + g12(t.alpha) + "\ngamma_star " + g12(t.gamma) + "\n");
      }
    } else if (*mom) {
      const SamplePath path = read_path_csv(mom_path);
      const ModelSpec model = model_from(cfg);
      const EstimateResult fit = estimate_staged(path, model);
      std::ostringstream csv;
      csv << "r,estimate\n";
      for (int r : mom_orders) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%d,%.17g\n", r, residual_moment(path, fit, model, r));
        csv << buf;
      }
      emit(common, "moments.csv", csv.str());
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const Json::exception& e) {
    std::cerr << "error (usage): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
