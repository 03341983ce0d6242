#include "jointboost/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "jointboost/boosting.hpp"
#include "jointboost/config.hpp"
#include "jointboost/csv.hpp"
#include "jointboost/replicate.hpp"
#include "jointboost/simulation.hpp"
#include "jointboost/tuning.hpp"
#include "jointboost/types.hpp"

namespace jointboost {

namespace {

using njson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Small output helpers

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot write output", {"cannot open '" + path + "'"});
  out << content;
  if (!out) throw validation_error("cannot write output", {"write to '" + path + "' failed"});
}

void write_json(const std::string& path, const njson& j) {
  write_text(path, j.dump(2) + "\n");
}

njson vec_json(const VectorXd& v) {
  njson arr = njson::array();
  for (int k = 0; k < v.size(); ++k) arr.push_back(v[k]);
  return arr;
}

/// +/-infinity cannot be represented in JSON; report those entries as null.
njson finite_or_null(const VectorXd& v) {
  njson arr = njson::array();
  for (int k = 0; k < v.size(); ++k) {
    if (std::isfinite(v[k])) {
      arr.push_back(v[k]);
    } else {
      arr.push_back(nullptr);
    }
  }
  return arr;
}

njson mask_json(const std::vector<char>& mask) {
  njson arr = njson::array();
  for (char c : mask) arr.push_back(c != 0);
  return arr;
}

// ---------------------------------------------------------------------------
// Config-file -> typed configuration, plus the effective-config JSON echo

SimulationConfig simulation_from(const KeyValueConfig& cfg) {
  SimulationConfig sim;
  sim.n = cfg.get_int("n", 0);
  sim.n_i = cfg.get_int("n_i", 0);
  sim.true_state.beta0 = cfg.get_double("true_beta0", 0.0);
  const auto bl = cfg.get_doubles("true_beta_long", {});
  const auto bs = cfg.get_doubles("true_beta_surv", {});
  const auto bls = cfg.get_doubles("true_beta_shared", {});
  sim.true_state.beta_long = Eigen::Map<const VectorXd>(bl.data(), bl.size());
  sim.true_state.beta_surv = Eigen::Map<const VectorXd>(bs.data(), bs.size());
  sim.true_state.beta_shared = Eigen::Map<const VectorXd>(bls.data(), bls.size());
  sim.true_state.beta_time = cfg.get_double("true_beta_time", 0.0);
  sim.true_state.alpha = cfg.get_double("true_alpha", 0.0);
  sim.true_state.lambda0 = cfg.get_double("true_lambda0", 1.0);
  sim.true_state.sigma2 = cfg.get_double("true_sigma2", 1.0);
  sim.re_sd_intercept = cfg.get_double("re_sd_intercept", sim.re_sd_intercept);
  sim.re_sd_slope = cfg.get_double("re_sd_slope", sim.re_sd_slope);
  sim.n_noise_long = cfg.get_int("n_noise_long", 0);
  sim.n_noise_surv = cfg.get_int("n_noise_surv", 0);
  sim.n_noise_shared = cfg.get_int("n_noise_shared", 0);
  sim.covariate_low = cfg.get_double("covariate_low", sim.covariate_low);
  sim.covariate_high = cfg.get_double("covariate_high", sim.covariate_high);
  if (cfg.has("surv_covariate_low"))
    sim.surv_covariate_low = cfg.get_double("surv_covariate_low", 0.0);
  if (cfg.has("surv_covariate_high"))
    sim.surv_covariate_high = cfg.get_double("surv_covariate_high", 0.0);
  return sim;
}

njson simulation_json(const SimulationConfig& sim) {
  njson j;
  j["n"] = sim.n;
  j["n_i"] = sim.n_i;
  j["true_beta0"] = sim.true_state.beta0;
  j["true_beta_long"] = vec_json(sim.true_state.beta_long);
  j["true_beta_surv"] = vec_json(sim.true_state.beta_surv);
  j["true_beta_shared"] = vec_json(sim.true_state.beta_shared);
  j["true_beta_time"] = sim.true_state.beta_time;
  j["true_alpha"] = sim.true_state.alpha;
  j["true_lambda0"] = sim.true_state.lambda0;
  j["true_sigma2"] = sim.true_state.sigma2;
  j["re_sd_intercept"] = sim.re_sd_intercept;
  j["re_sd_slope"] = sim.re_sd_slope;
  j["n_noise_long"] = sim.n_noise_long;
  j["n_noise_surv"] = sim.n_noise_surv;
  j["n_noise_shared"] = sim.n_noise_shared;
  j["covariate_low"] = sim.covariate_low;
  j["covariate_high"] = sim.covariate_high;
  j["surv_covariate_low"] =
      sim.surv_covariate_low ? njson(*sim.surv_covariate_low) : njson(nullptr);
  j["surv_covariate_high"] =
      sim.surv_covariate_high ? njson(*sim.surv_covariate_high) : njson(nullptr);
  j["seed"] = sim.seed;
  return j;
}

BoostingConfig boosting_from(const KeyValueConfig& cfg, bool with_m_stop) {
  BoostingConfig b;
  if (with_m_stop) {
    b.m_stop_long = cfg.get_int("m_long", 0);
    b.m_stop_surv = cfg.get_int("m_surv", 0);
    b.m_stop_shared = cfg.get_int("m_shared", 0);
  }
  b.nu_long = cfg.get_double("nu_long", b.nu_long);
  b.nu_surv = cfg.get_double("nu_surv", b.nu_surv);
  b.nu_shared = cfg.get_double("nu_shared", b.nu_shared);
  b.re_ridge = cfg.get_double("re_ridge", b.re_ridge);
  b.alpha_min = cfg.get_double("alpha_min", b.alpha_min);
  b.alpha_max = cfg.get_double("alpha_max", b.alpha_max);
  b.alpha_tol = cfg.get_double("alpha_tol", b.alpha_tol);
  return b;
}

njson boosting_json(const BoostingConfig& b, bool with_m_stop) {
  njson j;
  if (with_m_stop) {
    j["m_long"] = b.m_stop_long;
    j["m_surv"] = b.m_stop_surv;
    j["m_shared"] = b.m_stop_shared;
  }
  j["nu_long"] = b.nu_long;
  j["nu_surv"] = b.nu_surv;
  j["nu_shared"] = b.nu_shared;
  j["re_ridge"] = b.re_ridge;
  j["alpha_min"] = b.alpha_min;
  j["alpha_max"] = b.alpha_max;
  j["alpha_tol"] = b.alpha_tol;
  return j;
}

Grid grid_from(const KeyValueConfig& cfg) {
  Grid grid;
  grid.m_long = cfg.get_ints("grid_long", {});
  grid.m_surv = cfg.get_ints("grid_surv", {});
  grid.m_shared = cfg.get_ints("grid_shared", {});
  return grid;
}

njson grid_json(const Grid& grid) {
  njson j;
  j["grid_long"] = grid.m_long;
  j["grid_surv"] = grid.m_surv;
  j["grid_shared"] = grid.m_shared;
  return j;
}

// ---------------------------------------------------------------------------
// Parameter naming shared by the fit and replicate reports

std::vector<std::string> parameter_names(const std::vector<std::string>& long_names,
                                         const std::vector<std::string>& shared_names,
                                         const std::vector<std::string>& surv_names) {
  std::vector<std::string> names;
  names.push_back("beta0");
  for (const auto& n : long_names) names.push_back("l_" + n);
  names.push_back("time");
  for (const auto& n : shared_names) names.push_back("ls_" + n);
  for (const auto& n : surv_names) names.push_back("s_" + n);
  names.push_back("alpha");
  names.push_back("lambda0");
  names.push_back("sigma2");
  return names;
}

std::vector<double> parameter_values(const ParameterState& st) {
  std::vector<double> vals;
  vals.push_back(st.beta0);
  for (int k = 0; k < st.beta_long.size(); ++k) vals.push_back(st.beta_long[k]);
  vals.push_back(st.beta_time);
  for (int k = 0; k < st.beta_shared.size(); ++k) vals.push_back(st.beta_shared[k]);
  for (int k = 0; k < st.beta_surv.size(); ++k) vals.push_back(st.beta_surv[k]);
  vals.push_back(st.alpha);
  vals.push_back(st.lambda0);
  vals.push_back(st.sigma2);
  return vals;
}

const char* status_name(StepSelection::Status s) {
  switch (s) {
    case StepSelection::Status::Selected: return "selected";
    case StepSelection::Status::Skipped: return "skipped";
    case StepSelection::Status::NoCandidates: return "no_candidates";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Fit outputs (also produced by `tune` when it refits at the best triple)

void write_fit_outputs(const std::string& prefix, const FitResult& fit,
                       const LongitudinalDataset& longitudinal,
                       const SurvivalDataset& survival) {
  const auto names =
      parameter_names(longitudinal.long_names, longitudinal.shared_names, survival.surv_names);

  {
    std::ostringstream os;
    os << "parameter,value\n";
    const auto vals = parameter_values(fit.final_state);
    for (std::size_t k = 0; k < names.size(); ++k)
      os << names[k] << ',' << format_double(vals[k]) << "\n";
    for (int i = 0; i < longitudinal.n_individuals(); ++i)
      os << "g0_" << longitudinal.external_id[static_cast<std::size_t>(i)] << ','
         << format_double(fit.final_state.gamma0[i]) << "\n";
    for (int i = 0; i < longitudinal.n_individuals(); ++i)
      os << "g1_" << longitudinal.external_id[static_cast<std::size_t>(i)] << ','
         << format_double(fit.final_state.gamma1[i]) << "\n";
    write_text(prefix + "_coefficients.csv", os.str());
  }

  {
    std::ostringstream os;
    os << "iteration";
    for (const auto& n : names) os << ',' << n;
    os << "\n";
    for (std::size_t m = 0; m < fit.paths.size(); ++m) {
      os << m;
      for (double v : parameter_values(fit.paths[m])) os << ',' << format_double(v);
      os << "\n";
    }
    write_text(prefix + "_paths.csv", os.str());
  }

  {
    std::ostringstream os;
    os << "iteration,step,status,learner\n";
    for (std::size_t m = 0; m < fit.selections.size(); ++m) {
      const auto& it = fit.selections[m];
      const StepSelection* steps[3] = {&it.longitudinal, &it.survival, &it.shared};
      const char* step_names[3] = {"longitudinal", "survival", "shared"};
      for (int s = 0; s < 3; ++s) {
        os << (m + 1) << ',' << step_names[s] << ',' << status_name(steps[s]->status) << ','
           << (steps[s]->status == StepSelection::Status::Selected ? steps[s]->label : "")
           << "\n";
      }
    }
    write_text(prefix + "_selection.csv", os.str());
  }

  {
    std::ostringstream os;
    os << "iteration,train_risk\n";
    for (std::size_t m = 0; m < fit.train_risk.size(); ++m)
      os << m << ',' << format_double(fit.train_risk[m]) << "\n";
    write_text(prefix + "_risk.csv", os.str());
  }
}

// ---------------------------------------------------------------------------
// Commands

struct CommonArgs {
  std::string config_path;
  std::string out;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string long_path, surv_path;
  std::string test_long_path, test_surv_path;
};

KeyValueConfig load_config(const CommonArgs& args) {
  if (args.config_path.empty()) return KeyValueConfig{};
  return KeyValueConfig::parse_file(args.config_path);
}

std::uint64_t require_seed(const CommonArgs& args, const char* command) {
  if (!args.seed) {
    throw validation_error("missing seed",
                           {std::string(command) + " draws random numbers; pass --seed"});
  }
  return *args.seed;
}

int cmd_simulate(const CommonArgs& args) {
  const KeyValueConfig cfg = load_config(args);
  SimulationConfig sim = simulation_from(cfg);
  cfg.fail_on_unused();
  sim.seed = require_seed(args, "simulate");
  sim.check();

  const SimulatedData data = simulate(sim);
  write_longitudinal_csv(args.out + "_long.csv", data.longitudinal);
  write_survival_csv(args.out + "_surv.csv", data.survival);

  njson truth;
  truth["informative"] = {{"long", mask_json(data.truth.informative_long)},
                          {"surv", mask_json(data.truth.informative_surv)},
                          {"shared", mask_json(data.truth.informative_shared)}};
  njson params;
  params["beta0"] = data.truth.state.beta0;
  params["beta_long"] = vec_json(data.truth.state.beta_long);
  params["beta_surv"] = vec_json(data.truth.state.beta_surv);
  params["beta_shared"] = vec_json(data.truth.state.beta_shared);
  params["beta_time"] = data.truth.state.beta_time;
  params["alpha"] = data.truth.state.alpha;
  params["lambda0"] = data.truth.state.lambda0;
  params["sigma2"] = data.truth.state.sigma2;
  truth["parameters"] = params;
  truth["random_effects"] = {{"gamma0", vec_json(data.truth.state.gamma0)},
                             {"gamma1", vec_json(data.truth.state.gamma1)}};
  truth["uncensored_time"] = finite_or_null(data.truth.uncensored_time);
  write_json(args.out + "_truth.json", truth);

  njson run;
  run["command"] = "simulate";
  run["out"] = args.out;
  run["config"] = simulation_json(sim);
  write_json(args.out + "_run.json", run);
  return 0;
}

int cmd_fit(const CommonArgs& args) {
  const KeyValueConfig cfg = load_config(args);
  BoostingConfig boosting = boosting_from(cfg, true);
  cfg.fail_on_unused();
  boosting.record_paths = true;
  boosting.check();

  auto [longitudinal, survival] =
      validate(read_longitudinal_csv(args.long_path), read_survival_csv(args.surv_path));
  const FitResult fit = boost_fit(longitudinal, survival, boosting);
  write_fit_outputs(args.out, fit, longitudinal, survival);

  njson run;
  run["command"] = "fit";
  run["out"] = args.out;
  run["inputs"] = {{"long", args.long_path}, {"surv", args.surv_path}};
  run["config"] = boosting_json(boosting, true);
  run["distinct_learners"] = fit.distinct_learners;
  write_json(args.out + "_run.json", run);
  return 0;
}

int cmd_tune(const CommonArgs& args) {
  const KeyValueConfig cfg = load_config(args);
  const Grid grid = grid_from(cfg);
  BoostingConfig base = boosting_from(cfg, false);
  const std::string eval = cfg.get_string("eval", "split");
  const double test_fraction = cfg.get_double("test_fraction", 0.5);
  const int folds = cfg.get_int("folds", 5);
  const bool refit = cfg.get_bool("refit", true);
  cfg.fail_on_unused();
  base.check();
  grid.check();

  auto [longitudinal, survival] =
      validate(read_longitudinal_csv(args.long_path), read_survival_csv(args.surv_path));

  EvalPlan plan;
  njson eval_json;
  eval_json["eval"] = eval;
  if (eval == "split") {
    plan = EvalPlan::split(test_fraction, require_seed(args, "tune with eval = split"));
    eval_json["test_fraction"] = test_fraction;
    eval_json["seed"] = plan.seed;
  } else if (eval == "kfold") {
    plan = EvalPlan::kfold(folds, require_seed(args, "tune with eval = kfold"));
    eval_json["folds"] = folds;
    eval_json["seed"] = plan.seed;
  } else if (eval == "holdout") {
    if (args.test_long_path.empty() || args.test_surv_path.empty()) {
      throw validation_error(
          "missing held-out data",
          {"eval = holdout needs --test-long and --test-surv CSV files"});
    }
    auto [test_long, test_surv] = validate(read_longitudinal_csv(args.test_long_path),
                                           read_survival_csv(args.test_surv_path));
    eval_json["test_long"] = args.test_long_path;
    eval_json["test_surv"] = args.test_surv_path;
    plan = EvalPlan::holdout(std::move(test_long), std::move(test_surv));
  } else {
    throw validation_error("invalid configuration",
                           {"key 'eval': expected split, kfold or holdout, found '" + eval +
                            "'"});
  }

  const TuningResult result =
      grid_search(longitudinal, survival, grid, plan, base, args.threads);

  {
    std::ostringstream os;
    os << "m_l,m_s,m_ls,fold,risk\n";
    for (std::size_t f = 0; f < result.fold_risks.size(); ++f) {
      for (std::size_t g = 0; g < result.fold_risks[f].size(); ++g) {
        const Triple t = grid.at(g);
        os << t.m_long << ',' << t.m_surv << ',' << t.m_shared << ',' << f << ','
           << format_double(result.fold_risks[f][g]) << "\n";
      }
    }
    write_text(args.out + "_surface.csv", os.str());
  }

  njson best;
  best["m_long"] = result.best_triple.m_long;
  best["m_surv"] = result.best_triple.m_surv;
  best["m_shared"] = result.best_triple.m_shared;
  best["risk"] = result.best_risk;
  best["at_grid_boundary"] = result.at_grid_boundary;
  write_json(args.out + "_best.json", best);

  if (refit) {
    BoostingConfig fit_cfg = base;
    fit_cfg.m_stop_long = result.best_triple.m_long;
    fit_cfg.m_stop_surv = result.best_triple.m_surv;
    fit_cfg.m_stop_shared = result.best_triple.m_shared;
    fit_cfg.record_paths = true;
    const FitResult fit = boost_fit(longitudinal, survival, fit_cfg);
    write_fit_outputs(args.out, fit, longitudinal, survival);
  }

  njson run;
  run["command"] = "tune";
  run["out"] = args.out;
  run["threads"] = args.threads;
  run["inputs"] = {{"long", args.long_path}, {"surv", args.surv_path}};
  run["config"] = boosting_json(base, false);
  run["grid"] = grid_json(grid);
  run["evaluation"] = eval_json;
  run["refit"] = refit;
  write_json(args.out + "_run.json", run);
  return 0;
}

int cmd_replicate(const CommonArgs& args) {
  const KeyValueConfig cfg = load_config(args);
  ReplicateConfig rep_cfg;
  rep_cfg.replications = cfg.get_int("replications", rep_cfg.replications);
  rep_cfg.test_n = cfg.get_int("test_n", rep_cfg.test_n);
  rep_cfg.simulation = simulation_from(cfg);
  rep_cfg.grid = grid_from(cfg);
  rep_cfg.boosting = boosting_from(cfg, false);
  cfg.fail_on_unused();
  rep_cfg.seed = require_seed(args, "replicate");
  rep_cfg.threads = args.threads;
  rep_cfg.check();

  const ReplicateResult res = run_replications(rep_cfg);

  const auto pnames = parameter_names(res.long_names, res.shared_names, res.surv_names);
  {
    std::ostringstream os;
    os << "rep,train_seed,test_seed,m_long,m_surv,m_shared,at_boundary,best_risk";
    for (const auto& n : pnames) os << ",coef_" << n;
    for (const auto& n : res.long_names) os << ",sel_l_" << n;
    for (const auto& n : res.shared_names) os << ",sel_ls_" << n;
    for (const auto& n : res.surv_names) os << ",sel_s_" << n;
    os << "\n";
    for (std::size_t r = 0; r < res.replications.size(); ++r) {
      const auto& rep = res.replications[r];
      os << r << ',' << rep.train_seed << ',' << rep.test_seed << ',' << rep.best.m_long
         << ',' << rep.best.m_surv << ',' << rep.best.m_shared << ','
         << (rep.at_grid_boundary ? 1 : 0) << ',' << format_double(rep.best_risk);
      for (double v : parameter_values(rep.fitted)) os << ',' << format_double(v);
      for (char c : rep.selected_long) os << ',' << (c ? 1 : 0);
      for (char c : rep.selected_shared) os << ',' << (c ? 1 : 0);
      for (char c : rep.selected_surv) os << ',' << (c ? 1 : 0);
      os << "\n";
    }
    write_text(args.out + "_replications.csv", os.str());
  }

  {
    std::ostringstream os;
    os << "parameter,truth,mean,sd,selection_rate,informative\n";
    auto scalar_row = [&os](const char* name, double truth, const ScalarMoments& m) {
      os << name << ',' << format_double(truth) << ',' << format_double(m.mean) << ','
         << format_double(m.sd) << ",,\n";
    };
    auto block_rows = [&os](const std::string& prefix,
                            const std::vector<std::string>& names, const VectorXd& truth,
                            const BlockMoments& m, const VectorXd& rates,
                            const std::vector<char>& informative) {
      for (std::size_t k = 0; k < names.size(); ++k) {
        const int ki = static_cast<int>(k);
        os << prefix << names[k] << ',' << format_double(truth[ki]) << ','
           << format_double(m.mean[ki]) << ',' << format_double(m.sd[ki]) << ','
           << format_double(rates[ki]) << ',' << (informative[k] ? 1 : 0) << "\n";
      }
    };
    scalar_row("beta0", res.truth.beta0, res.beta0);
    block_rows("l_", res.long_names, res.truth.beta_long, res.beta_long,
               res.selection_rate_long, res.informative_long);
    scalar_row("time", res.truth.beta_time, res.beta_time);
    block_rows("ls_", res.shared_names, res.truth.beta_shared, res.beta_shared,
               res.selection_rate_shared, res.informative_shared);
    block_rows("s_", res.surv_names, res.truth.beta_surv, res.beta_surv,
               res.selection_rate_surv, res.informative_surv);
    scalar_row("alpha", res.truth.alpha, res.alpha);
    scalar_row("lambda0", res.truth.lambda0, res.lambda0);
    scalar_row("sigma2", res.truth.sigma2, res.sigma2);
    auto rate_row = [&os](const char* name, double rate) {
      os << name << ",,,," << format_double(rate) << ",\n";
    };
    rate_row("tp_long", res.tp_long);
    rate_row("fp_long", res.fp_long);
    rate_row("tp_shared", res.tp_shared);
    rate_row("fp_shared", res.fp_shared);
    rate_row("tp_surv", res.tp_surv);
    rate_row("fp_surv", res.fp_surv);
    write_text(args.out + "_summary.csv", os.str());
  }

  njson run;
  run["command"] = "replicate";
  run["out"] = args.out;
  run["seed"] = rep_cfg.seed;
  run["threads"] = rep_cfg.threads;
  njson rc;
  rc["replications"] = rep_cfg.replications;
  rc["test_n"] = rep_cfg.test_n;
  run["config"] = rc;
  run["simulation"] = simulation_json(rep_cfg.simulation);
  run["boosting"] = boosting_json(rep_cfg.boosting, false);
  run["grid"] = grid_json(rep_cfg.grid);
  write_json(args.out + "_run.json", run);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Joint longitudinal/time-to-event models by component-wise boosting"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&](CLI::App* sub, bool with_seed) {
    sub->add_option("--config", args.config_path, "key = value configuration file");
    sub->add_option("--out", args.out, "output path prefix")->required();
    if (with_seed) sub->add_option("--seed", args.seed, "random seed");
  };

  CLI::App* simulate_cmd = app.add_subcommand("simulate", "draw a synthetic dataset pair");
  add_common(simulate_cmd, true);

  CLI::App* fit_cmd = app.add_subcommand("fit", "boost a model on given data");
  add_common(fit_cmd, false);
  fit_cmd->add_option("--long", args.long_path, "longitudinal CSV")->required();
  fit_cmd->add_option("--surv", args.surv_path, "survival CSV")->required();

  CLI::App* tune_cmd = app.add_subcommand("tune", "grid-search the stopping iterations");
  add_common(tune_cmd, true);
  tune_cmd->add_option("--long", args.long_path, "longitudinal CSV")->required();
  tune_cmd->add_option("--surv", args.surv_path, "survival CSV")->required();
  tune_cmd->add_option("--test-long", args.test_long_path, "held-out longitudinal CSV");
  tune_cmd->add_option("--test-surv", args.test_surv_path, "held-out survival CSV");
  tune_cmd->add_option("--threads", args.threads, "parallel tuning workers")
      ->check(CLI::PositiveNumber);

  CLI::App* replicate_cmd =
      app.add_subcommand("replicate", "multi-seed simulation study with aggregates");
  add_common(replicate_cmd, true);
  replicate_cmd->add_option("--threads", args.threads, "parallel tuning workers")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;  // help/version exit 0, usage errors 1
  }

  try {
    if (simulate_cmd->parsed()) return cmd_simulate(args);
    if (fit_cmd->parsed()) return cmd_fit(args);
    if (tune_cmd->parsed()) return cmd_tune(args);
    return cmd_replicate(args);
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";  // what() embeds the issue list
    return 1;
  } catch (const numeric_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace jointboost
