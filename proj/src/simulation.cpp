#include "jointboost/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace jointboost {

void SimulationConfig::check() const {
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument("simulation config: " + msg);
  };
  if (n < 1) fail("need at least one individual");
  if (n_i < 2) fail("need at least two planned measurements per individual");
  if (re_sd_intercept < 0.0 || re_sd_slope < 0.0)
    fail("random-effect standard deviations must be non-negative");
  if (n_noise_long < 0 || n_noise_surv < 0 || n_noise_shared < 0)
    fail("noise covariate counts must be non-negative");
  if (!(true_state.lambda0 > 0.0)) fail("baseline hazard must be positive");
  if (true_state.sigma2 < 0.0) fail("error variance must be non-negative");
  if (!(covariate_low <= covariate_high)) fail("covariate bounds are inverted");
  if (surv_covariate_low.has_value() != surv_covariate_high.has_value())
    fail("survival covariate bounds must be set as a pair");
  if (surv_covariate_low &&
      !(*surv_covariate_low <= *surv_covariate_high))
    fail("survival covariate bounds are inverted");
}

std::vector<double> times_from_days(const std::vector<int>& days) {
  const int n_i = static_cast<int>(days.size());
  std::vector<double> times(n_i);
  for (int j = 0; j < n_i; ++j) {
    times[j] = (static_cast<double>(j) * 365.0 + days[j] - days[0]) /
               (static_cast<double>(n_i) * 365.0);
  }
  return times;
}

std::vector<std::vector<double>> generate_times(int n, int n_i, Rng& rng) {
  std::vector<std::vector<double>> times(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> days(n_i);
    for (int j = 0; j < n_i; ++j) days[j] = rng.uniform_int(1, 365);
    times[i] = times_from_days(days);
  }
  return times;
}

std::vector<std::vector<double>> generate_times(int n, int n_i, std::uint64_t seed) {
  Rng rng(seed);
  return generate_times(n, n_i, rng);
}

double invert_event_time(double u, double eta_surv, double eta_shared_const, double slope,
                         double alpha, double lambda0) {
  const double target = -std::log1p(-u);  // -log(1-u), the exponential quantile
  const double prod = alpha * slope;
  if (std::abs(prod) <= 1e-10) {
    return target / (lambda0 * std::exp(eta_surv + alpha * eta_shared_const));
  }
  const double arg = target * prod * std::exp(-alpha * eta_shared_const) /
                     (lambda0 * std::exp(eta_surv));
  if (arg <= -1.0) return std::numeric_limits<double>::infinity();
  return std::log1p(arg) / prod;
}

namespace {

std::vector<std::string> covariate_names(const std::string& prefix, int p_signal, int p_noise) {
  std::vector<std::string> names;
  for (int k = 0; k < p_signal; ++k) names.push_back(prefix + std::to_string(k + 1));
  for (int k = 0; k < p_noise; ++k) names.push_back(prefix + "_noise" + std::to_string(k + 1));
  return names;
}

VectorXd zero_extended(const VectorXd& v, int extra) {
  VectorXd out = VectorXd::Zero(v.size() + extra);
  out.head(v.size()) = v;
  return out;
}

}  // namespace

SimulatedData simulate(const SimulationConfig& config) {
  config.check();
  Rng rng(config.seed);
  const int n = config.n, n_i = config.n_i;
  const int p_l = static_cast<int>(config.true_state.beta_long.size());
  const int p_s = static_cast<int>(config.true_state.beta_surv.size());
  const int p_ls = static_cast<int>(config.true_state.beta_shared.size());
  const int N = n * n_i;

  // Fixed draw order: observation days; informative covariates (time-varying
  // row-major, then baseline, then shared, per individual); random effects;
  // outcome noise; one event draw per individual; finally the noise columns
  // over the retained rows (time-varying row-major, baseline, shared).
  const auto times = generate_times(n, n_i, rng);
  const double surv_low = config.surv_covariate_low.value_or(config.covariate_low);
  const double surv_high = config.surv_covariate_high.value_or(config.covariate_high);

  MatrixXd x_long(N, p_l);
  MatrixXd x_surv(n, p_s);
  MatrixXd x_shared_ind(n, p_ls);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n_i; ++j)
      for (int k = 0; k < p_l; ++k)
        x_long(i * n_i + j, k) = rng.uniform(config.covariate_low, config.covariate_high);
    for (int k = 0; k < p_s; ++k)
      x_surv(i, k) = rng.uniform(surv_low, surv_high);
    for (int k = 0; k < p_ls; ++k)
      x_shared_ind(i, k) = rng.uniform(config.covariate_low, config.covariate_high);
  }

  ParameterState truth = config.true_state;
  truth.gamma0 = VectorXd(n);
  truth.gamma1 = VectorXd(n);
  for (int i = 0; i < n; ++i) {
    truth.gamma0[i] = rng.normal(0.0, config.re_sd_intercept);
    truth.gamma1[i] = rng.normal(0.0, config.re_sd_slope);
  }

  // Pre-deletion dataset with the informative columns only; predictors and
  // outcomes are evaluated on it so the retained rows reproduce them exactly.
  LongitudinalDataset full;
  full.external_id.resize(n);
  full.individual.resize(N);
  full.row_start.resize(n + 1);
  full.time.resize(N);
  full.outcome = VectorXd::Zero(N);
  full.x_long = x_long;
  full.x_shared.resize(N, p_ls);
  for (int i = 0; i < n; ++i) {
    full.external_id[i] = i + 1;
    full.row_start[i] = i * n_i;
    for (int j = 0; j < n_i; ++j) {
      full.individual[i * n_i + j] = i;
      full.time[i * n_i + j] = times[i][j];
      full.x_shared.row(i * n_i + j) = x_shared_ind.row(i);
    }
  }
  full.row_start[n] = N;

  SurvivalDataset surv;
  surv.external_id = full.external_id;
  surv.event_time = VectorXd::Zero(n);
  surv.event.assign(n, 0);
  surv.x_surv = x_surv;

  const PredictorValues pred = compute_predictors(truth, full, surv);
  const double noise_sd = std::sqrt(config.true_state.sigma2);
  for (int r = 0; r < N; ++r) {
    full.outcome[r] = pred.eta_long[r] + pred.eta_shared_obs[r] + rng.normal(0.0, noise_sd);
  }

  VectorXd uncensored(n);
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    uncensored[i] = invert_event_time(u, pred.eta_surv[i], pred.eta_shared_const[i],
                                      pred.slope[i], truth.alpha, truth.lambda0);
    const double t_last = times[i][n_i - 1];
    surv.event[i] = uncensored[i] <= t_last ? 1 : 0;
    surv.event_time[i] = std::min(uncensored[i], t_last);
  }

  // Delete rows past the observed time. The first time is always 0, so every
  // individual keeps at least one row.
  std::vector<int> keep;
  LongitudinalDataset out;
  out.external_id = full.external_id;
  out.row_start.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n_i; ++j) {
      const int r = i * n_i + j;
      if (full.time[r] <= surv.event_time[i]) keep.push_back(r);
    }
    out.row_start[i + 1] = static_cast<int>(keep.size());
  }
  const int kept = static_cast<int>(keep.size());
  out.individual.resize(kept);
  out.time.resize(kept);
  out.outcome.resize(kept);
  out.x_long.resize(kept, p_l + config.n_noise_long);
  out.x_shared.resize(kept, p_ls + config.n_noise_shared);
  for (int q = 0; q < kept; ++q) {
    const int r = keep[q];
    out.individual[q] = full.individual[r];
    out.time[q] = full.time[r];
    out.outcome[q] = full.outcome[r];
    out.x_long.row(q).head(p_l) = full.x_long.row(r);
    out.x_shared.row(q).head(p_ls) = full.x_shared.row(r);
  }

  for (int q = 0; q < kept; ++q)
    for (int k = 0; k < config.n_noise_long; ++k)
      out.x_long(q, p_l + k) = rng.uniform(config.covariate_low, config.covariate_high);

  MatrixXd surv_noise(n, config.n_noise_surv);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < config.n_noise_surv; ++k)
      surv_noise(i, k) = rng.uniform(surv_low, surv_high);
  MatrixXd x_surv_out(n, p_s + config.n_noise_surv);
  x_surv_out.leftCols(p_s) = x_surv;
  x_surv_out.rightCols(config.n_noise_surv) = surv_noise;
  surv.x_surv = x_surv_out;

  MatrixXd shared_noise(n, config.n_noise_shared);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < config.n_noise_shared; ++k)
      shared_noise(i, k) = rng.uniform(config.covariate_low, config.covariate_high);
  for (int q = 0; q < kept; ++q)
    for (int k = 0; k < config.n_noise_shared; ++k)
      out.x_shared(q, p_ls + k) = shared_noise(out.individual[q], k);

  out.long_names = covariate_names("l", p_l, config.n_noise_long);
  out.shared_names = covariate_names("ls", p_ls, config.n_noise_shared);
  surv.surv_names = covariate_names("s", p_s, config.n_noise_surv);

  SimulatedTruth truth_out;
  truth_out.informative_long.assign(p_l + config.n_noise_long, 0);
  std::fill_n(truth_out.informative_long.begin(), p_l, 1);
  truth_out.informative_surv.assign(p_s + config.n_noise_surv, 0);
  std::fill_n(truth_out.informative_surv.begin(), p_s, 1);
  truth_out.informative_shared.assign(p_ls + config.n_noise_shared, 0);
  std::fill_n(truth_out.informative_shared.begin(), p_ls, 1);
  truth_out.state = truth;
  truth_out.state.beta_long = zero_extended(truth.beta_long, config.n_noise_long);
  truth_out.state.beta_surv = zero_extended(truth.beta_surv, config.n_noise_surv);
  truth_out.state.beta_shared = zero_extended(truth.beta_shared, config.n_noise_shared);
  truth_out.uncensored_time = uncensored;

  return SimulatedData{std::move(out), std::move(surv), std::move(truth_out)};
}

}  // namespace jointboost
