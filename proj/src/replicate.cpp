#include "jointboost/replicate.hpp"

#include <cmath>
#include <stdexcept>

#include "jointboost/numerics.hpp"

namespace jointboost {

namespace {

void accumulate_mask(std::vector<char>& mask, const StepSelection& step) {
  if (step.status == StepSelection::Status::Selected &&
      step.id.kind == LearnerKind::Covariate) {
    mask[static_cast<std::size_t>(step.id.index)] = 1;
  }
}

BlockMoments block_moments(const std::vector<ReplicationOutcome>& reps,
                           const VectorXd ParameterState::*field, int size) {
  BlockMoments m;
  m.mean = VectorXd::Zero(size);
  m.sd = VectorXd::Zero(size);
  for (const auto& r : reps) m.mean += r.fitted.*field;
  m.mean /= static_cast<double>(reps.size());
  if (reps.size() > 1) {
    for (const auto& r : reps) {
      const VectorXd d = r.fitted.*field - m.mean;
      m.sd += d.cwiseProduct(d);
    }
    m.sd = (m.sd / static_cast<double>(reps.size() - 1)).cwiseSqrt();
  }
  return m;
}

ScalarMoments scalar_moments(const std::vector<ReplicationOutcome>& reps,
                             double ParameterState::*field) {
  ScalarMoments m;
  for (const auto& r : reps) m.mean += r.fitted.*field;
  m.mean /= static_cast<double>(reps.size());
  if (reps.size() > 1) {
    double acc = 0.0;
    for (const auto& r : reps) {
      const double d = r.fitted.*field - m.mean;
      acc += d * d;
    }
    m.sd = std::sqrt(acc / static_cast<double>(reps.size() - 1));
  }
  return m;
}

VectorXd selection_rates(const std::vector<ReplicationOutcome>& reps,
                         const std::vector<char> ReplicationOutcome::*mask, int size) {
  VectorXd rate = VectorXd::Zero(size);
  for (const auto& r : reps) {
    const auto& m = r.*mask;
    for (int k = 0; k < size; ++k) rate[k] += m[static_cast<std::size_t>(k)] ? 1.0 : 0.0;
  }
  return rate / static_cast<double>(reps.size());
}

/// Mean selection rate over the columns where informative == wanted.
double rate_over(const VectorXd& rates, const std::vector<char>& informative, char wanted) {
  double sum = 0.0;
  int count = 0;
  for (int k = 0; k < rates.size(); ++k) {
    if (informative[static_cast<std::size_t>(k)] == wanted) {
      sum += rates[k];
      ++count;
    }
  }
  return count > 0 ? sum / count : 0.0;
}

}  // namespace

void ReplicateConfig::check() const {
  if (replications < 1)
    throw std::invalid_argument("replications must be at least 1");
  if (test_n < 2)
    throw std::invalid_argument("test_n must be at least 2 individuals");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
  grid.check();
  SimulationConfig train = simulation;
  train.seed = 0;
  train.check();
  SimulationConfig test = simulation;
  test.n = test_n;
  test.seed = 0;
  test.check();
}

ReplicateResult run_replications(const ReplicateConfig& config) {
  config.check();
  ReplicateResult result;
  result.replications.reserve(static_cast<std::size_t>(config.replications));

  for (int rep = 0; rep < config.replications; ++rep) {
    SimulationConfig train_cfg = config.simulation;
    train_cfg.seed = derive_seed(config.seed, static_cast<std::uint64_t>(rep), 0);
    SimulationConfig test_cfg = config.simulation;
    test_cfg.n = config.test_n;
    test_cfg.seed = derive_seed(config.seed, static_cast<std::uint64_t>(rep), 1);

    const SimulatedData train = simulate(train_cfg);
    const SimulatedData test = simulate(test_cfg);

    if (rep == 0) {
      result.long_names = train.longitudinal.long_names;
      result.surv_names = train.survival.surv_names;
      result.shared_names = train.longitudinal.shared_names;
      result.informative_long = train.truth.informative_long;
      result.informative_surv = train.truth.informative_surv;
      result.informative_shared = train.truth.informative_shared;
      result.truth = train.truth.state;
      // Realized random effects are replication-specific; the aggregate
      // report carries only the generating parameters.
      result.truth.gamma0.resize(0);
      result.truth.gamma1.resize(0);
    }

    const EvalPlan plan = EvalPlan::holdout(test.longitudinal, test.survival);
    const TuningResult tuned = grid_search(train.longitudinal, train.survival, config.grid,
                                           plan, config.boosting, config.threads);

    BoostingConfig fit_cfg = config.boosting;
    fit_cfg.m_stop_long = tuned.best_triple.m_long;
    fit_cfg.m_stop_surv = tuned.best_triple.m_surv;
    fit_cfg.m_stop_shared = tuned.best_triple.m_shared;
    const FitResult fit = boost_fit(train.longitudinal, train.survival, fit_cfg);

    ReplicationOutcome out;
    out.train_seed = train_cfg.seed;
    out.test_seed = test_cfg.seed;
    out.best = tuned.best_triple;
    out.at_grid_boundary = tuned.at_grid_boundary;
    out.best_risk = tuned.best_risk;
    out.fitted = fit.final_state;
    out.selected_long.assign(static_cast<std::size_t>(train.longitudinal.x_long.cols()), 0);
    out.selected_surv.assign(static_cast<std::size_t>(train.survival.x_surv.cols()), 0);
    out.selected_shared.assign(static_cast<std::size_t>(train.longitudinal.x_shared.cols()),
                               0);
    for (const auto& it : fit.selections) {
      accumulate_mask(out.selected_long, it.longitudinal);
      accumulate_mask(out.selected_surv, it.survival);
      accumulate_mask(out.selected_shared, it.shared);
    }
    result.replications.push_back(std::move(out));
  }

  const auto& reps = result.replications;
  const int p_l = static_cast<int>(result.long_names.size());
  const int p_s = static_cast<int>(result.surv_names.size());
  const int p_ls = static_cast<int>(result.shared_names.size());

  result.beta_long = block_moments(reps, &ParameterState::beta_long, p_l);
  result.beta_surv = block_moments(reps, &ParameterState::beta_surv, p_s);
  result.beta_shared = block_moments(reps, &ParameterState::beta_shared, p_ls);
  result.beta0 = scalar_moments(reps, &ParameterState::beta0);
  result.beta_time = scalar_moments(reps, &ParameterState::beta_time);
  result.alpha = scalar_moments(reps, &ParameterState::alpha);
  result.lambda0 = scalar_moments(reps, &ParameterState::lambda0);
  result.sigma2 = scalar_moments(reps, &ParameterState::sigma2);

  result.selection_rate_long =
      selection_rates(reps, &ReplicationOutcome::selected_long, p_l);
  result.selection_rate_surv =
      selection_rates(reps, &ReplicationOutcome::selected_surv, p_s);
  result.selection_rate_shared =
      selection_rates(reps, &ReplicationOutcome::selected_shared, p_ls);

  result.tp_long = rate_over(result.selection_rate_long, result.informative_long, 1);
  result.fp_long = rate_over(result.selection_rate_long, result.informative_long, 0);
  result.tp_surv = rate_over(result.selection_rate_surv, result.informative_surv, 1);
  result.fp_surv = rate_over(result.selection_rate_surv, result.informative_surv, 0);
  result.tp_shared = rate_over(result.selection_rate_shared, result.informative_shared, 1);
  result.fp_shared = rate_over(result.selection_rate_shared, result.informative_shared, 0);
  return result;
}

}  // namespace jointboost
