#include "jointboost/boosting.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "jointboost/likelihood.hpp"
#include "jointboost/numerics.hpp"

namespace jointboost {

void BoostingConfig::check() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("boosting config: " + msg); };
  if (m_stop_long < 0 || m_stop_surv < 0 || m_stop_shared < 0)
    fail("stopping iterations must be non-negative");
  for (double nu : {nu_long, nu_surv, nu_shared})
    if (!(nu > 0.0 && nu <= 1.0)) fail("step lengths must lie in (0, 1]");
  if (re_ridge < 0.0) fail("random-effects ridge must be non-negative");
  if (!(alpha_min < alpha_max)) fail("alpha interval is empty");
  if (!(alpha_tol > 0.0)) fail("alpha tolerance must be positive");
}

ParameterState initialize(const LongitudinalDataset& longitudinal,
                          const SurvivalDataset& survival) {
  check_aligned(longitudinal, survival);
  const int n = longitudinal.n_individuals();
  const int N = longitudinal.n_rows();
  ParameterState st;
  st.beta_long = VectorXd::Zero(longitudinal.x_long.cols());
  st.beta_shared = VectorXd::Zero(longitudinal.x_shared.cols());
  st.beta_surv = VectorXd::Zero(survival.x_surv.cols());
  st.gamma1 = VectorXd::Zero(n);
  st.gamma0 = VectorXd::Zero(n);
  st.beta0 = N > 0 ? longitudinal.outcome.mean() : 0.0;
  st.alpha = 0.0;

  double events = 0.0, total_time = 0.0;
  for (int i = 0; i < n; ++i) {
    events += survival.event[i] ? 1.0 : 0.0;
    total_time += survival.event_time[i];
  }
  if (events == 0.0) {
    st.lambda0 = 1e-8;
  } else if (total_time == 0.0) {
    throw numeric_error("cannot initialize baseline hazard: all observation times are zero");
  } else {
    st.lambda0 = std::max(events / total_time, 1e-8);
  }

  double var = 0.0;
  if (N > 1) {
    const double mean = st.beta0;
    for (int r = 0; r < N; ++r) {
      const double d = longitudinal.outcome[r] - mean;
      var += d * d;
    }
    var /= N - 1;
  }
  st.sigma2 = std::max(var, 1e-8);
  return st;
}

double update_sigma2(const ParameterState& state, const LongitudinalDataset& longitudinal,
                     const SurvivalDataset& survival, int n_selected_learners) {
  const PredictorValues pred = compute_predictors(state, longitudinal, survival);
  const double ss =
      (longitudinal.outcome - pred.eta_long - pred.eta_shared_obs).squaredNorm();
  int denom = longitudinal.n_rows() - n_selected_learners;
  if (denom < 1) denom = 1;
  return std::max(ss / denom, 1e-8);
}

double update_lambda0(const ParameterState& state, const LongitudinalDataset& longitudinal,
                      const SurvivalDataset& survival) {
  const PredictorValues pred = compute_predictors(state, longitudinal, survival);
  const int n = survival.n_individuals();
  double events = 0.0, denom = 0.0;
  for (int i = 0; i < n; ++i) {
    events += survival.event[i] ? 1.0 : 0.0;
    denom += std::exp(pred.eta_surv[i]) * cum_hazard_factor(pred.eta_shared_const[i],
                                                            pred.slope[i], state.alpha,
                                                            survival.event_time[i]);
  }
  if (events == 0.0) return 1e-8;
  return std::max(events / denom, 1e-8);
}

double update_alpha(const ParameterState& state, const LongitudinalDataset& longitudinal,
                    const SurvivalDataset& survival, double lo, double hi, double tol) {
  const PredictorValues pred = compute_predictors(state, longitudinal, survival);
  const int n = survival.n_individuals();
  const double log_lambda0 = std::log(state.lambda0);
  // Only the survival terms of the log-likelihood vary with alpha; the
  // longitudinal terms shift the objective by a constant and are omitted.
  auto survival_loglik = [&](double a) {
    double ll = 0.0;
    for (int i = 0; i < n; ++i) {
      const double T = survival.event_time[i];
      const double chf = cum_hazard_factor(pred.eta_shared_const[i], pred.slope[i], a, T);
      if (survival.event[i]) {
        ll += log_lambda0 + pred.eta_surv[i] +
              a * (pred.eta_shared_const[i] + pred.slope[i] * T);
      }
      ll -= state.lambda0 * std::exp(pred.eta_surv[i]) * chf;
    }
    return ll;
  };
  try {
    return maximize_scalar(survival_loglik, lo, hi, tol).x;
  } catch (const numeric_error&) {
    // Overflow in the far reaches of the interval: retry on the quarter
    // interval around the current alpha before giving up.
    const double width = hi - lo;
    const double center = std::clamp(state.alpha, lo, hi);
    const double retry_lo = std::max(lo, center - width / 4.0);
    const double retry_hi = std::min(hi, center + width / 4.0);
    if (!(retry_lo < retry_hi)) throw;
    return maximize_scalar(survival_loglik, retry_lo, retry_hi, tol).x;
  }
}

namespace {

std::string label_for(const LearnerId& id, const std::vector<std::string>& names) {
  if (id.kind == LearnerKind::Covariate && id.index >= 0 &&
      id.index < static_cast<int>(names.size())) {
    return names[id.index];
  }
  return to_string(id);
}

}  // namespace

FitResult boost_fit(const LongitudinalDataset& longitudinal, const SurvivalDataset& survival,
                    const BoostingConfig& config) {
  config.check();
  check_aligned(longitudinal, survival);
  const int p_l = static_cast<int>(longitudinal.x_long.cols());
  const int p_s = static_cast<int>(survival.x_surv.cols());
  const int p_ls = static_cast<int>(longitudinal.x_shared.cols());
  const int m_stop = config.m_stop();

  FitResult result;
  ParameterState state = initialize(longitudinal, survival);
  const PooledSpan pooled_span(longitudinal);
  // distinct learners selected so far, keyed by (step, kind, covariate)
  std::set<std::tuple<int, int, int>> selected;

  auto risk_of = [&](const ParameterState& st, int iteration) {
    const double risk = -joint_loglik(st, longitudinal, survival);
    if (!std::isfinite(risk)) {
      std::ostringstream msg;
      msg << "training risk became non-finite at iteration " << iteration
          << " (alpha=" << st.alpha << ", lambda0=" << st.lambda0 << ", sigma2=" << st.sigma2
          << ")";
      throw numeric_error(msg.str());
    }
    return risk;
  };

  if (config.record_paths) result.paths.push_back(state);
  result.train_risk.push_back(risk_of(state, 0));

  for (int m = 1; m <= m_stop; ++m) {
    IterationSelection iter_sel;

    if (m <= config.m_stop_long) {
      const VectorXd u = gradient_longitudinal(state, longitudinal, survival);
      std::vector<BaseLearnerFit> cands;
      cands.push_back(fit_intercept(u));
      for (int k = 0; k < p_l; ++k) {
        cands.push_back(fit_linear(u, longitudinal.x_long.col(k),
                                   LearnerId{LearnerKind::Covariate, k}));
      }
      cands.push_back(fit_time(u, longitudinal.time));
      cands.push_back(fit_random_effects(u, longitudinal, config.re_ridge, pooled_span));
      const BaseLearnerFit& best = select_best(cands);
      switch (best.id.kind) {
        case LearnerKind::Intercept:
          state.beta0 += config.nu_long * best.slope;
          break;
        case LearnerKind::Covariate:
          state.beta_long[best.id.index] += config.nu_long * best.slope;
          break;
        case LearnerKind::Time:
          state.beta_time += config.nu_long * best.slope;
          break;
        case LearnerKind::RandomEffects:
          state.gamma0 += config.nu_long * best.re_intercept;
          state.gamma1 += config.nu_long * best.re_slope;
          break;
      }
      selected.insert({1, static_cast<int>(best.id.kind), best.id.index});
      iter_sel.longitudinal = {StepSelection::Status::Selected, best.id,
                               label_for(best.id, longitudinal.long_names)};
    }

    if (m <= config.m_stop_surv) {
      const VectorXd u = gradient_survival(state, longitudinal, survival);
      std::vector<BaseLearnerFit> cands;
      for (int k = 0; k < p_s; ++k) {
        cands.push_back(
            fit_linear(u, survival.x_surv.col(k), LearnerId{LearnerKind::Covariate, k}));
      }
      bool any_valid = false;
      for (const auto& c : cands) any_valid = any_valid || c.valid;
      if (any_valid) {
        const BaseLearnerFit& best = select_best(cands);
        state.beta_surv[best.id.index] += config.nu_surv * best.slope;
        iter_sel.survival = {StepSelection::Status::Selected, best.id,
                             label_for(best.id, survival.surv_names)};
      } else {
        iter_sel.survival.status = StepSelection::Status::NoCandidates;
      }
      state.lambda0 = update_lambda0(state, longitudinal, survival);
    }

    if (m <= config.m_stop_shared) {
      const VectorXd u = gradient_shared(state, longitudinal, survival);
      std::vector<BaseLearnerFit> cands;
      for (int k = 0; k < p_ls; ++k) {
        cands.push_back(fit_linear(u, longitudinal.x_shared.col(k),
                                   LearnerId{LearnerKind::Covariate, k}));
      }
      bool any_valid = false;
      for (const auto& c : cands) any_valid = any_valid || c.valid;
      if (any_valid) {
        const BaseLearnerFit& best = select_best(cands);
        state.beta_shared[best.id.index] += config.nu_shared * best.slope;
        selected.insert({3, static_cast<int>(best.id.kind), best.id.index});
        iter_sel.shared = {StepSelection::Status::Selected, best.id,
                           label_for(best.id, longitudinal.shared_names)};
      } else {
        iter_sel.shared.status = StepSelection::Status::NoCandidates;
      }
    }

    if (m <= std::max(config.m_stop_long, config.m_stop_shared)) {
      state.sigma2 = update_sigma2(state, longitudinal, survival,
                                   static_cast<int>(selected.size()));
    }
    if (m <= config.m_stop_shared) {
      try {
        state.alpha = update_alpha(state, longitudinal, survival, config.alpha_min,
                                   config.alpha_max, config.alpha_tol);
      } catch (const numeric_error& e) {
        std::ostringstream msg;
        msg << "alpha update failed at iteration " << m << ": " << e.what();
        throw numeric_error(msg.str());
      }
    }

    result.selections.push_back(iter_sel);
    if (config.record_paths) result.paths.push_back(state);
    result.train_risk.push_back(risk_of(state, m));
  }

  result.final_state = std::move(state);
  result.distinct_learners = static_cast<int>(selected.size());
  return result;
}

}  // namespace jointboost
