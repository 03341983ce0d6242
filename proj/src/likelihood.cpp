#include "jointboost/likelihood.hpp"

#include <cmath>
#include <stdexcept>

namespace jointboost {

double cum_hazard_factor(double eta_shared_const, double slope, double alpha, double T) {
  const double prod = alpha * slope;
  if (std::abs(prod) <= kDegenerateProductLimit) {
    return T * std::exp(alpha * eta_shared_const);
  }
  return std::exp(alpha * eta_shared_const) * std::expm1(prod * T) / prod;
}

namespace {

// Predictors with the oracle's offsets already folded in. A constant shift of
// the time-constant shared part moves eta_shared_obs by the same amount on
// every row of the individual.
PredictorValues shifted_predictors(const ParameterState& state,
                                   const LongitudinalDataset& longitudinal,
                                   const SurvivalDataset& survival, const VectorXd* offset_long,
                                   const VectorXd* offset_surv,
                                   const VectorXd* offset_shared_const) {
  PredictorValues pred = compute_predictors(state, longitudinal, survival);
  const int n = longitudinal.n_individuals();
  const int N = longitudinal.n_rows();
  if (offset_long != nullptr) {
    if (offset_long->size() != N) throw std::invalid_argument("offset_long: wrong length");
    pred.eta_long += *offset_long;
  }
  if (offset_surv != nullptr) {
    if (offset_surv->size() != n) throw std::invalid_argument("offset_surv: wrong length");
    pred.eta_surv += *offset_surv;
  }
  if (offset_shared_const != nullptr) {
    if (offset_shared_const->size() != n)
      throw std::invalid_argument("offset_shared_const: wrong length");
    pred.eta_shared_const += *offset_shared_const;
    for (int r = 0; r < N; ++r) {
      pred.eta_shared_obs[r] += (*offset_shared_const)[longitudinal.individual[r]];
    }
  }
  return pred;
}

double loglik_from_predictors(const ParameterState& state,
                              const LongitudinalDataset& longitudinal,
                              const SurvivalDataset& survival, const PredictorValues& pred) {
  const double sigma2 = state.sigma2;
  const double log_norm = -0.5 * std::log(2.0 * std::acos(-1.0) * sigma2);
  const double log_lambda0 = std::log(state.lambda0);
  double ll = 0.0;
  const int n = longitudinal.n_individuals();
  for (int i = 0; i < n; ++i) {
    for (int r = longitudinal.row_start[i]; r < longitudinal.row_start[i + 1]; ++r) {
      const double resid = longitudinal.outcome[r] - pred.eta_long[r] - pred.eta_shared_obs[r];
      ll += log_norm - resid * resid / (2.0 * sigma2);
    }
    const double T = survival.event_time[i];
    const double chf = cum_hazard_factor(pred.eta_shared_const[i], pred.slope[i], state.alpha, T);
    if (survival.event[i]) {
      const double eta_shared_T = pred.eta_shared_const[i] + pred.slope[i] * T;
      ll += log_lambda0 + pred.eta_surv[i] + state.alpha * eta_shared_T;
    }
    ll -= state.lambda0 * std::exp(pred.eta_surv[i]) * chf;
  }
  return ll;
}

}  // namespace

double joint_loglik(const ParameterState& state, const LongitudinalDataset& longitudinal,
                    const SurvivalDataset& survival) {
  check_aligned(longitudinal, survival);
  const PredictorValues pred = compute_predictors(state, longitudinal, survival);
  return loglik_from_predictors(state, longitudinal, survival, pred);
}

double joint_loglik_shifted(const ParameterState& state, const LongitudinalDataset& longitudinal,
                            const SurvivalDataset& survival, const VectorXd* offset_long,
                            const VectorXd* offset_surv, const VectorXd* offset_shared_const) {
  check_aligned(longitudinal, survival);
  const PredictorValues pred = shifted_predictors(state, longitudinal, survival, offset_long,
                                                  offset_surv, offset_shared_const);
  return loglik_from_predictors(state, longitudinal, survival, pred);
}

VectorXd gradient_longitudinal(const ParameterState& state,
                               const LongitudinalDataset& longitudinal,
                               const SurvivalDataset& survival) {
  check_aligned(longitudinal, survival);
  const PredictorValues pred = compute_predictors(state, longitudinal, survival);
  return (longitudinal.outcome - pred.eta_long - pred.eta_shared_obs) / state.sigma2;
}

VectorXd gradient_survival(const ParameterState& state, const LongitudinalDataset& longitudinal,
                           const SurvivalDataset& survival) {
  check_aligned(longitudinal, survival);
  const PredictorValues pred = compute_predictors(state, longitudinal, survival);
  const int n = longitudinal.n_individuals();
  VectorXd u(n);
  for (int i = 0; i < n; ++i) {
    const double chf = cum_hazard_factor(pred.eta_shared_const[i], pred.slope[i], state.alpha,
                                         survival.event_time[i]);
    u[i] = (survival.event[i] ? 1.0 : 0.0) - state.lambda0 * std::exp(pred.eta_surv[i]) * chf;
  }
  return u;
}

VectorXd gradient_shared(const ParameterState& state, const LongitudinalDataset& longitudinal,
                         const SurvivalDataset& survival) {
  check_aligned(longitudinal, survival);
  const PredictorValues pred = compute_predictors(state, longitudinal, survival);
  const int n = longitudinal.n_individuals();
  VectorXd u = (longitudinal.outcome - pred.eta_long - pred.eta_shared_obs) / state.sigma2;
  for (int i = 0; i < n; ++i) {
    const int n_i = longitudinal.rows_of(i);
    if (n_i == 0) continue;
    const double chf = cum_hazard_factor(pred.eta_shared_const[i], pred.slope[i], state.alpha,
                                         survival.event_time[i]);
    const double surv_term = (survival.event[i] ? state.alpha : 0.0) -
                             state.lambda0 * std::exp(pred.eta_surv[i]) * state.alpha * chf;
    // Spread over the individual's rows so that summing the row gradient over
    // an individual matches the likelihood derivative for a constant shift of
    // that individual's shared predictor.
    const double per_row = surv_term / n_i;
    for (int r = longitudinal.row_start[i]; r < longitudinal.row_start[i + 1]; ++r) {
      u[r] += per_row;
    }
  }
  return u;
}

GradientVectors compute_gradients(const ParameterState& state,
                                  const LongitudinalDataset& longitudinal,
                                  const SurvivalDataset& survival) {
  return GradientVectors{gradient_longitudinal(state, longitudinal, survival),
                         gradient_survival(state, longitudinal, survival),
                         gradient_shared(state, longitudinal, survival)};
}

VectorXd fd_gradient_oracle(const ParameterState& state, const LongitudinalDataset& longitudinal,
                            const SurvivalDataset& survival, PredictorTarget target, double h) {
  check_aligned(longitudinal, survival);
  const int n = longitudinal.n_individuals();
  const int N = longitudinal.n_rows();
  const int len = target == PredictorTarget::Longitudinal ? N : n;
  VectorXd grad(len);
  VectorXd offset = VectorXd::Zero(len);
  auto eval = [&](double value, int k) {
    offset[k] = value;
    const VectorXd* off_long = target == PredictorTarget::Longitudinal ? &offset : nullptr;
    const VectorXd* off_surv = target == PredictorTarget::Survival ? &offset : nullptr;
    const VectorXd* off_shared = target == PredictorTarget::SharedConstant ? &offset : nullptr;
    const double ll = joint_loglik_shifted(state, longitudinal, survival, off_long, off_surv,
                                           off_shared);
    offset[k] = 0.0;
    return ll;
  };
  for (int k = 0; k < len; ++k) {
    grad[k] = (eval(h, k) - eval(-h, k)) / (2.0 * h);
  }
  return grad;
}

}  // namespace jointboost
