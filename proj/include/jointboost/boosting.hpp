#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "jointboost/baselearners.hpp"
#include "jointboost/types.hpp"

namespace jointboost {

struct BoostingConfig {
  int m_stop_long = 0;
  int m_stop_surv = 0;
  int m_stop_shared = 0;
  double nu_long = 0.1;
  double nu_surv = 0.3;
  double nu_shared = 0.1;
  double re_ridge = 1e-4;
  double alpha_min = -10.0;
  double alpha_max = 10.0;
  double alpha_tol = 1e-8;
  bool record_paths = true;

  int m_stop() const { return std::max({m_stop_long, m_stop_surv, m_stop_shared}); }

  /// Throws std::invalid_argument on negative stopping iterations, step
  /// lengths outside (0, 1], negative ridge, or a bad alpha interval.
  void check() const;
};

/// What one boosting step did in one iteration.
struct StepSelection {
  enum class Status { Selected, Skipped, NoCandidates };
  Status status = Status::Skipped;
  LearnerId id;
  std::string label;  // covariate name when available, else the learner name
};

struct IterationSelection {
  StepSelection longitudinal;
  StepSelection survival;
  StepSelection shared;
};

struct FitResult {
  ParameterState final_state;
  /// States after initialization and after every iteration; recorded only
  /// when BoostingConfig::record_paths is set.
  std::vector<ParameterState> paths;
  std::vector<IterationSelection> selections;  // one entry per iteration
  /// Negative joint log-likelihood on the training data, initialization
  /// first; always recorded.
  std::vector<double> train_risk;
  /// Distinct base-learners selected in the longitudinal and shared steps
  /// over the whole fit (the residual-variance denominator is N minus this).
  int distinct_learners = 0;
};

/// Starting state: beta0 = mean outcome, every other coefficient and all
/// random effects zero, alpha = 0, lambda0 = sum(delta) / sum(T)
/// (exponential hazard ignoring covariates), sigma2 = sample variance of the
/// outcome. lambda0 and sigma2 are floored at 1e-8; all-censored data take
/// the lambda0 floor. Throws numeric_error when events exist but all
/// observed times are zero.
ParameterState initialize(const LongitudinalDataset& longitudinal,
                          const SurvivalDataset& survival);

/// Component-wise gradient boosting of the three predictors. Per iteration
/// m: (1) while m <= m_stop_long, fit {intercept, each time-varying
/// covariate, time, random effects} to the longitudinal gradient and apply
/// the best with step length nu_long; (2) while m <= m_stop_surv, likewise
/// for the baseline covariates on the survival gradient with nu_surv, then
/// refresh lambda0 with its profile estimate; (3) while m <= m_stop_shared,
/// likewise for the shared covariates with nu_shared; (4) refresh sigma2
/// while either longitudinal-side predictor is active and alpha while the
/// shared predictor is active. Frozen predictors keep their coefficients
/// exactly. Throws numeric_error with the iteration number if the training
/// risk turns non-finite.
FitResult boost_fit(const LongitudinalDataset& longitudinal, const SurvivalDataset& survival,
                    const BoostingConfig& config);

/// Residual variance sum((y - eta_l - eta_ls)^2) / (N - n_selected_learners),
/// with the denominator floored at 1 and the result floored at 1e-8.
double update_sigma2(const ParameterState& state, const LongitudinalDataset& longitudinal,
                     const SurvivalDataset& survival, int n_selected_learners);

/// Maximizer of the joint log-likelihood over alpha in [lo, hi] by Brent
/// search (only the survival terms depend on alpha, so only they are
/// evaluated). If the objective is non-finite somewhere in the interval, the
/// search retries once on the interval quartered around the current alpha,
/// then rethrows.
double update_alpha(const ParameterState& state, const LongitudinalDataset& longitudinal,
                    const SurvivalDataset& survival, double lo, double hi, double tol);

/// Profile maximum-likelihood baseline hazard sum(delta_i) /
/// sum(exp(eta_s_i) * cum_hazard_factor_i), floored at 1e-8.
double update_lambda0(const ParameterState& state, const LongitudinalDataset& longitudinal,
                      const SurvivalDataset& survival);

}  // namespace jointboost
