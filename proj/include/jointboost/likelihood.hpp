#pragma once

#include "jointboost/types.hpp"

namespace jointboost {

/// Closed form of int_0^T exp(alpha * (eta_c + slope * u)) du:
///
///   [exp(alpha*(eta_c + slope*T)) - exp(alpha*eta_c)] / (alpha*slope)
///
/// evaluated as exp(alpha*eta_c) * expm1(alpha*slope*T) / (alpha*slope), with
/// the analytic limit T * exp(alpha*eta_c) when |alpha*slope| <= 1e-10. The
/// cumulative hazard of an individual is lambda0 * exp(eta_surv) times this.
double cum_hazard_factor(double eta_shared_const, double slope, double alpha, double T);

/// Threshold on |alpha*slope| below which the degenerate limit is used.
inline constexpr double kDegenerateProductLimit = 1e-10;

/// Joint log-likelihood of the longitudinal and survival data:
///
///   sum_i { sum_j [ -log(sqrt(2 pi sigma2)) - (y_ij - eta_l - eta_ls)^2 / (2 sigma2) ]
///           + delta_i * (log lambda0 + eta_s + alpha * eta_ls(T_i))
///           - lambda0 * exp(eta_s) * cum_hazard_factor(...) }
///
/// The hazard integral always uses the closed form. Returns a non-finite
/// value if the evaluation overflows; callers treat that as failure.
double joint_loglik(const ParameterState& state, const LongitudinalDataset& longitudinal,
                    const SurvivalDataset& survival);

/// joint_loglik with additive offsets on the predictors: offset_long per
/// observation row, offset_surv per individual, offset_shared_const per
/// individual (shifts the shared predictor everywhere it appears, including
/// at the event time and inside the hazard integral). Null pointers mean no
/// offset. This is the knob the finite-difference oracle turns.
double joint_loglik_shifted(const ParameterState& state, const LongitudinalDataset& longitudinal,
                            const SurvivalDataset& survival, const VectorXd* offset_long,
                            const VectorXd* offset_surv, const VectorXd* offset_shared_const);

/// The three negative-gradient vectors of the loss -loglik, i.e. the
/// predictor-wise derivatives of the log-likelihood.
struct GradientVectors {
  VectorXd u_long;    // length N
  VectorXd u_surv;    // length n
  VectorXd u_shared;  // length N
};

/// u_l[row] = (y - eta_l - eta_ls) / sigma2.
VectorXd gradient_longitudinal(const ParameterState& state,
                               const LongitudinalDataset& longitudinal,
                               const SurvivalDataset& survival);

/// u_s[i] = delta_i - lambda0 * exp(eta_s_i) * cum_hazard_factor(...).
VectorXd gradient_survival(const ParameterState& state, const LongitudinalDataset& longitudinal,
                           const SurvivalDataset& survival);

/// Per observation row of individual i:
///
///   u_ls = (y - eta_l - eta_ls)/sigma2
///          + [delta_i*alpha - lambda0*exp(eta_s_i)*alpha*cum_hazard_factor(...)] / n_i
///
/// The survival terms are computed once per individual and spread over that
/// individual's n_i rows, so the row gradient summed over an individual
/// equals the derivative of the log-likelihood with respect to a constant
/// shift of that individual's time-constant shared predictor.
VectorXd gradient_shared(const ParameterState& state, const LongitudinalDataset& longitudinal,
                         const SurvivalDataset& survival);

/// All three gradients from one predictor evaluation.
GradientVectors compute_gradients(const ParameterState& state,
                                  const LongitudinalDataset& longitudinal,
                                  const SurvivalDataset& survival);

enum class PredictorTarget { Longitudinal, Survival, SharedConstant };

/// Central finite differences of joint_loglik under per-unit offsets to the
/// selected predictor: per observation row for Longitudinal, per individual
/// for Survival and SharedConstant. Test oracle; O(targets) likelihood
/// evaluations.
VectorXd fd_gradient_oracle(const ParameterState& state, const LongitudinalDataset& longitudinal,
                            const SurvivalDataset& survival, PredictorTarget target, double h);

}  // namespace jointboost
