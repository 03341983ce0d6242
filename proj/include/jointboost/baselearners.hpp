#pragma once

#include <Eigen/QR>

#include <limits>
#include <string>
#include <vector>

#include "jointboost/types.hpp"

namespace jointboost {

enum class LearnerKind { Intercept, Covariate, Time, RandomEffects };

/// Identifies one candidate base-learner within a boosting step. Covariate
/// learners carry the column index of the step's design matrix.
struct LearnerId {
  LearnerKind kind = LearnerKind::Intercept;
  int index = -1;

  friend bool operator==(const LearnerId&, const LearnerId&) = default;
};

std::string to_string(const LearnerId& id);

/// Least-squares fit of one base-learner to a negative-gradient vector. For
/// scalar learners `slope` is the coefficient increment (the fitted value for
/// the intercept learner); the random-effects learner instead carries one
/// intercept/slope pair per individual. Invalid fits (zero covariate column)
/// are excluded from selection.
struct BaseLearnerFit {
  LearnerId id;
  double rss = std::numeric_limits<double>::infinity();
  bool valid = false;
  double slope = 0.0;
  VectorXd re_intercept;
  VectorXd re_slope;
};

/// Slope-only least squares through the origin: b = <u,x>/<x,x>. A zero
/// column yields an invalid fit.
BaseLearnerFit fit_linear(const VectorXd& u, const VectorXd& x, LearnerId id);

/// Constant fit b = mean(u).
BaseLearnerFit fit_intercept(const VectorXd& u);

/// fit_linear on the observation times.
BaseLearnerFit fit_time(const VectorXd& u, const VectorXd& t);

/// Least-squares projector onto the pooled columns of the shared predictor:
/// intercept, time, and the time-constant shared covariates. Precompute once
/// per dataset; repeated solves are cheap.
class PooledSpan {
 public:
  explicit PooledSpan(const LongitudinalDataset& data);

  /// Least-squares coefficients (c_intercept, c_time, c_covariates...) of a
  /// per-row vector on the pooled columns.
  VectorXd solve(const VectorXd& z) const;

 private:
  Eigen::ColPivHouseholderQR<MatrixXd> qr_;
};

/// Per-individual ridge-penalized straight-line fit u_ij ~ a0_i + a1_i t_ij,
/// minimizing the residual sum plus ridge*(a0^2 + a1^2) individual by
/// individual. The increment is then centered: its least-squares projection
/// onto the pooled span (intercept, time, shared covariates) is removed, so
/// the learner carries only per-individual deviations and every direction a
/// pooled learner can represent is left to that learner. rss is the
/// unpenalized residual sum of the centered increment. A singular 2x2 system
/// (ridge 0 with one row, or constant times) falls back to the intercept-only
/// fit for that individual before centering.
BaseLearnerFit fit_random_effects(const VectorXd& u, const LongitudinalDataset& data,
                                  double ridge);

/// Same fit with a projector precomputed for `data` (the loop-friendly form).
BaseLearnerFit fit_random_effects(const VectorXd& u, const LongitudinalDataset& data,
                                  double ridge, const PooledSpan& span);

/// The valid candidate with minimal rss; ties go to the earliest candidate in
/// list order (callers assemble candidates in ascending learner order).
/// Throws std::invalid_argument if no candidate is valid.
const BaseLearnerFit& select_best(const std::vector<BaseLearnerFit>& candidates);

}  // namespace jointboost
