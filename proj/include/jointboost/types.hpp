#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace jointboost {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// A fit or evaluation produced non-finite values (overflowing predictors,
/// diverging nuisance parameters). Mapped to exit code 2 by the CLI.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data violate the dataset invariants. Carries one message per
/// violation so callers can report all of them at once.
class validation_error : public std::runtime_error {
 public:
  validation_error(const std::string& summary, std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// Longitudinal observations in long format: one row per measurement, rows
/// grouped by individual and sorted by time within individual. Individuals
/// carry a dense 0-based index; the external ids from the source file are
/// kept for reporting.
struct LongitudinalDataset {
  std::vector<long long> external_id;  // length n, dense order
  std::vector<int> individual;         // length N, dense index per row
  std::vector<int> row_start;          // length n+1, row offsets per individual
  VectorXd time;                       // length N, observation times in [0,1]
  VectorXd outcome;                    // length N
  MatrixXd x_long;                     // N x p_l, time-varying covariates
  MatrixXd x_shared;                   // N x p_ls, constant within individual
  std::vector<std::string> long_names;
  std::vector<std::string> shared_names;

  int n_individuals() const { return static_cast<int>(external_id.size()); }
  int n_rows() const { return static_cast<int>(time.size()); }
  int rows_of(int i) const { return row_start[i + 1] - row_start[i]; }
};

/// One row per individual: observed event or censoring time, event indicator
/// and baseline covariates. After validate() the rows are aligned with the
/// longitudinal dataset's dense individual order.
struct SurvivalDataset {
  std::vector<long long> external_id;  // length n
  VectorXd event_time;                 // length n
  std::vector<char> event;             // length n, 1 = event observed, 0 = censored
  MatrixXd x_surv;                     // n x p_s
  std::vector<std::string> surv_names;

  int n_individuals() const { return static_cast<int>(external_id.size()); }
};

/// All model coefficients, per-individual random effects and the nuisance
/// parameters. Treated as an immutable value everywhere outside the boosting
/// loop, which produces new states instead of mutating shared ones.
struct ParameterState {
  double beta0 = 0.0;      // longitudinal intercept
  VectorXd beta_long;      // p_l
  VectorXd beta_surv;      // p_s
  VectorXd beta_shared;    // p_ls
  double beta_time = 0.0;  // fixed time slope
  VectorXd gamma0;         // n random intercepts
  VectorXd gamma1;         // n random slopes
  double alpha = 0.0;      // association parameter
  double lambda0 = 1.0;    // constant baseline hazard, > 0
  double sigma2 = 1.0;     // longitudinal error variance, > 0
};

/// Linear predictors evaluated on a dataset pair. The shared predictor at an
/// observation row is reconstructed exactly as
///   eta_shared_obs[row] = eta_shared_const[i] + slope[i] * time[row].
struct PredictorValues {
  VectorXd eta_long;          // N
  VectorXd eta_surv;          // n
  VectorXd eta_shared_obs;    // N
  VectorXd eta_shared_const;  // n, time-constant part of the shared predictor
  VectorXd slope;             // n, beta_time + gamma1
};

/// Row of longitudinal input before dataset assembly.
struct LongitudinalRow {
  long long id = 0;
  double time = 0.0;
  double outcome = 0.0;
  std::vector<double> x_long;
  std::vector<double> x_shared;
};

/// Row of survival input before dataset assembly.
struct SurvivalRow {
  long long id = 0;
  double event_time = 0.0;
  bool event = false;
  std::vector<double> x_surv;
};

/// Assembles a dataset from rows in input order. Dense indices follow first
/// appearance. Throws validation_error if an individual's rows are not
/// contiguous or covariate counts vary, since no dataset object can represent
/// that; all other invariants are checked by validate().
LongitudinalDataset make_longitudinal(const std::vector<LongitudinalRow>& rows,
                                      std::vector<std::string> long_names,
                                      std::vector<std::string> shared_names);

SurvivalDataset make_survival(const std::vector<SurvivalRow>& rows,
                              std::vector<std::string> surv_names);

/// Checks every dataset invariant and the cross-dataset consistency of the
/// pair. On success returns the pair with the survival rows reordered to the
/// longitudinal dense individual order; on failure throws validation_error
/// listing every violation found.
std::pair<LongitudinalDataset, SurvivalDataset> validate(LongitudinalDataset longitudinal,
                                                         SurvivalDataset survival);

/// All violations in the pair, empty when valid.
std::vector<std::string> validation_messages(const LongitudinalDataset& longitudinal,
                                             const SurvivalDataset& survival);

/// Throws std::invalid_argument unless the pair is aligned (same individuals
/// in the same dense order), which every model routine relies on.
void check_aligned(const LongitudinalDataset& longitudinal, const SurvivalDataset& survival);

/// eta_long = beta0 + X_l beta_l, eta_surv = X_s beta_s,
/// eta_shared_const[i] = gamma0[i] + x_shared_i . beta_shared,
/// slope[i] = beta_time + gamma1[i], eta_shared_obs per the reconstruction
/// identity. Throws std::invalid_argument on dimension mismatch.
PredictorValues compute_predictors(const ParameterState& state,
                                   const LongitudinalDataset& longitudinal,
                                   const SurvivalDataset& survival);

/// Extracts the sub-datasets for a set of dense individual indices (order
/// preserved), remapping to new dense indices. Used by the tuning splits.
std::pair<LongitudinalDataset, SurvivalDataset> subset_individuals(
    const LongitudinalDataset& longitudinal, const SurvivalDataset& survival,
    const std::vector<int>& keep);

}  // namespace jointboost
