#pragma once

#include <cstdint>
#include <vector>

#include "jointboost/boosting.hpp"
#include "jointboost/simulation.hpp"
#include "jointboost/tuning.hpp"
#include "jointboost/types.hpp"

namespace jointboost {

/// Multi-seed simulation study: per replication, draw a training and a
/// held-out dataset, tune the stopping iterations on the grid against the
/// held-out pair, refit at the winning triple, and aggregate coefficient
/// estimates and selection behaviour across replications.
struct ReplicateConfig {
  int replications = 10;
  /// Template for every replication's data; its `n` sizes the training set
  /// and its `seed` is ignored (per-replication seeds are derived from
  /// `seed` below).
  SimulationConfig simulation;
  /// Individuals in the held-out dataset used to score grid points.
  int test_n = 200;
  Grid grid;
  BoostingConfig boosting;
  /// Master seed. Replication r trains on derive_seed(seed, r, 0) and
  /// scores on derive_seed(seed, r, 1).
  std::uint64_t seed = 0;
  int threads = 1;

  /// Throws std::invalid_argument on non-positive counts or an invalid grid.
  void check() const;
};

/// One replication's tuned-and-refitted model.
struct ReplicationOutcome {
  std::uint64_t train_seed = 0;
  std::uint64_t test_seed = 0;
  Triple best;
  bool at_grid_boundary = false;
  double best_risk = 0.0;
  ParameterState fitted;
  /// 1 where the column's base-learner was picked at least once in the refit.
  std::vector<char> selected_long;
  std::vector<char> selected_surv;
  std::vector<char> selected_shared;
};

/// Mean and standard deviation (denominator n-1; zero for a single
/// replication) of one coefficient block across replications.
struct BlockMoments {
  VectorXd mean;
  VectorXd sd;
};

struct ScalarMoments {
  double mean = 0.0;
  double sd = 0.0;
};

struct ReplicateResult {
  std::vector<ReplicationOutcome> replications;

  /// Covariate names of the (identical) per-replication designs.
  std::vector<std::string> long_names;
  std::vector<std::string> surv_names;
  std::vector<std::string> shared_names;
  /// 1 for signal columns, 0 for appended noise columns.
  std::vector<char> informative_long;
  std::vector<char> informative_surv;
  std::vector<char> informative_shared;
  /// Generating parameters, zero-padded over noise columns. The realized
  /// random effects are replication-specific, so gamma0/gamma1 are empty.
  ParameterState truth;

  BlockMoments beta_long;
  BlockMoments beta_surv;
  BlockMoments beta_shared;
  ScalarMoments beta0;
  ScalarMoments beta_time;
  ScalarMoments alpha;
  ScalarMoments lambda0;
  ScalarMoments sigma2;

  /// Fraction of replications in which each column was selected.
  VectorXd selection_rate_long;
  VectorXd selection_rate_surv;
  VectorXd selection_rate_shared;

  /// Selection rates averaged over signal columns (true positives) and over
  /// noise columns (false positives) of each block; 0 when a block has no
  /// such columns.
  double tp_long = 0.0, fp_long = 0.0;
  double tp_surv = 0.0, fp_surv = 0.0;
  double tp_shared = 0.0, fp_shared = 0.0;
};

/// Runs the study. Replications execute sequentially (each grid search may
/// use `threads` workers internally), so results are a pure function of the
/// configuration.
ReplicateResult run_replications(const ReplicateConfig& config);

}  // namespace jointboost
