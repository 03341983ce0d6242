#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "jointboost/boosting.hpp"
#include "jointboost/types.hpp"

namespace jointboost {

struct Triple {
  int m_long = 0;
  int m_surv = 0;
  int m_shared = 0;

  int total() const { return m_long + m_surv + m_shared; }
  bool operator==(const Triple&) const = default;
};

/// Candidate stopping iterations, one axis per predictor. Points are
/// enumerated with m_long as the slowest axis and m_shared as the fastest.
struct Grid {
  std::vector<int> m_long;
  std::vector<int> m_surv;
  std::vector<int> m_shared;

  std::size_t size() const {
    return m_long.size() * m_surv.size() * m_shared.size();
  }
  Triple at(std::size_t index) const;

  /// Throws std::invalid_argument unless every axis is non-empty, strictly
  /// increasing, and non-negative.
  void check() const;
};

/// Shuffles individuals 0..n-1 with the given seed and deals them
/// round-robin into k folds; each fold is returned sorted. Folds are
/// disjoint, exhaustive, and differ in size by at most one. Throws when
/// k < 2 or k > n.
std::vector<std::vector<int>> kfold_split(int n, int k, std::uint64_t seed);

/// Random train/test split of individuals 0..n-1 by test fraction; both
/// sides are non-empty and sorted. Throws when n < 2 or the fraction is
/// outside (0, 1).
std::pair<std::vector<int>, std::vector<int>> fraction_split(
    int n, double test_fraction, std::uint64_t seed);

/// How grid points are scored: against a fixed held-out pair of datasets,
/// against a random split of the training data, or by k-fold
/// cross-validation.
struct EvalPlan {
  enum class Kind { Holdout, Split, KFold };
  Kind kind = Kind::Split;
  std::optional<LongitudinalDataset> test_longitudinal;
  std::optional<SurvivalDataset> test_survival;
  double test_fraction = 0.5;
  int folds = 5;
  std::uint64_t seed = 0;

  static EvalPlan holdout(LongitudinalDataset test_long,
                          SurvivalDataset test_surv);
  static EvalPlan split(double test_fraction, std::uint64_t seed);
  static EvalPlan kfold(int folds, std::uint64_t seed);
};

/// Negative joint log-likelihood of the fitted state on held-out data, with
/// the test individuals' random effects set to zero (nothing in the fit
/// predicts effects of unseen individuals, so the population-level predictor
/// is used). Non-finite values map to +infinity; an empty test set throws
/// std::invalid_argument.
double heldout_risk(const ParameterState& state,
                    const LongitudinalDataset& test_longitudinal,
                    const SurvivalDataset& test_survival);

struct TuningResult {
  Triple best_triple;
  double best_risk = 0.0;
  /// Set when some coordinate of best_triple sits at the end of its axis,
  /// i.e. a finer search might want a wider grid.
  bool at_grid_boundary = false;
  /// Held-out risk per grid point in Grid::at order, averaged over folds.
  /// Disqualified points (fit failure or non-finite likelihood) hold
  /// +infinity.
  std::vector<double> surface;
  std::vector<std::vector<double>> fold_risks;  // [fold][grid point]
  std::vector<std::vector<int>> fold_test_ids;  // test individuals per fold
};

/// Fits one independent model per (grid point, fold) with the stopping
/// iterations of that point, scores it with heldout_risk, and returns the
/// full surface plus the best triple. Ties are broken by smallest total
/// stopping iterations, then lexicographically. Work is spread over at most
/// `threads` threads; results land in preassigned slots, so the outcome does
/// not depend on the thread count.
TuningResult grid_search(const LongitudinalDataset& longitudinal,
                         const SurvivalDataset& survival, const Grid& grid,
                         const EvalPlan& plan, const BoostingConfig& base,
                         int threads = 1);

}  // namespace jointboost
