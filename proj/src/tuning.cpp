#include "jointboost/tuning.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "jointboost/likelihood.hpp"
#include "jointboost/numerics.hpp"

namespace jointboost {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_axis(const char* name, const std::vector<int>& axis) {
  if (axis.empty()) {
    throw std::invalid_argument(std::string("tuning grid: empty ") + name +
                                " axis");
  }
  if (axis.front() < 0) {
    throw std::invalid_argument(std::string("tuning grid: ") + name +
                                " axis has a negative stopping iteration");
  }
  for (std::size_t i = 1; i < axis.size(); ++i) {
    if (axis[i] <= axis[i - 1]) {
      throw std::invalid_argument(std::string("tuning grid: ") + name +
                                  " axis is not strictly increasing");
    }
  }
}

std::vector<int> shuffled_ids(int n, std::uint64_t seed) {
  std::vector<int> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  Rng rng(seed);
  for (int i = n - 1; i > 0; --i) std::swap(ids[i], ids[rng.uniform_int(0, i)]);
  return ids;
}

struct Fold {
  LongitudinalDataset train_long;
  SurvivalDataset train_surv;
  LongitudinalDataset test_long;
  SurvivalDataset test_surv;
};

}  // namespace

Triple Grid::at(std::size_t index) const {
  const std::size_t inner = m_surv.size() * m_shared.size();
  Triple t;
  t.m_long = m_long[index / inner];
  t.m_surv = m_surv[(index % inner) / m_shared.size()];
  t.m_shared = m_shared[index % m_shared.size()];
  return t;
}

void Grid::check() const {
  check_axis("longitudinal", m_long);
  check_axis("survival", m_surv);
  check_axis("shared", m_shared);
}

std::vector<std::vector<int>> kfold_split(int n, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("k-fold split: need at least 2 folds");
  if (k > n) {
    throw std::invalid_argument(
        "k-fold split: more folds than individuals (" + std::to_string(k) +
        " > " + std::to_string(n) + ")");
  }
  const std::vector<int> ids = shuffled_ids(n, seed);
  std::vector<std::vector<int>> folds(k);
  for (int i = 0; i < n; ++i) folds[i % k].push_back(ids[i]);
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

std::pair<std::vector<int>, std::vector<int>> fraction_split(
    int n, double test_fraction, std::uint64_t seed) {
  if (n < 2) {
    throw std::invalid_argument(
        "train/test split: need at least 2 individuals");
  }
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw std::invalid_argument(
        "train/test split: test fraction must lie in (0, 1)");
  }
  const int n_test = std::clamp(
      static_cast<int>(std::lround(n * test_fraction)), 1, n - 1);
  const std::vector<int> ids = shuffled_ids(n, seed);
  std::vector<int> test(ids.begin(), ids.begin() + n_test);
  std::vector<int> train(ids.begin() + n_test, ids.end());
  std::sort(test.begin(), test.end());
  std::sort(train.begin(), train.end());
  return {std::move(train), std::move(test)};
}

EvalPlan EvalPlan::holdout(LongitudinalDataset test_long,
                           SurvivalDataset test_surv) {
  EvalPlan plan;
  plan.kind = Kind::Holdout;
  plan.test_longitudinal = std::move(test_long);
  plan.test_survival = std::move(test_surv);
  return plan;
}

EvalPlan EvalPlan::split(double test_fraction, std::uint64_t seed) {
  EvalPlan plan;
  plan.kind = Kind::Split;
  plan.test_fraction = test_fraction;
  plan.seed = seed;
  return plan;
}

EvalPlan EvalPlan::kfold(int folds, std::uint64_t seed) {
  EvalPlan plan;
  plan.kind = Kind::KFold;
  plan.folds = folds;
  plan.seed = seed;
  return plan;
}

double heldout_risk(const ParameterState& state,
                    const LongitudinalDataset& test_longitudinal,
                    const SurvivalDataset& test_survival) {
  if (test_longitudinal.n_individuals() == 0) {
    throw std::invalid_argument("held-out risk: empty test set");
  }
  ParameterState scored = state;
  scored.gamma0 = VectorXd::Zero(test_longitudinal.n_individuals());
  scored.gamma1 = VectorXd::Zero(test_longitudinal.n_individuals());
  const double ll = joint_loglik(scored, test_longitudinal, test_survival);
  return std::isfinite(ll) ? -ll : kInf;
}

TuningResult grid_search(const LongitudinalDataset& longitudinal,
                         const SurvivalDataset& survival, const Grid& grid,
                         const EvalPlan& plan, const BoostingConfig& base,
                         int threads) {
  grid.check();
  if (threads < 1) {
    throw std::invalid_argument("grid search: thread count must be positive");
  }
  {
    BoostingConfig probe = base;
    probe.m_stop_long = grid.m_long.back();
    probe.m_stop_surv = grid.m_surv.back();
    probe.m_stop_shared = grid.m_shared.back();
    probe.check();
  }
  check_aligned(longitudinal, survival);

  std::vector<Fold> folds;
  std::vector<std::vector<int>> fold_test_ids;
  const int n = longitudinal.n_individuals();
  switch (plan.kind) {
    case EvalPlan::Kind::Holdout: {
      if (!plan.test_longitudinal.has_value() ||
          !plan.test_survival.has_value()) {
        throw std::invalid_argument(
            "grid search: holdout plan carries no test datasets");
      }
      const LongitudinalDataset& tl = *plan.test_longitudinal;
      if (tl.n_individuals() == 0) {
        throw std::invalid_argument("held-out risk: empty test set");
      }
      if (tl.x_long.cols() != longitudinal.x_long.cols() ||
          tl.x_shared.cols() != longitudinal.x_shared.cols() ||
          plan.test_survival->x_surv.cols() != survival.x_surv.cols()) {
        throw std::invalid_argument(
            "grid search: held-out covariates do not match the training data");
      }
      check_aligned(tl, *plan.test_survival);
      folds.push_back({longitudinal, survival, tl, *plan.test_survival});
      fold_test_ids.emplace_back();  // external data, no indices to report
      break;
    }
    case EvalPlan::Kind::Split: {
      auto [train, test] = fraction_split(n, plan.test_fraction, plan.seed);
      auto [train_long, train_surv] =
          subset_individuals(longitudinal, survival, train);
      auto [test_long, test_surv] =
          subset_individuals(longitudinal, survival, test);
      folds.push_back({std::move(train_long), std::move(train_surv),
                       std::move(test_long), std::move(test_surv)});
      fold_test_ids.push_back(std::move(test));
      break;
    }
    case EvalPlan::Kind::KFold: {
      auto parts = kfold_split(n, plan.folds, plan.seed);
      for (auto& test : parts) {
        std::vector<char> in_test(n, 0);
        for (int id : test) in_test[id] = 1;
        std::vector<int> train;
        train.reserve(n - static_cast<int>(test.size()));
        for (int id = 0; id < n; ++id) {
          if (!in_test[id]) train.push_back(id);
        }
        auto [train_long, train_surv] =
            subset_individuals(longitudinal, survival, train);
        auto [test_long, test_surv] =
            subset_individuals(longitudinal, survival, test);
        folds.push_back({std::move(train_long), std::move(train_surv),
                         std::move(test_long), std::move(test_surv)});
        fold_test_ids.push_back(std::move(test));
      }
      break;
    }
  }

  const std::size_t points = grid.size();
  const std::size_t total = folds.size() * points;
  std::vector<std::vector<double>> fold_risks(folds.size(),
                                              std::vector<double>(points, kInf));

  // Work queue over (fold, grid point); every item writes only its own slot,
  // so the surface is identical for any thread count.
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t item = next.fetch_add(1);
      if (item >= total) return;
      const std::size_t f = item / points;
      const std::size_t g = item % points;
      const Triple triple = grid.at(g);
      BoostingConfig config = base;
      config.m_stop_long = triple.m_long;
      config.m_stop_surv = triple.m_surv;
      config.m_stop_shared = triple.m_shared;
      config.record_paths = false;
      const Fold& fold = folds[f];
      double risk = kInf;
      try {
        const FitResult fit =
            boost_fit(fold.train_long, fold.train_surv, config);
        risk = heldout_risk(fit.final_state, fold.test_long, fold.test_surv);
      } catch (const numeric_error&) {
        risk = kInf;  // disqualified point, kept in the surface
      }
      fold_risks[f][g] = risk;
    }
  };
  const std::size_t n_workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), total);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  TuningResult result;
  result.surface.assign(points, 0.0);
  for (std::size_t g = 0; g < points; ++g) {
    double sum = 0.0;
    for (const auto& per_fold : fold_risks) sum += per_fold[g];
    result.surface[g] = sum / static_cast<double>(folds.size());
  }

  // Grid::at order is lexicographic in (m_long, m_surv, m_shared), so only
  // strict improvements replace the incumbent.
  std::size_t best = 0;
  for (std::size_t g = 1; g < points; ++g) {
    const double risk = result.surface[g];
    const double incumbent = result.surface[best];
    if (risk < incumbent ||
        (risk == incumbent && grid.at(g).total() < grid.at(best).total())) {
      best = g;
    }
  }
  result.best_triple = grid.at(best);
  result.best_risk = result.surface[best];
  result.at_grid_boundary = result.best_triple.m_long == grid.m_long.back() ||
                            result.best_triple.m_surv == grid.m_surv.back() ||
                            result.best_triple.m_shared == grid.m_shared.back();
  result.fold_risks = std::move(fold_risks);
  result.fold_test_ids = std::move(fold_test_ids);
  return result;
}

}  // namespace jointboost
