#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "jointboost/boosting.hpp"
#include "jointboost/numerics.hpp"
#include "jointboost/simulation.hpp"
#include "jointboost/tuning.hpp"
#include "support.hpp"

using namespace jointboost;

namespace {

SimulatedData tuning_data(int n, std::uint64_t seed) {
  SimulationConfig config;
  config.n = n;
  config.n_i = 4;
  config.true_state = testsupport::s1_truth();
  config.seed = seed;
  return simulate(config);
}

std::vector<int> complement_of(const std::vector<int>& test, int n) {
  std::vector<char> in_test(n, 0);
  for (int id : test) in_test[id] = 1;
  std::vector<int> train;
  for (int id = 0; id < n; ++id) {
    if (!in_test[id]) train.push_back(id);
  }
  return train;
}

}  // namespace

TEST_SUITE_BEGIN("tuning");

TEST_CASE("grid enumerates points with the longitudinal axis slowest") {
  const Grid grid{{1, 2}, {3}, {4, 5}};
  grid.check();
  REQUIRE(grid.size() == 4);
  CHECK((grid.at(0) == Triple{1, 3, 4}));
  CHECK((grid.at(1) == Triple{1, 3, 5}));
  CHECK((grid.at(2) == Triple{2, 3, 4}));
  CHECK((grid.at(3) == Triple{2, 3, 5}));
  CHECK(grid.at(3).total() == 10);
}

TEST_CASE("grid validation rejects empty, flat, decreasing, and negative axes") {
  CHECK_THROWS_AS((Grid{{}, {1}, {1}}.check()), std::invalid_argument);
  CHECK_THROWS_AS((Grid{{1, 1}, {1}, {1}}.check()), std::invalid_argument);
  CHECK_THROWS_AS((Grid{{1}, {2, 1}, {1}}.check()), std::invalid_argument);
  CHECK_THROWS_AS((Grid{{1}, {1}, {-1, 0}}.check()), std::invalid_argument);
  CHECK_NOTHROW((Grid{{0}, {0}, {0}}.check()));
}

TEST_CASE("ten folds over ten individuals is leave-one-out") {
  const auto folds = kfold_split(10, 10, 3);
  REQUIRE(folds.size() == 10);
  std::vector<char> seen(10, 0);
  for (const auto& fold : folds) {
    REQUIRE(fold.size() == 1);
    seen[fold[0]] = 1;
  }
  CHECK(std::count(seen.begin(), seen.end(), 1) == 10);
}

TEST_CASE("two folds over ten individuals are deterministic halves") {
  const auto folds = kfold_split(10, 2, 42);
  REQUIRE(folds.size() == 2);
  CHECK(folds[0].size() == 5);
  CHECK(folds[1].size() == 5);
  CHECK(std::is_sorted(folds[0].begin(), folds[0].end()));
  CHECK(folds == kfold_split(10, 2, 42));
  CHECK(folds != kfold_split(10, 2, 43));
}

TEST_CASE("folds partition the individuals with sizes differing by at most one") {
  const int n = 23, k = 4;
  const auto folds = kfold_split(n, k, 8);
  REQUIRE(folds.size() == static_cast<std::size_t>(k));
  std::vector<int> seen(n, 0);
  for (const auto& fold : folds) {
    CHECK(fold.size() >= static_cast<std::size_t>(n / k));
    CHECK(fold.size() <= static_cast<std::size_t>(n / k + 1));
    for (int id : fold) {
      REQUIRE(id >= 0);
      REQUIRE(id < n);
      ++seen[id];
    }
  }
  CHECK(std::count(seen.begin(), seen.end(), 1) == n);
}

TEST_CASE("split helpers reject degenerate requests") {
  CHECK_THROWS_AS(kfold_split(10, 11, 0), std::invalid_argument);
  CHECK_THROWS_AS(kfold_split(10, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(fraction_split(1, 0.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(fraction_split(10, 0.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(fraction_split(10, 1.0, 0), std::invalid_argument);
}

TEST_CASE("fraction split carves off the requested share of individuals") {
  const auto [train, test] = fraction_split(10, 0.3, 5);
  REQUIRE(test.size() == 3);
  REQUIRE(train.size() == 7);
  CHECK(std::is_sorted(train.begin(), train.end()));
  CHECK(std::is_sorted(test.begin(), test.end()));
  std::vector<int> all(train);
  all.insert(all.end(), test.begin(), test.end());
  std::sort(all.begin(), all.end());
  std::vector<int> expected(10);
  for (int i = 0; i < 10; ++i) expected[i] = i;
  CHECK(all == expected);
  CHECK(fraction_split(10, 0.3, 5) == std::make_pair(train, test));
}

TEST_CASE("held-out risk matches the decoupled closed form when alpha is zero") {
  SimulationConfig config;
  config.n = 25;
  config.n_i = 4;
  config.true_state = testsupport::s1_truth();
  config.true_state.alpha = 0.0;
  config.true_state.lambda0 = 0.5;
  config.true_state.sigma2 = 0.0;  // noiseless outcomes
  config.re_sd_intercept = 0.0;
  config.re_sd_slope = 0.0;
  config.seed = 31;
  const SimulatedData data = simulate(config);

  ParameterState state = data.truth.state;
  state.sigma2 = 0.25;  // score at a positive residual variance

  // With alpha = 0 the likelihood decouples: a Gaussian part with zero
  // residuals plus an exponential-hazard part per individual.
  const double pi = std::acos(-1.0);
  double expected =
      data.longitudinal.n_rows() * (-0.5 * std::log(2.0 * pi * state.sigma2));
  for (int i = 0; i < data.survival.n_individuals(); ++i) {
    const double eta_s = data.survival.x_surv.row(i).dot(state.beta_surv);
    const double T = data.survival.event_time[i];
    if (data.survival.event[i]) expected += std::log(state.lambda0) + eta_s;
    expected -= state.lambda0 * std::exp(eta_s) * T;
  }
  const double risk = heldout_risk(state, data.longitudinal, data.survival);
  CHECK(risk == doctest::Approx(-expected).epsilon(1e-12));
}

TEST_CASE("duplicating every test individual doubles the risk") {
  Rng rng(derive_seed(1201, 1));
  const auto inst = testsupport::random_instance(rng, 8, 4, 2, 2, 2);
  std::vector<int> twice;
  for (int rep = 0; rep < 2; ++rep) {
    for (int i = 0; i < inst.longitudinal.n_individuals(); ++i) {
      twice.push_back(i);
    }
  }
  const auto [dup_long, dup_surv] =
      subset_individuals(inst.longitudinal, inst.survival, twice);
  const double once = heldout_risk(inst.state, inst.longitudinal, inst.survival);
  const double doubled = heldout_risk(inst.state, dup_long, dup_surv);
  CHECK(doubled == doctest::Approx(2.0 * once).epsilon(1e-12));
}

TEST_CASE("held-out risk is infinite when the likelihood is not finite") {
  Rng rng(derive_seed(1201, 2));
  const auto inst = testsupport::random_instance(rng, 5, 3, 1, 1, 1);
  ParameterState state = inst.state;
  state.sigma2 = 1e-320;  // residual term overflows
  const double risk = heldout_risk(state, inst.longitudinal, inst.survival);
  CHECK(std::isinf(risk));
  CHECK(risk > 0.0);
}

TEST_CASE("held-out risk rejects an empty test set") {
  Rng rng(derive_seed(1201, 3));
  const auto inst = testsupport::random_instance(rng, 4, 3, 1, 1, 1);
  const auto [empty_long, empty_surv] =
      subset_individuals(inst.longitudinal, inst.survival, {});
  CHECK_THROWS_AS(heldout_risk(inst.state, empty_long, empty_surv),
                  std::invalid_argument);
}

TEST_CASE("singleton zero grid scores the initialized model") {
  const SimulatedData data = tuning_data(30, 5);
  const Grid grid{{0}, {0}, {0}};
  const EvalPlan plan = EvalPlan::split(0.25, 77);
  const TuningResult result =
      grid_search(data.longitudinal, data.survival, grid, plan, BoostingConfig{});
  REQUIRE(result.surface.size() == 1);
  CHECK((result.best_triple == Triple{0, 0, 0}));
  CHECK(result.at_grid_boundary);  // singleton axes put the point at the end

  const auto [train, test] = fraction_split(30, 0.25, 77);
  REQUIRE(result.fold_test_ids.size() == 1);
  CHECK(result.fold_test_ids[0] == test);
  const auto [train_long, train_surv] =
      subset_individuals(data.longitudinal, data.survival, train);
  const auto [test_long, test_surv] =
      subset_individuals(data.longitudinal, data.survival, test);
  const ParameterState init = initialize(train_long, train_surv);
  CHECK(result.best_risk == heldout_risk(init, test_long, test_surv));
}

TEST_CASE("a triple that wins on every fold is selected") {
  SimulationConfig config;
  config.n = 40;
  config.n_i = 4;
  config.true_state = testsupport::s1_truth();
  // Large longitudinal effect and no random effects: leaving the
  // longitudinal predictor unfitted is a clear loss on any fold. A heavy
  // per-individual ridge keeps that learner from soaking up training noise,
  // so the comparison is purely about the pooled coefficients.
  config.true_state.beta_long << 4.0, -4.0;
  config.re_sd_intercept = 0.0;
  config.re_sd_slope = 0.0;
  config.seed = 9;
  const SimulatedData data = simulate(config);
  const Grid grid{{0, 60}, {15}, {30}};
  const EvalPlan plan = EvalPlan::kfold(2, 3);
  BoostingConfig tuned;
  tuned.re_ridge = 1e6;
  const TuningResult result =
      grid_search(data.longitudinal, data.survival, grid, plan, tuned);
  REQUIRE(result.surface.size() == 2);
  REQUIRE(result.fold_risks.size() == 2);
  CHECK(result.fold_risks[0][1] < result.fold_risks[0][0]);
  CHECK(result.fold_risks[1][1] < result.fold_risks[1][0]);
  CHECK((result.best_triple == Triple{60, 15, 30}));
  for (std::size_t g = 0; g < result.surface.size(); ++g) {
    CHECK(result.surface[g] ==
          (result.fold_risks[0][g] + result.fold_risks[1][g]) / 2.0);
  }
}

TEST_CASE("surface matches an independent re-evaluation of every point") {
  const int n = 24;
  const SimulatedData data = tuning_data(n, 13);
  const Grid grid{{0, 12}, {6}, {0, 8}};
  const EvalPlan plan = EvalPlan::kfold(2, 21);
  const BoostingConfig base;
  const TuningResult result =
      grid_search(data.longitudinal, data.survival, grid, plan, base, 2);

  const auto folds = kfold_split(n, 2, 21);
  REQUIRE(result.fold_test_ids == folds);
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const auto train_ids = complement_of(folds[f], n);
    const auto [train_long, train_surv] =
        subset_individuals(data.longitudinal, data.survival, train_ids);
    const auto [test_long, test_surv] =
        subset_individuals(data.longitudinal, data.survival, folds[f]);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      BoostingConfig config = base;
      const Triple t = grid.at(g);
      config.m_stop_long = t.m_long;
      config.m_stop_surv = t.m_surv;
      config.m_stop_shared = t.m_shared;
      config.record_paths = false;
      const FitResult fit = boost_fit(train_long, train_surv, config);
      CHECK(result.fold_risks[f][g] ==
            heldout_risk(fit.final_state, test_long, test_surv));
    }
  }
  CHECK(result.best_risk ==
        *std::min_element(result.surface.begin(), result.surface.end()));
}

TEST_CASE("grid points are fit independently of their neighbours") {
  const SimulatedData data = tuning_data(20, 17);
  const EvalPlan plan = EvalPlan::split(0.5, 4);
  const TuningResult joint = grid_search(data.longitudinal, data.survival,
                                         Grid{{0, 10}, {5}, {0, 5}}, plan,
                                         BoostingConfig{});
  std::size_t idx = 0;
  for (int ml : {0, 10}) {
    for (int mls : {0, 5}) {
      const TuningResult solo =
          grid_search(data.longitudinal, data.survival,
                      Grid{{ml}, {5}, {mls}}, plan, BoostingConfig{});
      CHECK(joint.surface[idx] == solo.surface[0]);
      ++idx;
    }
  }
}

TEST_CASE("equal risks go to the triple with the fewest total iterations") {
  // Without survival covariates the survival step has no candidates and the
  // baseline-hazard refresh is idempotent, so every m_surv gives the same
  // fit and the same risk.
  SimulationConfig config;
  config.n = 20;
  config.n_i = 4;
  config.true_state = testsupport::s1_truth();
  config.true_state.beta_surv.resize(0);
  config.seed = 29;
  const SimulatedData data = simulate(config);

  const Grid grid{{0}, {0, 1, 2}, {0}};
  const TuningResult result =
      grid_search(data.longitudinal, data.survival, grid,
                  EvalPlan::split(0.5, 6), BoostingConfig{});
  REQUIRE(result.surface.size() == 3);
  CHECK(result.surface[0] == result.surface[1]);
  CHECK(result.surface[1] == result.surface[2]);
  CHECK((result.best_triple == Triple{0, 0, 0}));
}

TEST_CASE("results do not depend on the thread count") {
  const SimulatedData data = tuning_data(20, 23);
  const Grid grid{{0, 8}, {0, 6}, {4}};
  const EvalPlan plan = EvalPlan::kfold(2, 11);
  const TuningResult a =
      grid_search(data.longitudinal, data.survival, grid, plan, BoostingConfig{}, 1);
  const TuningResult b =
      grid_search(data.longitudinal, data.survival, grid, plan, BoostingConfig{}, 4);
  CHECK(a.surface == b.surface);
  CHECK(a.fold_risks == b.fold_risks);
  CHECK((a.best_triple == b.best_triple));
  CHECK(a.at_grid_boundary == b.at_grid_boundary);
}

TEST_CASE("holdout plans are validated before any fitting") {
  const SimulatedData data = tuning_data(10, 27);
  const Grid grid{{0}, {0}, {0}};
  EvalPlan bare;
  bare.kind = EvalPlan::Kind::Holdout;
  CHECK_THROWS_AS(grid_search(data.longitudinal, data.survival, grid, bare,
                              BoostingConfig{}),
                  std::invalid_argument);

  SimulationConfig wrong = {};
  wrong.n = 5;
  wrong.n_i = 3;
  wrong.true_state = testsupport::s1_truth();
  wrong.true_state.beta_surv.resize(0);  // covariate layout differs
  wrong.seed = 2;
  const SimulatedData mismatched = simulate(wrong);
  const EvalPlan bad_plan =
      EvalPlan::holdout(mismatched.longitudinal, mismatched.survival);
  CHECK_THROWS_AS(grid_search(data.longitudinal, data.survival, grid, bad_plan,
                              BoostingConfig{}),
                  std::invalid_argument);

  CHECK_THROWS_AS(grid_search(data.longitudinal, data.survival, grid,
                              EvalPlan::split(0.5, 0), BoostingConfig{}, 0),
                  std::invalid_argument);
}

TEST_CASE("holdout plan trains on all data and scores the given test set") {
  const SimulatedData train = tuning_data(30, 33);
  const SimulatedData test = tuning_data(15, 34);
  const Grid grid{{5}, {5}, {5}};
  const EvalPlan plan = EvalPlan::holdout(test.longitudinal, test.survival);
  const TuningResult result =
      grid_search(train.longitudinal, train.survival, grid, plan, BoostingConfig{});

  BoostingConfig config;
  config.m_stop_long = config.m_stop_surv = config.m_stop_shared = 5;
  config.record_paths = false;
  const FitResult fit = boost_fit(train.longitudinal, train.survival, config);
  CHECK(result.best_risk ==
        heldout_risk(fit.final_state, test.longitudinal, test.survival));
  REQUIRE(result.fold_test_ids.size() == 1);
  CHECK(result.fold_test_ids[0].empty());
}

TEST_SUITE_END();
