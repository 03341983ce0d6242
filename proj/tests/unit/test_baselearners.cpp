#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "jointboost/baselearners.hpp"
#include "jointboost/numerics.hpp"
#include "jointboost/types.hpp"
#include "support.hpp"

using namespace jointboost;
using testsupport::long_data;

namespace {

VectorXd random_vector(Rng& rng, int n, double lo = -2.0, double hi = 2.0) {
  VectorXd v(n);
  for (int k = 0; k < n; ++k) v[k] = rng.uniform(lo, hi);
  return v;
}

}  // namespace

TEST_SUITE("baselearners") {

TEST_CASE("linear learner recovers an exact multiple") {
  Rng rng(3);
  VectorXd x = random_vector(rng, 10);
  VectorXd u = 2.0 * x;
  auto fit = fit_linear(u, x, LearnerId{LearnerKind::Covariate, 0});
  CHECK(fit.valid);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.rss == doctest::Approx(0.0));
}

TEST_CASE("orthogonal gradient leaves the full sum of squares") {
  VectorXd x(2), u(2);
  x << 1.0, 1.0;
  u << 1.0, -1.0;
  auto fit = fit_linear(u, x, LearnerId{LearnerKind::Covariate, 0});
  CHECK(fit.slope == 0.0);
  CHECK(fit.rss == doctest::Approx(2.0));
}

TEST_CASE("linear learner matches a generic least-squares solve") {
  Rng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    VectorXd x = random_vector(rng, 15);
    VectorXd u = random_vector(rng, 15);
    auto fit = fit_linear(u, x, LearnerId{LearnerKind::Covariate, 0});
    Eigen::MatrixXd design(15, 1);
    design.col(0) = x;
    const double oracle = design.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV)
                              .solve(u)(0);
    CHECK(fit.slope == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(fit.rss <= u.squaredNorm() + 1e-12);
  }
}

TEST_CASE("zero covariate column is excluded") {
  VectorXd x = VectorXd::Zero(4);
  VectorXd u = VectorXd::Ones(4);
  auto fit = fit_linear(u, x, LearnerId{LearnerKind::Covariate, 2});
  CHECK_FALSE(fit.valid);
}

TEST_CASE("intercept learner fits constants exactly") {
  VectorXd u = VectorXd::Constant(5, 3.25);
  auto fit = fit_intercept(u);
  CHECK(fit.slope == doctest::Approx(3.25));
  CHECK(fit.rss == doctest::Approx(0.0));
}

TEST_CASE("intercept learner is zero on centered gradients") {
  VectorXd u(4);
  u << -1.0, 1.0, -2.0, 2.0;
  CHECK(fit_intercept(u).slope == doctest::Approx(0.0));
}

TEST_CASE("intercept learner by hand") {
  VectorXd u(3);
  u << 1.0, 2.0, 3.0;
  auto fit = fit_intercept(u);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.rss == doctest::Approx(2.0));
}

TEST_CASE("time learner is the linear learner on times") {
  Rng rng(7);
  VectorXd t = random_vector(rng, 8, 0.0, 1.0);
  VectorXd u = random_vector(rng, 8);
  auto fit = fit_time(u, t);
  auto lin = fit_linear(u, t, LearnerId{LearnerKind::Covariate, 0});
  CHECK(fit.id.kind == LearnerKind::Time);
  CHECK(fit.slope == lin.slope);
  CHECK(fit.rss == lin.rss);
}

TEST_CASE("random-effects learner interpolates balanced per-individual lines") {
  // Two individuals with mirror-image lines on the same time grid: the pooled
  // intercept/time projection cancels, so the centered increments are the
  // exact per-individual lines and the fit interpolates.
  auto lng = long_data({{1, 0.0, 0.0, {}, {}},
                        {1, 0.5, 0.0, {}, {}},
                        {1, 1.0, 0.0, {}, {}},
                        {2, 0.0, 0.0, {}, {}},
                        {2, 0.5, 0.0, {}, {}},
                        {2, 1.0, 0.0, {}, {}}},
                       0, 0);
  VectorXd u(6);
  for (int r = 0; r < 3; ++r) u[r] = 1.0 + 2.0 * lng.time[r];
  for (int r = 3; r < 6; ++r) u[r] = -1.0 - 2.0 * lng.time[r];
  auto fit = fit_random_effects(u, lng, 0.0);
  CHECK(fit.re_intercept[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.re_slope[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.re_intercept[1] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(fit.re_slope[1] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(fit.rss == doctest::Approx(0.0));
}

TEST_CASE("deviations the pooled learners can represent are ceded to them") {
  // One individual only: its exact line lies entirely in the pooled
  // intercept/time span, so the centered increment vanishes and the learner
  // reports the full squared norm as residual.
  auto lng = long_data({{1, 0.0, 0.0, {}, {}}, {1, 0.5, 0.0, {}, {}}, {1, 1.0, 0.0, {}, {}}}, 0,
                       0);
  VectorXd u(3);
  for (int r = 0; r < 3; ++r) u[r] = 1.0 + 2.0 * lng.time[r];
  auto fit = fit_random_effects(u, lng, 0.0);
  CHECK(std::abs(fit.re_intercept[0]) < 1e-12);
  CHECK(std::abs(fit.re_slope[0]) < 1e-12);
  CHECK(fit.rss == doctest::Approx(u.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("an infinite ridge freezes the random-effects learner") {
  auto lng = long_data({{1, 0.0, 0.0, {}, {}}, {1, 0.5, 0.0, {}, {}}, {2, 0.3, 0.0, {}, {}}}, 0,
                       0);
  VectorXd u(3);
  u << 1.0, -2.0, 3.0;
  auto fit = fit_random_effects(u, lng, 1e12);
  CHECK(std::abs(fit.re_intercept[0]) < 1e-10);
  CHECK(std::abs(fit.re_slope[1]) < 1e-10);
  CHECK(fit.rss == doctest::Approx(u.squaredNorm()).epsilon(1e-9));
}

TEST_CASE("random-effects learner matches a generic penalized solve") {
  // Two-stage oracle built independently with Eigen: penalized per-individual
  // solves via an augmented SVD, then the pooled-span correction as a dense
  // least-squares projection of the fitted values onto [1, t, X_shared].
  Rng rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    const int p_ls = rep % 2 == 0 ? 0 : 2;
    auto inst = testsupport::random_instance(rng, 4, 4, 0, 0, p_ls);
    const auto& lng = inst.longitudinal;
    VectorXd u = random_vector(rng, lng.n_rows());
    const double ridge = 1.0;
    auto fit = fit_random_effects(u, lng, ridge);

    const int n = lng.n_individuals();
    VectorXd raw0(n), raw1(n);
    for (int i = 0; i < n; ++i) {
      const int lo = lng.row_start[i], n_i = lng.rows_of(i);
      Eigen::MatrixXd aug(n_i + 2, 2);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_i + 2);
      for (int j = 0; j < n_i; ++j) {
        aug(j, 0) = 1.0;
        aug(j, 1) = lng.time[lo + j];
        rhs[j] = u[lo + j];
      }
      aug.row(n_i) << std::sqrt(ridge), 0.0;
      aug.row(n_i + 1) << 0.0, std::sqrt(ridge);
      Eigen::Vector2d sol =
          aug.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
      raw0[i] = sol[0];
      raw1[i] = sol[1];
    }
    Eigen::MatrixXd pooled(lng.n_rows(), 2 + p_ls);
    VectorXd z(lng.n_rows());
    for (int r = 0; r < lng.n_rows(); ++r) {
      const int i = lng.individual[r];
      pooled(r, 0) = 1.0;
      pooled(r, 1) = lng.time[r];
      for (int k = 0; k < p_ls; ++k) pooled(r, 2 + k) = lng.x_shared(r, k);
      z[r] = raw0[i] + raw1[i] * lng.time[r];
    }
    VectorXd c = pooled.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(z);
    for (int i = 0; i < n; ++i) {
      const int lo = lng.row_start[i];
      double shift = c[0];
      for (int k = 0; k < p_ls; ++k) shift += lng.x_shared(lo, k) * c[2 + k];
      CHECK(fit.re_intercept[i] == doctest::Approx(raw0[i] - shift).epsilon(1e-10));
      CHECK(fit.re_slope[i] == doctest::Approx(raw1[i] - c[1]).epsilon(1e-10));
    }
  }
}

TEST_CASE("singular per-individual systems fall back to a constant") {
  // Mirror-image pairs keep the pooled projection at zero, so the intercept
  // fallback for a one-row individual and for equal observation times is
  // directly visible in the returned increments.
  auto lng = long_data({{1, 0.4, 0.0, {}, {}},
                        {2, 0.4, 0.0, {}, {}},
                        {3, 0.3, 0.0, {}, {}},
                        {3, 0.3, 0.0, {}, {}},
                        {4, 0.3, 0.0, {}, {}},
                        {4, 0.3, 0.0, {}, {}},
                        {5, 0.1, 0.0, {}, {}},
                        {5, 0.8, 0.0, {}, {}}},
                       0, 0);
  VectorXd u(8);
  u << 5.0, -5.0, 1.0, 3.0, -1.0, -3.0, 0.0, 0.0;
  auto fit = fit_random_effects(u, lng, 0.0);
  CHECK(fit.re_intercept[0] == doctest::Approx(5.0));  // one row: constant interpolates
  CHECK(std::abs(fit.re_slope[0]) < 1e-12);
  CHECK(fit.re_intercept[1] == doctest::Approx(-5.0));
  CHECK(fit.re_intercept[2] == doctest::Approx(2.0));  // equal times: mean
  CHECK(std::abs(fit.re_slope[2]) < 1e-12);
  CHECK(fit.re_intercept[3] == doctest::Approx(-2.0));
  CHECK(std::abs(fit.re_intercept[4]) < 1e-12);
  CHECK(std::abs(fit.re_slope[4]) < 1e-12);
}

TEST_CASE("selection takes the smallest residual") {
  std::vector<BaseLearnerFit> cands(3);
  for (int k = 0; k < 3; ++k) {
    cands[k].id = LearnerId{LearnerKind::Covariate, k};
    cands[k].valid = true;
  }
  cands[0].rss = 3.0;
  cands[1].rss = 1.0;
  cands[2].rss = 2.0;
  CHECK(select_best(cands).id.index == 1);
}

TEST_CASE("ties go to the earlier candidate") {
  std::vector<BaseLearnerFit> cands(2);
  for (int k = 0; k < 2; ++k) {
    cands[k].id = LearnerId{LearnerKind::Covariate, k};
    cands[k].valid = true;
    cands[k].rss = 1.0;
  }
  CHECK(select_best(cands).id.index == 0);
}

TEST_CASE("a dominating covariate wins the selection") {
  Rng rng(13);
  const int n = 40, p = 5;
  Eigen::MatrixXd X(n, p);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < p; ++c) X(r, c) = rng.uniform(-1.0, 1.0);
  VectorXd u = 5.0 * X.col(2);
  for (int r = 0; r < n; ++r) u[r] += 1e-6 * rng.uniform(-1.0, 1.0);
  std::vector<BaseLearnerFit> cands;
  for (int c = 0; c < p; ++c)
    cands.push_back(fit_linear(u, X.col(c), LearnerId{LearnerKind::Covariate, c}));
  CHECK(select_best(cands).id.index == 2);
}

TEST_CASE("selection is permutation covariant without ties") {
  std::vector<BaseLearnerFit> cands(4);
  for (int k = 0; k < 4; ++k) {
    cands[k].id = LearnerId{LearnerKind::Covariate, k};
    cands[k].valid = true;
    cands[k].rss = 10.0 - k;
  }
  auto best = select_best(cands).id;
  std::swap(cands[0], cands[3]);
  std::swap(cands[1], cands[2]);
  CHECK(select_best(cands).id == best);
}

TEST_CASE("empty or fully invalid candidate lists are rejected") {
  CHECK_THROWS_AS(select_best({}), std::invalid_argument);
  std::vector<BaseLearnerFit> cands(1);
  cands[0].valid = false;
  CHECK_THROWS_AS(select_best(cands), std::invalid_argument);
}

TEST_CASE("slope perturbations never reduce the residual") {
  Rng rng(17);
  VectorXd x = random_vector(rng, 12);
  VectorXd u = random_vector(rng, 12);
  auto fit = fit_linear(u, x, LearnerId{LearnerKind::Covariate, 0});
  for (int k = 0; k < 100; ++k) {
    const double b = fit.slope + rng.uniform(-0.5, 0.5);
    CHECK((u - b * x).squaredNorm() >= fit.rss - 1e-12);
  }
}

}  // TEST_SUITE
