#include "jointboost/baselearners.hpp"

#include <cmath>
#include <stdexcept>

namespace jointboost {

std::string to_string(const LearnerId& id) {
  switch (id.kind) {
    case LearnerKind::Intercept:
      return "intercept";
    case LearnerKind::Time:
      return "time";
    case LearnerKind::RandomEffects:
      return "random-effects";
    case LearnerKind::Covariate:
      return "covariate " + std::to_string(id.index + 1);
  }
  return "?";
}

BaseLearnerFit fit_linear(const VectorXd& u, const VectorXd& x, LearnerId id) {
  BaseLearnerFit fit;
  fit.id = id;
  const double xx = x.squaredNorm();
  if (xx == 0.0) return fit;  // zero column: excluded from selection
  fit.slope = u.dot(x) / xx;
  fit.rss = (u - fit.slope * x).squaredNorm();
  fit.valid = true;
  return fit;
}

BaseLearnerFit fit_intercept(const VectorXd& u) {
  BaseLearnerFit fit;
  fit.id = LearnerId{LearnerKind::Intercept, -1};
  fit.slope = u.size() > 0 ? u.mean() : 0.0;
  fit.rss = (u.array() - fit.slope).matrix().squaredNorm();
  fit.valid = true;
  return fit;
}

BaseLearnerFit fit_time(const VectorXd& u, const VectorXd& t) {
  BaseLearnerFit fit = fit_linear(u, t, LearnerId{LearnerKind::Time, -1});
  return fit;
}

PooledSpan::PooledSpan(const LongitudinalDataset& data) {
  const int rows = data.n_rows();
  const int p = static_cast<int>(data.x_shared.cols());
  MatrixXd design(rows, 2 + p);
  design.col(0).setOnes();
  design.col(1) = data.time;
  design.rightCols(p) = data.x_shared;
  qr_.compute(design);
}

VectorXd PooledSpan::solve(const VectorXd& z) const { return qr_.solve(z); }

BaseLearnerFit fit_random_effects(const VectorXd& u, const LongitudinalDataset& data,
                                  double ridge) {
  return fit_random_effects(u, data, ridge, PooledSpan(data));
}

BaseLearnerFit fit_random_effects(const VectorXd& u, const LongitudinalDataset& data,
                                  double ridge, const PooledSpan& span) {
  const int n = data.n_individuals();
  BaseLearnerFit fit;
  fit.id = LearnerId{LearnerKind::RandomEffects, -1};
  fit.re_intercept = VectorXd::Zero(n);
  fit.re_slope = VectorXd::Zero(n);
  double rss = 0.0;
  for (int i = 0; i < n; ++i) {
    const int lo = data.row_start[i], hi = data.row_start[i + 1];
    const int n_i = hi - lo;
    if (n_i == 0) continue;
    double st = 0.0, stt = 0.0, su = 0.0, sut = 0.0;
    for (int r = lo; r < hi; ++r) {
      st += data.time[r];
      stt += data.time[r] * data.time[r];
      su += u[r];
      sut += u[r] * data.time[r];
    }
    const double a = n_i + ridge, b = st, d = stt + ridge;
    const double det = a * d - b * b;
    double a0, a1;
    if (det > 1e-12 * (a * d + b * b + 1e-300)) {
      a0 = (d * su - b * sut) / det;
      a1 = (a * sut - b * su) / det;
    } else {
      a0 = su / a;  // singular line fit: keep the ridge intercept only
      a1 = 0.0;
    }
    fit.re_intercept[i] = a0;
    fit.re_slope[i] = a1;
  }

  // Random effects are deviations: everything the pooled learners can
  // represent (intercept, time, shared covariates -- all flat directions of
  // the likelihood against the free per-individual effects) is projected out
  // of the increment and left to those learners.
  const int rows = data.n_rows();
  if (rows > 0) {
    VectorXd z(rows);
    for (int r = 0; r < rows; ++r) {
      const int i = data.individual[r];
      z[r] = fit.re_intercept[i] + fit.re_slope[i] * data.time[r];
    }
    const VectorXd c = span.solve(z);
    for (int i = 0; i < n; ++i) {
      const int lo = data.row_start[i];
      if (lo == data.row_start[i + 1]) continue;
      fit.re_intercept[i] -= c[0] + data.x_shared.row(lo).dot(c.tail(c.size() - 2));
      fit.re_slope[i] -= c[1];
    }
  }

  for (int r = 0; r < rows; ++r) {
    const int i = data.individual[r];
    const double resid =
        u[r] - fit.re_intercept[i] - fit.re_slope[i] * data.time[r];
    rss += resid * resid;
  }
  fit.rss = rss;
  fit.valid = true;
  return fit;
}

const BaseLearnerFit& select_best(const std::vector<BaseLearnerFit>& candidates) {
  const BaseLearnerFit* best = nullptr;
  for (const auto& c : candidates) {
    if (!c.valid) continue;
    if (best == nullptr || c.rss < best->rss) best = &c;
  }
  if (best == nullptr) throw std::invalid_argument("no valid base-learner candidates");
  return *best;
}

}  // namespace jointboost
