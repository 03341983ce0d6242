#pragma once

// Shared helpers for the test binaries: small dataset builders, a random
// instance generator and an independent transcription of the joint
// log-likelihood that evaluates the hazard integral by adaptive quadrature
// instead of the closed form.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "jointboost/numerics.hpp"
#include "jointboost/types.hpp"

namespace testsupport {

inline std::vector<std::string> numbered_names(const std::string& prefix, int p) {
  std::vector<std::string> names;
  for (int k = 0; k < p; ++k) names.push_back(prefix + std::to_string(k + 1));
  return names;
}

inline jointboost::LongitudinalDataset long_data(std::vector<jointboost::LongitudinalRow> rows,
                                                 int p_l, int p_ls) {
  return jointboost::make_longitudinal(rows, numbered_names("l", p_l), numbered_names("ls", p_ls));
}

inline jointboost::SurvivalDataset surv_data(std::vector<jointboost::SurvivalRow> rows, int p_s) {
  return jointboost::make_survival(rows, numbered_names("s", p_s));
}

inline jointboost::ParameterState zero_state(int n, int p_l, int p_s, int p_ls) {
  jointboost::ParameterState st;
  st.beta_long = jointboost::VectorXd::Zero(p_l);
  st.beta_surv = jointboost::VectorXd::Zero(p_s);
  st.beta_shared = jointboost::VectorXd::Zero(p_ls);
  st.gamma0 = jointboost::VectorXd::Zero(n);
  st.gamma1 = jointboost::VectorXd::Zero(n);
  return st;
}

struct Instance {
  jointboost::LongitudinalDataset longitudinal;
  jointboost::SurvivalDataset survival;
  jointboost::ParameterState state;
};

/// Small random model + data pair with moderate coefficient magnitudes, so
/// likelihood evaluations stay far from overflow. Times are sorted uniforms,
/// the survival time sits beyond the last observation.
inline Instance random_instance(jointboost::Rng& rng, int n, int max_ni, int p_l, int p_s,
                                int p_ls) {
  std::vector<jointboost::LongitudinalRow> lrows;
  std::vector<jointboost::SurvivalRow> srows;
  for (int i = 0; i < n; ++i) {
    const int n_i = rng.uniform_int(1, max_ni);
    std::vector<double> times;
    for (int j = 0; j < n_i; ++j) times.push_back(rng.uniform(0.0, 1.0));
    std::sort(times.begin(), times.end());
    std::vector<double> x_shared;
    for (int k = 0; k < p_ls; ++k) x_shared.push_back(rng.uniform(-1.0, 1.0));
    for (int j = 0; j < n_i; ++j) {
      jointboost::LongitudinalRow row;
      row.id = 100 + i;
      row.time = times[j];
      row.outcome = rng.uniform(-2.0, 2.0);
      for (int k = 0; k < p_l; ++k) row.x_long.push_back(rng.uniform(-1.0, 1.0));
      row.x_shared = x_shared;
      lrows.push_back(row);
    }
    jointboost::SurvivalRow srow;
    srow.id = 100 + i;
    srow.event_time = times.back() + rng.uniform(0.0, 1.0);
    srow.event = rng.uniform01() < 0.6;
    for (int k = 0; k < p_s; ++k) srow.x_surv.push_back(rng.uniform(-1.0, 1.0));
    srows.push_back(srow);
  }
  Instance inst{long_data(std::move(lrows), p_l, p_ls), surv_data(std::move(srows), p_s),
                zero_state(n, p_l, p_s, p_ls)};
  auto fill = [&](jointboost::VectorXd& v, double lo, double hi) {
    for (int k = 0; k < v.size(); ++k) v[k] = rng.uniform(lo, hi);
  };
  inst.state.beta0 = rng.uniform(-1.0, 1.0);
  fill(inst.state.beta_long, -1.0, 1.0);
  fill(inst.state.beta_surv, -1.0, 1.0);
  fill(inst.state.beta_shared, -1.0, 1.0);
  inst.state.beta_time = rng.uniform(-1.0, 1.0);
  fill(inst.state.gamma0, -0.5, 0.5);
  fill(inst.state.gamma1, -0.5, 0.5);
  inst.state.alpha = rng.uniform(-1.0, 1.0);
  inst.state.lambda0 = rng.uniform(0.2, 2.0);
  inst.state.sigma2 = rng.uniform(0.2, 2.0);
  return inst;
}

/// Generating state used throughout the simulation studies: strong fixed
/// effects in all three predictors, moderate association, rare-ish events.
inline jointboost::ParameterState s1_truth() {
  jointboost::ParameterState st;
  st.beta0 = 2.0;
  st.beta_long = jointboost::VectorXd(2);
  st.beta_long << 1.0, -2.0;
  st.beta_surv = jointboost::VectorXd(3);
  st.beta_surv << -1.0, 2.0, 1.0;
  st.beta_shared = jointboost::VectorXd(2);
  st.beta_shared << 1.0, -2.0;
  st.beta_time = 2.0;
  st.alpha = 0.5;
  st.lambda0 = 0.1;
  st.sigma2 = 0.1;
  return st;
}

/// Literal term-by-term evaluation of the joint log-likelihood with the
/// hazard integral computed by Gauss-Kronrod quadrature. Shares no code with
/// the production evaluation.
inline double loglik_transcription(const jointboost::ParameterState& st,
                                   const jointboost::LongitudinalDataset& lng,
                                   const jointboost::SurvivalDataset& srv) {
  const double pi = std::acos(-1.0);
  double ll = 0.0;
  for (int i = 0; i < lng.n_individuals(); ++i) {
    double x_ls_part = 0.0;
    if (lng.rows_of(i) > 0) {
      x_ls_part = lng.x_shared.row(lng.row_start[i]).dot(st.beta_shared);
    }
    auto eta_ls_at = [&](double u) {
      return st.gamma0[i] + x_ls_part + (st.beta_time + st.gamma1[i]) * u;
    };
    for (int r = lng.row_start[i]; r < lng.row_start[i + 1]; ++r) {
      const double eta_l = st.beta0 + lng.x_long.row(r).dot(st.beta_long);
      const double resid = lng.outcome[r] - eta_l - eta_ls_at(lng.time[r]);
      ll += -std::log(std::sqrt(2.0 * pi * st.sigma2)) - resid * resid / (2.0 * st.sigma2);
    }
    const double eta_s = srv.x_surv.row(i).dot(st.beta_surv);
    const double T = srv.event_time[i];
    const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double u) { return std::exp(st.alpha * eta_ls_at(u)); }, 0.0, T, 15, 1e-13);
    if (srv.event[i]) {
      ll += std::log(st.lambda0) + eta_s + st.alpha * eta_ls_at(T);
    }
    ll -= st.lambda0 * std::exp(eta_s) * integral;
  }
  return ll;
}

}  // namespace testsupport
