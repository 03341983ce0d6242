#include "jointboost/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace jointboost {

namespace {

std::string join_issues(const std::string& summary, const std::vector<std::string>& issues) {
  std::ostringstream os;
  os << summary << " (" << issues.size() << " issue" << (issues.size() == 1 ? "" : "s") << ")";
  for (const auto& m : issues) os << "\n  - " << m;
  return os.str();
}

}  // namespace

validation_error::validation_error(const std::string& summary, std::vector<std::string> issues)
    : std::runtime_error(join_issues(summary, issues)), issues_(std::move(issues)) {}

LongitudinalDataset make_longitudinal(const std::vector<LongitudinalRow>& rows,
                                      std::vector<std::string> long_names,
                                      std::vector<std::string> shared_names) {
  const int n_rows = static_cast<int>(rows.size());
  const int p_l = static_cast<int>(long_names.size());
  const int p_ls = static_cast<int>(shared_names.size());

  std::vector<std::string> issues;
  for (int r = 0; r < n_rows; ++r) {
    if (static_cast<int>(rows[r].x_long.size()) != p_l)
      issues.push_back("row " + std::to_string(r) + ": expected " + std::to_string(p_l) +
                       " time-varying covariates, got " + std::to_string(rows[r].x_long.size()));
    if (static_cast<int>(rows[r].x_shared.size()) != p_ls)
      issues.push_back("row " + std::to_string(r) + ": expected " + std::to_string(p_ls) +
                       " time-constant covariates, got " + std::to_string(rows[r].x_shared.size()));
  }

  LongitudinalDataset ds;
  ds.long_names = std::move(long_names);
  ds.shared_names = std::move(shared_names);
  ds.individual.resize(n_rows);
  ds.time.resize(n_rows);
  ds.outcome.resize(n_rows);
  ds.x_long.resize(n_rows, p_l);
  ds.x_shared.resize(n_rows, p_ls);

  std::unordered_map<long long, int> dense;
  int last_index = -1;
  for (int r = 0; r < n_rows; ++r) {
    const auto& row = rows[r];
    auto it = dense.find(row.id);
    int idx;
    if (it == dense.end()) {
      idx = static_cast<int>(ds.external_id.size());
      dense.emplace(row.id, idx);
      ds.external_id.push_back(row.id);
      ds.row_start.push_back(r);
    } else {
      idx = it->second;
      if (idx != last_index)
        issues.push_back("rows of individual " + std::to_string(row.id) +
                         " are not contiguous (row " + std::to_string(r) + ")");
    }
    last_index = idx;
    ds.individual[r] = idx;
    ds.time[r] = row.time;
    ds.outcome[r] = row.outcome;
    if (issues.empty()) {
      for (int j = 0; j < p_l; ++j) ds.x_long(r, j) = row.x_long[j];
      for (int j = 0; j < p_ls; ++j) ds.x_shared(r, j) = row.x_shared[j];
    }
  }
  ds.row_start.push_back(n_rows);

  if (!issues.empty()) throw validation_error("cannot assemble longitudinal dataset", issues);
  return ds;
}

SurvivalDataset make_survival(const std::vector<SurvivalRow>& rows,
                              std::vector<std::string> surv_names) {
  const int n = static_cast<int>(rows.size());
  const int p_s = static_cast<int>(surv_names.size());

  std::vector<std::string> issues;
  for (int r = 0; r < n; ++r)
    if (static_cast<int>(rows[r].x_surv.size()) != p_s)
      issues.push_back("row " + std::to_string(r) + ": expected " + std::to_string(p_s) +
                       " baseline covariates, got " + std::to_string(rows[r].x_surv.size()));
  if (!issues.empty()) throw validation_error("cannot assemble survival dataset", issues);

  SurvivalDataset ds;
  ds.surv_names = std::move(surv_names);
  ds.external_id.reserve(n);
  ds.event_time.resize(n);
  ds.event.resize(n);
  ds.x_surv.resize(n, p_s);
  for (int r = 0; r < n; ++r) {
    ds.external_id.push_back(rows[r].id);
    ds.event_time[r] = rows[r].event_time;
    ds.event[r] = rows[r].event ? 1 : 0;
    for (int j = 0; j < p_s; ++j) ds.x_surv(r, j) = rows[r].x_surv[j];
  }
  return ds;
}

std::vector<std::string> validation_messages(const LongitudinalDataset& longitudinal,
                                             const SurvivalDataset& survival) {
  std::vector<std::string> issues;
  const int n = longitudinal.n_individuals();
  const int n_rows = longitudinal.n_rows();

  auto id_of = [&](int i) { return std::to_string(longitudinal.external_id[i]); };

  for (int i = 0; i < n; ++i) {
    const int lo = longitudinal.row_start[i];
    const int hi = longitudinal.row_start[i + 1];
    if (hi <= lo) {
      issues.push_back("individual " + id_of(i) + " has no longitudinal observations");
      continue;
    }
    for (int r = lo + 1; r < hi; ++r)
      if (longitudinal.time[r] < longitudinal.time[r - 1]) {
        issues.push_back("unsorted times for individual " + id_of(i));
        break;
      }
    for (int r = lo; r < hi; ++r) {
      if (!(longitudinal.time[r] >= 0.0 && longitudinal.time[r] <= 1.0)) {
        issues.push_back("observation time outside [0,1] for individual " + id_of(i));
        break;
      }
    }
    for (int r = lo; r < hi && longitudinal.x_shared.cols() > 0; ++r) {
      if ((longitudinal.x_shared.row(r).array() != longitudinal.x_shared.row(lo).array()).any()) {
        issues.push_back("time-constant covariates vary within individual " + id_of(i));
        break;
      }
    }
  }

  for (int r = 0; r < n_rows; ++r) {
    bool finite = std::isfinite(longitudinal.time[r]) && std::isfinite(longitudinal.outcome[r]);
    for (int j = 0; j < longitudinal.x_long.cols() && finite; ++j)
      finite = std::isfinite(longitudinal.x_long(r, j));
    for (int j = 0; j < longitudinal.x_shared.cols() && finite; ++j)
      finite = std::isfinite(longitudinal.x_shared(r, j));
    if (!finite) {
      issues.push_back("non-finite value in longitudinal row " + std::to_string(r));
      break;
    }
  }

  std::unordered_map<long long, int> surv_index;
  for (int k = 0; k < survival.n_individuals(); ++k) {
    auto [it, inserted] = surv_index.emplace(survival.external_id[k], k);
    (void)it;
    if (!inserted)
      issues.push_back("duplicate survival row for individual " +
                       std::to_string(survival.external_id[k]));
  }
  for (int i = 0; i < n; ++i)
    if (surv_index.find(longitudinal.external_id[i]) == surv_index.end())
      issues.push_back("individual mismatch: " + id_of(i) + " has no survival row");
  {
    std::unordered_map<long long, bool> in_long;
    for (long long id : longitudinal.external_id) in_long[id] = true;
    for (long long id : survival.external_id)
      if (!in_long.count(id))
        issues.push_back("individual mismatch: survival row " + std::to_string(id) +
                         " absent from longitudinal data");
  }

  for (int k = 0; k < survival.n_individuals(); ++k) {
    if (!std::isfinite(survival.event_time[k]) || survival.event_time[k] < 0.0) {
      issues.push_back("invalid event time for individual " +
                       std::to_string(survival.external_id[k]));
      continue;
    }
    bool finite = true;
    for (int j = 0; j < survival.x_surv.cols() && finite; ++j)
      finite = std::isfinite(survival.x_surv(k, j));
    if (!finite)
      issues.push_back("non-finite baseline covariate for individual " +
                       std::to_string(survival.external_id[k]));
  }

  // T_i must not precede the last longitudinal observation.
  for (int i = 0; i < n; ++i) {
    auto it = surv_index.find(longitudinal.external_id[i]);
    if (it == surv_index.end()) continue;
    const int hi = longitudinal.row_start[i + 1];
    if (hi <= longitudinal.row_start[i]) continue;
    const double last_time = longitudinal.time[hi - 1];
    const double T = survival.event_time[it->second];
    if (std::isfinite(T) && T < last_time)
      issues.push_back("event time precedes last observation time for individual " + id_of(i));
  }

  return issues;
}

std::pair<LongitudinalDataset, SurvivalDataset> validate(LongitudinalDataset longitudinal,
                                                         SurvivalDataset survival) {
  auto issues = validation_messages(longitudinal, survival);
  if (!issues.empty()) throw validation_error("dataset validation failed", issues);

  // Reorder survival rows to the longitudinal dense order.
  std::unordered_map<long long, int> surv_index;
  for (int k = 0; k < survival.n_individuals(); ++k) surv_index[survival.external_id[k]] = k;

  const int n = longitudinal.n_individuals();
  SurvivalDataset aligned;
  aligned.surv_names = survival.surv_names;
  aligned.external_id = longitudinal.external_id;
  aligned.event_time.resize(n);
  aligned.event.resize(n);
  aligned.x_surv.resize(n, survival.x_surv.cols());
  for (int i = 0; i < n; ++i) {
    const int k = surv_index.at(longitudinal.external_id[i]);
    aligned.event_time[i] = survival.event_time[k];
    aligned.event[i] = survival.event[k];
    aligned.x_surv.row(i) = survival.x_surv.row(k);
  }
  return {std::move(longitudinal), std::move(aligned)};
}

void check_aligned(const LongitudinalDataset& longitudinal, const SurvivalDataset& survival) {
  if (longitudinal.external_id != survival.external_id)
    throw std::invalid_argument(
        "longitudinal and survival datasets are not aligned; pass the pair returned by validate()");
}

PredictorValues compute_predictors(const ParameterState& state,
                                   const LongitudinalDataset& longitudinal,
                                   const SurvivalDataset& survival) {
  check_aligned(longitudinal, survival);
  const int n = longitudinal.n_individuals();
  const int n_rows = longitudinal.n_rows();

  auto dim_check = [](const char* what, long got, long want) {
    if (got != want)
      throw std::invalid_argument(std::string("dimension mismatch: ") + what + " has length " +
                                  std::to_string(got) + ", expected " + std::to_string(want));
  };
  dim_check("beta_long", state.beta_long.size(), longitudinal.x_long.cols());
  dim_check("beta_shared", state.beta_shared.size(), longitudinal.x_shared.cols());
  dim_check("beta_surv", state.beta_surv.size(), survival.x_surv.cols());
  dim_check("gamma0", state.gamma0.size(), n);
  dim_check("gamma1", state.gamma1.size(), n);

  PredictorValues p;
  p.eta_long = (longitudinal.x_long * state.beta_long).array() + state.beta0;
  p.eta_surv = survival.x_surv * state.beta_surv;
  p.slope = state.gamma1.array() + state.beta_time;

  p.eta_shared_const.resize(n);
  for (int i = 0; i < n; ++i) {
    double v = state.gamma0[i];
    const int lo = longitudinal.row_start[i];
    if (lo < longitudinal.row_start[i + 1])
      v += longitudinal.x_shared.row(lo).dot(state.beta_shared);
    p.eta_shared_const[i] = v;
  }

  p.eta_shared_obs.resize(n_rows);
  for (int r = 0; r < n_rows; ++r) {
    const int i = longitudinal.individual[r];
    p.eta_shared_obs[r] = p.eta_shared_const[i] + p.slope[i] * longitudinal.time[r];
  }
  return p;
}

std::pair<LongitudinalDataset, SurvivalDataset> subset_individuals(
    const LongitudinalDataset& longitudinal, const SurvivalDataset& survival,
    const std::vector<int>& keep) {
  check_aligned(longitudinal, survival);

  LongitudinalDataset lsub;
  lsub.long_names = longitudinal.long_names;
  lsub.shared_names = longitudinal.shared_names;
  int total_rows = 0;
  for (int i : keep) total_rows += longitudinal.rows_of(i);
  lsub.individual.resize(total_rows);
  lsub.time.resize(total_rows);
  lsub.outcome.resize(total_rows);
  lsub.x_long.resize(total_rows, longitudinal.x_long.cols());
  lsub.x_shared.resize(total_rows, longitudinal.x_shared.cols());

  SurvivalDataset ssub;
  ssub.surv_names = survival.surv_names;
  ssub.event_time.resize(static_cast<int>(keep.size()));
  ssub.event.resize(keep.size());
  ssub.x_surv.resize(static_cast<int>(keep.size()), survival.x_surv.cols());

  int r_out = 0;
  for (int new_idx = 0; new_idx < static_cast<int>(keep.size()); ++new_idx) {
    const int i = keep[new_idx];
    lsub.external_id.push_back(longitudinal.external_id[i]);
    lsub.row_start.push_back(r_out);
    for (int r = longitudinal.row_start[i]; r < longitudinal.row_start[i + 1]; ++r, ++r_out) {
      lsub.individual[r_out] = new_idx;
      lsub.time[r_out] = longitudinal.time[r];
      lsub.outcome[r_out] = longitudinal.outcome[r];
      lsub.x_long.row(r_out) = longitudinal.x_long.row(r);
      lsub.x_shared.row(r_out) = longitudinal.x_shared.row(r);
    }
    ssub.external_id.push_back(survival.external_id[i]);
    ssub.event_time[new_idx] = survival.event_time[i];
    ssub.event[new_idx] = survival.event[i];
    ssub.x_surv.row(new_idx) = survival.x_surv.row(i);
  }
  lsub.row_start.push_back(r_out);
  return {std::move(lsub), std::move(ssub)};
}

}  // namespace jointboost
