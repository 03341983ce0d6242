#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "jointboost/numerics.hpp"
#include "jointboost/types.hpp"

namespace jointboost {

/// Generator settings. true_state supplies the fixed-effect coefficients,
/// alpha, lambda0 and sigma2; its random-effect vectors are ignored (the
/// realized effects are drawn per individual with the configured standard
/// deviations and reported in SimulatedTruth).
struct SimulationConfig {
  int n = 0;    // individuals
  int n_i = 0;  // planned measurements per individual
  ParameterState true_state;
  double re_sd_intercept = 0.3;
  double re_sd_slope = 0.3;
  int n_noise_long = 0;
  int n_noise_surv = 0;
  int n_noise_shared = 0;
  double covariate_low = 0.0;
  double covariate_high = 1.0;
  // Separate bounds for the survival covariates; when unset they follow
  // covariate_low/high. Shifting only these moves the event rate through the
  // mean of the survival predictor without touching the longitudinal design.
  std::optional<double> surv_covariate_low;
  std::optional<double> surv_covariate_high;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on n < 1, n_i < 2, negative standard
  /// deviations or noise counts, lambda0 <= 0, sigma2 < 0, or inverted
  /// covariate bounds.
  void check() const;
};

/// Ground truth attached to a simulated dataset pair. state carries the
/// generating coefficients zero-extended over the appended noise columns,
/// the realized random effects and the true alpha, lambda0, sigma2, so
/// predictors of the returned datasets can be recomputed directly.
struct SimulatedTruth {
  std::vector<char> informative_long;
  std::vector<char> informative_surv;
  std::vector<char> informative_shared;
  ParameterState state;
  VectorXd uncensored_time;  // T*_i; +infinity when the hazard never accumulates enough
};

struct SimulatedData {
  LongitudinalDataset longitudinal;
  SurvivalDataset survival;
  SimulatedTruth truth;
};

/// Standardized observation times from one individual's within-year day
/// draws (each in {1..365}): time j is ((j-1)*365 + d_j - d_1) / (n_i*365).
/// The first time is exactly 0; times are strictly increasing and below 1.
std::vector<double> times_from_days(const std::vector<int>& days);

/// n independent day-draw vectors mapped through times_from_days.
std::vector<std::vector<double>> generate_times(int n, int n_i, Rng& rng);
std::vector<std::vector<double>> generate_times(int n, int n_i, std::uint64_t seed);

/// Event time solving cumulative-hazard(T*) = -log(1-u) for the constant
/// baseline hazard and the linear-in-time shared predictor:
///
///   T* = log1p(-log(1-u) * alpha*slope * exp(-alpha*eta_shared_const)
///              / (lambda0 * exp(eta_surv))) / (alpha*slope)
///
/// with the exponential-case inverse -log(1-u)/(lambda0*exp(eta_surv +
/// alpha*eta_shared_const)) when |alpha*slope| <= 1e-10, and +infinity when
/// the log1p argument is <= -1 (the total cumulative hazard stays below
/// -log(1-u) forever).
double invert_event_time(double u, double eta_surv, double eta_shared_const, double slope,
                         double alpha, double lambda0);

/// Full generator pass: observation times, uniform covariates, normal random
/// effects, outcomes with Gaussian noise, inversion-sampled event times,
/// censoring at the last planned measurement, deletion of rows after the
/// observed time, then appended uniform noise columns.
SimulatedData simulate(const SimulationConfig& config);

}  // namespace jointboost
