#pragma once

#include <string>

#include "jointboost/types.hpp"

namespace jointboost {

/// CSV file formats.
///
/// Longitudinal file: header `id,time,y` followed by one column per
/// covariate, `l_<name>` for the time-varying longitudinal covariates and
/// `ls_<name>` for the time-constant shared covariates; one row per
/// measurement, rows of an individual contiguous and sorted by time.
///
/// Survival file: header `id,time,status` (status 1 = event, 0 = censored)
/// followed by `s_<name>` columns; one row per individual.
///
/// The prefix routes each column to its predictor and is stripped on read,
/// so a write/read cycle restores the in-memory names exactly. Values are
/// written with 17 significant digits, which round-trips doubles exactly.
/// No quoting: names must not contain commas or newlines.

void write_longitudinal_csv(const std::string& path, const LongitudinalDataset& data);
void write_survival_csv(const std::string& path, const SurvivalDataset& data);

/// Readers assemble the dataset from the rows in file order. They throw
/// validation_error listing every malformed header, field count, or number
/// conversion with its line; callers still validate() the pair afterwards
/// for the cross-dataset invariants.
LongitudinalDataset read_longitudinal_csv(const std::string& path);
SurvivalDataset read_survival_csv(const std::string& path);

/// One double formatted with "%.17g" (the CSV and JSON number format).
std::string format_double(double value);

}  // namespace jointboost
