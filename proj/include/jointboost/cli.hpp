#pragma once

namespace jointboost {

/// Command-line entry point. Commands:
///
///   simulate   --config C --seed S --out P
///   fit        --config C --long L.csv --surv S.csv --out P
///   tune       --config C --long L.csv --surv S.csv [--test-long TL.csv
///              --test-surv TS.csv] [--seed S] [--threads T] --out P
///   replicate  --config C --seed S [--threads T] --out P
///
/// Every command writes `<P>_run.json` with the fully expanded effective
/// configuration next to its data outputs. Returns 0 on success, 1 on
/// usage/validation errors, 2 on numerical failure.
int run_cli(int argc, const char* const* argv);

}  // namespace jointboost
