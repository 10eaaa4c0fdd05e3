#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "autorec/algorithm.hpp"
#include "autorec/dataset.hpp"
#include "autorec/space.hpp"

namespace autorec {

enum class Metric { Rmse, Mae };

std::optional<Metric> metric_from_name(const std::string& name);
std::string_view metric_name(Metric m);

using PredictionPair = std::pair<double, double>;  // (predicted, actual)

double rmse(const std::vector<PredictionPair>& pairs);
double mae(const std::vector<PredictionPair>& pairs);
double metric_loss(Metric m, const std::vector<PredictionPair>& pairs);

struct EvalResult {
  double mean_loss = 0.0;
  std::vector<double> per_fold_losses;
  double fit_time_s = 0.0;
  double test_time_s = 0.0;
};

// Per-fold clipped predictions plus wall times; the raw material both
// cross_validate and the dual-metric CLI report are computed from.
struct FoldPredictions {
  std::vector<std::vector<PredictionPair>> per_fold;
  double fit_time_s = 0.0;
  double test_time_s = 0.0;
};

FoldPredictions cv_predictions(Algorithm algo, const ParamAssignment& params,
                               const RatingsTable& table, const FoldPlan& folds,
                               std::uint64_t seed);

// Fit on k-1 folds, score the held-out fold, for every fold; model fitting
// is seeded by (seed, fold index).
EvalResult cross_validate(Algorithm algo, const ParamAssignment& params,
                          const RatingsTable& table, const FoldPlan& folds,
                          Metric metric, std::uint64_t seed);

}  // namespace autorec
