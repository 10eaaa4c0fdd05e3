#include "autorec/metrics.hpp"

#include <chrono>
#include <cmath>

#include "autorec/algorithms.hpp"
#include "autorec/trainset.hpp"

namespace autorec {

std::optional<Metric> metric_from_name(const std::string& name) {
  if (name == "rmse") return Metric::Rmse;
  if (name == "mae") return Metric::Mae;
  return std::nullopt;
}

std::string_view metric_name(Metric m) {
  return m == Metric::Rmse ? "rmse" : "mae";
}

double rmse(const std::vector<PredictionPair>& pairs) {
  if (pairs.empty()) throw Error("rmse: empty prediction list");
  double ss = 0.0;
  for (const auto& [pred, actual] : pairs) {
    ss += (pred - actual) * (pred - actual);
  }
  return std::sqrt(ss / static_cast<double>(pairs.size()));
}

double mae(const std::vector<PredictionPair>& pairs) {
  if (pairs.empty()) throw Error("mae: empty prediction list");
  double s = 0.0;
  for (const auto& [pred, actual] : pairs) s += std::abs(pred - actual);
  return s / static_cast<double>(pairs.size());
}

double metric_loss(Metric m, const std::vector<PredictionPair>& pairs) {
  return m == Metric::Rmse ? rmse(pairs) : mae(pairs);
}

FoldPredictions cv_predictions(Algorithm algo, const ParamAssignment& params,
                               const RatingsTable& table, const FoldPlan& folds,
                               std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  FoldPredictions out;
  out.per_fold.resize(folds.k);

  for (int fold = 0; fold < folds.k; ++fold) {
    Trainset train = make_trainset(table, folds, fold);
    const auto t0 = clock::now();
    FittedModel model = [&] {
      try {
        return fit(algo, train, params, combine_seed(seed, fold));
      } catch (const Error& e) {
        throw Error("fold " + std::to_string(fold) + ": " + e.what());
      }
    }();
    const auto t1 = clock::now();

    auto& pairs = out.per_fold[fold];
    for (std::size_t idx = 0; idx < table.ratings.size(); ++idx) {
      if (folds.assignments[idx] != fold) continue;
      const Rating& r = table.ratings[idx];
      pairs.emplace_back(model.score(r.user, r.item).value, r.value);
    }
    const auto t2 = clock::now();
    out.fit_time_s += std::chrono::duration<double>(t1 - t0).count();
    out.test_time_s += std::chrono::duration<double>(t2 - t1).count();
  }
  return out;
}

EvalResult cross_validate(Algorithm algo, const ParamAssignment& params,
                          const RatingsTable& table, const FoldPlan& folds,
                          Metric metric, std::uint64_t seed) {
  const FoldPredictions preds = cv_predictions(algo, params, table, folds, seed);
  EvalResult result;
  result.fit_time_s = preds.fit_time_s;
  result.test_time_s = preds.test_time_s;
  double sum = 0.0;
  for (const auto& pairs : preds.per_fold) {
    const double loss = metric_loss(metric, pairs);
    result.per_fold_losses.push_back(loss);
    sum += loss;
  }
  result.mean_loss = sum / static_cast<double>(result.per_fold_losses.size());
  return result;
}

}  // namespace autorec
