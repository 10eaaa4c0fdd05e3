#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "autorec/optimize.hpp"

namespace autorec {

enum class Strategy { Tpe, Random };

std::optional<Strategy> strategy_from_name(const std::string& name);
std::string_view strategy_name(Strategy s);

struct SelectionConfig {
  Metric metric = Metric::Rmse;
  double time_budget_s = 0.0;  // 0 = no time limit
  int max_evals = 0;           // per algorithm; 0 = no eval limit
  Strategy strategy = Strategy::Tpe;
  int gate_evals = 10;
  std::vector<Algorithm> algorithms{kAllAlgorithms.begin(), kAllAlgorithms.end()};
  int parallelism = 1;
  std::uint64_t seed = 0;
  int cv_folds = 3;
  TpeConfig tpe;
  // called once per completed trial (serialized across workers)
  std::function<void(Algorithm, const Trial&, double best_so_far)> on_trial;
};

struct AlgorithmOutcome {
  Algorithm algo = Algorithm::NormalPredictor;
  enum class Status { Completed, Pruned, TimedOut, Failed } status = Status::Failed;
  std::optional<Trial> best;
  int n_trials = 0;
  std::vector<Trial> history;
  double mean_fit_time_s = 0.0;
};

std::string_view outcome_status_name(AlgorithmOutcome::Status s);

struct SelectionReport {
  double baseline_loss = 0.0;
  std::vector<AlgorithmOutcome> outcomes;  // in config.algorithms order
  std::string winner_name;
  ParamAssignment winner_assignment;
  double winner_loss = 0.0;
  bool winner_is_baseline = false;  // nothing beat the random predictor
  double wall_time_s = 0.0;
};

// Abstracts the trial evaluation so tests can inject stub algorithms with
// known losses; the production implementation cross-validates on a table.
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual EvalResult evaluate(Algorithm algo, const ParamAssignment& params,
                              std::uint64_t seed) = 0;
  virtual ParamSpace space(Algorithm algo) const { return default_space(algo); }
};

class CvEvaluator : public Evaluator {
 public:
  CvEvaluator(const RatingsTable& table, int cv_folds, Metric metric,
              std::uint64_t fold_seed);

  EvalResult evaluate(Algorithm algo, const ParamAssignment& params,
                      std::uint64_t seed) override;
  ParamSpace space(Algorithm algo) const override;

  // per-algorithm space overrides (the CLI --space file)
  void override_space(Algorithm algo, ParamSpace space);

 private:
  const RatingsTable& table_;
  FoldPlan folds_;
  Metric metric_;
  std::vector<std::pair<Algorithm, ParamSpace>> overrides_;
};

// Cross-validated loss of the Normal Predictor: the score every algorithm
// must beat.
double compute_baseline(const RatingsTable& table, Metric metric, int cv_folds,
                        std::uint64_t seed);

SelectionReport run_selection(const SelectionConfig& config,
                              Evaluator& evaluator, double baseline_loss);

SelectionReport run_selection(const SelectionConfig& config,
                              const RatingsTable& table);

}  // namespace autorec
