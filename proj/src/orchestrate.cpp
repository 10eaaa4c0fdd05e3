#include "autorec/orchestrate.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <mutex>
#include <thread>

namespace autorec {

std::optional<Strategy> strategy_from_name(const std::string& name) {
  if (name == "tpe") return Strategy::Tpe;
  if (name == "random") return Strategy::Random;
  return std::nullopt;
}

std::string_view strategy_name(Strategy s) {
  return s == Strategy::Tpe ? "tpe" : "random";
}

std::string_view outcome_status_name(AlgorithmOutcome::Status s) {
  switch (s) {
    case AlgorithmOutcome::Status::Completed: return "completed";
    case AlgorithmOutcome::Status::Pruned: return "pruned";
    case AlgorithmOutcome::Status::TimedOut: return "timed_out";
    case AlgorithmOutcome::Status::Failed: return "failed";
  }
  return "?";
}

CvEvaluator::CvEvaluator(const RatingsTable& table, int cv_folds, Metric metric,
                         std::uint64_t fold_seed)
    : table_(table),
      folds_(kfold_split(table, cv_folds, fold_seed)),
      metric_(metric) {}

EvalResult CvEvaluator::evaluate(Algorithm algo, const ParamAssignment& params,
                                 std::uint64_t seed) {
  return cross_validate(algo, params, table_, folds_, metric_, seed);
}

ParamSpace CvEvaluator::space(Algorithm algo) const {
  for (const auto& [a, s] : overrides_) {
    if (a == algo) return s;
  }
  return default_space(algo);
}

void CvEvaluator::override_space(Algorithm algo, ParamSpace space) {
  overrides_.emplace_back(algo, std::move(space));
}

double compute_baseline(const RatingsTable& table, Metric metric, int cv_folds,
                        std::uint64_t seed) {
  const FoldPlan folds = kfold_split(table, cv_folds, seed);
  return cross_validate(Algorithm::NormalPredictor, {}, table, folds, metric,
                        seed)
      .mean_loss;
}

namespace {

using clock = std::chrono::steady_clock;

AlgorithmOutcome optimize_one(Algorithm algo, const SelectionConfig& config,
                              Evaluator& evaluator, double baseline_loss,
                              std::optional<clock::time_point> deadline,
                              std::mutex& progress_mu) {
  const ParamSpace space = evaluator.space(algo);
  AlgorithmOutcome outcome;
  outcome.algo = algo;

  auto best_loss = [&]() {
    double best = std::numeric_limits<double>::infinity();
    for (const Trial& t : outcome.history) {
      if (t.status == Trial::Status::Ok) best = std::min(best, t.loss);
    }
    return best;
  };

  bool stopped_by_time = false;
  for (int index = 0;; ++index) {
    if (config.max_evals > 0 && index >= config.max_evals) break;
    if (space.empty() && index >= 1) break;  // nothing to search
    if (deadline && clock::now() >= *deadline) {
      stopped_by_time = true;
      break;
    }

    // Trial randomness depends only on (seed, algorithm, index) and this
    // algorithm's own history, so parallel scheduling cannot perturb it.
    const std::uint64_t trial_seed =
        combine_seed(config.seed, algorithm_name(algo),
                     static_cast<std::uint64_t>(index));
    Rng rng(trial_seed);

    Trial trial;
    trial.index = index;
    trial.assignment = config.strategy == Strategy::Tpe
                           ? tpe_suggest(outcome.history, space, config.tpe, rng)
                           : random_suggest(space, rng);
    const auto t0 = clock::now();
    try {
      const EvalResult eval =
          evaluator.evaluate(algo, trial.assignment, trial_seed);
      trial.loss = eval.mean_loss;
      trial.fit_time_s = eval.fit_time_s;
    } catch (const std::exception& e) {
      trial.status = Trial::Status::Failed;
      trial.loss = std::numeric_limits<double>::infinity();
      trial.error = e.what();
    }
    trial.duration_s = std::chrono::duration<double>(clock::now() - t0).count();
    outcome.history.push_back(std::move(trial));
    if (config.on_trial) {
      std::lock_guard<std::mutex> lock(progress_mu);
      config.on_trial(algo, outcome.history.back(),
                      std::min(best_loss(), outcome.history.back().loss));
    }

    if (static_cast<int>(outcome.history.size()) == config.gate_evals &&
        best_loss() >= baseline_loss) {
      outcome.status = AlgorithmOutcome::Status::Pruned;
      break;
    }
  }

  outcome.n_trials = static_cast<int>(outcome.history.size());
  if (outcome.status != AlgorithmOutcome::Status::Pruned) {
    if (stopped_by_time) {
      outcome.status = AlgorithmOutcome::Status::TimedOut;
    } else {
      outcome.status = AlgorithmOutcome::Status::Completed;
    }
  }

  const Trial* best = nullptr;
  double fit_sum = 0.0;
  int ok_count = 0;
  for (const Trial& t : outcome.history) {
    if (t.status != Trial::Status::Ok) continue;
    ++ok_count;
    fit_sum += t.fit_time_s;
    if (!best || t.loss < best->loss) best = &t;
  }
  if (best) {
    outcome.best = *best;
    outcome.mean_fit_time_s = fit_sum / ok_count;
  } else if (!outcome.history.empty()) {
    outcome.status = AlgorithmOutcome::Status::Failed;
  }
  return outcome;
}

}  // namespace

SelectionReport run_selection(const SelectionConfig& config,
                              Evaluator& evaluator, double baseline_loss) {
  if (config.time_budget_s <= 0.0 && config.max_evals <= 0)
    throw Error("selection needs a time budget or a max-evals limit");
  if (config.gate_evals < 1) throw Error("gate_evals must be >= 1");
  if (config.algorithms.empty()) throw Error("no algorithms selected");

  const auto start = clock::now();
  std::optional<clock::time_point> deadline;
  if (config.time_budget_s > 0.0) {
    deadline = start + std::chrono::duration_cast<clock::duration>(
                           std::chrono::duration<double>(config.time_budget_s));
  }

  SelectionReport report;
  report.baseline_loss = baseline_loss;
  report.outcomes.resize(config.algorithms.size());

  // One worker owns one algorithm end to end; a shared atomic cursor hands
  // out algorithms in config order.
  std::mutex mu;
  std::size_t next = 0;
  auto work = [&]() {
    for (;;) {
      std::size_t slot;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= config.algorithms.size()) return;
        slot = next++;
      }
      AlgorithmOutcome outcome =
          optimize_one(config.algorithms[slot], config, evaluator,
                       baseline_loss, deadline, mu);
      std::lock_guard<std::mutex> lock(mu);
      report.outcomes[slot] = std::move(outcome);
    }
  };

  const int n_workers = std::max(
      1, std::min<int>(config.parallelism,
                       static_cast<int>(config.algorithms.size())));
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) workers.emplace_back(work);
    for (auto& t : workers) t.join();
  }

  // winner: lowest loss, then shorter mean fit time, then name
  const AlgorithmOutcome* winner = nullptr;
  for (const AlgorithmOutcome& o : report.outcomes) {
    if (!o.best) continue;
    if (!winner || o.best->loss < winner->best->loss ||
        (o.best->loss == winner->best->loss &&
         (o.mean_fit_time_s < winner->mean_fit_time_s ||
          (o.mean_fit_time_s == winner->mean_fit_time_s &&
           algorithm_name(o.algo) < algorithm_name(winner->algo))))) {
      winner = &o;
    }
  }

  if (winner && winner->best->loss < baseline_loss) {
    report.winner_name = algorithm_name(winner->algo);
    report.winner_assignment = winner->best->assignment;
    report.winner_loss = winner->best->loss;
  } else {
    // nothing beat the random predictor; fall back to it explicitly
    report.winner_is_baseline = true;
    report.winner_name = algorithm_name(Algorithm::NormalPredictor);
    report.winner_loss = baseline_loss;
  }
  report.wall_time_s =
      std::chrono::duration<double>(clock::now() - start).count();
  return report;
}

SelectionReport run_selection(const SelectionConfig& config,
                              const RatingsTable& table) {
  if (table.n_ratings() == 0) throw Error("empty dataset");
  const double baseline =
      compute_baseline(table, config.metric, config.cv_folds, config.seed);
  CvEvaluator evaluator(table, config.cv_folds, config.metric, config.seed);
  return run_selection(config, evaluator, baseline);
}

}  // namespace autorec
