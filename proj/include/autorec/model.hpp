#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "autorec/algorithm.hpp"
#include "autorec/dataset.hpp"

namespace autorec {

struct Prediction {
  double value = 0.0;
  bool was_impossible = false;
};

// Raw per-algorithm estimator; values are clipped by FittedModel.
class Estimator {
 public:
  virtual ~Estimator() = default;
  virtual Prediction estimate(int user, int item) = 0;
};

// Per-epoch training traces, populated where the algorithm has epochs.
struct FitDiagnostics {
  std::vector<double> epoch_loss;
  std::vector<double> epoch_min_factor;  // NMF: smallest factor entry
};

class FittedModel {
 public:
  FittedModel(Algorithm algo, double global_mean, RatingScale scale,
              std::unique_ptr<Estimator> estimator, FitDiagnostics diag = {})
      : algo_(algo),
        global_mean_(global_mean),
        scale_(scale),
        estimator_(std::move(estimator)),
        diagnostics_(std::move(diag)) {}

  // Always finite and within the rating scale. Not const: NormalPredictor
  // draws from its own generator, so concurrent callers need their own model.
  Prediction score(int user, int item) {
    Prediction p = estimator_->estimate(user, item);
    if (!std::isfinite(p.value)) {
      p.value = global_mean_;
      p.was_impossible = true;
    }
    p.value = scale_.clip(p.value);
    return p;
  }

  Algorithm algorithm() const { return algo_; }
  double global_mean() const { return global_mean_; }
  const FitDiagnostics& diagnostics() const { return diagnostics_; }

 private:
  Algorithm algo_;
  double global_mean_;
  RatingScale scale_;
  std::unique_ptr<Estimator> estimator_;
  FitDiagnostics diagnostics_;
};

}  // namespace autorec
