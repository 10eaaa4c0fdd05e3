#pragma once

#include <cstdint>
#include <vector>

#include "autorec/metrics.hpp"
#include "autorec/space.hpp"

namespace autorec {

struct Trial {
  int index = 0;
  ParamAssignment assignment;
  double loss = 0.0;
  enum class Status { Ok, Failed } status = Status::Ok;
  double duration_s = 0.0;
  double fit_time_s = 0.0;
  std::string error;  // Failed only
};

struct TpeConfig {
  int n_startup = 20;
  double gamma = 0.25;
  int n_candidates = 24;
};

// good = the max(1, ceil(gamma * n_ok)) lowest-loss ok trials (ties to the
// lower index); everything else, including failed trials, goes to bad.
std::pair<std::vector<const Trial*>, std::vector<const Trial*>> split_trials(
    const std::vector<Trial>& trials, double gamma);

// 1-D Parzen density over one continuous or integer domain: Gaussians at the
// observations plus a uniform prior component, all weighted 1/(n+1).
// LogUniform domains live in log coordinates; IntUniform rounds on sampling.
class ParzenDensity {
 public:
  ParzenDensity(const std::vector<double>& values, const ParamDomain& domain);

  double sample(Rng& rng) const;       // original coordinates
  double log_pdf(double value) const;  // normalized over the domain

 private:
  double to_internal(double v) const;
  double from_internal(double x) const;

  ParamDomain::Kind kind_;
  double low_ = 0.0, high_ = 1.0;  // internal coordinates
  std::vector<double> centers_;
  std::vector<double> bandwidths_;
};

// Choice analogue: P(option) proportional to 1 + observation count.
class CategoricalDensity {
 public:
  CategoricalDensity(const std::vector<std::size_t>& observed,
                     std::size_t n_options);

  std::size_t sample(Rng& rng) const;
  double log_pmf(std::size_t option) const;
  const std::vector<double>& probabilities() const { return probs_; }

 private:
  std::vector<double> probs_;
};

ParamAssignment random_suggest(const ParamSpace& space, Rng& rng);

ParamAssignment tpe_suggest(const std::vector<Trial>& trials,
                            const ParamSpace& space, const TpeConfig& config,
                            Rng& rng);

// Explicit value lists per parameter name; evaluated over the full cartesian
// product in lexicographic order (first dimension slowest).
using Grid = std::vector<std::pair<std::string, std::vector<ParamValue>>>;

struct GridResult {
  Trial best;
  std::vector<Trial> all;
  double wall_time_s = 0.0;
};

GridResult grid_search(Algorithm algo, const Grid& grid,
                       const RatingsTable& table, const FoldPlan& folds,
                       Metric metric, std::uint64_t seed);

Grid default_grid(Algorithm algo);  // SVD and KNNBaseline comparison grids

}  // namespace autorec
