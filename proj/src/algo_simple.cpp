// Normal predictor, baseline-only and Slope One.
#include <Eigen/Dense>
#include <cmath>

#include "autorec/algorithms.hpp"
#include "autorec/rng.hpp"

namespace autorec {

namespace {

class NormalEstimator : public Estimator {
 public:
  NormalEstimator(double mu, double sigma, std::uint64_t seed)
      : mu_(mu), sigma_(sigma), rng_(seed) {}

  Prediction estimate(int, int) override {
    return {rng_.normal(mu_, sigma_), false};
  }

 private:
  double mu_;
  double sigma_;
  Rng rng_;
};

class BaselineEstimator : public Estimator {
 public:
  explicit BaselineEstimator(Baselines base) : base_(std::move(base)) {}

  Prediction estimate(int u, int i) override {
    return {base_.estimate(u, i), false};
  }

 private:
  Baselines base_;
};

class SlopeOneEstimator : public Estimator {
 public:
  SlopeOneEstimator(const Trainset& train, Eigen::MatrixXd dev,
                    Eigen::MatrixXi freq)
      : dev_(std::move(dev)), freq_(std::move(freq)) {
    mu_ = train.global_mean;
    user_items_.resize(train.n_users);
    user_means_.resize(train.n_users);
    for (int u = 0; u < train.n_users; ++u) {
      user_means_[u] = train.user_mean(u);
      for (const auto& [i, r] : train.by_user[u]) user_items_[u].push_back(i);
    }
    n_items_ = train.n_items;
  }

  Prediction estimate(int u, int i) override {
    if (u < 0 || u >= static_cast<int>(user_items_.size()) ||
        user_items_[u].empty()) {
      return {mu_, true};
    }
    if (i < 0 || i >= n_items_) return {user_means_[u], true};
    double sum = 0.0;
    int count = 0;
    for (int j : user_items_[u]) {
      if (j != i && freq_(i, j) > 0) {
        sum += dev_(i, j);
        ++count;
      }
    }
    if (count == 0) return {user_means_[u], true};
    return {user_means_[u] + sum / count, false};
  }

 private:
  Eigen::MatrixXd dev_;
  Eigen::MatrixXi freq_;
  std::vector<std::vector<int>> user_items_;
  std::vector<double> user_means_;
  double mu_ = 0.0;
  int n_items_ = 0;
};

}  // namespace

FittedModel fit_normal_predictor(const Trainset& train, std::uint64_t seed) {
  const double mu = train.global_mean;
  double ss = 0.0;
  for (const auto& items : train.by_user) {
    for (const auto& [i, r] : items) ss += (r - mu) * (r - mu);
  }
  const double sigma = std::sqrt(ss / static_cast<double>(train.n_ratings));
  return FittedModel(Algorithm::NormalPredictor, mu, train.scale,
                     std::make_unique<NormalEstimator>(mu, sigma, seed));
}

FittedModel fit_baseline_only(const Trainset& train,
                              const BaselineOnlyConfig& cfg) {
  Baselines base = cfg.use_sgd ? fit_baselines_sgd(train, cfg.sgd)
                               : fit_baselines_als(train, cfg.als);
  return FittedModel(Algorithm::BaselineOnly, train.global_mean, train.scale,
                     std::make_unique<BaselineEstimator>(std::move(base)));
}

FittedModel fit_slope_one(const Trainset& train) {
  const int n = train.n_items;
  Eigen::MatrixXd dev = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXi freq = Eigen::MatrixXi::Zero(n, n);
  for (const auto& items : train.by_user) {
    for (std::size_t x = 0; x < items.size(); ++x) {
      for (std::size_t y = 0; y < items.size(); ++y) {
        if (x == y) continue;
        dev(items[x].first, items[y].first) +=
            items[x].second - items[y].second;
        freq(items[x].first, items[y].first) += 1;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (freq(i, j) > 0) dev(i, j) /= freq(i, j);
    }
  }
  return FittedModel(Algorithm::SlopeOne, train.global_mean, train.scale,
                     std::make_unique<SlopeOneEstimator>(train, std::move(dev),
                                                         std::move(freq)));
}

}  // namespace autorec
