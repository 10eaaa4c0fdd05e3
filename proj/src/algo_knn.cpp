#include <algorithm>
#include <cmath>

#include "autorec/algorithms.hpp"

namespace autorec {

namespace {

// Works in "entity" space: x = the query-side entity, neighbors v are
// entities of the same kind that rated the target. For user_based the
// entities are users and targets are items; for item-based the roles swap.
class KnnEstimator : public Estimator {
 public:
  KnnEstimator(const Trainset& train, const KnnConfig& cfg, Eigen::MatrixXd sim,
               Baselines baselines)
      : cfg_(cfg), sim_(std::move(sim)), base_(std::move(baselines)) {
    mu_ = train.global_mean;
    const bool ub = cfg_.sim.user_based;
    const auto& by_entity = ub ? train.by_user : train.by_item;
    const int n = ub ? train.n_users : train.n_items;
    means_.resize(n, mu_);
    sigmas_.resize(n, 0.0);
    has_ratings_.resize(n, false);
    for (int e = 0; e < n; ++e) {
      const auto& rs = by_entity[e];
      if (rs.empty()) continue;
      has_ratings_[e] = true;
      double s = 0.0;
      for (const auto& [t, r] : rs) s += r;
      means_[e] = s / rs.size();
      double ss = 0.0;
      for (const auto& [t, r] : rs) ss += (r - means_[e]) * (r - means_[e]);
      sigmas_[e] = std::sqrt(ss / rs.size());
    }
    raters_of_target_ = ub ? train.by_item : train.by_user;
    n_entities_ = n;
    n_targets_ = ub ? train.n_items : train.n_users;
  }

  Prediction estimate(int user, int item) override {
    const bool ub = cfg_.sim.user_based;
    const int x = ub ? user : item;       // query entity
    const int t = ub ? item : user;       // target
    const bool x_known = x >= 0 && x < n_entities_ && means_cached(x);
    const bool t_known = t >= 0 && t < n_targets_ && !raters_of_target_[t].empty();

    if (!x_known && !t_known) return {mu_, true};
    if (!x_known) return {fallback(x, t, x_known), true};
    if (!t_known) return {fallback(x, t, x_known), true};

    // Neighbors: entities with positive similarity that rated the target,
    // top-k by similarity (ties to the lower entity id).
    std::vector<std::pair<double, double>> neighbors;  // (sim, rating)
    neighbors.reserve(raters_of_target_[t].size());
    std::vector<int> neighbor_ids;
    neighbor_ids.reserve(raters_of_target_[t].size());
    std::vector<std::size_t> order;
    for (const auto& [v, r] : raters_of_target_[t]) {
      const double s = sim_(x, v);
      if (s > 0.0 && v != x) {
        order.push_back(neighbors.size());
        neighbors.emplace_back(s, r);
        neighbor_ids.push_back(v);
      }
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (neighbors[a].first != neighbors[b].first)
        return neighbors[a].first > neighbors[b].first;
      return neighbor_ids[a] < neighbor_ids[b];
    });
    const std::size_t take =
        std::min<std::size_t>(order.size(), static_cast<std::size_t>(cfg_.k));

    double num = 0.0, denom = 0.0;
    for (std::size_t idx = 0; idx < take; ++idx) {
      const auto [s, r] = neighbors[order[idx]];
      const int v = neighbor_ids[order[idx]];
      denom += s;
      switch (cfg_.variant) {
        case KnnVariant::Basic:
          num += s * r;
          break;
        case KnnVariant::WithMeans:
          num += s * (r - means_[v]);
          break;
        case KnnVariant::WithZScore:
          // zero-variance neighbors contribute their deviation with unit sigma
          num += s * (sigmas_[v] > 0.0 ? (r - means_[v]) / sigmas_[v]
                                       : (r - means_[v]));
          break;
        case KnnVariant::Baseline:
          num += s * (r - baseline_of(v, t));
          break;
      }
    }
    if (take < static_cast<std::size_t>(cfg_.min_k) || denom <= 0.0) {
      return {fallback(x, t, x_known), true};
    }
    switch (cfg_.variant) {
      case KnnVariant::Basic:
        return {num / denom, false};
      case KnnVariant::WithMeans:
        return {means_[x] + num / denom, false};
      case KnnVariant::WithZScore:
        return {means_[x] + sigmas_[x] * (num / denom), false};
      case KnnVariant::Baseline:
        return {baseline_of(x, t) + num / denom, false};
    }
    return {mu_, true};
  }

 private:
  bool means_cached(int x) const { return has_ratings_[x]; }

  double baseline_of(int entity, int target) const {
    const bool ub = cfg_.sim.user_based;
    const int u = ub ? entity : target;
    const int i = ub ? target : entity;
    return base_.estimate(u, i);
  }

  double fallback(int x, int t, bool x_known) const {
    switch (cfg_.variant) {
      case KnnVariant::Basic:
        return mu_;
      case KnnVariant::WithMeans:
      case KnnVariant::WithZScore:
        return x_known ? means_[x] : mu_;
      case KnnVariant::Baseline:
        return baseline_of(x, t);  // out-of-range ids contribute bias 0
    }
    return mu_;
  }

  KnnConfig cfg_;
  Eigen::MatrixXd sim_;
  Baselines base_;
  std::vector<std::vector<std::pair<int, double>>> raters_of_target_;
  std::vector<double> means_;
  std::vector<double> sigmas_;
  std::vector<bool> has_ratings_;
  double mu_ = 0.0;
  int n_entities_ = 0;
  int n_targets_ = 0;
};

}  // namespace

FittedModel fit_knn(const Trainset& train, const KnnConfig& cfg) {
  Eigen::MatrixXd sim = compute_similarity(train, cfg.sim);
  Baselines base;
  if (cfg.variant == KnnVariant::Baseline) {
    base = fit_baselines_als(train, BaselineAlsConfig{});
  }
  Algorithm algo = Algorithm::KnnBasic;
  switch (cfg.variant) {
    case KnnVariant::Basic: algo = Algorithm::KnnBasic; break;
    case KnnVariant::WithMeans: algo = Algorithm::KnnWithMeans; break;
    case KnnVariant::WithZScore: algo = Algorithm::KnnWithZScore; break;
    case KnnVariant::Baseline: algo = Algorithm::KnnBaseline; break;
  }
  return FittedModel(algo, train.global_mean, train.scale,
                     std::make_unique<KnnEstimator>(train, cfg, std::move(sim),
                                                    std::move(base)));
}

}  // namespace autorec
