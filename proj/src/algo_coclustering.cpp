#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "autorec/algorithms.hpp"
#include "autorec/rng.hpp"

namespace autorec {

namespace {

struct CoClusterState {
  Eigen::MatrixXd avg_cocltr;   // [user cluster, item cluster]
  Eigen::VectorXd avg_cltr_u;   // per user cluster
  Eigen::VectorXd avg_cltr_i;   // per item cluster
};

class CoClusteringEstimator : public Estimator {
 public:
  CoClusteringEstimator(const Trainset& train, CoClusterState state,
                        std::vector<int> cltr_u, std::vector<int> cltr_i)
      : state_(std::move(state)),
        cltr_u_(std::move(cltr_u)),
        cltr_i_(std::move(cltr_i)) {
    mu_ = train.global_mean;
    user_mean_.resize(train.n_users);
    item_mean_.resize(train.n_items);
    known_u_.resize(train.n_users);
    known_i_.resize(train.n_items);
    for (int u = 0; u < train.n_users; ++u) {
      known_u_[u] = train.known_user(u);
      user_mean_[u] = train.user_mean(u);
    }
    for (int i = 0; i < train.n_items; ++i) {
      known_i_[i] = train.known_item(i);
      item_mean_[i] = train.item_mean(i);
    }
  }

  Prediction estimate(int u, int i) override {
    const bool ku = u >= 0 && u < static_cast<int>(known_u_.size()) && known_u_[u];
    const bool ki = i >= 0 && i < static_cast<int>(known_i_.size()) && known_i_[i];
    if (!ku && !ki) return {mu_, true};
    if (!ki) return {user_mean_[u], false};
    if (!ku) return {item_mean_[i], false};
    const int g = cltr_u_[u];
    const int h = cltr_i_[i];
    const double est = state_.avg_cocltr(g, h) +
                       (user_mean_[u] - state_.avg_cltr_u[g]) +
                       (item_mean_[i] - state_.avg_cltr_i[h]);
    return {est, false};
  }

 private:
  CoClusterState state_;
  std::vector<int> cltr_u_, cltr_i_;
  std::vector<double> user_mean_, item_mean_;
  std::vector<bool> known_u_, known_i_;
  double mu_ = 0.0;
};

CoClusterState compute_averages(const Trainset& train,
                                const std::vector<int>& cu,
                                const std::vector<int>& ci, int ncu, int nci) {
  CoClusterState s;
  Eigen::MatrixXd sum_cc = Eigen::MatrixXd::Zero(ncu, nci);
  Eigen::MatrixXd cnt_cc = Eigen::MatrixXd::Zero(ncu, nci);
  Eigen::VectorXd sum_u = Eigen::VectorXd::Zero(ncu), cnt_u = Eigen::VectorXd::Zero(ncu);
  Eigen::VectorXd sum_i = Eigen::VectorXd::Zero(nci), cnt_i = Eigen::VectorXd::Zero(nci);
  for (int u = 0; u < train.n_users; ++u) {
    for (const auto& [i, r] : train.by_user[u]) {
      sum_cc(cu[u], ci[i]) += r;
      cnt_cc(cu[u], ci[i]) += 1.0;
      sum_u[cu[u]] += r;
      cnt_u[cu[u]] += 1.0;
      sum_i[ci[i]] += r;
      cnt_i[ci[i]] += 1.0;
    }
  }
  // empty clusters fall back to the global mean
  s.avg_cocltr = Eigen::MatrixXd::Constant(ncu, nci, train.global_mean);
  s.avg_cltr_u = Eigen::VectorXd::Constant(ncu, train.global_mean);
  s.avg_cltr_i = Eigen::VectorXd::Constant(nci, train.global_mean);
  for (int g = 0; g < ncu; ++g) {
    if (cnt_u[g] > 0.0) s.avg_cltr_u[g] = sum_u[g] / cnt_u[g];
    for (int h = 0; h < nci; ++h)
      if (cnt_cc(g, h) > 0.0) s.avg_cocltr(g, h) = sum_cc(g, h) / cnt_cc(g, h);
  }
  for (int h = 0; h < nci; ++h)
    if (cnt_i[h] > 0.0) s.avg_cltr_i[h] = sum_i[h] / cnt_i[h];
  return s;
}

double predict_with(const CoClusterState& s, double mean_u, double mean_i,
                    int g, int h) {
  return s.avg_cocltr(g, h) + (mean_u - s.avg_cltr_u[g]) +
         (mean_i - s.avg_cltr_i[h]);
}

}  // namespace

FittedModel fit_coclustering(const Trainset& train,
                             const CoClusteringConfig& cfg, std::uint64_t seed) {
  const int ncu = cfg.n_cltr_u;
  const int nci = cfg.n_cltr_i;
  Rng rng(seed);

  std::vector<int> cu(train.n_users), ci(train.n_items);
  for (int u = 0; u < train.n_users; ++u)
    cu[u] = static_cast<int>(rng.uniform_int(0, ncu - 1));
  for (int i = 0; i < train.n_items; ++i)
    ci[i] = static_cast<int>(rng.uniform_int(0, nci - 1));

  std::vector<double> mean_u(train.n_users), mean_i(train.n_items);
  for (int u = 0; u < train.n_users; ++u) mean_u[u] = train.user_mean(u);
  for (int i = 0; i < train.n_items; ++i) mean_i[i] = train.item_mean(i);

  FitDiagnostics diag;
  CoClusterState state = compute_averages(train, cu, ci, ncu, nci);

  for (int epoch = 0; epoch < cfg.n_epochs; ++epoch) {
    double objective = 0.0;
    for (int u = 0; u < train.n_users; ++u) {
      for (const auto& [i, r] : train.by_user[u]) {
        const double e = r - predict_with(state, mean_u[u], mean_i[i], cu[u], ci[i]);
        objective += e * e;
      }
    }
    diag.epoch_loss.push_back(objective);

    // reassign users to the cluster minimizing their squared error
    for (int u = 0; u < train.n_users; ++u) {
      if (train.by_user[u].empty()) continue;
      double best_err = std::numeric_limits<double>::infinity();
      int best_g = cu[u];
      for (int g = 0; g < ncu; ++g) {
        double err = 0.0;
        for (const auto& [i, r] : train.by_user[u]) {
          const double e = r - predict_with(state, mean_u[u], mean_i[i], g, ci[i]);
          err += e * e;
        }
        if (err < best_err) {
          best_err = err;
          best_g = g;
        }
      }
      cu[u] = best_g;
    }
    for (int i = 0; i < train.n_items; ++i) {
      if (train.by_item[i].empty()) continue;
      double best_err = std::numeric_limits<double>::infinity();
      int best_h = ci[i];
      for (int h = 0; h < nci; ++h) {
        double err = 0.0;
        for (const auto& [u, r] : train.by_item[i]) {
          const double e = r - predict_with(state, mean_u[u], mean_i[i], cu[u], h);
          err += e * e;
        }
        if (err < best_err) {
          best_err = err;
          best_h = h;
        }
      }
      ci[i] = best_h;
    }

    // re-seed an emptied user/item cluster with the entity worst served by
    // the current model (lowest index on ties)
    auto reseed = [&](std::vector<int>& assign, int n_clusters, bool users) {
      std::vector<int> count(n_clusters, 0);
      const auto& by_entity = users ? train.by_user : train.by_item;
      for (std::size_t e = 0; e < assign.size(); ++e)
        if (!by_entity[e].empty()) ++count[assign[e]];
      for (int c = 0; c < n_clusters; ++c) {
        if (count[c] != 0) continue;
        double worst = -1.0;
        int worst_e = -1;
        for (std::size_t e = 0; e < assign.size(); ++e) {
          if (by_entity[e].empty() || count[assign[e]] <= 1) continue;
          double err = 0.0;
          for (const auto& [other, r] : by_entity[e]) {
            const int u = users ? static_cast<int>(e) : other;
            const int i = users ? other : static_cast<int>(e);
            const double d = r - predict_with(state, mean_u[u], mean_i[i], cu[u], ci[i]);
            err += d * d;
          }
          if (err > worst) {
            worst = err;
            worst_e = static_cast<int>(e);
          }
        }
        if (worst_e >= 0) {
          --count[assign[worst_e]];
          assign[worst_e] = c;
          ++count[c];
        }
      }
    };
    reseed(cu, ncu, true);
    reseed(ci, nci, false);

    state = compute_averages(train, cu, ci, ncu, nci);
  }

  return FittedModel(Algorithm::CoClustering, train.global_mean, train.scale,
                     std::make_unique<CoClusteringEstimator>(
                         train, std::move(state), std::move(cu), std::move(ci)),
                     std::move(diag));
}

}  // namespace autorec
