#include "autorec/baselines.hpp"

namespace autorec {

Baselines fit_baselines_als(const Trainset& train, const BaselineAlsConfig& cfg) {
  Baselines b;
  b.mu = train.global_mean;
  b.b_user = Eigen::VectorXd::Zero(train.n_users);
  b.b_item = Eigen::VectorXd::Zero(train.n_items);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (int i = 0; i < train.n_items; ++i) {
      const auto& rs = train.by_item[i];
      if (rs.empty()) continue;
      double dev = 0.0;
      for (const auto& [u, r] : rs) dev += r - b.mu - b.b_user[u];
      b.b_item[i] = dev / (cfg.reg_i + static_cast<double>(rs.size()));
    }
    for (int u = 0; u < train.n_users; ++u) {
      const auto& rs = train.by_user[u];
      if (rs.empty()) continue;
      double dev = 0.0;
      for (const auto& [i, r] : rs) dev += r - b.mu - b.b_item[i];
      b.b_user[u] = dev / (cfg.reg_u + static_cast<double>(rs.size()));
    }
  }
  return b;
}

Baselines fit_baselines_sgd(const Trainset& train, const BaselineSgdConfig& cfg) {
  Baselines b;
  b.mu = train.global_mean;
  b.b_user = Eigen::VectorXd::Zero(train.n_users);
  b.b_item = Eigen::VectorXd::Zero(train.n_items);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (int u = 0; u < train.n_users; ++u) {
      for (const auto& [i, r] : train.by_user[u]) {
        const double e = r - (b.mu + b.b_user[u] + b.b_item[i]);
        b.b_user[u] += cfg.learning_rate * (e - cfg.reg * b.b_user[u]);
        b.b_item[i] += cfg.learning_rate * (e - cfg.reg * b.b_item[i]);
      }
    }
  }
  return b;
}

}  // namespace autorec
