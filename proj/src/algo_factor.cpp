// SGD matrix factorization (SVD, SVD++) and multiplicative-update NMF.
#include <Eigen/Dense>
#include <cmath>
#include <numeric>

#include "autorec/algorithms.hpp"
#include "autorec/rng.hpp"

namespace autorec {

namespace {

struct FlatRating {
  int u;
  int i;
  double r;
};

std::vector<FlatRating> flatten(const Trainset& train) {
  std::vector<FlatRating> out;
  out.reserve(train.n_ratings);
  for (int u = 0; u < train.n_users; ++u) {
    for (const auto& [i, r] : train.by_user[u]) out.push_back({u, i, r});
  }
  return out;
}

class SvdEstimator : public Estimator {
 public:
  SvdEstimator(double mu, Eigen::VectorXd bu, Eigen::VectorXd bi,
               Eigen::MatrixXd p, Eigen::MatrixXd q, Eigen::MatrixXd y,
               std::vector<std::vector<int>> implicit)
      : mu_(mu),
        bu_(std::move(bu)),
        bi_(std::move(bi)),
        p_(std::move(p)),
        q_(std::move(q)),
        y_(std::move(y)),
        implicit_(std::move(implicit)) {}

  Prediction estimate(int u, int i) override {
    const bool ku = u >= 0 && u < bu_.size() && known_u_[u];
    const bool ki = i >= 0 && i < bi_.size() && known_i_[i];
    double est = mu_;
    if (ku) est += bu_[u];
    if (ki) est += bi_[i];
    if (ku && ki) {
      Eigen::RowVectorXd pu = p_.row(u);
      if (y_.size() > 0 && !implicit_[u].empty()) {
        Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(y_.cols());
        for (int j : implicit_[u]) acc += y_.row(j);
        pu += acc / std::sqrt(static_cast<double>(implicit_[u].size()));
      }
      est += q_.row(i).dot(pu);
    }
    return {est, !ku && !ki};
  }

  void set_known(std::vector<bool> ku, std::vector<bool> ki) {
    known_u_ = std::move(ku);
    known_i_ = std::move(ki);
  }

 private:
  double mu_;
  Eigen::VectorXd bu_, bi_;
  Eigen::MatrixXd p_, q_, y_;
  std::vector<std::vector<int>> implicit_;
  std::vector<bool> known_u_, known_i_;
};

class NmfEstimator : public Estimator {
 public:
  NmfEstimator(double mu, Eigen::MatrixXd p, Eigen::MatrixXd q,
               std::vector<bool> ku, std::vector<bool> ki)
      : mu_(mu),
        p_(std::move(p)),
        q_(std::move(q)),
        known_u_(std::move(ku)),
        known_i_(std::move(ki)) {}

  Prediction estimate(int u, int i) override {
    const bool ku = u >= 0 && u < p_.rows() && known_u_[u];
    const bool ki = i >= 0 && i < q_.rows() && known_i_[i];
    if (ku && ki) return {p_.row(u).dot(q_.row(i)), false};
    return {mu_, true};  // unbiased model has no partial fallback
  }

 private:
  double mu_;
  Eigen::MatrixXd p_, q_;
  std::vector<bool> known_u_, known_i_;
};

std::vector<bool> known_mask(
    const std::vector<std::vector<std::pair<int, double>>>& by_entity) {
  std::vector<bool> mask(by_entity.size());
  for (std::size_t e = 0; e < by_entity.size(); ++e)
    mask[e] = !by_entity[e].empty();
  return mask;
}

}  // namespace

FittedModel fit_svd(const Trainset& train, const SvdConfig& cfg,
                    std::uint64_t seed) {
  const int f = cfg.n_factors;
  const double lr = cfg.learning_rate;
  const double reg = cfg.reg;
  Rng rng(seed);

  Eigen::VectorXd bu = Eigen::VectorXd::Zero(train.n_users);
  Eigen::VectorXd bi = Eigen::VectorXd::Zero(train.n_items);
  Eigen::MatrixXd p(train.n_users, f), q(train.n_items, f), y;
  for (int u = 0; u < train.n_users; ++u)
    for (int x = 0; x < f; ++x) p(u, x) = rng.normal(0.0, cfg.init_std_dev);
  for (int i = 0; i < train.n_items; ++i)
    for (int x = 0; x < f; ++x) q(i, x) = rng.normal(0.0, cfg.init_std_dev);

  std::vector<std::vector<int>> implicit;
  if (cfg.svdpp) {
    y = Eigen::MatrixXd::Zero(train.n_items, f);
    for (int i = 0; i < train.n_items; ++i)
      for (int x = 0; x < f; ++x) y(i, x) = rng.normal(0.0, cfg.init_std_dev);
    implicit.resize(train.n_users);
    for (int u = 0; u < train.n_users; ++u)
      for (const auto& [i, r] : train.by_user[u]) implicit[u].push_back(i);
  }

  auto ratings = flatten(train);
  std::vector<std::size_t> order(ratings.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  const double mu = train.global_mean;
  FitDiagnostics diag;
  Eigen::RowVectorXd pu_eff(f), grad_common(f);

  for (int epoch = 0; epoch < cfg.n_epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t idx : order) {
      const auto& [u, i, r] = ratings[idx];
      double norm = 0.0;
      if (cfg.svdpp) {
        pu_eff = p.row(u);
        if (!implicit[u].empty()) {
          Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(f);
          for (int j : implicit[u]) acc += y.row(j);
          norm = 1.0 / std::sqrt(static_cast<double>(implicit[u].size()));
          pu_eff += norm * acc;
        }
      } else {
        pu_eff = p.row(u);
      }

      const double est = mu + bu[u] + bi[i] + q.row(i).dot(pu_eff);
      const double e = r - est;

      bu[u] += lr * (e - reg * bu[u]);
      bi[i] += lr * (e - reg * bi[i]);
      const Eigen::RowVectorXd qi = q.row(i);
      p.row(u) += lr * (e * qi - reg * p.row(u));
      q.row(i) += lr * (e * pu_eff - reg * qi);
      if (cfg.svdpp && !implicit[u].empty()) {
        grad_common = lr * (e * norm) * qi;
        for (int j : implicit[u]) {
          y.row(j) += grad_common - (lr * reg) * y.row(j);
        }
      }
    }

    // regularized squared-error objective after the epoch
    double loss = 0.0;
    for (const auto& [u, i, r] : ratings) {
      Eigen::RowVectorXd pu = p.row(u);
      if (cfg.svdpp && !implicit[u].empty()) {
        Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(f);
        for (int j : implicit[u]) acc += y.row(j);
        pu += acc / std::sqrt(static_cast<double>(implicit[u].size()));
      }
      const double e = r - (mu + bu[u] + bi[i] + q.row(i).dot(pu));
      loss += e * e;
    }
    loss += reg * (bu.squaredNorm() + bi.squaredNorm() + p.squaredNorm() +
                   q.squaredNorm() + (cfg.svdpp ? y.squaredNorm() : 0.0));
    if (!std::isfinite(loss)) {
      throw Error("SVD training diverged at epoch " + std::to_string(epoch) +
                  " (learning rate too high?)");
    }
    diag.epoch_loss.push_back(loss);
  }

  auto est = std::make_unique<SvdEstimator>(
      mu, std::move(bu), std::move(bi), std::move(p), std::move(q),
      std::move(y), std::move(implicit));
  est->set_known(known_mask(train.by_user), known_mask(train.by_item));
  return FittedModel(cfg.svdpp ? Algorithm::Svdpp : Algorithm::Svd, mu,
                     train.scale, std::move(est), std::move(diag));
}

FittedModel fit_nmf(const Trainset& train, const NmfConfig& cfg,
                    std::uint64_t seed) {
  const int f = cfg.n_factors;
  constexpr double kEps = 1e-12;
  Rng rng(seed);

  Eigen::MatrixXd p(train.n_users, f), q(train.n_items, f);
  // uniform in (0,1); multiplicative updates cannot leave exact zeros
  for (int u = 0; u < train.n_users; ++u)
    for (int x = 0; x < f; ++x) p(u, x) = std::max(rng.uniform01(), kEps);
  for (int i = 0; i < train.n_items; ++i)
    for (int x = 0; x < f; ++x) q(i, x) = std::max(rng.uniform01(), kEps);

  const auto ratings = flatten(train);
  Eigen::VectorXd n_u = Eigen::VectorXd::Zero(train.n_users);
  Eigen::VectorXd n_i = Eigen::VectorXd::Zero(train.n_items);
  for (const auto& fr : ratings) {
    n_u[fr.u] += 1.0;
    n_i[fr.i] += 1.0;
  }

  FitDiagnostics diag;
  Eigen::MatrixXd user_num(train.n_users, f), user_denom(train.n_users, f);
  Eigen::MatrixXd item_num(train.n_items, f), item_denom(train.n_items, f);

  for (int epoch = 0; epoch < cfg.n_epochs; ++epoch) {
    user_num.setZero();
    user_denom.setZero();
    item_num.setZero();
    item_denom.setZero();
    double loss = 0.0;
    for (const auto& [u, i, r] : ratings) {
      const double est = p.row(u).dot(q.row(i));
      user_num.row(u) += r * q.row(i);
      user_denom.row(u) += est * q.row(i);
      item_num.row(i) += r * p.row(u);
      item_denom.row(i) += est * p.row(u);
      loss += (r - est) * (r - est);
    }
    for (int u = 0; u < train.n_users; ++u) {
      if (n_u[u] == 0.0) continue;
      for (int x = 0; x < f; ++x) {
        const double denom = user_denom(u, x) + cfg.reg_pu * n_u[u] * p(u, x);
        p(u, x) *= user_num(u, x) / std::max(denom, kEps);
      }
    }
    for (int i = 0; i < train.n_items; ++i) {
      if (n_i[i] == 0.0) continue;
      for (int x = 0; x < f; ++x) {
        const double denom = item_denom(i, x) + cfg.reg_qi * n_i[i] * q(i, x);
        q(i, x) *= item_num(i, x) / std::max(denom, kEps);
      }
    }
    diag.epoch_loss.push_back(loss);
    diag.epoch_min_factor.push_back(std::min(p.minCoeff(), q.minCoeff()));
  }

  return FittedModel(
      Algorithm::Nmf, train.global_mean, train.scale,
      std::make_unique<NmfEstimator>(train.global_mean, std::move(p),
                                     std::move(q), known_mask(train.by_user),
                                     known_mask(train.by_item)),
      std::move(diag));
}

}  // namespace autorec
