#pragma once

#include <Eigen/Dense>

#include "autorec/trainset.hpp"

namespace autorec {

struct Baselines {
  double mu = 0.0;
  Eigen::VectorXd b_user;  // 0 for users absent from training
  Eigen::VectorXd b_item;

  double estimate(int u, int i) const {
    double b = mu;
    if (u >= 0 && u < b_user.size()) b += b_user[u];
    if (i >= 0 && i < b_item.size()) b += b_item[i];
    return b;
  }
};

struct BaselineAlsConfig {
  int epochs = 10;
  double reg_u = 15.0;
  double reg_i = 10.0;
};

struct BaselineSgdConfig {
  int epochs = 20;
  double learning_rate = 0.005;
  double reg = 0.02;
};

Baselines fit_baselines_als(const Trainset& train, const BaselineAlsConfig& cfg);
Baselines fit_baselines_sgd(const Trainset& train, const BaselineSgdConfig& cfg);

}  // namespace autorec
