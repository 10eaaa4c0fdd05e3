#pragma once

#include <cstdint>

#include "autorec/baselines.hpp"
#include "autorec/model.hpp"
#include "autorec/similarity.hpp"
#include "autorec/space.hpp"
#include "autorec/trainset.hpp"

namespace autorec {

// Dispatch on the algorithm; missing parameters take the conventional
// defaults (see the per-algorithm configs below).
FittedModel fit(Algorithm algo, const Trainset& train,
                const ParamAssignment& params, std::uint64_t seed);

FittedModel fit_normal_predictor(const Trainset& train, std::uint64_t seed);

struct BaselineOnlyConfig {
  bool use_sgd = false;
  BaselineAlsConfig als;
  BaselineSgdConfig sgd;
};
FittedModel fit_baseline_only(const Trainset& train,
                              const BaselineOnlyConfig& cfg);

enum class KnnVariant { Basic, WithMeans, WithZScore, Baseline };

struct KnnConfig {
  KnnVariant variant = KnnVariant::Basic;
  int k = 40;
  int min_k = 1;
  SimilarityConfig sim;
};
FittedModel fit_knn(const Trainset& train, const KnnConfig& cfg);

struct SvdConfig {
  bool svdpp = false;
  int n_factors = 100;  // 20 is the conventional SVD++ default
  int n_epochs = 20;
  double learning_rate = 0.005;
  double reg = 0.02;
  double init_std_dev = 0.1;
};
FittedModel fit_svd(const Trainset& train, const SvdConfig& cfg,
                    std::uint64_t seed);

struct NmfConfig {
  int n_factors = 15;
  int n_epochs = 50;
  double reg_pu = 0.06;
  double reg_qi = 0.06;
};
FittedModel fit_nmf(const Trainset& train, const NmfConfig& cfg,
                    std::uint64_t seed);

FittedModel fit_slope_one(const Trainset& train);

struct CoClusteringConfig {
  int n_cltr_u = 3;
  int n_cltr_i = 3;
  int n_epochs = 20;
};
FittedModel fit_coclustering(const Trainset& train,
                             const CoClusteringConfig& cfg, std::uint64_t seed);

}  // namespace autorec
