#include "autorec/algorithms.hpp"

namespace autorec {

namespace {

KnnConfig knn_config(KnnVariant variant, const ParamAssignment& params) {
  KnnConfig cfg;
  cfg.variant = variant;
  cfg.k = static_cast<int>(get_int(params, "k", 40));
  cfg.min_k = static_cast<int>(get_int(params, "min_k", 1));
  const std::string sim_name = get_label(params, "sim", "msd");
  const auto kind = similarity_from_name(sim_name);
  if (!kind) throw Error("unknown similarity kind \"" + sim_name + "\"");
  cfg.sim.kind = *kind;
  cfg.sim.user_based = get_flag(params, "user_based", true);
  cfg.sim.shrinkage = get_real(params, "shrinkage", 100.0);
  return cfg;
}

}  // namespace

FittedModel fit(Algorithm algo, const Trainset& train,
                const ParamAssignment& params, std::uint64_t seed) {
  switch (algo) {
    case Algorithm::NormalPredictor:
      return fit_normal_predictor(train, seed);
    case Algorithm::BaselineOnly: {
      BaselineOnlyConfig cfg;
      cfg.use_sgd = get_label(params, "method", "als") == "sgd";
      if (cfg.use_sgd) {
        cfg.sgd.epochs = static_cast<int>(get_int(params, "epochs", 20));
        cfg.sgd.learning_rate = get_real(params, "lr", 0.005);
        cfg.sgd.reg = get_real(params, "reg", 0.02);
      } else {
        cfg.als.epochs = static_cast<int>(get_int(params, "epochs", 10));
        cfg.als.reg_u = get_real(params, "reg_u", 15.0);
        cfg.als.reg_i = get_real(params, "reg_i", 10.0);
      }
      return fit_baseline_only(train, cfg);
    }
    case Algorithm::KnnBasic:
      return fit_knn(train, knn_config(KnnVariant::Basic, params));
    case Algorithm::KnnWithMeans:
      return fit_knn(train, knn_config(KnnVariant::WithMeans, params));
    case Algorithm::KnnWithZScore:
      return fit_knn(train, knn_config(KnnVariant::WithZScore, params));
    case Algorithm::KnnBaseline:
      return fit_knn(train, knn_config(KnnVariant::Baseline, params));
    case Algorithm::Svd:
    case Algorithm::Svdpp: {
      SvdConfig cfg;
      cfg.svdpp = algo == Algorithm::Svdpp;
      cfg.n_factors =
          static_cast<int>(get_int(params, "n_factors", cfg.svdpp ? 20 : 100));
      cfg.n_epochs = static_cast<int>(get_int(params, "n_epochs", 20));
      cfg.learning_rate = get_real(params, "lr", cfg.svdpp ? 0.007 : 0.005);
      cfg.reg = get_real(params, "reg", 0.02);
      return fit_svd(train, cfg, seed);
    }
    case Algorithm::Nmf: {
      NmfConfig cfg;
      cfg.n_factors = static_cast<int>(get_int(params, "n_factors", 15));
      cfg.n_epochs = static_cast<int>(get_int(params, "n_epochs", 50));
      cfg.reg_pu = get_real(params, "reg_pu", 0.06);
      cfg.reg_qi = get_real(params, "reg_qi", 0.06);
      return fit_nmf(train, cfg, seed);
    }
    case Algorithm::SlopeOne:
      return fit_slope_one(train);
    case Algorithm::CoClustering: {
      CoClusteringConfig cfg;
      cfg.n_cltr_u = static_cast<int>(get_int(params, "n_cltr_u", 3));
      cfg.n_cltr_i = static_cast<int>(get_int(params, "n_cltr_i", 3));
      cfg.n_epochs = static_cast<int>(get_int(params, "n_epochs", 20));
      return fit_coclustering(train, cfg, seed);
    }
  }
  throw Error("unknown algorithm");
}

}  // namespace autorec
