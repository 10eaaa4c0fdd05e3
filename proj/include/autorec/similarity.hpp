#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "autorec/trainset.hpp"

namespace autorec {

enum class SimilarityKind { Cosine, Msd, Pearson, PearsonBaseline };

std::optional<SimilarityKind> similarity_from_name(const std::string& name);
std::string_view similarity_name(SimilarityKind kind);

struct SimilarityConfig {
  SimilarityKind kind = SimilarityKind::Msd;
  bool user_based = true;
  int min_support = 1;      // pairs with fewer common ratings get 0
  double shrinkage = 100.0;  // pearson_baseline only
};

// Symmetric n x n matrix over users (user_based) or items. Entries with
// undefined similarity (empty overlap, zero variance/norm) are 0; the
// diagonal is 1 for entities with at least one rating. PearsonBaseline
// computes its residuals against default ALS baselines fit on `train`.
Eigen::MatrixXd compute_similarity(const Trainset& train,
                                   const SimilarityConfig& config);

}  // namespace autorec
