#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace autorec {

enum class Algorithm {
  NormalPredictor,
  BaselineOnly,
  KnnBasic,
  KnnWithMeans,
  KnnWithZScore,
  KnnBaseline,
  Svd,
  Svdpp,
  Nmf,
  SlopeOne,
  CoClustering,
};

inline constexpr std::array<Algorithm, 11> kAllAlgorithms = {
    Algorithm::NormalPredictor, Algorithm::BaselineOnly,
    Algorithm::KnnBasic,        Algorithm::KnnWithMeans,
    Algorithm::KnnWithZScore,   Algorithm::KnnBaseline,
    Algorithm::Svd,             Algorithm::Svdpp,
    Algorithm::Nmf,             Algorithm::SlopeOne,
    Algorithm::CoClustering,
};

std::string_view algorithm_name(Algorithm a);           // "KNNBaseline"
std::string_view algorithm_cli_name(Algorithm a);       // "knn-baseline"
std::optional<Algorithm> algorithm_from_name(std::string_view name);
std::string valid_algorithm_names();

}  // namespace autorec
