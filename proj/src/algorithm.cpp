#include "autorec/algorithm.hpp"

namespace autorec {

namespace {
struct Names {
  Algorithm algo;
  std::string_view name;
  std::string_view cli;
};
constexpr std::array<Names, 11> kNames = {{
    {Algorithm::NormalPredictor, "NormalPredictor", "normal-predictor"},
    {Algorithm::BaselineOnly, "BaselineOnly", "baseline-only"},
    {Algorithm::KnnBasic, "KNNBasic", "knn-basic"},
    {Algorithm::KnnWithMeans, "KNNWithMeans", "knn-with-means"},
    {Algorithm::KnnWithZScore, "KNNWithZScore", "knn-with-z-score"},
    {Algorithm::KnnBaseline, "KNNBaseline", "knn-baseline"},
    {Algorithm::Svd, "SVD", "svd"},
    {Algorithm::Svdpp, "SVDpp", "svdpp"},
    {Algorithm::Nmf, "NMF", "nmf"},
    {Algorithm::SlopeOne, "SlopeOne", "slope-one"},
    {Algorithm::CoClustering, "CoClustering", "co-clustering"},
}};
}  // namespace

std::string_view algorithm_name(Algorithm a) {
  for (const auto& n : kNames)
    if (n.algo == a) return n.name;
  return "?";
}

std::string_view algorithm_cli_name(Algorithm a) {
  for (const auto& n : kNames)
    if (n.algo == a) return n.cli;
  return "?";
}

std::optional<Algorithm> algorithm_from_name(std::string_view name) {
  for (const auto& n : kNames)
    if (n.name == name || n.cli == name) return n.algo;
  return std::nullopt;
}

std::string valid_algorithm_names() {
  std::string out;
  for (const auto& n : kNames) {
    if (!out.empty()) out += ", ";
    out += n.cli;
  }
  return out;
}

}  // namespace autorec
