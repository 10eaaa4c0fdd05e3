#include "autorec/similarity.hpp"

#include <cmath>

#include "autorec/baselines.hpp"

namespace autorec {

std::optional<SimilarityKind> similarity_from_name(const std::string& name) {
  if (name == "cosine") return SimilarityKind::Cosine;
  if (name == "msd") return SimilarityKind::Msd;
  if (name == "pearson") return SimilarityKind::Pearson;
  if (name == "pearson_baseline") return SimilarityKind::PearsonBaseline;
  return std::nullopt;
}

std::string_view similarity_name(SimilarityKind kind) {
  switch (kind) {
    case SimilarityKind::Cosine: return "cosine";
    case SimilarityKind::Msd: return "msd";
    case SimilarityKind::Pearson: return "pearson";
    case SimilarityKind::PearsonBaseline: return "pearson_baseline";
  }
  return "?";
}

namespace {

// Ratings grouped by the co-rating axis: for user-user similarity this is
// by_item (each item lists the users who rated it), and vice versa.
using Groups = std::vector<std::vector<std::pair<int, double>>>;

Eigen::MatrixXd cosine(const Groups& groups, int n, int min_support) {
  Eigen::MatrixXd prods = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd sq_a = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd sq_b = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXi freq = Eigen::MatrixXi::Zero(n, n);
  for (const auto& group : groups) {
    for (std::size_t x = 0; x < group.size(); ++x) {
      for (std::size_t y = x + 1; y < group.size(); ++y) {
        const auto [a, ra] = group[x];
        const auto [b, rb] = group[y];
        prods(a, b) += ra * rb;
        sq_a(a, b) += ra * ra;
        sq_b(a, b) += rb * rb;
        freq(a, b) += 1;
      }
    }
  }
  Eigen::MatrixXd sim = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (freq(a, b) < min_support) continue;
      const double denom = std::sqrt(sq_a(a, b) * sq_b(a, b));
      if (denom > 0.0) sim(a, b) = sim(b, a) = prods(a, b) / denom;
    }
  }
  return sim;
}

Eigen::MatrixXd msd(const Groups& groups, int n, int min_support) {
  Eigen::MatrixXd sq_diff = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXi freq = Eigen::MatrixXi::Zero(n, n);
  for (const auto& group : groups) {
    for (std::size_t x = 0; x < group.size(); ++x) {
      for (std::size_t y = x + 1; y < group.size(); ++y) {
        const auto [a, ra] = group[x];
        const auto [b, rb] = group[y];
        sq_diff(a, b) += (ra - rb) * (ra - rb);
        freq(a, b) += 1;
      }
    }
  }
  Eigen::MatrixXd sim = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (freq(a, b) < min_support || freq(a, b) == 0) continue;
      const double mean_sq = sq_diff(a, b) / freq(a, b);
      sim(a, b) = sim(b, a) = 1.0 / (mean_sq + 1.0);
    }
  }
  return sim;
}

// Pearson over the common ratings, centered on the overlap means.
Eigen::MatrixXd pearson(const Groups& groups, int n, int min_support) {
  Eigen::MatrixXd prods = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd sq_a = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd sq_b = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd sum_a = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd sum_b = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXi freq = Eigen::MatrixXi::Zero(n, n);
  for (const auto& group : groups) {
    for (std::size_t x = 0; x < group.size(); ++x) {
      for (std::size_t y = x + 1; y < group.size(); ++y) {
        const auto [a, ra] = group[x];
        const auto [b, rb] = group[y];
        prods(a, b) += ra * rb;
        sq_a(a, b) += ra * ra;
        sq_b(a, b) += rb * rb;
        sum_a(a, b) += ra;
        sum_b(a, b) += rb;
        freq(a, b) += 1;
      }
    }
  }
  Eigen::MatrixXd sim = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const int nc = freq(a, b);
      if (nc < min_support || nc == 0) continue;
      const double var_a = nc * sq_a(a, b) - sum_a(a, b) * sum_a(a, b);
      const double var_b = nc * sq_b(a, b) - sum_b(a, b) * sum_b(a, b);
      const double denom = std::sqrt(var_a * var_b);
      if (denom > 0.0) {
        const double cov = nc * prods(a, b) - sum_a(a, b) * sum_b(a, b);
        sim(a, b) = sim(b, a) = cov / denom;
      }
    }
  }
  return sim;
}

// Cosine of baseline residuals with support shrinkage (n-1)/(n-1+shrinkage).
Eigen::MatrixXd pearson_baseline(const Groups& residual_groups, int n,
                                 int min_support, double shrinkage) {
  Eigen::MatrixXd prods = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd sq_a = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd sq_b = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXi freq = Eigen::MatrixXi::Zero(n, n);
  for (const auto& group : residual_groups) {
    for (std::size_t x = 0; x < group.size(); ++x) {
      for (std::size_t y = x + 1; y < group.size(); ++y) {
        const auto [a, da] = group[x];
        const auto [b, db] = group[y];
        prods(a, b) += da * db;
        sq_a(a, b) += da * da;
        sq_b(a, b) += db * db;
        freq(a, b) += 1;
      }
    }
  }
  Eigen::MatrixXd sim = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const int nc = freq(a, b);
      if (nc < min_support || nc == 0) continue;
      const double denom = std::sqrt(sq_a(a, b) * sq_b(a, b));
      if (denom > 0.0) {
        const double shrink = (nc - 1.0) / (nc - 1.0 + shrinkage);
        sim(a, b) = sim(b, a) = shrink * prods(a, b) / denom;
      }
    }
  }
  return sim;
}

}  // namespace

Eigen::MatrixXd compute_similarity(const Trainset& train,
                                   const SimilarityConfig& config) {
  // Entities along the matrix axes; groups along the co-rating axis.
  const int n = config.user_based ? train.n_users : train.n_items;
  const Groups& groups = config.user_based ? train.by_item : train.by_user;

  Eigen::MatrixXd sim;
  switch (config.kind) {
    case SimilarityKind::Cosine:
      sim = cosine(groups, n, config.min_support);
      break;
    case SimilarityKind::Msd:
      sim = msd(groups, n, config.min_support);
      break;
    case SimilarityKind::Pearson:
      sim = pearson(groups, n, config.min_support);
      break;
    case SimilarityKind::PearsonBaseline: {
      const Baselines base = fit_baselines_als(train, BaselineAlsConfig{});
      Groups residuals(groups.size());
      for (std::size_t g = 0; g < groups.size(); ++g) {
        residuals[g].reserve(groups[g].size());
        for (const auto& [entity, r] : groups[g]) {
          const int u = config.user_based ? entity : static_cast<int>(g);
          const int i = config.user_based ? static_cast<int>(g) : entity;
          residuals[g].emplace_back(entity, r - base.estimate(u, i));
        }
      }
      sim = pearson_baseline(residuals, n, config.min_support, config.shrinkage);
      break;
    }
  }

  const auto& entity_ratings = config.user_based ? train.by_user : train.by_item;
  for (int e = 0; e < n; ++e) {
    if (!entity_ratings[e].empty()) sim(e, e) = 1.0;
  }
  return sim;
}

}  // namespace autorec
