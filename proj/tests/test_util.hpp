#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "autorec/dataset.hpp"
#include "autorec/rng.hpp"

namespace autorec::testutil {

// Random dense-ish table: every (user, item) pair kept with probability
// `density`, rating uniform on the scale.
inline RatingsTable random_table(int n_users, int n_items, double density,
                                 RatingScale scale, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::tuple<std::string, std::string, double>> triples;
  for (int u = 0; u < n_users; ++u) {
    for (int i = 0; i < n_items; ++i) {
      if (rng.uniform01() > density) continue;
      const double r = scale.min + rng.uniform01() * (scale.max - scale.min);
      triples.emplace_back("u" + std::to_string(u), "i" + std::to_string(i), r);
    }
  }
  // every user/item rates at least one thing so the table is well formed
  for (int u = 0; u < n_users; ++u) {
    triples.emplace_back("u" + std::to_string(u), "i0",
                         scale.min + rng.uniform01() * (scale.max - scale.min));
  }
  for (int i = 0; i < n_items; ++i) {
    triples.emplace_back("u0", "i" + std::to_string(i),
                         scale.min + rng.uniform01() * (scale.max - scale.min));
  }
  return make_table(triples, scale);
}

// Ratings with real structure (user bias + item bias + noise), so models
// have something to learn.
inline RatingsTable structured_table(int n_users, int n_items, double density,
                                     std::uint64_t seed) {
  Rng rng(seed);
  const RatingScale scale{1.0, 5.0};
  std::vector<double> bu(n_users), bi(n_items);
  for (auto& b : bu) b = rng.normal(0.0, 0.6);
  for (auto& b : bi) b = rng.normal(0.0, 0.6);
  std::vector<std::tuple<std::string, std::string, double>> triples;
  for (int u = 0; u < n_users; ++u) {
    for (int i = 0; i < n_items; ++i) {
      if (rng.uniform01() > density && !(i == 0) && !(u == 0)) continue;
      const double r = scale.clip(3.0 + bu[u] + bi[i] + rng.normal(0.0, 0.3));
      triples.emplace_back("u" + std::to_string(u), "i" + std::to_string(i), r);
    }
  }
  return make_table(triples, scale);
}

inline RatingsTable constant_table(int n_users, int n_items, double value) {
  std::vector<std::tuple<std::string, std::string, double>> triples;
  for (int u = 0; u < n_users; ++u) {
    for (int i = 0; i < n_items; ++i) {
      triples.emplace_back("u" + std::to_string(u), "i" + std::to_string(i),
                           value);
    }
  }
  return make_table(triples, {1.0, 5.0});
}

}  // namespace autorec::testutil
