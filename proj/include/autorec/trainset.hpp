#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "autorec/dataset.hpp"

namespace autorec {

// Index structure over a training subset of a RatingsTable. Inner ids are
// the table's global ids, so users/items absent from the subset are simply
// "unknown" (empty rating lists).
struct Trainset {
  int n_users = 0;
  int n_items = 0;
  std::size_t n_ratings = 0;
  double global_mean = 0.0;
  RatingScale scale;
  std::vector<std::vector<std::pair<int, double>>> by_user;  // (item, rating)
  std::vector<std::vector<std::pair<int, double>>> by_item;  // (user, rating)

  bool known_user(int u) const {
    return u >= 0 && u < n_users && !by_user[u].empty();
  }
  bool known_item(int i) const {
    return i >= 0 && i < n_items && !by_item[i].empty();
  }
  double user_mean(int u) const;
  double item_mean(int i) const;
};

Trainset make_trainset(const RatingsTable& table);

// Only the ratings whose fold differs from `test_fold`.
Trainset make_trainset(const RatingsTable& table, const FoldPlan& folds,
                       int test_fold);

}  // namespace autorec
