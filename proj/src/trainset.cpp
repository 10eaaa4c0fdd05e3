#include "autorec/trainset.hpp"

namespace autorec {

double Trainset::user_mean(int u) const {
  const auto& rs = by_user[u];
  if (rs.empty()) return global_mean;
  double s = 0.0;
  for (const auto& [i, r] : rs) s += r;
  return s / static_cast<double>(rs.size());
}

double Trainset::item_mean(int i) const {
  const auto& rs = by_item[i];
  if (rs.empty()) return global_mean;
  double s = 0.0;
  for (const auto& [u, r] : rs) s += r;
  return s / static_cast<double>(rs.size());
}

namespace {

Trainset build(const RatingsTable& table, const FoldPlan* folds, int test_fold) {
  Trainset t;
  t.n_users = table.n_users();
  t.n_items = table.n_items();
  t.scale = table.scale;
  t.by_user.resize(t.n_users);
  t.by_item.resize(t.n_items);
  double sum = 0.0;
  for (std::size_t idx = 0; idx < table.ratings.size(); ++idx) {
    if (folds && folds->assignments[idx] == test_fold) continue;
    const Rating& r = table.ratings[idx];
    t.by_user[r.user].emplace_back(r.item, r.value);
    t.by_item[r.item].emplace_back(r.user, r.value);
    sum += r.value;
    ++t.n_ratings;
  }
  t.global_mean = t.n_ratings ? sum / static_cast<double>(t.n_ratings) : 0.0;
  return t;
}

}  // namespace

Trainset make_trainset(const RatingsTable& table) {
  return build(table, nullptr, -1);
}

Trainset make_trainset(const RatingsTable& table, const FoldPlan& folds,
                       int test_fold) {
  return build(table, &folds, test_fold);
}

}  // namespace autorec
