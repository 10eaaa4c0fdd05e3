#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "autorec/metrics.hpp"
#include "autorec/rng.hpp"
#include "test_util.hpp"

using namespace autorec;

TEST_CASE("rmse analytic values") {
  CHECK(rmse({{3.0, 3.0}, {4.5, 4.5}}) == 0.0);
  // errors exactly (+1, -1, +1, -1)
  CHECK(rmse({{4, 3}, {2, 3}, {4, 3}, {2, 3}}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(rmse({}), Error);
}

TEST_CASE("mae analytic values") {
  CHECK(mae({{2.0, 2.0}}) == 0.0);
  CHECK(mae({{5, 3}, {1, 3}}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(mae({}), Error);
}

TEST_CASE("rmse and mae match direct formula evaluation on random vectors") {
  Rng rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<PredictionPair> pairs;
    const int n = 1 + static_cast<int>(rng.index(200));
    for (int i = 0; i < n; ++i) {
      pairs.emplace_back(rng.uniform(1, 5), rng.uniform(1, 5));
    }
    double ss = 0.0, sa = 0.0;
    for (auto [p, a] : pairs) {
      ss += (p - a) * (p - a);
      sa += std::abs(p - a);
    }
    CHECK(rmse(pairs) == doctest::Approx(std::sqrt(ss / n)).epsilon(1e-12));
    CHECK(mae(pairs) == doctest::Approx(sa / n).epsilon(1e-12));

    // rmse >= mae (Cauchy-Schwarz), permutation invariance
    CHECK(rmse(pairs) >= mae(pairs) - 1e-12);
    auto shuffled = pairs;
    rng.shuffle(shuffled);
    CHECK(rmse(shuffled) == doctest::Approx(rmse(pairs)).epsilon(1e-12));
    CHECK(mae(shuffled) == doctest::Approx(mae(pairs)).epsilon(1e-12));
  }
}

TEST_CASE("cross_validate on a constant dataset with BaselineOnly is 0") {
  const auto table = testutil::constant_table(8, 8, 4.0);
  const auto folds = kfold_split(table, 4, 3);
  const auto result = cross_validate(Algorithm::BaselineOnly, {}, table, folds,
                                     Metric::Rmse, 3);
  CHECK(result.mean_loss == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("cross_validate is deterministic and mean matches fold losses") {
  const auto table = testutil::structured_table(25, 20, 0.3, 17);
  const auto folds = kfold_split(table, 3, 5);
  ParamAssignment params;
  params["n_factors"] = std::int64_t{4};
  params["n_epochs"] = std::int64_t{10};

  const auto a = cross_validate(Algorithm::Svd, params, table, folds,
                                Metric::Rmse, 99);
  const auto b = cross_validate(Algorithm::Svd, params, table, folds,
                                Metric::Rmse, 99);
  CHECK(a.mean_loss == b.mean_loss);
  CHECK(a.per_fold_losses == b.per_fold_losses);

  REQUIRE(a.per_fold_losses.size() == 3);
  double sum = 0.0;
  for (double loss : a.per_fold_losses) {
    CHECK(loss >= 0.0);
    sum += loss;
  }
  CHECK(a.mean_loss == sum / 3.0);
}

TEST_CASE("cross_validate tags fit errors with the fold index") {
  const auto table = testutil::structured_table(10, 10, 0.5, 2);
  const auto folds = kfold_split(table, 2, 1);
  ParamAssignment params;
  params["lr"] = 1e6;  // guaranteed divergence
  params["n_epochs"] = std::int64_t{30};
  try {
    cross_validate(Algorithm::Svd, params, table, folds, Metric::Rmse, 0);
    FAIL("expected a diverged-fit error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("fold 0") != std::string::npos);
  }
}
