#include <doctest.h>

#include <cmath>
#include <set>

#include "autorec/optimize.hpp"
#include "test_util.hpp"

using namespace autorec;

namespace {

Trial ok_trial(int index, double loss) {
  Trial t;
  t.index = index;
  t.loss = loss;
  return t;
}

Trial failed_trial(int index) {
  Trial t;
  t.index = index;
  t.status = Trial::Status::Failed;
  t.loss = std::numeric_limits<double>::infinity();
  return t;
}

}  // namespace

// ------------------------------------------------------------ split_trials

TEST_CASE("split_trials takes the ceil(gamma * n_ok) lowest losses") {
  std::vector<Trial> trials = {ok_trial(0, 0.9), ok_trial(1, 0.2),
                               ok_trial(2, 0.5), ok_trial(3, 0.7)};
  const auto [good, bad] = split_trials(trials, 0.25);
  REQUIRE(good.size() == 1);  // max(1, ceil(0.25 * 4)) = 1
  CHECK(good[0]->index == 1);
  CHECK(bad.size() == 3);

  std::vector<Trial> twenty;
  for (int i = 0; i < 20; ++i) twenty.push_back(ok_trial(i, 20.0 - i));
  const auto [g20, b20] = split_trials(twenty, 0.25);
  CHECK(g20.size() == 5);
  for (const Trial* t : g20) CHECK(t->loss <= 16.0);  // the five smallest
}

TEST_CASE("split_trials breaks loss ties toward the earlier trial") {
  std::vector<Trial> trials = {ok_trial(0, 1.0), ok_trial(1, 0.5),
                               ok_trial(2, 0.5), ok_trial(3, 1.0)};
  const auto [good, bad] = split_trials(trials, 0.25);
  REQUIRE(good.size() == 1);
  CHECK(good[0]->index == 1);
}

TEST_CASE("split_trials sends failed trials to bad and requires one ok") {
  std::vector<Trial> trials = {failed_trial(0), ok_trial(1, 0.5),
                               failed_trial(2)};
  const auto [good, bad] = split_trials(trials, 0.5);
  REQUIRE(good.size() == 1);
  CHECK(good[0]->index == 1);
  REQUIRE(bad.size() == 2);
  for (const Trial* t : bad) CHECK(t->status == Trial::Status::Failed);

  const std::vector<Trial> all_failed = {failed_trial(0), failed_trial(1)};
  CHECK_THROWS_AS((void)split_trials(all_failed, 0.25), Error);
}

TEST_CASE("split_trials with all-equal losses still produces both groups") {
  std::vector<Trial> trials;
  for (int i = 0; i < 8; ++i) trials.push_back(ok_trial(i, 1.0));
  const auto [good, bad] = split_trials(trials, 0.25);
  CHECK(good.size() == 2);
  CHECK(bad.size() == 6);
}

// --------------------------------------------------------------- densities

TEST_CASE("categorical density weights options by 1 + count") {
  // observations [a, a, b] over 3 options -> (3/6, 2/6, 1/6)
  const CategoricalDensity d({0, 0, 1}, 3);
  CHECK(d.probabilities()[0] == doctest::Approx(0.5));
  CHECK(d.probabilities()[1] == doctest::Approx(1.0 / 3.0));
  CHECK(d.probabilities()[2] == doctest::Approx(1.0 / 6.0));
  CHECK(std::exp(d.log_pmf(2)) == doctest::Approx(1.0 / 6.0));

  // no observations -> uniform
  const CategoricalDensity empty({}, 4);
  for (std::size_t o = 0; o < 4; ++o) {
    CHECK(empty.probabilities()[o] == doctest::Approx(0.25));
  }
}

TEST_CASE("parzen density integrates to one (Simpson quadrature oracle)") {
  const auto domain = ParamDomain::uniform(0.0, 10.0);
  for (const std::vector<double>& obs :
       {std::vector<double>{3.0}, std::vector<double>{1.0, 2.0, 9.5},
        std::vector<double>{5.0, 5.0, 5.0}, std::vector<double>{}}) {
    CAPTURE(obs.size());
    const ParzenDensity d(obs, domain);
    const int n = 20000;  // Simpson's rule over [0, 10]
    const double h = 10.0 / n;
    double integral = std::exp(d.log_pdf(0.0)) + std::exp(d.log_pdf(10.0));
    for (int k = 1; k < n; ++k) {
      integral += (k % 2 ? 4.0 : 2.0) * std::exp(d.log_pdf(k * h));
    }
    integral *= h / 3.0;
    CHECK(std::abs(integral - 1.0) < 1e-3);
  }
}

TEST_CASE("parzen samples stay inside the domain") {
  Rng rng(7);
  const auto uni = ParamDomain::uniform(-2.0, 3.0);
  const ParzenDensity d({-1.9, 2.9, 0.0}, uni);
  for (int i = 0; i < 5000; ++i) {
    const double v = d.sample(rng);
    CHECK(v >= -2.0);
    CHECK(v <= 3.0);
  }

  const auto logd = ParamDomain::log_uniform(1e-4, 1e-1);
  const ParzenDensity ld({1e-3, 5e-2}, logd);
  for (int i = 0; i < 5000; ++i) {
    const double v = ld.sample(rng);
    CHECK(v >= 1e-4);
    CHECK(v <= 1e-1);
  }

  const auto intd = ParamDomain::int_uniform(2, 9);
  const ParzenDensity id({4.0, 7.0}, intd);
  for (int i = 0; i < 5000; ++i) {
    const double v = id.sample(rng);
    CHECK(v == std::round(v));
    CHECK(v >= 2.0);
    CHECK(v <= 9.0);
  }
}

TEST_CASE("parzen density concentrates around its observations") {
  const auto domain = ParamDomain::uniform(0.0, 10.0);
  const ParzenDensity d({2.0, 2.1, 1.9, 2.05}, domain);
  CHECK(d.log_pdf(2.0) > d.log_pdf(8.0));

  Rng rng(3);
  int near = 0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    if (std::abs(d.sample(rng) - 2.0) < 1.5) ++near;
  }
  CHECK(near > n / 2);  // far more mass near 2 than the uniform 30%
}

// --------------------------------------------------------------- suggest

TEST_CASE("random_suggest is deterministic and always valid") {
  for (Algorithm algo : kAllAlgorithms) {
    const ParamSpace space = default_space(algo);
    Rng a(99), b(99);
    for (int i = 0; i < 50; ++i) {
      const ParamAssignment pa = random_suggest(space, a);
      const ParamAssignment pb = random_suggest(space, b);
      CHECK(pa == pb);
      CHECK(validates(space, pa));
    }
  }
}

TEST_CASE("tpe_suggest falls back to random sampling during startup") {
  const ParamSpace space = default_space(Algorithm::Svd);
  TpeConfig cfg;
  std::vector<Trial> history;  // below n_startup
  for (int i = 0; i < 5; ++i) {
    Trial t = ok_trial(i, 1.0);
    Rng sampler(1000 + i);
    t.assignment = sample(space, sampler);
    history.push_back(t);
  }
  Rng r1(5), r2(5);
  CHECK(tpe_suggest(history, space, cfg, r1) == random_suggest(space, r2));
}

TEST_CASE("tpe_suggest always produces domain-valid assignments (fuzz)") {
  TpeConfig cfg;
  cfg.n_startup = 3;
  Rng rng(2026);
  for (Algorithm algo : kAllAlgorithms) {
    const ParamSpace space = default_space(algo);
    if (space.empty()) continue;
    std::vector<Trial> history;
    for (int i = 0; i < 40; ++i) {
      Trial t;
      t.index = i;
      t.assignment = tpe_suggest(history, space, cfg, rng);
      CHECK(validates(space, t.assignment));
      if (i % 7 == 3) {
        t.status = Trial::Status::Failed;
        t.loss = std::numeric_limits<double>::infinity();
      } else {
        t.loss = rng.uniform01();
      }
      history.push_back(t);
    }
  }
}

TEST_CASE("tpe concentrates proposals near the optimum of |x - 2|") {
  ParamSpace space;
  space.params.emplace_back("x", ParamDomain::uniform(0.0, 20.0));
  TpeConfig cfg;
  cfg.n_startup = 10;

  Rng rng(404);
  std::vector<Trial> history;
  for (int i = 0; i < 30; ++i) {
    Trial t;
    t.index = i;
    t.assignment = tpe_suggest(history, space, cfg, rng);
    t.loss = std::abs(get_real(t.assignment, "x", 0.0) - 2.0);
    history.push_back(t);
  }

  int inside = 0;
  const int n = 200;
  for (int i = 0; i < n; ++i) {
    const ParamAssignment a = tpe_suggest(history, space, cfg, rng);
    const double x = get_real(a, "x", -1.0);
    if (x >= 0.0 && x <= 4.0) ++inside;
  }
  // a uniform sampler would land in [0, 4] only 20% of the time
  CHECK(inside >= n * 7 / 10);
}

// ------------------------------------------------------------ grid search

TEST_CASE("grid search visits the full cartesian product and finds the plant") {
  const auto table = testutil::structured_table(15, 12, 0.4, 81);
  const FoldPlan folds = kfold_split(table, 3, 7);

  Grid grid = {
      {"n_factors", {std::int64_t{2}, std::int64_t{4}, std::int64_t{8}}},
      {"n_epochs", {std::int64_t{3}, std::int64_t{10}, std::int64_t{25},
                    std::int64_t{40}}},
      {"lr", {0.002, 0.02}},
  };
  const GridResult res =
      grid_search(Algorithm::Svd, grid, table, folds, Metric::Rmse, 5);

  REQUIRE(res.all.size() == 24);  // 3 * 4 * 2
  std::set<std::tuple<std::int64_t, std::int64_t, double>> seen;
  for (const Trial& t : res.all) {
    seen.emplace(get_int(t.assignment, "n_factors", -1),
                 get_int(t.assignment, "n_epochs", -1),
                 get_real(t.assignment, "lr", -1.0));
  }
  CHECK(seen.size() == 24);

  // lexicographic order, last dimension fastest
  CHECK(get_int(res.all[0].assignment, "n_factors", -1) == 2);
  CHECK(get_real(res.all[0].assignment, "lr", -1.0) == 0.002);
  CHECK(get_real(res.all[1].assignment, "lr", -1.0) == 0.02);
  CHECK(get_int(res.all[23].assignment, "n_factors", -1) == 8);

  // best is the overall loss minimum
  for (const Trial& t : res.all) {
    if (t.status == Trial::Status::Ok) CHECK(res.best.loss <= t.loss);
  }
}

TEST_CASE("grid search handles a single point and rejects bad input") {
  const auto table = testutil::structured_table(10, 8, 0.5, 17);
  const FoldPlan folds = kfold_split(table, 2, 7);

  const Grid single = {{"k", {std::int64_t{5}}}};
  const GridResult res =
      grid_search(Algorithm::KnnBasic, single, table, folds, Metric::Mae, 1);
  CHECK(res.all.size() == 1);
  CHECK(res.best.index == 0);

  const Grid unknown_key = {{"bogus", {std::int64_t{1}}}};
  CHECK_THROWS_AS((void)grid_search(Algorithm::KnnBasic, unknown_key, table,
                                    folds, Metric::Rmse, 1),
                  Error);

  const Grid empty_dim = {{"k", {}}};
  CHECK_THROWS_AS((void)grid_search(Algorithm::KnnBasic, empty_dim, table,
                                    folds, Metric::Rmse, 1),
                  Error);
}

TEST_CASE("grid search is deterministic under the seed") {
  const auto table = testutil::structured_table(12, 10, 0.4, 29);
  const FoldPlan folds = kfold_split(table, 2, 3);
  const Grid grid = {{"k", {std::int64_t{5}, std::int64_t{20}}},
                     {"min_k", {std::int64_t{1}, std::int64_t{3}}}};
  const GridResult a =
      grid_search(Algorithm::KnnWithMeans, grid, table, folds, Metric::Rmse, 9);
  const GridResult b =
      grid_search(Algorithm::KnnWithMeans, grid, table, folds, Metric::Rmse, 9);
  REQUIRE(a.all.size() == b.all.size());
  for (std::size_t i = 0; i < a.all.size(); ++i) {
    CHECK(a.all[i].loss == b.all[i].loss);
  }
  CHECK(a.best.index == b.best.index);
}

TEST_CASE("default comparison grids cover the documented shapes") {
  CHECK(default_grid(Algorithm::Svd).size() == 4);
  CHECK(default_grid(Algorithm::KnnBaseline).size() == 3);
  CHECK_THROWS_AS((void)default_grid(Algorithm::SlopeOne), Error);
}
