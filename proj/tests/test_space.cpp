#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "autorec/space.hpp"

using namespace autorec;

TEST_CASE("Choice with a single option always selects it") {
  ParamSpace s;
  s.params.emplace_back("only", ParamDomain::choice({{"a", {}}}));
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const auto a = sample(s, rng);
    CHECK(std::get<std::string>(a.at("only")) == "a");
  }
}

TEST_CASE("Uniform samples stay in bounds with mean near the middle") {
  ParamSpace s;
  s.params.emplace_back("x", ParamDomain::uniform(0.0, 1.0));
  Rng rng(7);
  double sum = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = std::get<double>(sample(s, rng).at("x"));
    REQUIRE(x >= 0.0);
    REQUIRE(x <= 1.0);
    sum += x;
  }
  const double mean = sum / 1000.0;
  CHECK(mean > 0.45);
  CHECK(mean < 0.55);
}

TEST_CASE("LogUniform decimal logs pass a KS test against uniform") {
  ParamSpace s;
  s.params.emplace_back("lr", ParamDomain::log_uniform(1e-4, 1e-1));
  Rng rng(3);
  const int n = 10000;
  std::vector<double> logs;
  logs.reserve(n);
  for (int i = 0; i < n; ++i) {
    logs.push_back(std::log10(std::get<double>(sample(s, rng).at("lr"))));
  }
  std::sort(logs.begin(), logs.end());
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cdf = (logs[i] - (-4.0)) / 3.0;  // uniform on [-4, -1]
    d = std::max(d, std::abs((i + 1.0) / n - cdf));
    d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
  }
  const double critical = 1.62762 / std::sqrt(static_cast<double>(n));  // alpha=0.01
  CHECK(d < critical);
}

TEST_CASE("IntUniform is inclusive on both ends") {
  ParamSpace s;
  s.params.emplace_back("k", ParamDomain::int_uniform(2, 4));
  Rng rng(5);
  bool saw_low = false, saw_high = false;
  for (int i = 0; i < 500; ++i) {
    const auto k = std::get<std::int64_t>(sample(s, rng).at("k"));
    REQUIRE(k >= 2);
    REQUIRE(k <= 4);
    saw_low |= k == 2;
    saw_high |= k == 4;
  }
  CHECK(saw_low);
  CHECK(saw_high);
}

TEST_CASE("sampling is deterministic under a fixed generator state") {
  const auto space = default_space(Algorithm::KnnBaseline);
  Rng a(77), b(77);
  for (int i = 0; i < 50; ++i) {
    CHECK(sample(space, a) == sample(space, b));
  }
}

TEST_CASE("sampled assignments validate against their space (fuzz)") {
  for (Algorithm algo : kAllAlgorithms) {
    const auto space = default_space(algo);
    Rng rng(static_cast<std::uint64_t>(algo) + 1);
    for (int i = 0; i < 500; ++i) {
      const auto a = sample(space, rng);
      CHECK(validates(space, a));
    }
  }
}

TEST_CASE("active-path property: nested names appear iff their branch is chosen") {
  const auto space = default_space(Algorithm::BaselineOnly);
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const auto a = sample(space, rng);
    const auto method = std::get<std::string>(a.at("method"));
    if (method == "als") {
      CHECK(a.count("reg_u") == 1);
      CHECK(a.count("reg_i") == 1);
      CHECK(a.count("lr") == 0);
    } else {
      CHECK(a.count("lr") == 1);
      CHECK(a.count("reg") == 1);
      CHECK(a.count("reg_u") == 0);
    }
    CHECK(validates(space, a));
  }
  // an off-path extra parameter must fail validation
  auto a = sample(space, rng);
  a["bogus"] = 1.0;
  CHECK_FALSE(validates(space, a));
}

TEST_CASE("default spaces match the documented ranges") {
  CHECK(default_space(Algorithm::SlopeOne).empty());
  CHECK(default_space(Algorithm::NormalPredictor).empty());

  const auto svd = default_space(Algorithm::Svd);
  const ParamDomain* nf = svd.find("n_factors");
  REQUIRE(nf != nullptr);
  CHECK(nf->kind == ParamDomain::Kind::IntUniform);
  CHECK(nf->int_low == 2);
  CHECK(nf->int_high == 100);

  const auto knn = default_space(Algorithm::KnnBaseline);
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const auto a = sample(knn, rng);
    const auto k = std::get<std::int64_t>(a.at("k"));
    CHECK(k >= 10);
    CHECK(k <= 100);
    const auto sim = std::get<std::string>(a.at("sim"));
    CHECK((sim == "cosine" || sim == "msd" || sim == "pearson" ||
           sim == "pearson_baseline"));
    CHECK(a.count("shrinkage") == (sim == "pearson_baseline" ? 1 : 0));
  }
}
