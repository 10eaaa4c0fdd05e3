#include "autorec/optimize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "autorec/dataset.hpp"

namespace autorec {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / 2.5066282746310002;  // sqrt(2*pi)
}

}  // namespace

std::pair<std::vector<const Trial*>, std::vector<const Trial*>> split_trials(
    const std::vector<Trial>& trials, double gamma) {
  std::vector<const Trial*> ok;
  std::vector<const Trial*> bad;
  for (const Trial& t : trials) {
    (t.status == Trial::Status::Ok ? ok : bad).push_back(&t);
  }
  if (ok.empty()) throw Error("split_trials: no successful trials");

  const std::size_t n_good = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::ceil(gamma * static_cast<double>(ok.size()))));
  std::sort(ok.begin(), ok.end(), [](const Trial* a, const Trial* b) {
    if (a->loss != b->loss) return a->loss < b->loss;
    return a->index < b->index;
  });

  std::vector<const Trial*> good(ok.begin(), ok.begin() + n_good);
  bad.insert(bad.end(), ok.begin() + n_good, ok.end());
  return {std::move(good), std::move(bad)};
}

ParzenDensity::ParzenDensity(const std::vector<double>& values,
                             const ParamDomain& domain) {
  kind_ = domain.kind;
  switch (kind_) {
    case ParamDomain::Kind::Uniform:
      low_ = domain.low;
      high_ = domain.high;
      break;
    case ParamDomain::Kind::LogUniform:
      low_ = std::log(domain.low);
      high_ = std::log(domain.high);
      break;
    case ParamDomain::Kind::IntUniform:
      low_ = static_cast<double>(domain.int_low);
      high_ = static_cast<double>(domain.int_high);
      break;
    case ParamDomain::Kind::Choice:
      throw Error("ParzenDensity does not model Choice domains");
  }

  centers_.reserve(values.size());
  for (double v : values) centers_.push_back(to_internal(v));
  std::vector<double> sorted = centers_;
  std::sort(sorted.begin(), sorted.end());

  const double range = high_ - low_;
  const double bw_min =
      range / static_cast<double>(std::min<std::size_t>(100, values.size() + 1));
  bandwidths_.reserve(centers_.size());
  for (double c : centers_) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), c);
    const std::size_t pos = static_cast<std::size_t>(it - sorted.begin());
    double bw = 0.0;
    if (pos > 0) bw = std::max(bw, c - sorted[pos - 1]);
    if (pos + 1 < sorted.size()) bw = std::max(bw, sorted[pos + 1] - c);
    if (sorted.size() == 1) bw = range;  // no neighbor at all
    bw = std::clamp(bw, bw_min, range);
    bandwidths_.push_back(bw);
  }
}

double ParzenDensity::to_internal(double v) const {
  return kind_ == ParamDomain::Kind::LogUniform ? std::log(v) : v;
}

double ParzenDensity::from_internal(double x) const {
  switch (kind_) {
    case ParamDomain::Kind::LogUniform:
      return std::exp(x);
    case ParamDomain::Kind::IntUniform:
      return std::clamp(std::round(x), low_, high_);
    default:
      return x;
  }
}

double ParzenDensity::sample(Rng& rng) const {
  // n+1 equally weighted components; index n is the uniform prior
  const std::size_t component = rng.index(centers_.size() + 1);
  if (component == centers_.size()) {
    return from_internal(rng.uniform(low_, high_));
  }
  const double mu = centers_[component];
  const double sigma = bandwidths_[component];
  // truncated to the domain by rejection; sigma <= range keeps this cheap
  for (;;) {
    const double x = rng.normal(mu, sigma);
    if (x >= low_ && x <= high_) return from_internal(x);
  }
}

double ParzenDensity::log_pdf(double value) const {
  const double x = to_internal(value);
  const double range = high_ - low_;
  const double w = 1.0 / static_cast<double>(centers_.size() + 1);
  double density = w / range;  // prior component
  for (std::size_t c = 0; c < centers_.size(); ++c) {
    const double mu = centers_[c];
    const double sigma = bandwidths_[c];
    const double z_lo = (low_ - mu) / sigma;
    const double z_hi = (high_ - mu) / sigma;
    const double mass = normal_cdf(z_hi) - normal_cdf(z_lo);
    if (mass <= 0.0) continue;
    density += w * normal_pdf((x - mu) / sigma) / (sigma * mass);
  }
  return std::log(density);
}

CategoricalDensity::CategoricalDensity(const std::vector<std::size_t>& observed,
                                       std::size_t n_options) {
  std::vector<double> counts(n_options, 1.0);
  for (std::size_t o : observed) counts[o] += 1.0;
  const double total =
      static_cast<double>(observed.size()) + static_cast<double>(n_options);
  probs_.resize(n_options);
  for (std::size_t i = 0; i < n_options; ++i) probs_[i] = counts[i] / total;
}

std::size_t CategoricalDensity::sample(Rng& rng) const {
  double u = rng.uniform01();
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    u -= probs_[i];
    if (u < 0.0) return i;
  }
  return probs_.size() - 1;
}

double CategoricalDensity::log_pmf(std::size_t option) const {
  return std::log(probs_[option]);
}

ParamAssignment random_suggest(const ParamSpace& space, Rng& rng) {
  return sample(space, rng);
}

namespace {

std::vector<double> numeric_values(const std::vector<const Trial*>& trials,
                                   const std::string& name) {
  std::vector<double> out;
  for (const Trial* t : trials) {
    auto it = t->assignment.find(name);
    if (it == t->assignment.end()) continue;
    if (const double* x = std::get_if<double>(&it->second)) {
      out.push_back(*x);
    } else if (const std::int64_t* x = std::get_if<std::int64_t>(&it->second)) {
      out.push_back(static_cast<double>(*x));
    }
  }
  return out;
}

std::vector<std::size_t> option_values(const std::vector<const Trial*>& trials,
                                       const std::string& name,
                                       const std::vector<ChoiceOption>& options) {
  std::vector<std::size_t> out;
  for (const Trial* t : trials) {
    auto it = t->assignment.find(name);
    if (it == t->assignment.end()) continue;
    const std::string* label = std::get_if<std::string>(&it->second);
    if (!label) continue;
    for (std::size_t o = 0; o < options.size(); ++o) {
      if (options[o].label == *label) {
        out.push_back(o);
        break;
      }
    }
  }
  return out;
}

void suggest_into(const ParamSpace& space,
                  const std::vector<const Trial*>& good,
                  const std::vector<const Trial*>& bad, const TpeConfig& config,
                  Rng& rng, ParamAssignment& out) {
  for (const auto& [name, domain] : space.params) {
    if (domain.kind == ParamDomain::Kind::Choice) {
      const CategoricalDensity l(option_values(good, name, domain.options),
                                 domain.options.size());
      const CategoricalDensity g(option_values(bad, name, domain.options),
                                 domain.options.size());
      std::size_t best = 0;
      double best_score = -std::numeric_limits<double>::infinity();
      for (int c = 0; c < config.n_candidates; ++c) {
        const std::size_t cand = l.sample(rng);
        const double score = l.log_pmf(cand) - g.log_pmf(cand);
        if (score > best_score) {
          best_score = score;
          best = cand;
        }
      }
      out[name] = domain.options[best].label;
      suggest_into(domain.options[best].nested, good, bad, config, rng, out);
    } else {
      const ParzenDensity l(numeric_values(good, name), domain);
      const ParzenDensity g(numeric_values(bad, name), domain);
      double best = 0.0;
      double best_score = -std::numeric_limits<double>::infinity();
      for (int c = 0; c < config.n_candidates; ++c) {
        const double cand = l.sample(rng);
        const double score = l.log_pdf(cand) - g.log_pdf(cand);
        if (score > best_score) {
          best_score = score;
          best = cand;
        }
      }
      if (domain.kind == ParamDomain::Kind::IntUniform) {
        out[name] = static_cast<std::int64_t>(std::llround(best));
      } else {
        out[name] = best;
      }
    }
  }
}

}  // namespace

ParamAssignment tpe_suggest(const std::vector<Trial>& trials,
                            const ParamSpace& space, const TpeConfig& config,
                            Rng& rng) {
  std::size_t n_ok = 0;
  for (const Trial& t : trials) {
    if (t.status == Trial::Status::Ok) ++n_ok;
  }
  if (n_ok < static_cast<std::size_t>(config.n_startup)) {
    return sample(space, rng);
  }
  auto [good, bad] = split_trials(trials, config.gamma);
  ParamAssignment out;
  suggest_into(space, good, bad, config, rng, out);
  return out;
}

namespace {

const ParamDomain* find_domain_deep(const ParamSpace& space,
                                    const std::string& name) {
  for (const auto& [n, d] : space.params) {
    if (n == name) return &d;
    if (d.kind == ParamDomain::Kind::Choice) {
      for (const auto& opt : d.options) {
        if (const ParamDomain* found = find_domain_deep(opt.nested, name))
          return found;
      }
    }
  }
  return nullptr;
}

}  // namespace

GridResult grid_search(Algorithm algo, const Grid& grid,
                       const RatingsTable& table, const FoldPlan& folds,
                       Metric metric, std::uint64_t seed) {
  const ParamSpace space = default_space(algo);
  for (const auto& [name, values] : grid) {
    if (values.empty())
      throw Error("grid dimension \"" + name + "\" has no values");
    if (!space.empty() && !find_domain_deep(space, name))
      throw Error("grid key \"" + name + "\" is not a parameter of " +
                  std::string(algorithm_name(algo)));
  }

  using clock = std::chrono::steady_clock;
  const auto start = clock::now();

  GridResult result;
  std::vector<std::size_t> idx(grid.size(), 0);
  int trial_index = 0;
  for (;;) {
    ParamAssignment assignment;
    for (std::size_t d = 0; d < grid.size(); ++d) {
      assignment[grid[d].first] = grid[d].second[idx[d]];
    }

    Trial trial;
    trial.index = trial_index++;
    trial.assignment = assignment;
    const auto t0 = clock::now();
    try {
      const EvalResult eval = cross_validate(
          algo, assignment, table, folds, metric,
          combine_seed(seed, algorithm_name(algo), trial.index));
      trial.loss = eval.mean_loss;
      trial.fit_time_s = eval.fit_time_s;
    } catch (const Error& e) {
      trial.status = Trial::Status::Failed;
      trial.loss = std::numeric_limits<double>::infinity();
      trial.error = e.what();
    }
    trial.duration_s = std::chrono::duration<double>(clock::now() - t0).count();
    result.all.push_back(std::move(trial));

    // advance the cartesian counter, last dimension fastest
    bool advanced = false;
    for (std::size_t d = grid.size(); d-- > 0;) {
      if (++idx[d] < grid[d].second.size()) {
        advanced = true;
        break;
      }
      idx[d] = 0;
    }
    if (!advanced) break;
  }

  result.best = result.all.front();
  for (const Trial& t : result.all) {
    if (t.status == Trial::Status::Ok &&
        (result.best.status != Trial::Status::Ok || t.loss < result.best.loss)) {
      result.best = t;
    }
  }
  result.wall_time_s = std::chrono::duration<double>(clock::now() - start).count();
  return result;
}

Grid default_grid(Algorithm algo) {
  Grid g;
  auto ints = [](std::initializer_list<std::int64_t> v) {
    std::vector<ParamValue> out;
    for (auto x : v) out.emplace_back(x);
    return out;
  };
  auto reals = [](std::initializer_list<double> v) {
    std::vector<ParamValue> out;
    for (auto x : v) out.emplace_back(x);
    return out;
  };
  auto labels = [](std::initializer_list<const char*> v) {
    std::vector<ParamValue> out;
    for (auto x : v) out.emplace_back(std::string(x));
    return out;
  };
  switch (algo) {
    case Algorithm::Svd:
      g.emplace_back("n_factors", ints({50, 100, 150}));
      g.emplace_back("n_epochs", ints({20, 30}));
      g.emplace_back("lr", reals({0.002, 0.005, 0.01}));
      g.emplace_back("reg", reals({0.02, 0.1}));
      break;
    case Algorithm::KnnBaseline:
      g.emplace_back("k", ints({20, 40, 60}));
      g.emplace_back("sim", labels({"msd", "pearson_baseline"}));
      g.emplace_back("user_based", labels({"true", "false"}));
      break;
    default:
      throw Error("no default grid for " + std::string(algorithm_name(algo)));
  }
  return g;
}

}  // namespace autorec
