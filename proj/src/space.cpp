#include "autorec/space.hpp"

#include <cmath>

#include "autorec/dataset.hpp"

namespace autorec {

const ParamDomain* ParamSpace::find(const std::string& name) const {
  for (const auto& [n, d] : params) {
    if (n == name) return &d;
  }
  return nullptr;
}

ParamDomain ParamDomain::uniform(double low, double high) {
  if (!(low < high)) throw Error("Uniform domain requires low < high");
  ParamDomain d;
  d.kind = Kind::Uniform;
  d.low = low;
  d.high = high;
  return d;
}

ParamDomain ParamDomain::log_uniform(double low, double high) {
  if (!(low > 0.0 && low < high))
    throw Error("LogUniform domain requires 0 < low < high");
  ParamDomain d;
  d.kind = Kind::LogUniform;
  d.low = low;
  d.high = high;
  return d;
}

ParamDomain ParamDomain::int_uniform(std::int64_t low, std::int64_t high) {
  if (!(low < high)) throw Error("IntUniform domain requires low < high");
  ParamDomain d;
  d.kind = Kind::IntUniform;
  d.int_low = low;
  d.int_high = high;
  return d;
}

ParamDomain ParamDomain::choice(std::vector<ChoiceOption> options) {
  if (options.empty()) throw Error("Choice domain requires >= 1 option");
  ParamDomain d;
  d.kind = Kind::Choice;
  d.options = std::move(options);
  return d;
}

bool ParamDomain::contains(const ParamValue& v) const {
  switch (kind) {
    case Kind::Uniform:
    case Kind::LogUniform: {
      const double* x = std::get_if<double>(&v);
      return x && *x >= low && *x <= high;
    }
    case Kind::IntUniform: {
      const std::int64_t* x = std::get_if<std::int64_t>(&v);
      return x && *x >= int_low && *x <= int_high;
    }
    case Kind::Choice: {
      const std::string* label = std::get_if<std::string>(&v);
      if (!label) return false;
      for (const auto& opt : options) {
        if (opt.label == *label) return true;
      }
      return false;
    }
  }
  return false;
}

namespace {

void sample_into(const ParamSpace& space, Rng& rng, ParamAssignment& out) {
  for (const auto& [name, domain] : space.params) {
    switch (domain.kind) {
      case ParamDomain::Kind::Uniform:
        out[name] = rng.uniform(domain.low, domain.high);
        break;
      case ParamDomain::Kind::LogUniform:
        out[name] =
            std::exp(rng.uniform(std::log(domain.low), std::log(domain.high)));
        break;
      case ParamDomain::Kind::IntUniform:
        out[name] = rng.uniform_int(domain.int_low, domain.int_high);
        break;
      case ParamDomain::Kind::Choice: {
        const auto& opt = domain.options[rng.index(domain.options.size())];
        out[name] = opt.label;
        sample_into(opt.nested, rng, out);
        break;
      }
    }
  }
}

// Collects the names on the active path and checks domain membership.
bool walk_active(const ParamSpace& space, const ParamAssignment& assignment,
                 std::size_t& matched) {
  for (const auto& [name, domain] : space.params) {
    auto it = assignment.find(name);
    if (it == assignment.end() || !domain.contains(it->second)) return false;
    ++matched;
    if (domain.kind == ParamDomain::Kind::Choice) {
      const auto& label = std::get<std::string>(it->second);
      for (const auto& opt : domain.options) {
        if (opt.label == label) {
          if (!walk_active(opt.nested, assignment, matched)) return false;
          break;
        }
      }
    }
  }
  return true;
}

}  // namespace

ParamAssignment sample(const ParamSpace& space, Rng& rng) {
  ParamAssignment out;
  sample_into(space, rng, out);
  return out;
}

bool validates(const ParamSpace& space, const ParamAssignment& assignment) {
  std::size_t matched = 0;
  if (!walk_active(space, assignment, matched)) return false;
  return matched == assignment.size();  // nothing off the active path
}

ParamSpace default_space(Algorithm algo) {
  using D = ParamDomain;
  ParamSpace s;
  switch (algo) {
    case Algorithm::NormalPredictor:
    case Algorithm::SlopeOne:
      break;  // no hyperparameters
    case Algorithm::BaselineOnly: {
      ParamSpace als;
      als.params.emplace_back("epochs", D::int_uniform(5, 30));
      als.params.emplace_back("reg_u", D::uniform(1, 30));
      als.params.emplace_back("reg_i", D::uniform(1, 25));
      ParamSpace sgd;
      sgd.params.emplace_back("lr", D::log_uniform(1e-4, 1e-1));
      sgd.params.emplace_back("reg", D::log_uniform(1e-5, 0.1));
      sgd.params.emplace_back("epochs", D::int_uniform(5, 50));
      s.params.emplace_back(
          "method", D::choice({{"als", std::move(als)}, {"sgd", std::move(sgd)}}));
      break;
    }
    case Algorithm::KnnBasic:
    case Algorithm::KnnWithMeans:
    case Algorithm::KnnWithZScore:
    case Algorithm::KnnBaseline: {
      s.params.emplace_back("k", D::int_uniform(10, 100));
      s.params.emplace_back("min_k", D::int_uniform(1, 5));
      ParamSpace shrunk;
      shrunk.params.emplace_back("shrinkage", D::uniform(0, 200));
      s.params.emplace_back("sim", D::choice({{"cosine", {}},
                                              {"msd", {}},
                                              {"pearson", {}},
                                              {"pearson_baseline", std::move(shrunk)}}));
      s.params.emplace_back("user_based",
                            D::choice({{"true", {}}, {"false", {}}}));
      break;
    }
    case Algorithm::Svd:
    case Algorithm::Svdpp:
      s.params.emplace_back("n_factors", D::int_uniform(2, 100));
      s.params.emplace_back("n_epochs", D::int_uniform(10, 60));
      s.params.emplace_back("lr", D::log_uniform(1e-4, 1e-1));
      s.params.emplace_back("reg", D::log_uniform(1e-4, 0.5));
      break;
    case Algorithm::Nmf:
      s.params.emplace_back("n_factors", D::int_uniform(5, 50));
      s.params.emplace_back("n_epochs", D::int_uniform(20, 100));
      s.params.emplace_back("reg_pu", D::log_uniform(1e-3, 0.5));
      s.params.emplace_back("reg_qi", D::log_uniform(1e-3, 0.5));
      break;
    case Algorithm::CoClustering:
      s.params.emplace_back("n_cltr_u", D::int_uniform(2, 10));
      s.params.emplace_back("n_cltr_i", D::int_uniform(2, 10));
      s.params.emplace_back("n_epochs", D::int_uniform(10, 50));
      break;
  }
  return s;
}

double get_real(const ParamAssignment& a, const std::string& name,
                double fallback) {
  auto it = a.find(name);
  if (it == a.end()) return fallback;
  if (const double* x = std::get_if<double>(&it->second)) return *x;
  if (const std::int64_t* x = std::get_if<std::int64_t>(&it->second))
    return static_cast<double>(*x);
  throw Error("parameter \"" + name + "\" is not numeric");
}

std::int64_t get_int(const ParamAssignment& a, const std::string& name,
                     std::int64_t fallback) {
  auto it = a.find(name);
  if (it == a.end()) return fallback;
  if (const std::int64_t* x = std::get_if<std::int64_t>(&it->second)) return *x;
  if (const double* x = std::get_if<double>(&it->second))
    return static_cast<std::int64_t>(std::llround(*x));
  throw Error("parameter \"" + name + "\" is not an integer");
}

std::string get_label(const ParamAssignment& a, const std::string& name,
                      const std::string& fallback) {
  auto it = a.find(name);
  if (it == a.end()) return fallback;
  if (const std::string* s = std::get_if<std::string>(&it->second)) return *s;
  throw Error("parameter \"" + name + "\" is not a choice label");
}

bool get_flag(const ParamAssignment& a, const std::string& name, bool fallback) {
  const std::string label = get_label(a, name, fallback ? "true" : "false");
  if (label == "true") return true;
  if (label == "false") return false;
  throw Error("parameter \"" + name + "\" is not a boolean label");
}

}  // namespace autorec
