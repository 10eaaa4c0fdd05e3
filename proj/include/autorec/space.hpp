#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "autorec/algorithm.hpp"
#include "autorec/rng.hpp"

namespace autorec {

// A concrete parameter value: IntUniform yields int64, Uniform/LogUniform
// yield double, Choice yields the selected label.
using ParamValue = std::variant<std::int64_t, double, std::string>;

struct ChoiceOption;

struct ParamDomain {
  enum class Kind { Uniform, LogUniform, IntUniform, Choice };
  Kind kind = Kind::Uniform;
  double low = 0.0;
  double high = 1.0;        // Uniform / LogUniform bounds
  std::int64_t int_low = 0;
  std::int64_t int_high = 1;  // IntUniform bounds, inclusive
  std::vector<ChoiceOption> options;

  static ParamDomain uniform(double low, double high);
  static ParamDomain log_uniform(double low, double high);
  static ParamDomain int_uniform(std::int64_t low, std::int64_t high);
  static ParamDomain choice(std::vector<ChoiceOption> options);

  bool contains(const ParamValue& v) const;
};

struct ParamSpace {
  std::vector<std::pair<std::string, ParamDomain>> params;

  bool empty() const { return params.empty(); }
  const ParamDomain* find(const std::string& name) const;
};

struct ChoiceOption {
  std::string label;
  ParamSpace nested;  // may be empty
};

// name -> value over exactly the active tree path; std::map keeps
// serialization order deterministic.
using ParamAssignment = std::map<std::string, ParamValue>;

ParamAssignment sample(const ParamSpace& space, Rng& rng);

// Active-path validation: every parameter on the path selected by the
// assignment's Choice values is present, in-domain, and nothing else is.
bool validates(const ParamSpace& space, const ParamAssignment& assignment);

ParamSpace default_space(Algorithm algo);

// Assignment accessors with defaults (missing key -> fallback).
double get_real(const ParamAssignment& a, const std::string& name, double fallback);
std::int64_t get_int(const ParamAssignment& a, const std::string& name,
                     std::int64_t fallback);
std::string get_label(const ParamAssignment& a, const std::string& name,
                      const std::string& fallback);
bool get_flag(const ParamAssignment& a, const std::string& name, bool fallback);

}  // namespace autorec
