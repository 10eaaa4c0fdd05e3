#include "autorec/report.hpp"

#include <nlohmann/json.hpp>

#include "autorec/version.hpp"

namespace autorec {

using nlohmann::json;

json to_json(const ParamValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  if (const auto* d = std::get_if<double>(&v)) return *d;
  return std::get<std::string>(v);
}

json to_json(const ParamAssignment& a) {
  json j = json::object();
  for (const auto& [name, value] : a) j[name] = to_json(value);
  return j;
}

ParamAssignment assignment_from_json(const json& j) {
  if (!j.is_object()) throw Error("assignment must be a JSON object");
  ParamAssignment a;
  for (const auto& [name, value] : j.items()) {
    if (value.is_number_integer()) {
      a[name] = value.get<std::int64_t>();
    } else if (value.is_number_float()) {
      a[name] = value.get<double>();
    } else if (value.is_string()) {
      a[name] = value.get<std::string>();
    } else if (value.is_boolean()) {
      a[name] = std::string(value.get<bool>() ? "true" : "false");
    } else {
      throw Error("unsupported value for parameter \"" + name + "\"");
    }
  }
  return a;
}

json to_json(const Trial& t) {
  json j;
  j["index"] = t.index;
  j["assignment"] = to_json(t.assignment);
  j["status"] = t.status == Trial::Status::Ok ? "ok" : "failed";
  if (t.status == Trial::Status::Ok) {
    j["loss"] = t.loss;
  } else {
    j["error"] = t.error;
  }
  j["duration_s"] = t.duration_s;
  j["fit_time_s"] = t.fit_time_s;
  return j;
}

json to_json(const AlgorithmOutcome& o) {
  json j;
  j["name"] = algorithm_name(o.algo);
  j["status"] = outcome_status_name(o.status);
  j["n_trials"] = o.n_trials;
  j["mean_fit_time_s"] = o.mean_fit_time_s;
  if (o.best) j["best"] = to_json(*o.best);
  json trials = json::array();
  for (const Trial& t : o.history) trials.push_back(to_json(t));
  j["trials"] = std::move(trials);
  return j;
}

json to_json(const SelectionReport& r) {
  json j;
  j["baseline_loss"] = r.baseline_loss;
  json outcomes = json::object();
  for (const AlgorithmOutcome& o : r.outcomes) {
    outcomes[std::string(algorithm_name(o.algo))] = to_json(o);
  }
  j["outcomes"] = std::move(outcomes);
  j["winner"] = {{"name", r.winner_name},
                 {"assignment", to_json(r.winner_assignment)},
                 {"loss", r.winner_loss},
                 {"is_baseline", r.winner_is_baseline}};
  j["wall_time_s"] = r.wall_time_s;
  return j;
}

json to_json(const SelectionConfig& c) {
  json algos = json::array();
  for (Algorithm a : c.algorithms) algos.push_back(algorithm_name(a));
  return json{{"metric", metric_name(c.metric)},
              {"time_budget_s", c.time_budget_s},
              {"max_evals", c.max_evals},
              {"strategy", strategy_name(c.strategy)},
              {"gate_evals", c.gate_evals},
              {"algorithms", std::move(algos)},
              {"jobs", c.parallelism},
              {"seed", c.seed},
              {"cv_folds", c.cv_folds},
              {"tpe",
               {{"n_startup", c.tpe.n_startup},
                {"gamma", c.tpe.gamma},
                {"n_candidates", c.tpe.n_candidates}}}};
}

namespace {

ParamDomain domain_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw Error("parameter domain needs a \"type\" field");
  const std::string type = j.at("type").get<std::string>();
  if (type == "uniform")
    return ParamDomain::uniform(j.at("low").get<double>(),
                                j.at("high").get<double>());
  if (type == "loguniform")
    return ParamDomain::log_uniform(j.at("low").get<double>(),
                                    j.at("high").get<double>());
  if (type == "int")
    return ParamDomain::int_uniform(j.at("low").get<std::int64_t>(),
                                    j.at("high").get<std::int64_t>());
  if (type == "choice") {
    std::vector<ChoiceOption> options;
    for (const auto& opt : j.at("options")) {
      ChoiceOption o;
      if (opt.is_string()) {
        o.label = opt.get<std::string>();
      } else {
        o.label = opt.at("label").get<std::string>();
        if (opt.contains("space")) o.nested = space_from_json(opt.at("space"));
      }
      options.push_back(std::move(o));
    }
    return ParamDomain::choice(std::move(options));
  }
  throw Error("unknown domain type \"" + type + "\"");
}

}  // namespace

ParamSpace space_from_json(const json& j) {
  if (!j.is_object()) throw Error("space must be a JSON object");
  ParamSpace s;
  for (const auto& [name, domain] : j.items()) {
    s.params.emplace_back(name, domain_from_json(domain));
  }
  return s;
}

json to_json(const ParamSpace& s) {
  json j = json::object();
  for (const auto& [name, d] : s.params) {
    switch (d.kind) {
      case ParamDomain::Kind::Uniform:
        j[name] = {{"type", "uniform"}, {"low", d.low}, {"high", d.high}};
        break;
      case ParamDomain::Kind::LogUniform:
        j[name] = {{"type", "loguniform"}, {"low", d.low}, {"high", d.high}};
        break;
      case ParamDomain::Kind::IntUniform:
        j[name] = {{"type", "int"}, {"low", d.int_low}, {"high", d.int_high}};
        break;
      case ParamDomain::Kind::Choice: {
        json options = json::array();
        for (const auto& opt : d.options) {
          if (opt.nested.empty()) {
            options.push_back(opt.label);
          } else {
            options.push_back(
                {{"label", opt.label}, {"space", to_json(opt.nested)}});
          }
        }
        j[name] = {{"type", "choice"}, {"options", std::move(options)}};
        break;
      }
    }
  }
  return j;
}

Grid grid_from_json(const json& j) {
  if (!j.is_object()) throw Error("grid must be a JSON object");
  Grid g;
  for (const auto& [name, values] : j.items()) {
    if (!values.is_array() || values.empty())
      throw Error("grid key \"" + name + "\" must map to a non-empty array");
    std::vector<ParamValue> list;
    for (const auto& v : values) {
      if (v.is_number_integer()) {
        list.emplace_back(v.get<std::int64_t>());
      } else if (v.is_number_float()) {
        list.emplace_back(v.get<double>());
      } else if (v.is_string()) {
        list.emplace_back(v.get<std::string>());
      } else if (v.is_boolean()) {
        list.emplace_back(std::string(v.get<bool>() ? "true" : "false"));
      } else {
        throw Error("grid key \"" + name + "\" has an unsupported value");
      }
    }
    g.emplace_back(name, std::move(list));
  }
  return g;
}

json make_manifest(const std::string& command_line,
                   const SelectionConfig& config, const DatasetDigest& dataset,
                   const SelectionReport& report) {
  json j;
  j["tool_version"] = kVersion;
  j["command"] = command_line;
  j["config"] = to_json(config);
  j["dataset"] = {{"path", dataset.path},
                  {"n_users", dataset.n_users},
                  {"n_items", dataset.n_items},
                  {"n_ratings", dataset.n_ratings},
                  {"scale", {dataset.scale.min, dataset.scale.max}}};
  const json rj = to_json(report);
  j["baseline_loss"] = rj.at("baseline_loss");
  j["outcomes"] = rj.at("outcomes");
  j["winner"] = rj.at("winner");
  j["wall_time_s"] = rj.at("wall_time_s");
  return j;
}

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

}  // namespace autorec
