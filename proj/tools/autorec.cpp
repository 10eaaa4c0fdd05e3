// Command-line driver: auto / evaluate / grid / sample.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "autorec/orchestrate.hpp"
#include "autorec/report.hpp"
#include "autorec/trainset.hpp"
#include "autorec/version.hpp"

namespace {

using namespace autorec;
using nlohmann::json;

constexpr int kExitBadArgs = 2;
constexpr int kExitDatasetError = 3;
constexpr int kExitSelectionFailed = 4;

struct DatasetArgs {
  std::string path;
  std::string preset;
  std::string sep;
  std::string cols;
  std::string scale;
};

void add_dataset_flags(CLI::App* cmd, DatasetArgs& args) {
  cmd->add_option("--data", args.path, "dataset file")->required();
  cmd->add_option("--preset", args.preset,
                  "format preset: ml100k, jester, bookcrossing");
  cmd->add_option("--sep", args.sep, "field delimiter (e.g. 'tab', ';')");
  cmd->add_option("--cols", args.cols,
                  "column order, e.g. user,item,rating,timestamp");
  cmd->add_option("--scale", args.scale, "rating scale, e.g. 1,5");
}

FormatSpec resolve_format(const DatasetArgs& args) {
  FormatSpec fmt;
  if (!args.preset.empty()) {
    auto preset = format_preset(args.preset);
    if (!preset) throw Error("unknown preset \"" + args.preset + "\"");
    fmt = *preset;
  }
  if (!args.sep.empty()) {
    if (args.sep == "tab" || args.sep == "\\t") {
      fmt.delimiter = '\t';
    } else if (args.sep.size() == 1) {
      fmt.delimiter = args.sep[0];
    } else {
      throw Error("delimiter must be a single character or 'tab'");
    }
  }
  if (!args.cols.empty()) {
    std::stringstream ss(args.cols);
    std::string field;
    int pos = 0;
    fmt.user_col = fmt.item_col = fmt.rating_col = -1;
    while (std::getline(ss, field, ',')) {
      if (field == "user") fmt.user_col = pos;
      if (field == "item") fmt.item_col = pos;
      if (field == "rating") fmt.rating_col = pos;
      ++pos;
    }
    fmt.n_columns = pos;
    if (fmt.user_col < 0 || fmt.item_col < 0 || fmt.rating_col < 0)
      throw Error("--cols must name user, item and rating positions");
  }
  if (!args.scale.empty()) {
    double lo, hi;
    char comma;
    std::stringstream ss(args.scale);
    if (!(ss >> lo >> comma >> hi) || comma != ',' || !(lo < hi))
      throw Error("--scale must be min,max with min < max");
    fmt.scale = {lo, hi};
  }
  return fmt;
}

DatasetDigest digest_of(const std::string& path, const RatingsTable& table) {
  DatasetDigest d;
  d.path = path;
  d.n_users = table.n_users();
  d.n_items = table.n_items();
  d.n_ratings = table.n_ratings();
  d.scale = table.scale;
  return d;
}

std::vector<Algorithm> parse_algos(const std::string& list) {
  if (list.empty())
    return {kAllAlgorithms.begin(), kAllAlgorithms.end()};
  std::vector<Algorithm> out;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ',')) {
    auto algo = algorithm_from_name(name);
    if (!algo)
      throw Error("unknown algorithm \"" + name + "\"; valid names: " +
                  valid_algorithm_names());
    out.push_back(*algo);
  }
  if (out.empty()) throw Error("--algos selected no algorithms");
  return out;
}

std::string format_duration(double seconds) {
  const int total = static_cast<int>(seconds);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%02d:%02d:%02d", total / 3600,
                (total / 60) % 60, total % 60);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed JSON in ") + path + ": " + e.what());
  }
  return j;
}

int cmd_auto(const DatasetArgs& data_args, SelectionConfig& config,
             const std::string& algos, const std::string& space_path,
             const std::string& out_path, const std::string& command_line) {
  try {
    config.algorithms = parse_algos(algos);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  }

  RatingsTable table;
  try {
    table = load_ratings(data_args.path, resolve_format(data_args));
  } catch (const Error& e) {
    std::cerr << "dataset error: " << e.what() << "\n";
    return kExitDatasetError;
  }

  config.on_trial = [](Algorithm algo, const Trial& t, double best) {
    std::cerr << algorithm_name(algo) << " trial " << t.index << ": ";
    if (t.status == Trial::Status::Ok) {
      std::cerr << "loss " << t.loss;
    } else {
      std::cerr << "failed (" << t.error << ")";
    }
    std::cerr << ", best " << best << "\n";
  };

  SelectionReport report;
  try {
    const double baseline =
        compute_baseline(table, config.metric, config.cv_folds, config.seed);
    CvEvaluator evaluator(table, config.cv_folds, config.metric, config.seed);
    if (!space_path.empty()) {
      const json spaces = load_json_file(space_path);
      if (!spaces.is_object())
        throw Error("space file must map algorithm names to spaces");
      for (const auto& [name, space_json] : spaces.items()) {
        auto algo = algorithm_from_name(name);
        if (!algo)
          throw Error("space file: unknown algorithm \"" + name + "\"");
        evaluator.override_space(*algo, space_from_json(space_json));
      }
    }
    report = run_selection(config, evaluator, baseline);
  } catch (const std::exception& e) {
    std::cerr << "selection failed: " << e.what() << "\n";
    return kExitSelectionFailed;
  }

  const json manifest = make_manifest(command_line, config,
                                      digest_of(data_args.path, table), report);
  write_file(out_path, dump_report(manifest));

  std::cout << "baseline (" << metric_name(config.metric)
            << "): " << report.baseline_loss << "\n\n";
  std::cout << "algorithm        status      trials  best loss\n";
  for (const AlgorithmOutcome& o : report.outcomes) {
    char line[128];
    std::snprintf(line, sizeof(line), "%-16s %-10s %6d  ",
                  std::string(algorithm_name(o.algo)).c_str(),
                  std::string(outcome_status_name(o.status)).c_str(),
                  o.n_trials);
    std::cout << line;
    if (o.best) {
      std::cout << o.best->loss;
    } else {
      std::cout << "-";
    }
    std::cout << "\n";
  }
  std::cout << "\nwinner: " << report.winner_name << " loss "
            << report.winner_loss
            << (report.winner_is_baseline ? " (baseline fallback)" : "")
            << "\nparams: " << to_json(report.winner_assignment).dump()
            << "\nreport: " << out_path << "\n";
  return 0;
}

int cmd_evaluate(const DatasetArgs& data_args, const std::string& algo_name,
                 const std::vector<std::string>& param_kvs, int cv_folds,
                 std::uint64_t seed) {
  const auto algo = algorithm_from_name(algo_name);
  if (!algo) {
    std::cerr << "unknown algorithm \"" << algo_name
              << "\"; valid names: " << valid_algorithm_names() << "\n";
    return kExitBadArgs;
  }
  ParamAssignment params;
  for (const std::string& kv : param_kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "--param expects name=value, got \"" << kv << "\"\n";
      return kExitBadArgs;
    }
    const std::string name = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    try {
      std::size_t used = 0;
      if (value.find_first_not_of("-0123456789") == std::string::npos) {
        params[name] = static_cast<std::int64_t>(std::stoll(value, &used));
      } else {
        params[name] = std::stod(value, &used);
      }
      if (used != value.size()) params[name] = value;
    } catch (...) {
      params[name] = value;
    }
  }

  RatingsTable table;
  try {
    table = load_ratings(data_args.path, resolve_format(data_args));
  } catch (const Error& e) {
    std::cerr << "dataset error: " << e.what() << "\n";
    return kExitDatasetError;
  }

  const FoldPlan folds = kfold_split(table, cv_folds, seed);
  const FoldPredictions preds =
      cv_predictions(*algo, params, table, folds, seed);
  double rmse_sum = 0.0, mae_sum = 0.0;
  for (const auto& pairs : preds.per_fold) {
    rmse_sum += rmse(pairs);
    mae_sum += mae(pairs);
  }
  const double k = static_cast<double>(folds.k);
  std::cout << algorithm_name(*algo) << " (" << folds.k << "-fold CV)\n"
            << "RMSE: " << rmse_sum / k << "\n"
            << "MAE:  " << mae_sum / k << "\n"
            << "Time: " << format_duration(preds.fit_time_s + preds.test_time_s)
            << " (" << preds.fit_time_s + preds.test_time_s << " s)\n";
  return 0;
}

int cmd_grid(const DatasetArgs& data_args, const std::string& algo_name,
             const std::string& grid_path, int cv_folds, std::uint64_t seed,
             const std::string& out_path) {
  const auto algo = algorithm_from_name(algo_name);
  if (!algo) {
    std::cerr << "unknown algorithm \"" << algo_name
              << "\"; valid names: " << valid_algorithm_names() << "\n";
    return kExitBadArgs;
  }
  Grid grid;
  try {
    grid = grid_path.empty() ? default_grid(*algo)
                             : grid_from_json(load_json_file(grid_path));
  } catch (const Error& e) {
    std::cerr << "grid error: " << e.what() << "\n";
    return kExitBadArgs;
  }

  RatingsTable table;
  try {
    table = load_ratings(data_args.path, resolve_format(data_args));
  } catch (const Error& e) {
    std::cerr << "dataset error: " << e.what() << "\n";
    return kExitDatasetError;
  }

  const FoldPlan folds = kfold_split(table, cv_folds, seed);
  GridResult result;
  try {
    result = grid_search(*algo, grid, table, folds, Metric::Rmse, seed);
  } catch (const Error& e) {
    std::cerr << "grid error: " << e.what() << "\n";
    return kExitBadArgs;
  }

  json j;
  j["tool_version"] = kVersion;
  j["algorithm"] = algorithm_name(*algo);
  j["dataset"] = {{"path", data_args.path},
                  {"n_ratings", table.n_ratings()}};
  j["cv_folds"] = cv_folds;
  j["seed"] = seed;
  json trials = json::array();
  for (const Trial& t : result.all) trials.push_back(to_json(t));
  j["trials"] = std::move(trials);
  j["best"] = to_json(result.best);
  j["wall_time_s"] = result.wall_time_s;
  if (!out_path.empty()) write_file(out_path, dump_report(j));

  std::cout << "grid points: " << result.all.size() << "\n"
            << "best loss:   " << result.best.loss << "\n"
            << "best params: " << to_json(result.best.assignment).dump() << "\n"
            << "wall time:   " << format_duration(result.wall_time_s) << " ("
            << result.wall_time_s << " s)\n";
  return 0;
}

int cmd_sample(const std::string& in_path, std::size_t n, std::uint64_t seed,
               const std::string& out_path) {
  std::ifstream in(in_path);
  if (!in) {
    std::cerr << "dataset error: cannot open " << in_path << "\n";
    return kExitDatasetError;
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  if (n > lines.size()) {
    std::cerr << "sample size " << n << " exceeds row count " << lines.size()
              << "\n";
    return kExitBadArgs;
  }
  const auto sampled = sample_lines(lines, n, seed);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return kExitDatasetError;
  }
  for (const auto& l : sampled) out << l << "\n";
  std::cout << "wrote " << sampled.size() << " rows to " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"automated recommender-system selection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string command_line;
  for (int i = 0; i < argc; ++i) {
    if (i) command_line += ' ';
    command_line += argv[i];
  }

  // auto
  auto* auto_cmd = app.add_subcommand("auto", "search algorithms and tune them");
  DatasetArgs auto_data;
  add_dataset_flags(auto_cmd, auto_data);
  std::string metric = "rmse", strategy = "tpe", algos, space_path;
  std::string out_path = "report.json";
  SelectionConfig config;
  auto_cmd->add_option("--metric", metric, "rmse or mae");
  auto_cmd->add_option("--strategy", strategy, "tpe or random");
  auto_cmd->add_option("--time-budget", config.time_budget_s,
                       "global wall-clock budget in seconds");
  auto_cmd->add_option("--max-evals", config.max_evals,
                       "max trials per algorithm");
  auto_cmd->add_option("--gate-evals", config.gate_evals,
                       "trials before baseline gating");
  auto_cmd->add_option("--cv-folds", config.cv_folds, "folds per trial");
  auto_cmd->add_option("--jobs", config.parallelism, "parallel workers");
  auto_cmd->add_option("--seed", config.seed, "master seed");
  auto_cmd->add_option("--algos", algos, "comma-separated algorithm subset");
  auto_cmd->add_option("--out", out_path, "report file path");
  auto_cmd->add_option("--space", space_path, "hyperparameter space overrides");

  // evaluate
  auto* eval_cmd =
      app.add_subcommand("evaluate", "cross-validate one algorithm");
  DatasetArgs eval_data;
  add_dataset_flags(eval_cmd, eval_data);
  std::string eval_algo;
  std::vector<std::string> eval_params;
  int eval_folds = 5;
  std::uint64_t eval_seed = 0;
  eval_cmd->add_option("--algo", eval_algo, "algorithm name")->required();
  eval_cmd->add_option("--param", eval_params, "name=value (repeatable)");
  eval_cmd->add_option("--cv-folds", eval_folds, "fold count");
  eval_cmd->add_option("--seed", eval_seed, "seed");

  // grid
  auto* grid_cmd = app.add_subcommand("grid", "exhaustive grid search");
  DatasetArgs grid_data;
  add_dataset_flags(grid_cmd, grid_data);
  std::string grid_algo, grid_path, grid_out;
  int grid_folds = 3;
  std::uint64_t grid_seed = 0;
  grid_cmd->add_option("--algo", grid_algo, "algorithm name")->required();
  grid_cmd->add_option("--grid", grid_path, "grid file (JSON)");
  grid_cmd->add_option("--cv-folds", grid_folds, "fold count");
  grid_cmd->add_option("--seed", grid_seed, "seed");
  grid_cmd->add_option("--out", grid_out, "report file path");

  // sample
  auto* sample_cmd =
      app.add_subcommand("sample", "seeded uniform row sample of a dataset");
  std::string sample_in, sample_out;
  std::size_t sample_n = 0;
  std::uint64_t sample_seed = 0;
  sample_cmd->add_option("--data", sample_in, "input file")->required();
  sample_cmd->add_option("--n", sample_n, "rows to keep")->required();
  sample_cmd->add_option("--seed", sample_seed, "seed");
  sample_cmd->add_option("--out", sample_out, "output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitBadArgs;
  }

  try {
    if (auto_cmd->parsed()) {
      const auto m = metric_from_name(metric);
      const auto s = strategy_from_name(strategy);
      if (!m || !s) {
        std::cerr << "error: --metric must be rmse|mae, --strategy tpe|random\n";
        return kExitBadArgs;
      }
      config.metric = *m;
      config.strategy = *s;
      if (config.time_budget_s <= 0.0 && config.max_evals <= 0) {
        std::cerr << "error: set --time-budget and/or --max-evals\n";
        return kExitBadArgs;
      }
      return cmd_auto(auto_data, config, algos, space_path, out_path,
                      command_line);
    }
    if (eval_cmd->parsed())
      return cmd_evaluate(eval_data, eval_algo, eval_params, eval_folds,
                          eval_seed);
    if (grid_cmd->parsed())
      return cmd_grid(grid_data, grid_algo, grid_path, grid_folds, grid_seed,
                      grid_out);
    if (sample_cmd->parsed())
      return cmd_sample(sample_in, sample_n, sample_seed, sample_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  }
  return kExitBadArgs;
}
