#include "autorec/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <tuple>

#include "autorec/rng.hpp"

namespace autorec {

std::optional<FormatSpec> format_preset(const std::string& name) {
  FormatSpec f;
  if (name == "ml100k") {
    f.delimiter = '\t';
    f.n_columns = 4;
    f.scale = {1.0, 5.0};
    return f;
  }
  if (name == "jester") {
    f.delimiter = '\t';
    f.n_columns = 3;
    f.scale = {-10.0, 10.0};
    return f;
  }
  if (name == "bookcrossing") {
    f.delimiter = ';';
    f.n_columns = 3;
    f.has_header = true;
    f.scale = {1.0, 10.0};
    return f;
  }
  return std::nullopt;
}

namespace {

std::vector<std::string> split_fields(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delim, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

int intern(const std::string& raw, std::vector<std::string>& names,
           std::unordered_map<std::string, int>& index) {
  auto it = index.find(raw);
  if (it != index.end()) return it->second;
  const int id = static_cast<int>(names.size());
  names.push_back(raw);
  index.emplace(raw, id);
  return id;
}

}  // namespace

RatingsTable load_ratings(const std::string& path, const FormatSpec& format) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset file: " + path);

  RatingsTable table;
  table.scale = format.scale;
  // last occurrence of a (user, item) pair wins
  std::unordered_map<std::int64_t, std::size_t> seen;

  std::string line;
  std::size_t lineno = 0;
  bool header_pending = format.has_header;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header_pending) {
      header_pending = false;
      continue;
    }
    if (line.empty()) continue;

    const auto fields = split_fields(line, format.delimiter);
    if (static_cast<int>(fields.size()) != format.n_columns) {
      throw Error("line " + std::to_string(lineno) + ": expected " +
                  std::to_string(format.n_columns) + " fields, got " +
                  std::to_string(fields.size()));
    }

    const std::string& rating_str = fields[format.rating_col];
    double value = 0.0;
    const char* first = rating_str.data();
    const char* last = first + rating_str.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      throw Error("line " + std::to_string(lineno) +
                  ": non-numeric rating \"" + rating_str + "\"");
    }
    if (value < format.scale.min || value > format.scale.max) {
      throw Error("line " + std::to_string(lineno) + ": rating " +
                  rating_str + " outside declared scale [" +
                  std::to_string(format.scale.min) + ", " +
                  std::to_string(format.scale.max) + "]");
    }

    const int u = intern(fields[format.user_col], table.users, table.user_index);
    const int i = intern(fields[format.item_col], table.items, table.item_index);
    const std::int64_t key =
        static_cast<std::int64_t>(u) * (1LL << 32) + i;
    auto it = seen.find(key);
    if (it != seen.end()) {
      table.ratings[it->second].value = value;
    } else {
      seen.emplace(key, table.ratings.size());
      table.ratings.push_back({u, i, value});
    }
  }

  if (table.ratings.empty()) throw Error("empty dataset");
  return table;
}

RatingsTable make_table(
    const std::vector<std::tuple<std::string, std::string, double>>& triples,
    RatingScale scale) {
  RatingsTable table;
  table.scale = scale;
  std::unordered_map<std::int64_t, std::size_t> seen;
  for (const auto& [ru, ri, value] : triples) {
    if (value < scale.min || value > scale.max)
      throw Error("rating outside declared scale");
    const int u = intern(ru, table.users, table.user_index);
    const int i = intern(ri, table.items, table.item_index);
    const std::int64_t key = static_cast<std::int64_t>(u) * (1LL << 32) + i;
    auto it = seen.find(key);
    if (it != seen.end()) {
      table.ratings[it->second].value = value;
    } else {
      seen.emplace(key, table.ratings.size());
      table.ratings.push_back({u, i, value});
    }
  }
  if (table.ratings.empty()) throw Error("empty dataset");
  return table;
}

FoldPlan kfold_split(const RatingsTable& table, int k, std::uint64_t seed) {
  const std::size_t n = table.n_ratings();
  if (k < 2 || static_cast<std::size_t>(k) > n)
    throw Error("fold count k must satisfy 2 <= k <= n_ratings");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(combine_seed(seed, static_cast<std::uint64_t>(k)));
  rng.shuffle(order);

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.assignments.resize(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    plan.assignments[order[pos]] = static_cast<int>(pos % k);
  }
  return plan;
}

std::vector<std::string> sample_lines(const std::vector<std::string>& lines,
                                      std::size_t n, std::uint64_t seed) {
  if (n > lines.size()) throw Error("sample size exceeds row count");
  std::vector<std::size_t> order(lines.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(order);
  order.resize(n);
  std::sort(order.begin(), order.end());
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t idx : order) out.push_back(lines[idx]);
  return out;
}

}  // namespace autorec
