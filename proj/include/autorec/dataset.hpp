#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace autorec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RatingScale {
  double min = 1.0;
  double max = 5.0;

  double clip(double v) const {
    return v < min ? min : (v > max ? max : v);
  }
};

struct Rating {
  int user;  // inner id
  int item;  // inner id
  double value;
};

// Immutable once loaded; inner ids are contiguous and assigned in
// first-appearance order.
struct RatingsTable {
  std::vector<std::string> users;  // inner -> raw
  std::vector<std::string> items;
  std::unordered_map<std::string, int> user_index;  // raw -> inner
  std::unordered_map<std::string, int> item_index;
  std::vector<Rating> ratings;
  RatingScale scale;

  int n_users() const { return static_cast<int>(users.size()); }
  int n_items() const { return static_cast<int>(items.size()); }
  std::size_t n_ratings() const { return ratings.size(); }
};

struct FormatSpec {
  char delimiter = '\t';
  int user_col = 0;
  int item_col = 1;
  int rating_col = 2;
  int n_columns = 4;   // hard error on any other field count
  bool has_header = false;
  RatingScale scale;
};

// Presets: ml100k, jester, bookcrossing.
std::optional<FormatSpec> format_preset(const std::string& name);

RatingsTable load_ratings(const std::string& path, const FormatSpec& format);

// Builds a table directly from triples (tests, synthetic data).
RatingsTable make_table(
    const std::vector<std::tuple<std::string, std::string, double>>& triples,
    RatingScale scale);

struct FoldPlan {
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<int> assignments;  // per rating index, in [0, k)
};

FoldPlan kfold_split(const RatingsTable& table, int k, std::uint64_t seed);

// Seeded uniform sample of n lines without replacement; output keeps the
// original line order. Used by the `sample` subcommand.
std::vector<std::string> sample_lines(const std::vector<std::string>& lines,
                                      std::size_t n, std::uint64_t seed);

}  // namespace autorec
