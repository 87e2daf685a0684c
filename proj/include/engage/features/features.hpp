#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "engage/features/schema.hpp"
#include "engage/ingest/record.hpp"
#include "json.hpp"

namespace engage::features {

// Language-code dictionary shared by the base and quoted language columns.
// Code 0 is reserved for ABSENT (no quoted side, or a code never seen when
// the dictionary was built); real categories get 1, 2, ... in first-seen
// order.
class CategoryDictionary {
 public:
  static constexpr int kAbsent = 0;

  static CategoryDictionary build(std::span<const ingest::TweetRecord> records);

  // Registers a category if new and returns its code.
  int add(const std::string& category);
  // Frozen lookup: unseen categories map to kAbsent.
  int encode(const std::string& category) const;

  const std::vector<std::string>& categories() const noexcept { return categories_; }
  std::size_t size() const noexcept { return categories_.size() + 1; }

  nlohmann::ordered_json to_json() const;
  static CategoryDictionary from_json(const nlohmann::json& j);

  bool operator==(const CategoryDictionary& o) const { return categories_ == o.categories_; }

 private:
  std::vector<std::string> categories_;
  std::unordered_map<std::string, int> codes_;
};

// N x 31 design matrix, row-major. Categorical and boolean columns hold
// their integer codes as exact doubles.
struct FeatureMatrix {
  FeatureSchema schema = FeatureSchema::standard();
  CategoryDictionary dictionary;
  std::vector<std::string> ids;
  std::vector<double> values;

  std::size_t rows() const noexcept { return ids.size(); }
  std::size_t cols() const noexcept { return schema.size(); }
  double at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }
  std::span<const double> row(std::size_t r) const { return {values.data() + r * cols(), cols()}; }
  std::vector<double> column(std::size_t c) const;

  // Rows at the given indices, in that order; shares schema and dictionary.
  FeatureMatrix select(std::span<const std::size_t> indices) const;
};

// Builds the dictionary from `records` (first-seen order), then encodes.
FeatureMatrix extract_features(std::span<const ingest::TweetRecord> records,
                               const FeatureSchema& schema = FeatureSchema::standard(), int threads = 1);

// Encodes with a frozen dictionary, e.g. one persisted with a model.
FeatureMatrix extract_features(std::span<const ingest::TweetRecord> records, const FeatureSchema& schema,
                               const CategoryDictionary& dictionary, int threads = 1);

// Untransformed source value of one column for one record (absent quoted
// side gives 0 / ABSENT / false).
double raw_feature_value(const ingest::TweetRecord& record, const FeatureDescriptor& column,
                         const CategoryDictionary& dictionary);

// Adjusted Fisher-Pearson skewness g1 * sqrt(n(n-1)) / (n-2).
// Throws kInvalidArgument for n < 3 or non-finite input, kDegenerate for a
// constant column.
double compute_skewness(std::span<const double> column);

struct SkewnessRow {
  std::string name;
  std::string transform;
  std::optional<double> raw;          // skewness of the untransformed source field
  std::optional<double> transformed;  // skewness after the column transform
};

// Table-style summary: every non-categorical column plus the three
// response counts (raw and ln(x+1)). Degenerate columns report nullopt.
std::vector<SkewnessRow> skewness_summary(std::span<const ingest::TweetRecord> records,
                                          const FeatureSchema& schema = FeatureSchema::standard());

// CSV with header "id,<columns...>[,label]".
void write_feature_csv(const FeatureMatrix& matrix, const std::filesystem::path& path,
                       const std::vector<double>* labels = nullptr);

}  // namespace engage::features
