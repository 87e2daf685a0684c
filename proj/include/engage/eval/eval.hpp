#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "engage/features/labels.hpp"
#include "engage/gbrt/config.hpp"
#include "engage/ingest/record.hpp"
#include "engage/signal/signal.hpp"
#include "json.hpp"

namespace engage::eval {

using Folds = std::vector<std::vector<std::size_t>>;

// Shuffles [0, n) with the seed and deals it into k folds; the first
// n % k folds get one extra index. Each fold is returned sorted.
// Throws kInvalidArgument unless 2 <= k <= n.
Folds kfold_split(std::size_t n, std::size_t k, std::uint64_t seed);

struct HoldoutSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  std::vector<std::size_t> validation;
};

// Seeded 70/20/10 partition (fractions configurable).
HoldoutSplit holdout_split(std::size_t n, std::uint64_t seed, double train_fraction = 0.7,
                           double test_fraction = 0.2);

enum class Protocol { kKFold, kHoldout };

struct ExperimentConfig {
  features::Target target = features::Target::kEngagement;
  gbrt::GbrtConfig gbrt;
  std::size_t folds = 3;
  std::uint64_t seed = 0;
  Protocol protocol = Protocol::kKFold;
  // When set, engagement labels use these params for every fold. When
  // empty, params are fitted on each fold's training rows.
  std::optional<signal::SignalParams> fixed_signal;

  nlohmann::ordered_json to_json() const;
};

struct FoldMetrics {
  double r2 = 0.0;
  double rho = 0.0;
  double rmse = 0.0;
  // Set when R^2 or rho is undefined (constant labels or predictions);
  // the undefined metric is reported as 0.
  bool degenerate = false;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
};

struct EvalReport {
  std::string target;
  std::vector<FoldMetrics> folds;
  double mean_r2 = 0.0;
  double mean_rho = 0.0;
  double mean_rmse = 0.0;
  std::size_t fold_count = 0;
  std::string config_fingerprint;
  std::string corpus_fingerprint;
  std::uint64_t seed = 0;
  nlohmann::ordered_json config;
};

// Row indices that fed each training-side computation of one fold.
struct FoldTrace {
  std::size_t fold = 0;
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
  std::vector<std::size_t> signal_rows;
  std::vector<std::size_t> dictionary_rows;
  std::vector<std::size_t> binning_rows;
};

using FoldObserver = std::function<void(const FoldTrace&)>;

// Metrics on the held-out rows use the transformed label scale
// (ln(count + 1) or E1). Errors inside a fold are rethrown with the fold
// index prepended.
EvalReport run_experiment(std::span<const ingest::TweetRecord> records, const ExperimentConfig& config,
                          const FoldObserver& observer = {});

// Metrics for one fold's predictions.
FoldMetrics score_fold(std::span<const double> y, std::span<const double> y_hat);

std::string corpus_fingerprint(std::span<const ingest::TweetRecord> records);

nlohmann::ordered_json to_json(const EvalReport& report);
EvalReport report_from_json(const nlohmann::json& j);
std::string to_csv(const EvalReport& report);

enum class Metric { kR2, kRho, kRmse };
std::string_view to_string(Metric metric);
Metric parse_metric(std::string_view text);

struct ComparisonRow {
  std::string target;
  double r2 = 0.0;
  double rho = 0.0;
  double rmse = 0.0;
};

// Sorted best-first by the metric (descending R^2 / rho, ascending RMSE);
// the sort is stable so ties keep input order. Throws kInvalidArgument for
// fewer than two reports and kFingerprintMismatch when the reports come
// from different corpora.
std::vector<ComparisonRow> compare_reports(std::span<const EvalReport> reports, Metric metric);

nlohmann::ordered_json comparison_to_json(std::span<const ComparisonRow> rows, Metric metric);
std::string comparison_to_csv(std::span<const ComparisonRow> rows);

}  // namespace engage::eval
