#include <cmath>
#include <cstdio>

#include "engage/error.hpp"
#include "engage/eval/eval.hpp"
#include "engage/features/features.hpp"
#include "engage/gbrt/gbrt.hpp"
#include "engage/parallel.hpp"
#include "engage/stats/stats.hpp"

namespace engage::eval {

using ingest::TweetRecord;

nlohmann::ordered_json ExperimentConfig::to_json() const {
  nlohmann::ordered_json j;
  j["target"] = features::to_string(target);
  j["protocol"] = protocol == Protocol::kKFold ? "kfold" : "holdout";
  j["folds"] = protocol == Protocol::kKFold ? folds : 1;
  j["seed"] = seed;
  j["signal"] = fixed_signal ? signal::to_json(*fixed_signal) : nlohmann::ordered_json("fold-local");
  j["gbrt"] = gbrt.to_json();
  return j;
}

std::string corpus_fingerprint(std::span<const TweetRecord> records) {
  std::uint64_t h = fnv1a64("corpus");
  char buf[96];
  for (const auto& r : records) {
    h = fnv1a64(r.id, h);
    std::snprintf(buf, sizeof(buf), "|%.0f|%.0f|%.0f;", r.response.retweets, r.response.replies,
                  r.response.favorites);
    h = fnv1a64(buf, h);
  }
  return hex64(h);
}

FoldMetrics score_fold(std::span<const double> y, std::span<const double> y_hat) {
  FoldMetrics m;
  m.test_rows = y.size();
  m.rmse = stats::rmse(y, y_hat);
  try {
    m.r2 = stats::r_squared(y, y_hat);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kDegenerate) throw;
    m.r2 = 0.0;
    m.degenerate = true;
  }
  try {
    m.rho = stats::spearman_rho(y, y_hat);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kDegenerate) throw;
    m.rho = 0.0;
    m.degenerate = true;
  }
  return m;
}

namespace {

std::vector<TweetRecord> gather(std::span<const TweetRecord> records, std::span<const std::size_t> idx) {
  std::vector<TweetRecord> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(records[i]);
  return out;
}

FoldMetrics run_fold(std::span<const TweetRecord> records, const std::vector<std::size_t>& train_idx,
                     const std::vector<std::size_t>& test_idx, const ExperimentConfig& config, std::size_t fold,
                     const FoldObserver& observer) {
  const auto train_records = gather(records, train_idx);
  const auto test_records = gather(records, test_idx);

  FoldTrace trace;
  trace.fold = fold;
  trace.train_rows = train_idx;
  trace.test_rows = test_idx;

  std::optional<signal::SignalParams> params = config.fixed_signal;
  if (config.target == features::Target::kEngagement && !params) {
    std::vector<ingest::EngagementVector> responses;
    responses.reserve(train_records.size());
    for (const auto& r : train_records) responses.push_back(r.response);
    params = signal::fit_signal(responses);
    trace.signal_rows = train_idx;
  }

  const auto dictionary = features::CategoryDictionary::build(train_records);
  trace.dictionary_rows = train_idx;
  const auto train_x = features::extract_features(train_records, features::FeatureSchema::standard(), dictionary,
                                                  config.gbrt.threads);
  const auto test_x = features::extract_features(test_records, features::FeatureSchema::standard(), dictionary,
                                                 config.gbrt.threads);
  trace.binning_rows = train_idx;

  const auto train_y = features::label_vector(train_records, config.target, params);
  const auto test_y = features::label_vector(test_records, config.target, params);

  if (observer) observer(trace);

  const auto model = gbrt::train(train_x, train_y, config.gbrt);
  const auto pred = gbrt::predict(model, test_x);
  FoldMetrics m = score_fold(test_y, pred);
  m.train_rows = train_idx.size();
  return m;
}

}  // namespace

EvalReport run_experiment(std::span<const TweetRecord> records, const ExperimentConfig& config,
                          const FoldObserver& observer) {
  config.gbrt.validate();
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> plan;
  if (config.protocol == Protocol::kKFold) {
    const auto folds = kfold_split(records.size(), config.folds, config.seed);
    for (std::size_t f = 0; f < folds.size(); ++f) {
      std::vector<std::size_t> train;
      for (std::size_t g = 0; g < folds.size(); ++g) {
        if (g != f) train.insert(train.end(), folds[g].begin(), folds[g].end());
      }
      std::sort(train.begin(), train.end());
      plan.emplace_back(std::move(train), folds[f]);
    }
  } else {
    auto split = holdout_split(records.size(), config.seed);
    plan.emplace_back(std::move(split.train), std::move(split.test));
  }

  EvalReport report;
  report.target = std::string(features::to_string(config.target));
  report.seed = config.seed;
  report.config = config.to_json();
  report.config_fingerprint = hex64(fnv1a64(report.config.dump()));
  report.corpus_fingerprint = corpus_fingerprint(records);

  for (std::size_t f = 0; f < plan.size(); ++f) {
    try {
      report.folds.push_back(run_fold(records, plan[f].first, plan[f].second, config, f, observer));
    } catch (const Error& e) {
      throw Error(e.kind(), "fold " + std::to_string(f) + " of " + std::to_string(plan.size()) + ": " + e.detail());
    }
  }

  report.fold_count = report.folds.size();
  for (const auto& m : report.folds) {
    report.mean_r2 += m.r2;
    report.mean_rho += m.rho;
    report.mean_rmse += m.rmse;
  }
  const double k = static_cast<double>(report.fold_count);
  report.mean_r2 /= k;
  report.mean_rho /= k;
  report.mean_rmse /= k;
  return report;
}

}  // namespace engage::eval
