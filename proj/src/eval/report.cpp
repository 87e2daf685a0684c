#include <algorithm>
#include <cstdio>
#include <sstream>

#include "engage/error.hpp"
#include "engage/eval/eval.hpp"

namespace engage::eval {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

nlohmann::ordered_json to_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["target"] = r.target;
  j["fold_count"] = r.fold_count;
  j["mean"] = {{"r2", r.mean_r2}, {"rho", r.mean_rho}, {"rmse", r.mean_rmse}};
  auto folds = nlohmann::ordered_json::array();
  for (const auto& f : r.folds) {
    nlohmann::ordered_json fj;
    fj["r2"] = f.r2;
    fj["rho"] = f.rho;
    fj["rmse"] = f.rmse;
    fj["degenerate"] = f.degenerate;
    fj["train_rows"] = f.train_rows;
    fj["test_rows"] = f.test_rows;
    folds.push_back(std::move(fj));
  }
  j["folds"] = std::move(folds);
  j["seed"] = r.seed;
  j["config_fingerprint"] = r.config_fingerprint;
  j["corpus_fingerprint"] = r.corpus_fingerprint;
  j["config"] = r.config;
  return j;
}

EvalReport report_from_json(const nlohmann::json& j) {
  try {
    EvalReport r;
    r.target = j.at("target").get<std::string>();
    r.fold_count = j.at("fold_count").get<std::size_t>();
    r.mean_r2 = j.at("mean").at("r2").get<double>();
    r.mean_rho = j.at("mean").at("rho").get<double>();
    r.mean_rmse = j.at("mean").at("rmse").get<double>();
    for (const auto& fj : j.at("folds")) {
      FoldMetrics f;
      f.r2 = fj.at("r2").get<double>();
      f.rho = fj.at("rho").get<double>();
      f.rmse = fj.at("rmse").get<double>();
      f.degenerate = fj.value("degenerate", false);
      f.train_rows = fj.value("train_rows", std::size_t{0});
      f.test_rows = fj.value("test_rows", std::size_t{0});
      r.folds.push_back(f);
    }
    r.seed = j.value("seed", std::uint64_t{0});
    r.config_fingerprint = j.value("config_fingerprint", std::string());
    r.corpus_fingerprint = j.at("corpus_fingerprint").get<std::string>();
    if (j.contains("config")) r.config = j.at("config");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kSchemaViolation, std::string("malformed report: ") + e.what());
  }
}

std::string to_csv(const EvalReport& r) {
  std::ostringstream out;
  out << "target,fold,r2,rho,rmse,degenerate\n";
  for (std::size_t i = 0; i < r.folds.size(); ++i) {
    const auto& f = r.folds[i];
    out << r.target << ',' << i << ',' << num(f.r2) << ',' << num(f.rho) << ',' << num(f.rmse) << ','
        << (f.degenerate ? 1 : 0) << '\n';
  }
  out << r.target << ",mean," << num(r.mean_r2) << ',' << num(r.mean_rho) << ',' << num(r.mean_rmse) << ",\n";
  return out.str();
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::kR2: return "r2";
    case Metric::kRho: return "rho";
    case Metric::kRmse: return "rmse";
  }
  return "?";
}

Metric parse_metric(std::string_view text) {
  if (text == "r2") return Metric::kR2;
  if (text == "rho") return Metric::kRho;
  if (text == "rmse") return Metric::kRmse;
  throw Error(ErrorKind::kInvalidArgument, "metric must be r2, rho or rmse");
}

std::vector<ComparisonRow> compare_reports(std::span<const EvalReport> reports, Metric metric) {
  if (reports.size() < 2) throw Error(ErrorKind::kInvalidArgument, "comparison needs at least two reports");
  for (const auto& r : reports) {
    if (r.corpus_fingerprint != reports.front().corpus_fingerprint) {
      throw Error(ErrorKind::kFingerprintMismatch, "reports were produced on different corpora");
    }
  }
  std::vector<ComparisonRow> rows;
  rows.reserve(reports.size());
  for (const auto& r : reports) rows.push_back({r.target, r.mean_r2, r.mean_rho, r.mean_rmse});
  std::stable_sort(rows.begin(), rows.end(), [metric](const ComparisonRow& a, const ComparisonRow& b) {
    switch (metric) {
      case Metric::kR2: return a.r2 > b.r2;
      case Metric::kRho: return a.rho > b.rho;
      case Metric::kRmse: return a.rmse < b.rmse;
    }
    return false;
  });
  return rows;
}

nlohmann::ordered_json comparison_to_json(std::span<const ComparisonRow> rows, Metric metric) {
  nlohmann::ordered_json j;
  j["sorted_by"] = to_string(metric);
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) arr.push_back({{"target", r.target}, {"r2", r.r2}, {"rho", r.rho}, {"rmse", r.rmse}});
  j["rows"] = std::move(arr);
  return j;
}

std::string comparison_to_csv(std::span<const ComparisonRow> rows) {
  std::ostringstream out;
  out << "target,r2,rho,rmse\n";
  for (const auto& r : rows) out << r.target << ',' << num(r.r2) << ',' << num(r.rho) << ',' << num(r.rmse) << '\n';
  return out.str();
}

}  // namespace engage::eval
