#include "engage/signal/signal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "engage/error.hpp"
#include "engage/stats/stats.hpp"

namespace engage::signal {

using ingest::EngagementScale;
using ingest::EngagementVector;

std::string_view to_string(LogBase base) { return base == LogBase::kTen ? "10" : "e"; }

LogBase parse_log_base(std::string_view text) {
  if (text == "e") return LogBase::kNatural;
  if (text == "10") return LogBase::kTen;
  throw Error(ErrorKind::kInvalidArgument, "log base must be \"e\" or \"10\"");
}

const SignalParams& preset_t2017() {
  static const SignalParams p{{0.451, 0.145, 0.880}, {0.049, 0.082, 0.148}, 0.72, "t2017"};
  return p;
}

const SignalParams& preset_t2018() {
  static const SignalParams p{{0.450, 0.188, 0.872}, {0.066, 0.080, 0.205}, 0.77, "t2018"};
  return p;
}

const SignalParams& preset(std::string_view name) {
  if (name == "t2017") return preset_t2017();
  if (name == "t2018") return preset_t2018();
  throw Error(ErrorKind::kInvalidArgument, "unknown preset \"" + std::string(name) + "\" (expected t2017 or t2018)");
}

SignalParams fit_signal(std::span<const EngagementVector> responses) {
  if (responses.size() < 2) throw Error(ErrorKind::kInsufficientData, "fit_signal needs at least 2 responses");
  stats::Matrix data(responses.size(), 3);
  for (std::size_t i = 0; i < responses.size(); ++i) {
    const auto e = stats::stabilize(responses[i]).values();
    std::copy(e.begin(), e.end(), data.row(i).begin());
  }
  const auto cov = stats::covariance_matrix(data);
  const auto eig = stats::sym_eigen(cov.matrix);
  const double total = std::accumulate(eig.eigenvalues.begin(), eig.eigenvalues.end(), 0.0);
  if (!(total > 0.0)) throw Error(ErrorKind::kDegenerate, "responses have zero total variance");

  SignalParams p;
  for (std::size_t i = 0; i < 3; ++i) {
    p.weights[i] = eig.eigenvectors(i, 0);
    p.means[i] = cov.means[i];
  }
  p.variance_explained = std::clamp(eig.eigenvalues[0] / total, 0.0, 1.0);
  p.provenance = "fitted";
  return p;
}

double project(const EngagementVector& raw, const SignalParams& params, LogBase base) {
  const auto e = stats::stabilize(raw).values();
  const double scale = base == LogBase::kTen ? 1.0 / std::log(10.0) : 1.0;
  double score = 0.0;
  for (std::size_t i = 0; i < 3; ++i) score += params.weights[i] * (e[i] * scale - params.means[i]);
  return score;
}

std::vector<ScoredRecord> project_batch(std::span<const ingest::TweetRecord> records, const SignalParams& params,
                                        bool sort_descending, LogBase base) {
  std::vector<ScoredRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back({r.id, project(r.response, params, base)});
  if (sort_descending) {
    std::stable_sort(out.begin(), out.end(),
                     [](const ScoredRecord& a, const ScoredRecord& b) { return a.score > b.score; });
  }
  return out;
}

nlohmann::ordered_json to_json(const SignalParams& p, LogBase base) {
  nlohmann::ordered_json j;
  j["weights"] = p.weights;
  j["means"] = p.means;
  j["channels"] = {"retweets", "replies", "favorites"};
  j["log_base"] = to_string(base);
  j["variance_explained"] = p.variance_explained;
  j["provenance"] = p.provenance;
  return j;
}

SignalParams signal_from_json(const nlohmann::json& j, LogBase* base) {
  auto triple = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != 3) {
      throw Error(ErrorKind::kSchemaViolation, std::string("signal file needs a 3-element \"") + key + "\" array");
    }
    std::array<double, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) {
      if (!j[key][i].is_number()) throw Error(ErrorKind::kSchemaViolation, std::string(key) + " must be numeric");
      out[i] = j[key][i].get<double>();
    }
    return out;
  };
  if (!j.is_object()) throw Error(ErrorKind::kSchemaViolation, "signal file must be a JSON object");
  if (j.contains("channels") && j["channels"] != nlohmann::json({"retweets", "replies", "favorites"})) {
    throw Error(ErrorKind::kSchemaViolation, "signal channels must be [retweets, replies, favorites]");
  }
  SignalParams p;
  p.weights = triple("weights");
  p.means = triple("means");
  p.variance_explained = j.value("variance_explained", 0.0);
  p.provenance = j.value("provenance", std::string("fitted"));
  if (base) *base = parse_log_base(j.value("log_base", std::string("e")));
  return p;
}

void save_signal(const SignalParams& params, const std::filesystem::path& path, LogBase base) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoFailure, "cannot open " + path.string() + " for writing");
  out << to_json(params, base).dump(2) << '\n';
  if (!out) throw Error(ErrorKind::kIoFailure, "write failed for " + path.string());
}

SignalParams load_signal(const std::filesystem::path& path, LogBase* base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoFailure, "cannot open " + path.string());
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorKind::kSchemaViolation, path.string() + ": malformed JSON");
  return signal_from_json(j, base);
}

}  // namespace engage::signal
