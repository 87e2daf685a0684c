#include "engage/parallel_analysis/parallel_analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "engage/error.hpp"
#include "engage/parallel.hpp"
#include "engage/stats/stats.hpp"

namespace engage::pa {

std::string_view to_string(PermutationMode mode) {
  return mode == PermutationMode::kWithinObservation ? "within" : "across";
}

PermutationMode parse_mode(std::string_view text) {
  if (text == "within") return PermutationMode::kWithinObservation;
  if (text == "across") return PermutationMode::kAcrossObservations;
  throw Error(ErrorKind::kInvalidArgument, "permutation mode must be \"within\" or \"across\"");
}

void PaConfig::validate() const {
  if (permutations < 1) throw Error(ErrorKind::kInvalidConfig, "permutations must be >= 1");
  if (!(quantile > 0.0 && quantile < 1.0)) throw Error(ErrorKind::kInvalidConfig, "quantile must lie in (0, 1)");
}

std::mt19937_64 replica_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x5041u};
  return std::mt19937_64(seq);
}

stats::Matrix permute_replica(const stats::Matrix& data, PermutationMode mode, std::mt19937_64& rng) {
  stats::Matrix out = data;
  if (mode == PermutationMode::kWithinObservation) {
    for (std::size_t r = 0; r < out.rows(); ++r) {
      auto row = out.row(r);
      std::shuffle(row.begin(), row.end(), rng);
    }
  } else {
    for (std::size_t c = 0; c < out.cols(); ++c) {
      auto col = data.column(c);
      std::shuffle(col.begin(), col.end(), rng);
      for (std::size_t r = 0; r < out.rows(); ++r) out(r, c) = col[r];
    }
  }
  return out;
}

namespace {

std::vector<double> spectrum(const stats::Matrix& data, bool use_correlation) {
  auto cov = stats::covariance_matrix(data).matrix;
  if (use_correlation) cov = stats::correlation_from_covariance(cov);
  return stats::sym_eigen(cov).eigenvalues;
}

}  // namespace

PaResult run_pa(const stats::Matrix& data, const PaConfig& config) {
  config.validate();
  if (data.rows() < 10) throw Error(ErrorKind::kInsufficientData, "parallel analysis needs N >= 10");
  if (data.cols() < 2) throw Error(ErrorKind::kInsufficientData, "parallel analysis needs D >= 2");
  const std::size_t d = data.cols();
  const auto q = static_cast<std::size_t>(config.permutations);

  PaResult result;
  result.config = config;
  result.eigenvalues = spectrum(data, config.use_correlation);
  result.null_eigenvalues = stats::Matrix(q, d);

  parallel_for(q, config.threads, [&](std::size_t k) {
    auto rng = replica_rng(config.seed, k);
    const auto replica = permute_replica(data, config.mode, rng);
    const auto ev = spectrum(replica, config.use_correlation);
    std::copy(ev.begin(), ev.end(), result.null_eigenvalues.row(k).begin());
  });

  result.null_quantiles.resize(d);
  result.exceeds.resize(d);
  bool leading = true;
  for (std::size_t rank = 0; rank < d; ++rank) {
    const auto pooled = result.null_eigenvalues.column(rank);
    result.null_quantiles[rank] = stats::empirical_quantile(pooled, config.quantile);
    result.exceeds[rank] = result.eigenvalues[rank] > result.null_quantiles[rank];
    leading = leading && result.exceeds[rank];
    if (leading) ++result.signal_dimension;
  }
  return result;
}

stats::Matrix stabilized_responses(std::span<const ingest::TweetRecord> records) {
  stats::Matrix m(records.size(), 3);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto e = stats::stabilize(records[i].response).values();
    std::copy(e.begin(), e.end(), m.row(i).begin());
  }
  return m;
}

nlohmann::ordered_json to_json(const PaResult& r) {
  nlohmann::ordered_json j;
  j["eigenvalues"] = r.eigenvalues;
  j["null_quantiles"] = r.null_quantiles;
  j["exceeds"] = r.exceeds;
  j["signal_dimension"] = r.signal_dimension;
  nlohmann::ordered_json c;
  c["permutations"] = r.config.permutations;
  c["quantile"] = r.config.quantile;
  c["mode"] = to_string(r.config.mode);
  c["seed"] = r.config.seed;
  c["matrix"] = r.config.use_correlation ? "correlation" : "covariance";
  j["config"] = std::move(c);
  return j;
}

void write_null_csv(const PaResult& r, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoFailure, "cannot open " + path.string() + " for writing");
  out << "replica";
  for (std::size_t c = 0; c < r.null_eigenvalues.cols(); ++c) out << ",lambda_" << (c + 1);
  out << '\n';
  char buf[32];
  for (std::size_t k = 0; k < r.null_eigenvalues.rows(); ++k) {
    out << k;
    for (double v : r.null_eigenvalues.row(k)) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorKind::kIoFailure, "write failed for " + path.string());
}

}  // namespace engage::pa
