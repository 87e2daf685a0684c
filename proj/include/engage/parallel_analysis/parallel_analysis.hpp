#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string_view>
#include <vector>

#include "engage/ingest/record.hpp"
#include "engage/stats/matrix.hpp"
#include "json.hpp"

namespace engage::pa {

// kWithinObservation shuffles the D values inside each row (each
// observation's channels permuted separately). kAcrossObservations
// shuffles each column independently over rows (classic Horn null).
enum class PermutationMode { kWithinObservation, kAcrossObservations };

std::string_view to_string(PermutationMode mode);
// Accepts "within" / "across".
PermutationMode parse_mode(std::string_view text);

struct PaConfig {
  int permutations = 100;
  double quantile = 0.95;
  PermutationMode mode = PermutationMode::kWithinObservation;
  std::uint64_t seed = 0;
  // Eigen-decompose correlation instead of covariance matrices.
  bool use_correlation = false;
  int threads = 1;

  void validate() const;
};

struct PaResult {
  std::vector<double> eigenvalues;     // observed, descending
  std::vector<double> null_quantiles;  // per rank
  std::vector<bool> exceeds;           // observed > null quantile, per rank
  std::size_t signal_dimension = 0;    // leading run of exceedances
  stats::Matrix null_eigenvalues;      // permutations x D, pooled per rank
  PaConfig config;
};

stats::Matrix permute_replica(const stats::Matrix& data, PermutationMode mode, std::mt19937_64& rng);

// Generator for replica `index`; replicas are independent substreams of
// the seed, so results do not depend on evaluation order.
std::mt19937_64 replica_rng(std::uint64_t seed, std::uint64_t index);

// Throws kInsufficientData for N < 10 or D < 2; eigen errors propagate.
PaResult run_pa(const stats::Matrix& data, const PaConfig& config);

// N x 3 matrix of ln(count + 1) responses.
stats::Matrix stabilized_responses(std::span<const ingest::TweetRecord> records);

nlohmann::ordered_json to_json(const PaResult& result);
// One row per replica: "replica,lambda_1,...,lambda_D".
void write_null_csv(const PaResult& result, const std::filesystem::path& path);

}  // namespace engage::pa
