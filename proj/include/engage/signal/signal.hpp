#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "engage/ingest/record.hpp"
#include "json.hpp"

namespace engage::signal {

enum class LogBase { kNatural, kTen };

std::string_view to_string(LogBase base);
LogBase parse_log_base(std::string_view text);

// First principal component of log-stabilized responses, channel order
// (retweets, replies, favorites). The compound engagement score is
//   E1 = sum_i weights[i] * (log(count_i + 1) - means[i]).
struct SignalParams {
  std::array<double, 3> weights{};
  std::array<double, 3> means{};
  double variance_explained = 0.0;
  std::string provenance = "fitted";  // "fitted", "t2017" or "t2018"

  bool operator==(const SignalParams&) const = default;
};

// Published loadings; stored exactly as printed (three decimals).
const SignalParams& preset_t2017();
const SignalParams& preset_t2018();
// Accepts "t2017" / "t2018"; throws kInvalidArgument otherwise.
const SignalParams& preset(std::string_view name);

// Throws kInsufficientData for N < 2, kDegenerate for zero total variance.
SignalParams fit_signal(std::span<const ingest::EngagementVector> responses);

double project(const ingest::EngagementVector& raw, const SignalParams& params,
               LogBase base = LogBase::kNatural);

struct ScoredRecord {
  std::string id;
  double score = 0.0;
};

// Scores every record; with sort_descending the order is a stable sort on
// score, so ties keep input order.
std::vector<ScoredRecord> project_batch(std::span<const ingest::TweetRecord> records, const SignalParams& params,
                                        bool sort_descending = false, LogBase base = LogBase::kNatural);

nlohmann::ordered_json to_json(const SignalParams& params, LogBase base = LogBase::kNatural);
// Returns the params and writes the file's log base into *base when given.
SignalParams signal_from_json(const nlohmann::json& j, LogBase* base = nullptr);

void save_signal(const SignalParams& params, const std::filesystem::path& path, LogBase base = LogBase::kNatural);
SignalParams load_signal(const std::filesystem::path& path, LogBase* base = nullptr);

}  // namespace engage::signal
