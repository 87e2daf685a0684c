#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "engage/ingest/record.hpp"
#include "engage/signal/signal.hpp"

namespace engage::features {

// Prediction targets: the three response channels and the compound signal.
enum class Target { kRetweets, kReplies, kFavorites, kEngagement };

inline constexpr Target kAllTargets[] = {Target::kRetweets, Target::kReplies, Target::kFavorites,
                                         Target::kEngagement};

std::string_view to_string(Target target);
// Accepts retweets|replies|favorites|engagement.
Target parse_target(std::string_view text);

// ln(count + 1) for a channel target; E1 projection for kEngagement, which
// throws kMissingSignal without params.
std::vector<double> label_vector(std::span<const ingest::TweetRecord> records, Target target,
                                 const std::optional<signal::SignalParams>& signal = std::nullopt);

}  // namespace engage::features
