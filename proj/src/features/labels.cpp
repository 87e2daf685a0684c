#include "engage/features/labels.hpp"

#include <cmath>
#include <string>

#include "engage/error.hpp"

namespace engage::features {

std::string_view to_string(Target target) {
  switch (target) {
    case Target::kRetweets: return "retweets";
    case Target::kReplies: return "replies";
    case Target::kFavorites: return "favorites";
    case Target::kEngagement: return "engagement";
  }
  return "?";
}

Target parse_target(std::string_view text) {
  for (Target t : kAllTargets) {
    if (to_string(t) == text) return t;
  }
  throw Error(ErrorKind::kInvalidArgument,
              "unknown target \"" + std::string(text) + "\" (expected retweets|replies|favorites|engagement)");
}

std::vector<double> label_vector(std::span<const ingest::TweetRecord> records, Target target,
                                 const std::optional<signal::SignalParams>& signal) {
  if (target == Target::kEngagement && !signal) {
    throw Error(ErrorKind::kMissingSignal, "engagement labels require signal parameters");
  }
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    switch (target) {
      case Target::kRetweets: out.push_back(std::log1p(r.response.retweets)); break;
      case Target::kReplies: out.push_back(std::log1p(r.response.replies)); break;
      case Target::kFavorites: out.push_back(std::log1p(r.response.favorites)); break;
      case Target::kEngagement: out.push_back(signal::project(r.response, *signal)); break;
    }
  }
  return out;
}

}  // namespace engage::features
