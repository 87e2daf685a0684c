#include "engage/ingest/record.hpp"

#include <cmath>

#include "engage/error.hpp"

namespace engage::ingest {

EngagementVector EngagementVector::raw(std::uint64_t retweets, std::uint64_t replies,
                                       std::uint64_t favorites) {
  return {static_cast<double>(retweets), static_cast<double>(replies),
          static_cast<double>(favorites), EngagementScale::kRaw};
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::kRangeViolation, what);
}

bool is_count(double v) { return std::isfinite(v) && v >= 0.0 && std::floor(v) == v; }

}  // namespace

void validate(const TweetRecord& r) {
  require(!r.id.empty(), "id must be nonempty");
  require(std::isfinite(r.sentiment_value) && r.sentiment_value >= -1.0 && r.sentiment_value <= 1.0,
          "sentiment_value outside [-1, 1]");
  require(r.posted_hour >= 0 && r.posted_hour <= 23, "posted_hour outside 0-23");
  require(r.posted_day >= 1 && r.posted_day <= 7, "posted_day outside 1-7");
  require(r.posted_month >= 1 && r.posted_month <= 12, "posted_month outside 1-12");
  require(r.response.scale == EngagementScale::kRaw, "response must hold raw counts");
  require(is_count(r.response.retweets), "response.retweets must be a nonnegative integer");
  require(is_count(r.response.replies), "response.replies must be a nonnegative integer");
  require(is_count(r.response.favorites), "response.favorites must be a nonnegative integer");
}

}  // namespace engage::ingest
