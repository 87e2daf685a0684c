#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace engage::ingest {

enum class EngagementScale { kRaw, kStabilized };

// Response triple in fixed channel order (retweets, replies, favorites).
// Raw vectors hold nonnegative integer counts; stabilized vectors hold
// ln(count + 1) per channel.
struct EngagementVector {
  double retweets = 0.0;
  double replies = 0.0;
  double favorites = 0.0;
  EngagementScale scale = EngagementScale::kRaw;

  static EngagementVector raw(std::uint64_t retweets, std::uint64_t replies,
                              std::uint64_t favorites);

  std::array<double, 3> values() const { return {retweets, replies, favorites}; }

  bool operator==(const EngagementVector&) const = default;
};

inline constexpr std::array<const char*, 3> kChannelNames = {"retweets", "replies", "favorites"};

struct AuthorProfile {
  std::uint64_t followers_count = 0;
  std::uint64_t friends_count = 0;
  std::uint64_t statuses_count = 0;
  std::uint64_t actor_favorites_count = 0;
  std::uint64_t actor_listed_count = 0;
  std::uint64_t account_age_days = 0;
  bool verified = false;

  bool operator==(const AuthorProfile&) const = default;
};

// Content counts shared by a post and the post it quotes.
struct ContentCounts {
  std::uint64_t body_length = 0;
  std::uint64_t mention_count = 0;
  std::uint64_t hashtag_count = 0;
  std::uint64_t media_count = 0;
  std::uint64_t url_count = 0;

  bool operator==(const ContentCounts&) const = default;
};

// The quoted side of a quote post. favorite_count is the quoted post's
// favorites at quoting time, so it predates the new post.
struct QuotedRef {
  AuthorProfile author;
  ContentCounts content;
  std::string language_code;
  std::uint64_t favorite_count = 0;

  bool operator==(const QuotedRef&) const = default;
};

struct TweetRecord {
  std::string id;
  AuthorProfile author;
  ContentCounts content;
  std::string language_code;
  double sentiment_value = 0.0;
  int posted_hour = 0;   // 0-23
  int posted_day = 1;    // 1-7
  int posted_month = 1;  // 1-12
  std::optional<QuotedRef> quoted;
  EngagementVector response;

  bool operator==(const TweetRecord&) const = default;
};

// Throws Error(kRangeViolation) naming the offending field.
void validate(const TweetRecord& record);

}  // namespace engage::ingest
