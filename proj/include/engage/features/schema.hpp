#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace engage::features {

enum class FeatureKind { kOrdinal, kContinuous, kCategorical };
enum class FeatureSource { kBase, kQuoted };
enum class FeatureTransform { kIdentity, kLog1p };

// Record field a column is read from. kFavoriteCount exists only on the
// quoted side.
enum class FeatureField {
  kFollowers,
  kFriends,
  kAccountAge,
  kStatuses,
  kActorFavorites,
  kListed,
  kVerified,
  kBodyLength,
  kMentions,
  kHashtags,
  kMedia,
  kUrls,
  kLanguage,
  kSentiment,
  kPostedHour,
  kPostedDay,
  kPostedMonth,
  kFavoriteCount,
};

struct FeatureDescriptor {
  std::string name;
  FeatureKind kind;
  FeatureSource source;
  FeatureTransform transform;
  FeatureField field;

  bool operator==(const FeatureDescriptor&) const = default;
};

std::string_view to_string(FeatureKind kind);
std::string_view to_string(FeatureTransform transform);

class FeatureSchema {
 public:
  // The 31-column layout: 17 base columns (author, content, sentiment,
  // posting time) followed by 14 quoted-side columns.
  static const FeatureSchema& standard();

  explicit FeatureSchema(std::vector<FeatureDescriptor> columns);

  std::size_t size() const noexcept { return columns_.size(); }
  const FeatureDescriptor& operator[](std::size_t i) const { return columns_[i]; }
  const std::vector<FeatureDescriptor>& columns() const noexcept { return columns_; }
  std::vector<std::string> names() const;

  // Returns the column index, or size() if absent.
  std::size_t index_of(std::string_view name) const;

  // Stable fingerprint of names, kinds and transforms.
  std::string hash() const;

  bool operator==(const FeatureSchema&) const = default;

 private:
  std::vector<FeatureDescriptor> columns_;
};

}  // namespace engage::features
