#include "engage/features/schema.hpp"

#include "engage/error.hpp"
#include "engage/parallel.hpp"

namespace engage::features {

std::string_view to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kOrdinal: return "ordinal";
    case FeatureKind::kContinuous: return "continuous";
    case FeatureKind::kCategorical: return "categorical";
  }
  return "?";
}

std::string_view to_string(FeatureTransform transform) {
  return transform == FeatureTransform::kLog1p ? "log1p" : "identity";
}

namespace {

std::vector<FeatureDescriptor> standard_columns() {
  using K = FeatureKind;
  using T = FeatureTransform;
  using F = FeatureField;
  struct Row {
    const char* name;
    K kind;
    T transform;
    F field;
  };
  // Author block, then content block; both are repeated on the quoted side.
  const Row author[] = {
      {"followers_count", K::kOrdinal, T::kLog1p, F::kFollowers},
      {"friends_count", K::kOrdinal, T::kLog1p, F::kFriends},
      {"account_age_days", K::kOrdinal, T::kIdentity, F::kAccountAge},
      {"statuses_count", K::kOrdinal, T::kLog1p, F::kStatuses},
      {"actor_favorites_count", K::kOrdinal, T::kIdentity, F::kActorFavorites},
      {"actor_listed_count", K::kOrdinal, T::kLog1p, F::kListed},
      {"verified", K::kCategorical, T::kIdentity, F::kVerified},
  };
  const Row content[] = {
      {"body_length", K::kOrdinal, T::kIdentity, F::kBodyLength},
      {"mention_count", K::kOrdinal, T::kIdentity, F::kMentions},
      {"hashtag_count", K::kOrdinal, T::kIdentity, F::kHashtags},
      {"media_count", K::kOrdinal, T::kIdentity, F::kMedia},
      {"url_count", K::kOrdinal, T::kIdentity, F::kUrls},
      {"language_code", K::kCategorical, T::kIdentity, F::kLanguage},
  };
  const Row base_only[] = {
      {"sentiment_value", K::kContinuous, T::kIdentity, F::kSentiment},
      {"posted_hour", K::kOrdinal, T::kIdentity, F::kPostedHour},
      {"posted_day", K::kOrdinal, T::kIdentity, F::kPostedDay},
      {"posted_month", K::kOrdinal, T::kIdentity, F::kPostedMonth},
  };

  std::vector<FeatureDescriptor> cols;
  auto add = [&](const Row& r, FeatureSource src) {
    std::string name = src == FeatureSource::kQuoted ? std::string("quoted_") + r.name : r.name;
    cols.push_back({std::move(name), r.kind, src, r.transform, r.field});
  };
  for (const auto& r : author) add(r, FeatureSource::kBase);
  for (const auto& r : content) add(r, FeatureSource::kBase);
  for (const auto& r : base_only) add(r, FeatureSource::kBase);
  for (const auto& r : author) add(r, FeatureSource::kQuoted);
  for (const auto& r : content) add(r, FeatureSource::kQuoted);
  add({"favorite_count", K::kOrdinal, T::kIdentity, F::kFavoriteCount}, FeatureSource::kQuoted);
  return cols;
}

}  // namespace

const FeatureSchema& FeatureSchema::standard() {
  static const FeatureSchema schema(standard_columns());
  return schema;
}

FeatureSchema::FeatureSchema(std::vector<FeatureDescriptor> columns) : columns_(std::move(columns)) {
  for (const auto& c : columns_) {
    if (c.field == FeatureField::kFavoriteCount && c.source != FeatureSource::kQuoted) {
      throw Error(ErrorKind::kInvalidArgument, "favorite_count is only defined on the quoted side");
    }
    if (c.source == FeatureSource::kQuoted &&
        (c.field == FeatureField::kSentiment || c.field == FeatureField::kPostedHour ||
         c.field == FeatureField::kPostedDay || c.field == FeatureField::kPostedMonth)) {
      throw Error(ErrorKind::kInvalidArgument, "column " + c.name + " has no quoted-side source");
    }
  }
}

std::vector<std::string> FeatureSchema::names() const {
  std::vector<std::string> out;
  out.reserve(columns_.size());
  for (const auto& c : columns_) out.push_back(c.name);
  return out;
}

std::size_t FeatureSchema::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  return columns_.size();
}

std::string FeatureSchema::hash() const {
  std::string canonical;
  for (const auto& c : columns_) {
    canonical += c.name;
    canonical += '|';
    canonical += to_string(c.kind);
    canonical += '|';
    canonical += to_string(c.transform);
    canonical += '|';
    canonical += c.source == FeatureSource::kQuoted ? "quoted" : "base";
    canonical += ';';
  }
  return hex64(fnv1a64(canonical));
}

}  // namespace engage::features
