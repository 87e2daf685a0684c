#include <cmath>
#include <cstdio>
#include <fstream>

#include "engage/error.hpp"
#include "engage/features/features.hpp"
#include "engage/parallel.hpp"

namespace engage::features {

using ingest::TweetRecord;

CategoryDictionary CategoryDictionary::build(std::span<const TweetRecord> records) {
  CategoryDictionary dict;
  for (const auto& r : records) {
    dict.add(r.language_code);
    if (r.quoted) dict.add(r.quoted->language_code);
  }
  return dict;
}

int CategoryDictionary::add(const std::string& category) {
  auto [it, inserted] = codes_.emplace(category, static_cast<int>(categories_.size()) + 1);
  if (inserted) categories_.push_back(category);
  return it->second;
}

int CategoryDictionary::encode(const std::string& category) const {
  auto it = codes_.find(category);
  return it == codes_.end() ? kAbsent : it->second;
}

nlohmann::ordered_json CategoryDictionary::to_json() const {
  nlohmann::ordered_json j;
  j["absent_code"] = kAbsent;
  j["categories"] = categories_;
  return j;
}

CategoryDictionary CategoryDictionary::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("categories") || !j["categories"].is_array()) {
    throw Error(ErrorKind::kSchemaViolation, "category dictionary needs a \"categories\" array");
  }
  CategoryDictionary dict;
  for (const auto& c : j["categories"]) {
    if (!c.is_string()) throw Error(ErrorKind::kSchemaViolation, "category entries must be strings");
    dict.add(c.get<std::string>());
  }
  return dict;
}

std::vector<double> FeatureMatrix::column(std::size_t c) const {
  std::vector<double> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, c);
  return out;
}

FeatureMatrix FeatureMatrix::select(std::span<const std::size_t> indices) const {
  FeatureMatrix out{schema, dictionary, {}, {}};
  out.ids.reserve(indices.size());
  out.values.reserve(indices.size() * cols());
  for (std::size_t i : indices) {
    out.ids.push_back(ids.at(i));
    const auto r = row(i);
    out.values.insert(out.values.end(), r.begin(), r.end());
  }
  return out;
}

namespace {

double author_field(const ingest::AuthorProfile& a, FeatureField f) {
  switch (f) {
    case FeatureField::kFollowers: return static_cast<double>(a.followers_count);
    case FeatureField::kFriends: return static_cast<double>(a.friends_count);
    case FeatureField::kAccountAge: return static_cast<double>(a.account_age_days);
    case FeatureField::kStatuses: return static_cast<double>(a.statuses_count);
    case FeatureField::kActorFavorites: return static_cast<double>(a.actor_favorites_count);
    case FeatureField::kListed: return static_cast<double>(a.actor_listed_count);
    case FeatureField::kVerified: return a.verified ? 1.0 : 0.0;
    default: return 0.0;
  }
}

double content_field(const ingest::ContentCounts& c, FeatureField f) {
  switch (f) {
    case FeatureField::kBodyLength: return static_cast<double>(c.body_length);
    case FeatureField::kMentions: return static_cast<double>(c.mention_count);
    case FeatureField::kHashtags: return static_cast<double>(c.hashtag_count);
    case FeatureField::kMedia: return static_cast<double>(c.media_count);
    case FeatureField::kUrls: return static_cast<double>(c.url_count);
    default: return 0.0;
  }
}

bool is_author_field(FeatureField f) {
  return f == FeatureField::kFollowers || f == FeatureField::kFriends || f == FeatureField::kAccountAge ||
         f == FeatureField::kStatuses || f == FeatureField::kActorFavorites || f == FeatureField::kListed ||
         f == FeatureField::kVerified;
}

double apply(FeatureTransform t, double v) { return t == FeatureTransform::kLog1p ? std::log1p(v) : v; }

void encode_rows(std::span<const TweetRecord> records, FeatureMatrix& m, int threads) {
  const std::size_t cols = m.cols();
  m.ids.resize(records.size());
  m.values.assign(records.size() * cols, 0.0);
  parallel_for(records.size(), threads, [&](std::size_t i) {
    m.ids[i] = records[i].id;
    double* out = m.values.data() + i * cols;
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& col = m.schema[c];
      out[c] = apply(col.transform, raw_feature_value(records[i], col, m.dictionary));
    }
  });
}

}  // namespace

double raw_feature_value(const TweetRecord& r, const FeatureDescriptor& col, const CategoryDictionary& dict) {
  if (col.source == FeatureSource::kQuoted) {
    if (!r.quoted) return col.field == FeatureField::kLanguage ? CategoryDictionary::kAbsent : 0.0;
    const auto& q = *r.quoted;
    if (col.field == FeatureField::kLanguage) return dict.encode(q.language_code);
    if (col.field == FeatureField::kFavoriteCount) return static_cast<double>(q.favorite_count);
    return is_author_field(col.field) ? author_field(q.author, col.field) : content_field(q.content, col.field);
  }
  switch (col.field) {
    case FeatureField::kLanguage: return dict.encode(r.language_code);
    case FeatureField::kSentiment: return r.sentiment_value;
    case FeatureField::kPostedHour: return r.posted_hour;
    case FeatureField::kPostedDay: return r.posted_day;
    case FeatureField::kPostedMonth: return r.posted_month;
    default:
      return is_author_field(col.field) ? author_field(r.author, col.field) : content_field(r.content, col.field);
  }
}

FeatureMatrix extract_features(std::span<const TweetRecord> records, const FeatureSchema& schema, int threads) {
  return extract_features(records, schema, CategoryDictionary::build(records), threads);
}

FeatureMatrix extract_features(std::span<const TweetRecord> records, const FeatureSchema& schema,
                               const CategoryDictionary& dictionary, int threads) {
  FeatureMatrix m{schema, dictionary, {}, {}};
  encode_rows(records, m, threads);
  return m;
}

double compute_skewness(std::span<const double> column) {
  const std::size_t n = column.size();
  if (n < 3) throw Error(ErrorKind::kInvalidArgument, "skewness needs at least 3 values");
  double sum = 0.0;
  for (double x : column) {
    if (!std::isfinite(x)) throw Error(ErrorKind::kInvalidArgument, "skewness input must be finite");
    sum += x;
  }
  bool constant = true;
  for (double x : column) constant = constant && x == column.front();
  if (constant) throw Error(ErrorKind::kDegenerate, "skewness undefined for a constant column");

  const double nn = static_cast<double>(n);
  const double mean = sum / nn;
  double m2 = 0.0, m3 = 0.0;
  for (double x : column) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= nn;
  m3 /= nn;
  const double g1 = m3 / std::pow(m2, 1.5);
  return g1 * std::sqrt(nn * (nn - 1.0)) / (nn - 2.0);
}

std::vector<SkewnessRow> skewness_summary(std::span<const TweetRecord> records, const FeatureSchema& schema) {
  auto safe_skew = [](const std::vector<double>& v) -> std::optional<double> {
    try {
      return compute_skewness(v);
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  const CategoryDictionary dict = CategoryDictionary::build(records);
  std::vector<SkewnessRow> out;
  for (const auto& col : schema.columns()) {
    if (col.kind == FeatureKind::kCategorical) continue;
    std::vector<double> raw(records.size()), transformed(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      raw[i] = raw_feature_value(records[i], col, dict);
      transformed[i] = apply(col.transform, raw[i]);
    }
    out.push_back({col.name, std::string(to_string(col.transform)), safe_skew(raw), safe_skew(transformed)});
  }
  for (std::size_t c = 0; c < 3; ++c) {
    std::vector<double> raw(records.size()), transformed(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      raw[i] = records[i].response.values()[c];
      transformed[i] = std::log1p(raw[i]);
    }
    out.push_back({std::string("response_") + ingest::kChannelNames[c], "log1p", safe_skew(raw),
                   safe_skew(transformed)});
  }
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

void write_feature_csv(const FeatureMatrix& m, const std::filesystem::path& path, const std::vector<double>* labels) {
  if (labels && labels->size() != m.rows()) {
    throw Error(ErrorKind::kInvalidArgument, "label count does not match feature rows");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoFailure, "cannot open " + path.string() + " for writing");
  out << "id";
  for (const auto& name : m.schema.names()) out << ',' << name;
  if (labels) out << ",label";
  out << '\n';
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << ',' << buf;
  };
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << csv_field(m.ids[r]);
    for (double v : m.row(r)) put(v);
    if (labels) put((*labels)[r]);
    out << '\n';
  }
  if (!out) throw Error(ErrorKind::kIoFailure, "write failed for " + path.string());
}

}  // namespace engage::features
