#include "engage/ingest/corpus_io.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_set>

#include "engage/error.hpp"

namespace engage::ingest {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Field-level failures inside record_from_json; rethrown with line context.
struct FieldError {
  ErrorKind kind;
  std::string message;
};

const json& member(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw FieldError{ErrorKind::kSchemaViolation, "missing field \"" + path + key + "\""};
  return *it;
}

const json& object_member(const json& obj, const char* key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_object()) throw FieldError{ErrorKind::kSchemaViolation, "field \"" + path + key + "\" must be an object"};
  return v;
}

std::uint64_t count_member(const json& obj, const char* key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    throw FieldError{ErrorKind::kRangeViolation, "field \"" + path + key + "\" must be >= 0"};
  }
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0.0 && d == static_cast<double>(static_cast<std::uint64_t>(d))) {
      return static_cast<std::uint64_t>(d);
    }
    throw FieldError{ErrorKind::kRangeViolation,
                     "field \"" + path + key + "\" must be a nonnegative integer"};
  }
  throw FieldError{ErrorKind::kSchemaViolation, "field \"" + path + key + "\" must be an integer"};
}

int int_member(const json& obj, const char* key, int lo, int hi) {
  const json& v = member(obj, key, "");
  if (!v.is_number_integer()) {
    throw FieldError{ErrorKind::kSchemaViolation, std::string("field \"") + key + "\" must be an integer"};
  }
  const auto x = v.get<std::int64_t>();
  if (x < lo || x > hi) {
    throw FieldError{ErrorKind::kRangeViolation, std::string("field \"") + key + "\" outside " +
                                                     std::to_string(lo) + "-" + std::to_string(hi)};
  }
  return static_cast<int>(x);
}

std::string string_member(const json& obj, const char* key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_string()) throw FieldError{ErrorKind::kSchemaViolation, "field \"" + path + key + "\" must be a string"};
  return v.get<std::string>();
}

AuthorProfile author_from_json(const json& a, const std::string& path) {
  AuthorProfile p;
  p.followers_count = count_member(a, "followers_count", path);
  p.friends_count = count_member(a, "friends_count", path);
  p.statuses_count = count_member(a, "statuses_count", path);
  p.actor_favorites_count = count_member(a, "actor_favorites_count", path);
  p.actor_listed_count = count_member(a, "actor_listed_count", path);
  p.account_age_days = count_member(a, "account_age_days", path);
  const json& v = member(a, "verified", path);
  if (!v.is_boolean()) throw FieldError{ErrorKind::kSchemaViolation, "field \"" + path + "verified\" must be a boolean"};
  p.verified = v.get<bool>();
  return p;
}

ContentCounts content_from_json(const json& o, const std::string& path) {
  ContentCounts c;
  c.body_length = count_member(o, "body_length", path);
  c.mention_count = count_member(o, "mention_count", path);
  c.hashtag_count = count_member(o, "hashtag_count", path);
  c.media_count = count_member(o, "media_count", path);
  c.url_count = count_member(o, "url_count", path);
  return c;
}

ordered_json author_to_json(const AuthorProfile& p) {
  ordered_json a;
  a["followers_count"] = p.followers_count;
  a["friends_count"] = p.friends_count;
  a["statuses_count"] = p.statuses_count;
  a["actor_favorites_count"] = p.actor_favorites_count;
  a["actor_listed_count"] = p.actor_listed_count;
  a["account_age_days"] = p.account_age_days;
  a["verified"] = p.verified;
  return a;
}

void content_to_json(const ContentCounts& c, ordered_json& o) {
  o["body_length"] = c.body_length;
  o["mention_count"] = c.mention_count;
  o["hashtag_count"] = c.hashtag_count;
  o["media_count"] = c.media_count;
  o["url_count"] = c.url_count;
}

}  // namespace

ordered_json record_to_json(const TweetRecord& r) {
  ordered_json o;
  o["id"] = r.id;
  o["author"] = author_to_json(r.author);
  content_to_json(r.content, o);
  o["language_code"] = r.language_code;
  o["sentiment_value"] = r.sentiment_value;
  o["posted_hour"] = r.posted_hour;
  o["posted_day"] = r.posted_day;
  o["posted_month"] = r.posted_month;
  if (r.quoted) {
    ordered_json q;
    q["author"] = author_to_json(r.quoted->author);
    content_to_json(r.quoted->content, q);
    q["language_code"] = r.quoted->language_code;
    q["favorite_count"] = r.quoted->favorite_count;
    o["quoted"] = std::move(q);
  }
  ordered_json resp;
  resp["retweets"] = static_cast<std::uint64_t>(r.response.retweets);
  resp["replies"] = static_cast<std::uint64_t>(r.response.replies);
  resp["favorites"] = static_cast<std::uint64_t>(r.response.favorites);
  o["response"] = std::move(resp);
  return o;
}

TweetRecord record_from_json(const json& o) {
  if (!o.is_object()) throw Error(ErrorKind::kSchemaViolation, "record must be a JSON object");
  try {
    TweetRecord r;
    r.id = string_member(o, "id", "");
    if (r.id.empty()) throw FieldError{ErrorKind::kRangeViolation, "field \"id\" must be nonempty"};
    r.author = author_from_json(object_member(o, "author", ""), "author.");
    r.content = content_from_json(o, "");
    r.language_code = string_member(o, "language_code", "");
    const json& s = member(o, "sentiment_value", "");
    if (!s.is_number()) throw FieldError{ErrorKind::kSchemaViolation, "field \"sentiment_value\" must be a number"};
    r.sentiment_value = s.get<double>();
    if (!(r.sentiment_value >= -1.0 && r.sentiment_value <= 1.0)) {
      throw FieldError{ErrorKind::kRangeViolation, "field \"sentiment_value\" outside [-1, 1]"};
    }
    r.posted_hour = int_member(o, "posted_hour", 0, 23);
    r.posted_day = int_member(o, "posted_day", 1, 7);
    r.posted_month = int_member(o, "posted_month", 1, 12);
    if (auto it = o.find("quoted"); it != o.end()) {
      if (!it->is_object()) throw FieldError{ErrorKind::kSchemaViolation, "field \"quoted\" must be an object"};
      QuotedRef q;
      q.author = author_from_json(object_member(*it, "author", "quoted."), "quoted.author.");
      q.content = content_from_json(*it, "quoted.");
      q.language_code = string_member(*it, "language_code", "quoted.");
      q.favorite_count = count_member(*it, "favorite_count", "quoted.");
      r.quoted = std::move(q);
    }
    const json& resp = object_member(o, "response", "");
    r.response = EngagementVector::raw(count_member(resp, "retweets", "response."),
                                       count_member(resp, "replies", "response."),
                                       count_member(resp, "favorites", "response."));
    return r;
  } catch (const FieldError& e) {
    throw Error(e.kind, e.message);
  }
}

std::vector<TweetRecord> read_corpus(std::istream& in, const std::string& source_name) {
  std::vector<TweetRecord> records;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = source_name + ":" + std::to_string(line_no) + ": ";
    json parsed = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (parsed.is_discarded()) throw Error(ErrorKind::kSchemaViolation, where + "malformed JSON");
    try {
      TweetRecord r = record_from_json(parsed);
      if (!seen.insert(r.id).second) {
        throw Error(ErrorKind::kSchemaViolation, "duplicate id \"" + r.id + "\"");
      }
      records.push_back(std::move(r));
    } catch (const Error& e) {
      throw Error(e.kind(), where + e.detail());
    }
  }
  if (in.bad()) throw Error(ErrorKind::kIoFailure, source_name + ": read failed");
  return records;
}

std::vector<TweetRecord> read_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoFailure, "cannot open " + path.string());
  return read_corpus(in, path.string());
}

void write_corpus(std::span<const TweetRecord> records, std::ostream& out) {
  for (const auto& r : records) {
    validate(r);
    out << record_to_json(r).dump() << '\n';
  }
  if (!out) throw Error(ErrorKind::kIoFailure, "write failed");
}

void write_corpus(std::span<const TweetRecord> records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoFailure, "cannot open " + path.string() + " for writing");
  write_corpus(records, out);
  out.flush();
  if (!out) throw Error(ErrorKind::kIoFailure, "write failed for " + path.string());
}

}  // namespace engage::ingest
