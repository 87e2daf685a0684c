#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "engage/ingest/record.hpp"

namespace fixture {

inline engage::ingest::TweetRecord record(const std::string& id, std::uint64_t retweets, std::uint64_t replies,
                                          std::uint64_t favorites) {
  engage::ingest::TweetRecord r;
  r.id = id;
  r.author.followers_count = 1000;
  r.author.friends_count = 200;
  r.author.statuses_count = 5000;
  r.author.account_age_days = 900;
  r.content.body_length = 80;
  r.language_code = "en";
  r.posted_hour = 12;
  r.posted_day = 3;
  r.posted_month = 6;
  r.response = engage::ingest::EngagementVector::raw(retweets, replies, favorites);
  return r;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Fresh scratch directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("engage-test-" + tag + "-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace fixture
