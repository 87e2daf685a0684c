#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "engage/error.hpp"
#include "engage/ingest/corpus_io.hpp"
#include "engage/ingest/synth.hpp"
#include "engage/stats/stats.hpp"
#include "fixtures.hpp"

using namespace engage;
using namespace engage::ingest;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kIoFailure;
}

std::string line_of(const TweetRecord& r) { return record_to_json(r).dump(); }

}  // namespace

TEST(CorpusIo, EmptyInputGivesEmptyCorpus) {
  std::istringstream in("");
  EXPECT_TRUE(read_corpus(in, "empty").empty());
  std::istringstream blanks("\n\n  \n");
  EXPECT_TRUE(read_corpus(blanks, "blanks").empty());
}

TEST(CorpusIo, MissingResponseIsSchemaViolationWithLineNumber) {
  auto j = record_to_json(fixture::record("a", 1, 2, 3));
  j.erase("response");
  std::istringstream in(line_of(fixture::record("ok", 1, 1, 1)) + "\n" + j.dump() + "\n");
  try {
    read_corpus(in, "input.jsonl");
    FAIL() << "expected failure";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSchemaViolation);
    EXPECT_NE(std::string(e.what()).find("input.jsonl:2"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("response"), std::string::npos) << e.what();
  }
}

TEST(CorpusIo, NegativeCountIsRangeViolation) {
  auto j = record_to_json(fixture::record("a", 1, 2, 3));
  j["response"]["replies"] = -4;
  std::istringstream in(j.dump());
  EXPECT_EQ(kind_of([&] { read_corpus(in, "x"); }), ErrorKind::kRangeViolation);
}

TEST(CorpusIo, MalformedJsonIsSchemaViolation) {
  std::istringstream in("{not json");
  EXPECT_EQ(kind_of([&] { read_corpus(in, "x"); }), ErrorKind::kSchemaViolation);
}

TEST(CorpusIo, DuplicateIdRejected) {
  std::istringstream in(line_of(fixture::record("a", 1, 1, 1)) + "\n" + line_of(fixture::record("a", 2, 2, 2)));
  EXPECT_EQ(kind_of([&] { read_corpus(in, "x"); }), ErrorKind::kSchemaViolation);
}

TEST(CorpusIo, OutOfRangeHourRejected) {
  auto j = record_to_json(fixture::record("a", 1, 2, 3));
  j["posted_hour"] = 24;
  std::istringstream in(j.dump());
  EXPECT_EQ(kind_of([&] { read_corpus(in, "x"); }), ErrorKind::kRangeViolation);
}

TEST(CorpusIo, MissingFileIsIoFailure) {
  EXPECT_EQ(kind_of([] { read_corpus(std::filesystem::path("/nonexistent/none.jsonl")); }), ErrorKind::kIoFailure);
}

TEST(CorpusIo, QuotedObjectRoundTrips) {
  auto r = fixture::record("q1", 10, 2, 30);
  QuotedRef q;
  q.author.followers_count = 77;
  q.author.verified = true;
  q.content.media_count = 1;
  q.language_code = "ja";
  q.favorite_count = 12;
  r.quoted = q;
  std::istringstream in(line_of(r));
  const auto back = read_corpus(in, "x");
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0], r);
}

TEST(CorpusIo, WriteReadWriteIsByteStable) {
  const auto corpus = synth_corpus(200, 11);
  std::ostringstream first;
  write_corpus(corpus, first);
  std::istringstream in(first.str());
  const auto back = read_corpus(in, "x");
  EXPECT_EQ(back, corpus);
  std::ostringstream second;
  write_corpus(back, second);
  EXPECT_EQ(first.str(), second.str());
}

TEST(Synth, DeterministicPerSeed) {
  EXPECT_EQ(synth_corpus(300, 5), synth_corpus(300, 5));
  EXPECT_NE(synth_corpus(300, 5), synth_corpus(300, 6));
}

TEST(Synth, SingleRecordAndZero) {
  EXPECT_EQ(synth_corpus(1, 3).size(), 1u);
  EXPECT_EQ(kind_of([] { synth_corpus(0, 3); }), ErrorKind::kInvalidArgument);
}

TEST(Synth, RecordsValidateAndIdsUnique) {
  const auto corpus = synth_corpus(2000, 9);
  std::set<std::string> ids;
  for (const auto& r : corpus) {
    EXPECT_NO_THROW(validate(r));
    ids.insert(r.id);
  }
  EXPECT_EQ(ids.size(), corpus.size());
}

TEST(Synth, InvalidConfigRejected) {
  SynthConfig c;
  c.quote_probability = 1.5;
  EXPECT_EQ(kind_of([&] { synth_corpus(10, 1, c); }), ErrorKind::kInvalidConfig);
  SynthConfig d;
  d.retweet_noise = -1;
  EXPECT_EQ(kind_of([&] { synth_corpus(10, 1, d); }), ErrorKind::kInvalidConfig);
  SynthConfig e;
  e.languages.clear();
  EXPECT_EQ(kind_of([&] { synth_corpus(10, 1, e); }), ErrorKind::kInvalidConfig);
}

TEST(Synth, StabilizedChannelsArePositivelyCorrelated) {
  const auto corpus = synth_corpus(10000, 2024);
  std::vector<double> rt, fav;
  for (const auto& r : corpus) {
    const auto s = stats::stabilize(r.response);
    rt.push_back(s.retweets);
    fav.push_back(s.favorites);
  }
  EXPECT_GT(stats::pearson(rt, fav), 0.5);
}
