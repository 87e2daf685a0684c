#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "engage/ingest/record.hpp"
#include "json.hpp"

namespace engage::ingest {

// JSONL corpus: one record object per line. Blank lines are skipped.
// Errors carry the source name and 1-based line number.
std::vector<TweetRecord> read_corpus(const std::filesystem::path& path);
std::vector<TweetRecord> read_corpus(std::istream& in, const std::string& source_name);

void write_corpus(std::span<const TweetRecord> records, const std::filesystem::path& path);
void write_corpus(std::span<const TweetRecord> records, std::ostream& out);

// Single-record codec, exposed for the CLI and tests.
nlohmann::ordered_json record_to_json(const TweetRecord& record);
TweetRecord record_from_json(const nlohmann::json& object);

}  // namespace engage::ingest
