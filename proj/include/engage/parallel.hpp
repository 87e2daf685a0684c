#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>

namespace engage {

// Number of worker threads to use when the caller passes 0.
int default_thread_count();

// Runs body(i) for every i in [0, n). Work is split into contiguous chunks;
// each index is processed exactly once, so any output written to slot i is
// independent of the thread count.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

// 64-bit FNV-1a; used for schema and config fingerprints.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 14695981039346656037ULL);

std::string hex64(std::uint64_t value);

}  // namespace engage
