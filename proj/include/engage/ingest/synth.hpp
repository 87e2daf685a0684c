#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "engage/ingest/record.hpp"

namespace engage::ingest {

// Planted generative model for synthetic corpora.
//
// A latent engagement score z is a noisy function of author and content
// features, dominated by log followers. Each response channel c draws
//   count_c ~ Poisson(exp(offset_c + loading_c * z + N(0, noise_c)))
// so the three channels share one latent factor and are correlated by
// construction, with heavy right skew in the raw counts.
struct SynthConfig {
  double latent_noise = 0.5;
  double retweet_noise = 0.5;
  double reply_noise = 0.6;
  double favorite_noise = 0.4;
  double quote_probability = 0.15;
  std::vector<std::string> languages = {"en", "ja", "es", "pt", "ar", "fr", "tr", "ko"};

  // Throws Error(kInvalidConfig).
  void validate() const;
};

std::vector<TweetRecord> synth_corpus(std::size_t n, std::uint64_t seed, const SynthConfig& config = {});

}  // namespace engage::ingest
