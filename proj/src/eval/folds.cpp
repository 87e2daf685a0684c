#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "engage/error.hpp"
#include "engage/eval/eval.hpp"

namespace engage::eval {

namespace {

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  return idx;
}

}  // namespace

Folds kfold_split(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 2 || n < k) throw Error(ErrorKind::kInvalidArgument, "k-fold split needs 2 <= k <= n");
  const auto idx = shuffled_indices(n, seed);
  Folds folds(k);
  std::size_t pos = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = n / k + (f < n % k ? 1 : 0);
    folds[f].assign(idx.begin() + static_cast<std::ptrdiff_t>(pos), idx.begin() + static_cast<std::ptrdiff_t>(pos + size));
    std::sort(folds[f].begin(), folds[f].end());
    pos += size;
  }
  return folds;
}

HoldoutSplit holdout_split(std::size_t n, std::uint64_t seed, double train_fraction, double test_fraction) {
  if (!(train_fraction > 0.0 && test_fraction > 0.0 && train_fraction + test_fraction <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "holdout fractions must be positive and sum to at most 1");
  }
  const auto idx = shuffled_indices(n, seed);
  const auto n_train = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n)));
  const auto n_test = static_cast<std::size_t>(std::floor(test_fraction * static_cast<double>(n)));
  if (n_train == 0 || n_test == 0) throw Error(ErrorKind::kInsufficientData, "holdout split leaves an empty partition");
  HoldoutSplit s;
  s.train.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.test.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_train),
                idx.begin() + static_cast<std::ptrdiff_t>(n_train + n_test));
  s.validation.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_train + n_test), idx.end());
  for (auto* v : {&s.train, &s.test, &s.validation}) std::sort(v->begin(), v->end());
  return s;
}

}  // namespace engage::eval
