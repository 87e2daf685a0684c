#include <algorithm>
#include <cmath>
#include <numeric>

#include "engage/error.hpp"
#include "engage/stats/stats.hpp"

namespace engage::stats {

using ingest::EngagementScale;
using ingest::EngagementVector;

EngagementVector stabilize(const EngagementVector& raw) {
  if (raw.scale != EngagementScale::kRaw) {
    throw Error(ErrorKind::kInvalidArgument, "stabilize expects raw counts");
  }
  for (double v : raw.values()) {
    if (!(v >= 0.0)) throw Error(ErrorKind::kInvalidArgument, "raw counts must be >= 0");
  }
  return {std::log1p(raw.retweets), std::log1p(raw.replies), std::log1p(raw.favorites),
          EngagementScale::kStabilized};
}

double mean(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::kInvalidArgument, "mean of empty sequence");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

Covariance covariance_matrix(const Matrix& data) {
  const std::size_t n = data.rows();
  const std::size_t d = data.cols();
  if (n < 2) throw Error(ErrorKind::kInsufficientData, "covariance needs at least 2 rows");

  Covariance out{Matrix(d, d), std::vector<double>(d, 0.0)};
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) out.means[c] += data(r, c);
  }
  for (auto& m : out.means) m /= static_cast<double>(n);

  // Two-pass: center first, then accumulate the upper triangle.
  std::vector<double> centered(d);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) centered[c] = data(r, c) - out.means[c];
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j) out.matrix(i, j) += centered[i] * centered[j];
    }
  }
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      out.matrix(i, j) /= denom;
      out.matrix(j, i) = out.matrix(i, j);
    }
  }
  return out;
}

Matrix correlation_from_covariance(const Matrix& cov) {
  const std::size_t d = cov.rows();
  Matrix out(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (!(cov(i, i) > 0.0)) throw Error(ErrorKind::kDegenerate, "zero-variance channel in correlation");
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      out(i, j) = i == j ? 1.0 : cov(i, j) / std::sqrt(cov(i, i) * cov(j, j));
    }
  }
  return out;
}

double empirical_quantile(std::span<const double> samples, double q) {
  if (samples.empty()) throw Error(ErrorKind::kInvalidArgument, "quantile of empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorKind::kInvalidArgument, "quantile level outside [0, 1]");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace engage::stats
