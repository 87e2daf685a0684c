#include <algorithm>
#include <cmath>
#include <numeric>

#include "engage/error.hpp"
#include "engage/stats/stats.hpp"

namespace engage::stats {

namespace {

void require_paired(std::span<const double> a, std::span<const double> b, const char* what) {
  if (a.size() != b.size()) throw Error(ErrorKind::kInvalidArgument, std::string(what) + ": length mismatch");
  if (a.size() < 2) throw Error(ErrorKind::kInvalidArgument, std::string(what) + ": need at least 2 values");
}

bool is_constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // positions i..j-1 (0-based) share rank mean((i+1)..j)
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  require_paired(a, b, "pearson");
  const double ma = mean(a);
  const double mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) throw Error(ErrorKind::kDegenerate, "pearson: zero variance");
  return sab / std::sqrt(saa * sbb);
}

double spearman_rho(std::span<const double> a, std::span<const double> b) {
  require_paired(a, b, "spearman_rho");
  if (is_constant(a) || is_constant(b)) {
    throw Error(ErrorKind::kDegenerate, "spearman_rho undefined for a constant input");
  }
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  return pearson(ra, rb);
}

double rmse(std::span<const double> y, std::span<const double> y_hat) {
  require_paired(y, y_hat, "rmse");
  double sse = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double e = y[i] - y_hat[i];
    sse += e * e;
  }
  return std::sqrt(sse / static_cast<double>(y.size()));
}

double r_squared(std::span<const double> y, std::span<const double> y_hat) {
  require_paired(y, y_hat, "r_squared");
  const double my = mean(y);
  double ss_tot = 0.0, ss_res = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    ss_tot += (y[i] - my) * (y[i] - my);
    ss_res += (y[i] - y_hat[i]) * (y[i] - y_hat[i]);
  }
  if (ss_tot == 0.0) throw Error(ErrorKind::kDegenerate, "r_squared undefined for constant y");
  return 1.0 - ss_res / ss_tot;
}

}  // namespace engage::stats
