#pragma once

#include <span>
#include <vector>

#include "engage/ingest/record.hpp"
#include "engage/stats/matrix.hpp"

namespace engage::stats {

// ln(x + 1) per channel. Throws kInvalidArgument if the input is already
// stabilized or holds a negative count.
ingest::EngagementVector stabilize(const ingest::EngagementVector& raw);

struct Covariance {
  Matrix matrix;              // D x D, 1/(N-1) normalization
  std::vector<double> means;  // length D
};

// Throws kInsufficientData for N < 2.
Covariance covariance_matrix(const Matrix& data);

// Rescales a covariance matrix to the correlation matrix. Zero-variance
// channels throw kDegenerate.
Matrix correlation_from_covariance(const Matrix& cov);

struct EigenResult {
  std::vector<double> eigenvalues;  // descending
  Matrix eigenvectors;              // column k pairs with eigenvalues[k]
  std::size_t dimension = 0;
};

// Cyclic Jacobi for small symmetric matrices (D <= 16). Each eigenvector
// is signed so that its largest-magnitude component is positive (first
// such component on ties).
//
// Throws kNonSymmetric when |a_ij - a_ji| exceeds 1e-9 * max|a|,
// kInvalidArgument for D outside [1, 16], kNonConvergence after 100 sweeps.
EigenResult sym_eigen(const Matrix& matrix);

// Pearson correlation of average ranks (ties share the mean position).
// Throws kInvalidArgument on length mismatch or n < 2, kDegenerate when
// either side is constant.
double spearman_rho(std::span<const double> a, std::span<const double> b);

// 1-based average ranks, as used by spearman_rho.
std::vector<double> average_ranks(std::span<const double> values);

double pearson(std::span<const double> a, std::span<const double> b);

// R^2 = 1 - SS_res / SS_tot about mean(y). Throws kDegenerate when y is
// constant.
double r_squared(std::span<const double> y, std::span<const double> y_hat);
double rmse(std::span<const double> y, std::span<const double> y_hat);

// Order-statistic quantile with linear interpolation at zero-based
// position (n - 1) * q.
double empirical_quantile(std::span<const double> samples, double q);

double mean(std::span<const double> values);

}  // namespace engage::stats
