#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "engage/error.hpp"
#include "engage/stats/stats.hpp"
#include "oracles.hpp"

using namespace engage;
using engage::stats::Matrix;

namespace {

Matrix from_rows(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace

TEST(Stabilize, KnownValues) {
  const auto s = stats::stabilize(ingest::EngagementVector::raw(0, 1, 99));
  EXPECT_EQ(s.scale, ingest::EngagementScale::kStabilized);
  EXPECT_DOUBLE_EQ(s.retweets, 0.0);
  EXPECT_NEAR(s.replies, std::log(2.0), 1e-15);
  EXPECT_NEAR(s.favorites, std::log(100.0), 1e-15);
}

TEST(Stabilize, LargeCounts) {
  const auto s = stats::stabilize(ingest::EngagementVector::raw(1610000, 69000, 4440000));
  EXPECT_NEAR(s.retweets, 14.2917, 1e-4);
  EXPECT_NEAR(s.replies, 11.1418, 1e-4);
  EXPECT_NEAR(s.favorites, 15.3061, 1e-4);
}

TEST(Stabilize, RejectsAlreadyStabilized) {
  auto s = stats::stabilize(ingest::EngagementVector::raw(1, 1, 1));
  EXPECT_THROW(stats::stabilize(s), Error);
}

TEST(Covariance, TwoPoints) {
  const auto c = stats::covariance_matrix(from_rows({{0.0}, {2.0}}));
  EXPECT_DOUBLE_EQ(c.matrix(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(c.means[0], 1.0);
}

TEST(Covariance, IdenticalRowsGiveZero) {
  const auto c = stats::covariance_matrix(from_rows({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}}));
  for (double v : c.matrix.data()) EXPECT_EQ(v, 0.0);
}

TEST(Covariance, RequiresTwoRows) {
  EXPECT_THROW(stats::covariance_matrix(from_rows({{1, 2}})), Error);
}

TEST(Covariance, MatchesNaiveOracleAndIsSymmetric) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(3.0, 2.0);
  std::vector<std::vector<double>> rows(500, std::vector<double>(4));
  for (auto& r : rows)
    for (auto& v : r) v = g(rng);
  const auto c = stats::covariance_matrix(from_rows(rows));
  const auto ref = oracle::covariance(rows);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_NEAR(c.matrix(i, j), ref[i][j], 1e-12);
      EXPECT_EQ(c.matrix(i, j), c.matrix(j, i));
    }
}

TEST(Eigen, Identity) {
  const auto r = stats::sym_eigen(Matrix::identity(3));
  for (double v : r.eigenvalues) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(Eigen, DiagonalSortedDescending) {
  Matrix m(3, 3);
  m(0, 0) = 1;
  m(1, 1) = 5;
  m(2, 2) = 3;
  const auto r = stats::sym_eigen(m);
  EXPECT_EQ(r.eigenvalues, (std::vector<double>{5, 3, 1}));
  EXPECT_DOUBLE_EQ(r.eigenvectors(1, 0), 1.0);
}

TEST(Eigen, AllOnes) {
  const auto r = stats::sym_eigen(Matrix(3, 3, 1.0));
  EXPECT_NEAR(r.eigenvalues[0], 3.0, 1e-12);
  EXPECT_NEAR(r.eigenvalues[1], 0.0, 1e-12);
  EXPECT_NEAR(r.eigenvalues[2], 0.0, 1e-12);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(r.eigenvectors(i, 0), 1.0 / std::sqrt(3.0), 1e-12);
}

TEST(Eigen, RejectsAsymmetric) {
  Matrix m = Matrix::identity(3);
  m(0, 1) = 0.5;
  try {
    stats::sym_eigen(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNonSymmetric);
  }
}

TEST(Eigen, RejectsBadDimension) {
  EXPECT_THROW(stats::sym_eigen(Matrix(2, 3)), Error);
  EXPECT_THROW(stats::sym_eigen(Matrix(17, 17)), Error);
}

TEST(Eigen, RandomMatricesReconstructAndOrthonormal) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t d = 2 + rep % 7;
    Matrix a(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) a(i, j) = a(j, i) = u(rng);
    const auto r = stats::sym_eigen(a);
    double trace = 0, sum = 0;
    for (std::size_t i = 0; i < d; ++i) {
      trace += a(i, i);
      sum += r.eigenvalues[i];
    }
    EXPECT_NEAR(sum, trace, 1e-9);
    for (std::size_t k = 0; k + 1 < d; ++k) EXPECT_GE(r.eigenvalues[k], r.eigenvalues[k + 1]);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        double recon = 0, dot = 0;
        for (std::size_t k = 0; k < d; ++k) {
          recon += r.eigenvectors(i, k) * r.eigenvalues[k] * r.eigenvectors(j, k);
          dot += r.eigenvectors(k, i) * r.eigenvectors(k, j);
        }
        EXPECT_NEAR(recon, a(i, j), 1e-9);
        EXPECT_NEAR(dot, i == j ? 1.0 : 0.0, 1e-10);
      }
    // Largest-magnitude component of each eigenvector is positive.
    for (std::size_t k = 0; k < d; ++k) {
      std::size_t lead = 0;
      for (std::size_t i = 1; i < d; ++i)
        if (std::abs(r.eigenvectors(i, k)) > std::abs(r.eigenvectors(lead, k))) lead = i;
      EXPECT_GT(r.eigenvectors(lead, k), 0.0);
    }
  }
}

TEST(Eigen, MatchesCharacteristicPolynomial) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int rep = 0; rep < 100; ++rep) {
    oracle::Mat3 a{};
    Matrix m(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) m(i, j) = m(j, i) = a[i][j] = a[j][i] = u(rng);
    const auto ref = oracle::char_poly_eigenvalues(a);
    const auto got = stats::sym_eigen(m).eigenvalues;
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(got[k], ref[k], 1e-8);
  }
}

TEST(Correlation, UnitDiagonal) {
  Matrix c(2, 2);
  c(0, 0) = 4;
  c(1, 1) = 9;
  c(0, 1) = c(1, 0) = 3;
  const auto r = stats::correlation_from_covariance(c);
  EXPECT_DOUBLE_EQ(r(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(r(0, 1), 0.5);
}

TEST(Spearman, TieExample) {
  const std::vector<double> a{1, 1, 2}, b{1, 2, 3};
  EXPECT_NEAR(stats::spearman_rho(a, b), 0.8660254037844386, 1e-12);
}

TEST(Spearman, AverageRanks) {
  const std::vector<double> v{10, 20, 20, 5};
  EXPECT_EQ(stats::average_ranks(v), (std::vector<double>{2, 3.5, 3.5, 1}));
}

TEST(Spearman, InvariantUnderMonotoneTransforms) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 10);
  std::vector<double> a(200), b(200), ea(200), cb(200);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = std::floor(u(rng));
    b[i] = a[i] + u(rng);
    ea[i] = std::exp(a[i]);
    cb[i] = b[i] * b[i] * b[i] + 4.0;
  }
  EXPECT_NEAR(stats::spearman_rho(a, b), stats::spearman_rho(ea, cb), 1e-12);
}

TEST(Spearman, MatchesCountingRankReference) {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 50; ++rep) {
    std::uniform_int_distribution<int> levels(0, 2 + rep % 5);
    std::vector<double> a(30 + rep), b(30 + rep);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = levels(rng);
      b[i] = levels(rng) + 0.5 * a[i];
    }
    EXPECT_NEAR(stats::spearman_rho(a, b), oracle::spearman(a, b), 1e-12);
  }
}

TEST(Spearman, ConstantInputIsDegenerate) {
  const std::vector<double> a{1, 1, 1}, b{1, 2, 3};
  EXPECT_THROW(stats::spearman_rho(a, b), Error);
}

TEST(Metrics, RSquaredAndRmse) {
  const std::vector<double> y{0, 1, 2}, p{0, 1, 1};
  EXPECT_NEAR(stats::r_squared(y, p), 0.5, 1e-15);
  EXPECT_NEAR(stats::rmse(y, p), std::sqrt(1.0 / 3.0), 1e-15);
  EXPECT_DOUBLE_EQ(stats::r_squared(y, y), 1.0);
}

TEST(Metrics, RSquaredConstantTargetIsDegenerate) {
  const std::vector<double> y{2, 2, 2}, p{1, 2, 3};
  try {
    stats::r_squared(y, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerate);
  }
}

TEST(Metrics, LengthMismatchRejected) {
  const std::vector<double> y{0, 1, 2}, p{0, 1};
  EXPECT_THROW(stats::rmse(y, p), Error);
}

TEST(Quantile, LinearInterpolation) {
  const std::vector<double> s{4, 1, 3, 2, 5};
  EXPECT_DOUBLE_EQ(stats::empirical_quantile(s, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(stats::empirical_quantile(s, 1.0), 5.0);
  EXPECT_DOUBLE_EQ(stats::empirical_quantile(s, 0.5), 3.0);
  EXPECT_DOUBLE_EQ(stats::empirical_quantile(s, 0.95), 4.8);
  const std::vector<double> one{7};
  EXPECT_DOUBLE_EQ(stats::empirical_quantile(one, 0.3), 7.0);
}
