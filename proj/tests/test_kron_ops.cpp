#include <gtest/gtest.h>

#include <cmath>

#include "kron/verify_sums.hpp"
#include "support.hpp"

using namespace kron;

namespace {
const Field Q = Field::rational();

// Oracle: entry formula with 1-based indices, (i-1)s + p and (j-1)s' + q.
Matrix oracle_kron(const Matrix& a, const Matrix& b) {
  Matrix r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 1; i <= a.rows(); ++i)
    for (std::size_t j = 1; j <= a.cols(); ++j)
      for (std::size_t p = 1; p <= b.rows(); ++p)
        for (std::size_t q = 1; q <= b.cols(); ++q)
          r((i - 1) * b.rows() + p - 1, (j - 1) * b.cols() + q - 1) = a(i - 1, j - 1) * b(p - 1, q - 1);
  return r;
}

Matrix uniform_real(Rng& rng, std::size_t n) {
  const Field r = Field::real64();
  Matrix m(r, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = r.from_double(static_cast<double>(rng.uniform(-1000, 1000)) / 1000.0);
  return m;
}
}  // namespace

TEST(KronProduct, Examples) {
  const Matrix a = Matrix::from_rows(Q, {{1, 2}, {3, 4}}), b = Matrix::from_rows(Q, {{0, 5}, {6, 7}});
  EXPECT_EQ(kron_product(a, b),
            Matrix::from_rows(Q, {{0, 5, 0, 10}, {6, 7, 12, 14}, {0, 15, 0, 20}, {18, 21, 24, 28}}));
  EXPECT_EQ(kron_product(a, Matrix::identity(Q, 1)), a);
  EXPECT_ERRC(kron_product(a, Matrix::identity(Field::prime(5), 1)), Errc::field_mismatch);
}

TEST(KronProduct, MatchesOracleAndMixedProduct) {
  Rng rng(1);
  for (const Field& f : {Q, Field::prime(5), Field::prime(2)})
    for (int t = 0; t < 40; ++t) {
      const Matrix a = rng.matrix(f, rng.dim(1, 3), rng.dim(1, 3)), b = rng.matrix(f, rng.dim(1, 3), rng.dim(1, 3));
      EXPECT_EQ(kron_product(a, b), oracle_kron(a, b));
      const std::size_t n = rng.dim(1, 3), m = rng.dim(1, 3);
      const Matrix x = rng.matrix(f, n), y = rng.matrix(f, m), z = rng.matrix(f, n), w = rng.matrix(f, m);
      EXPECT_EQ(kron_product(x, y) * kron_product(z, w), kron_product(x * z, y * w));
      // bilinearity
      const Scalar k = rng.scalar(f);
      EXPECT_EQ(kron_product(x + k * z, y), kron_product(x, y) + k * kron_product(z, y));
      EXPECT_EQ(kron_product(x, y + k * w), kron_product(x, y) + k * kron_product(x, w));
    }
}

TEST(KronSum, Examples) {
  EXPECT_EQ(kron_sum(Matrix::identity(Q, 2), Matrix::zero(Q, 2)), Matrix::identity(Q, 4));
  EXPECT_EQ(kron_sum(Matrix::from_rows(Q, {{1, 2}, {3, 4}}), Matrix::from_rows(Q, {{5, 6}, {7, 8}})),
            Matrix::from_rows(Q, {{6, 6, 2, 0}, {7, 9, 0, 2}, {3, 0, 9, 6}, {0, 3, 7, 12}}));
  EXPECT_ERRC(kron_sum(Matrix::zero(Q, 2, 3), Matrix::zero(Q, 2)), Errc::not_square);
  EXPECT_ERRC(kron_sum(Matrix::zero(Q, 2), Matrix::zero(Field::prime(3), 2)), Errc::field_mismatch);
}

TEST(KronSum, TraceAndLinearity) {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const std::size_t m = rng.dim(1, 4), n = rng.dim(1, 4);
    const Matrix a = rng.matrix(Q, m), b = rng.matrix(Q, n), c = rng.matrix(Q, m), d = rng.matrix(Q, n);
    EXPECT_EQ(kron_sum(a, b).trace(), Q.from_int(static_cast<long long>(n)) * a.trace() +
                                          Q.from_int(static_cast<long long>(m)) * b.trace());
    const Scalar k = rng.scalar(Q);
    EXPECT_EQ(kron_sum(k * a, k * b), k * kron_sum(a, b));
    EXPECT_EQ(kron_sum(a + c, b + d), kron_sum(a, b) + kron_sum(c, d));
    const Matrix lhs = kron_sum(a, b) * kron_sum(c, d) - kron_sum(c, d) * kron_sum(a, b);
    EXPECT_EQ(lhs, kron_sum(a * c - c * a, b * d - d * b));
  }
}

TEST(KronPower, Examples) {
  const Matrix x = Matrix::from_rows(Q, {{1, 2}, {0, 3}});
  EXPECT_EQ(kron_power(x, 1), x);
  EXPECT_EQ(kron_power(Matrix::identity(Q, 2), 3), Matrix::identity(Q, 8));
  EXPECT_EQ(kron_power(Matrix::basis_unit(Q, 1, 1, 2), 2), Matrix::basis_unit(Q, 1, 1, 4));
  EXPECT_EQ(kron_power(x, 3), kron_product(x, kron_product(x, x)));
  EXPECT_ERRC(kron_power(x, 0), Errc::invalid_arg);
}

TEST(MatrixExp, Examples) {
  const Field r = Field::real64();
  EXPECT_LE((matrix_exp(Matrix::zero(r, 3)) - Matrix::identity(r, 3)).max_norm(), 1e-12);
  Matrix d = Matrix::zero(r, 2);
  d(0, 0) = r.from_double(1.0);
  d(1, 1) = r.from_double(2.0);
  const Matrix e = matrix_exp(d);
  EXPECT_NEAR(e(0, 0).to_double(), std::exp(1.0), 1e-12);
  EXPECT_NEAR(e(1, 1).to_double(), std::exp(2.0), 1e-12);
  EXPECT_NEAR(e(0, 1).to_double(), 0.0, 1e-12);
  // rotation generator: exp([[0,-t],[t,0]]) = [[cos t, -sin t],[sin t, cos t]]
  Matrix g = Matrix::zero(r, 2);
  g(0, 1) = r.from_double(-1.5);
  g(1, 0) = r.from_double(1.5);
  const Matrix rot = matrix_exp(g);
  EXPECT_NEAR(rot(0, 0).to_double(), std::cos(1.5), 1e-12);
  EXPECT_NEAR(rot(1, 0).to_double(), std::sin(1.5), 1e-12);
  EXPECT_ERRC(matrix_exp(Matrix::identity(Q, 2)), Errc::unsupported_field);
}

TEST(MatrixExp, KronSumIdentity) {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const Matrix a = uniform_real(rng, 2 + t % 2), b = uniform_real(rng, 2 + (t / 2) % 2);
    EXPECT_LE((matrix_exp(kron_sum(a, b)) - kron_product(matrix_exp(a), matrix_exp(b))).max_norm(), 1e-9);
  }
}

TEST(Sylvester, Examples) {
  EXPECT_EQ(sylvester_solve(Matrix::identity(Q, 1), Matrix::identity(Q, 1), Matrix::from_rows(Q, {{4}})),
            Matrix::from_rows(Q, {{2}}));
  Rng rng(4);
  const Matrix y = rng.matrix(Q, 3, 2);
  EXPECT_EQ(sylvester_solve(Matrix::zero(Q, 2), Matrix::identity(Q, 3), y), y);
  for (int t = 0; t < 30; ++t) {
    const std::size_t m = rng.dim(1, 3), n = rng.dim(1, 3);
    const Matrix a = rng.matrix(Q, m), b = rng.matrix(Q, n), rhs = rng.matrix(Q, n, m);
    if (kron_sum(a, b).rank() < m * n) continue;
    const Matrix x = sylvester_solve(a, b, rhs);
    EXPECT_TRUE((b * x + x * a.transpose() - rhs).is_zero());
  }
  // A = 1, B = -1 makes A (+) B = 0
  try {
    sylvester_solve(Matrix::identity(Q, 1), -Matrix::identity(Q, 1), Matrix::identity(Q, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::singular);
    EXPECT_TRUE(e.witness().contains("system"));
  }
  EXPECT_ERRC(sylvester_solve(Matrix::zero(Q, 2), Matrix::zero(Q, 3), Matrix::zero(Q, 2, 3)), Errc::dimension_mismatch);
}

TEST(SumIdentities, SuitePasses) {
  for (const Field& f : {Q, Field::prime(5)}) {
    const Report r = verify_sum_identities(CampaignConfig{f, 3, 100, 11});
    EXPECT_TRUE(r.all_passed()) << r.to_jsonl();
    EXPECT_EQ(r.records().size(), 7u);
  }
  EXPECT_ERRC(verify_sum_identities(CampaignConfig{Q, 5, 10, 0}), Errc::invalid_config);
}
