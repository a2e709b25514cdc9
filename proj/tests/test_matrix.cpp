#include <gtest/gtest.h>

#include "kron/kron_ops.hpp"
#include "kron/random.hpp"

using namespace kron;

namespace {
const Field Q = Field::rational();
const Field G3 = Field::prime(3);
}  // namespace

TEST(Matrix, RingOps) {
  const Matrix a = Matrix::from_rows(Q, {{1, 2}, {3, 4}});
  EXPECT_EQ(a + Matrix::zero(Q, 2), a);
  const Matrix b = Matrix::from_rows(Q, {{5, 6}, {7, 8}});
  EXPECT_EQ(Matrix::identity(Q, 2) * b, b);
  EXPECT_EQ(G3.from_int(2) * Matrix::all_ones(G3, 2, 2), Matrix::from_rows(G3, {{2, 2}, {2, 2}}));
  EXPECT_EQ(a * b, Matrix::from_rows(Q, {{19, 22}, {43, 50}}));
  EXPECT_EQ(b - b, Matrix::zero(Q, 2));
}

TEST(Matrix, ShapeAndFieldErrors) {
  const Matrix a = Matrix::zero(Q, 2, 3);
  try {
    (void)(a * a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::dimension_mismatch);
  }
  try {
    (void)(Matrix::zero(Q, 2) + Matrix::zero(G3, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::field_mismatch);
  }
  try {
    (void)a.trace();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_square);
  }
}

TEST(Matrix, Trace) {
  EXPECT_EQ(Matrix::identity(Q, 3).trace(), Q.from_int(3));
  EXPECT_EQ(Matrix::basis_unit(Q, 1, 2, 2).trace(), Q.zero());
  EXPECT_EQ(Matrix::from_rows(Q, {{1, 2}, {3, 4}}).trace(), Q.from_int(5));
}

TEST(Matrix, Transpose) {
  EXPECT_EQ(Matrix::identity(Q, 3).transpose(), Matrix::identity(Q, 3));
  EXPECT_EQ(Matrix::basis_unit(Q, 1, 2, 2).transpose(), Matrix::basis_unit(Q, 2, 1, 2));
  EXPECT_EQ(Matrix::from_rows(Q, {{1, 2}, {3, 4}}).transpose(), Matrix::from_rows(Q, {{1, 3}, {2, 4}}));
}

TEST(Matrix, Rank) {
  EXPECT_EQ(Matrix::zero(Q, 3).rank(), 0u);
  EXPECT_EQ(Matrix::identity(Q, 4).rank(), 4u);
  EXPECT_EQ(Matrix::all_ones(Q, 2, 2).rank(), 1u);
  EXPECT_EQ(Matrix::from_rows(G3, {{1, 2}, {2, 1}}).rank(), 1u);
  EXPECT_EQ(Matrix::from_rows(Q, {{1, 2}, {2, 1}}).rank(), 2u);
  try {
    (void)Matrix::identity(Field::real64(), 2).rank();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unsupported_field);
  }
}

TEST(Matrix, GaussSolve) {
  const Matrix y = Matrix::column(Q, {4, -1, 7});
  EXPECT_EQ(Matrix::identity(Q, 3).solve(y), y);
  EXPECT_EQ(Matrix::from_rows(Q, {{2, 0}, {0, 4}}).solve(Matrix::column(Q, {2, 8})), Matrix::column(Q, {1, 2}));
  try {
    (void)Matrix::zero(Q, 2).solve(Matrix::column(Q, {1, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::singular);
  }
}

TEST(Matrix, GaussSolveResidualIsZero) {
  for (const Field f : {Q, Field::prime(7)}) {
    for (std::uint64_t t = 0; t < 40; ++t) {
      Rng rng(3, "solve", t);
      const std::size_t n = rng.dim(1, 5);
      const Matrix a = rng.invertible_matrix(f, n);
      const Matrix y = rng.matrix(f, n, 2);
      const Matrix x = a.solve(y);
      EXPECT_TRUE((a * x - y).is_zero());
      EXPECT_EQ(a * a.inverse(), Matrix::identity(f, n));
    }
  }
}

TEST(Matrix, BasisUnits) {
  EXPECT_EQ(Matrix::basis_unit(Q, 1, 1, 2), Matrix::from_rows(Q, {{1, 0}, {0, 0}}));
  EXPECT_EQ(Matrix::identity(Q, 2), Matrix::from_rows(Q, {{1, 0}, {0, 1}}));
  EXPECT_EQ(Matrix::zero(Q, 2), Matrix::from_rows(Q, {{0, 0}, {0, 0}}));
  try {
    (void)Matrix::basis_unit(Q, 3, 1, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::index_out_of_range);
  }
  EXPECT_THROW((void)Matrix::basis_unit(Q, 0, 1, 2), Error);
  EXPECT_EQ(Matrix::identity(Q, 2).at(2, 2), Q.one());
  EXPECT_THROW((void)Matrix::identity(Q, 2).at(3, 1), Error);
}

TEST(Matrix, VecIsColumnStacking) {
  EXPECT_EQ(Matrix::from_rows(Q, {{1, 2}, {3, 4}}).vec(), Matrix::column(Q, {1, 3, 2, 4}));
  const Matrix v = Matrix::column(Q, {5, 6, 7});
  EXPECT_EQ(v.vec(), v);
  EXPECT_EQ(Matrix::unvec(Matrix::column(Q, {1, 3, 2, 4}), 2, 2), Matrix::from_rows(Q, {{1, 2}, {3, 4}}));
}

TEST(Matrix, VecOfTripleProduct) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    Rng rng(5, "vec", t);
    const Matrix a = rng.matrix(Q, 2, 3), b = rng.matrix(Q, 3, 2), c = rng.matrix(Q, 2, 4);
    EXPECT_EQ((a * b * c).vec(), kron_product(c.transpose(), a) * b.vec());
  }
}

TEST(Matrix, VecPermSigma) {
  EXPECT_EQ(vec_perm_sigma(Q, 1, 1), Matrix::identity(Q, 1));
  for (std::uint64_t t = 0; t < 30; ++t) {
    Rng rng(9, "sigma", t);
    const Matrix a = rng.matrix(Q, 2), b = rng.matrix(Q, 2);
    const Matrix s = vec_perm_sigma(Q, 2, 2);
    EXPECT_EQ(s * kron_product(a, b) * s.transpose(), kron_product(b, a));
    const Matrix a3 = rng.matrix(Q, 3);
    const Matrix s23 = vec_perm_sigma(Q, 3, 2);
    EXPECT_EQ(s23 * kron_product(a3, b) * s23.transpose(), kron_product(b, a3));
  }
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t p = 1; p <= 3; ++p) {
      const Matrix s = vec_perm_sigma(Q, m, p);
      EXPECT_EQ(s.transpose(), vec_perm_sigma(Q, p, m));
      EXPECT_EQ(s * s.transpose(), Matrix::identity(Q, m * p));
    }
  EXPECT_EQ(vec_perm_sigma(Q, 2, 3) * vec_perm_sigma(Q, 2, 3).transpose(), Matrix::identity(Q, 6));
}

TEST(Matrix, TransposeProperties) {
  for (const Field f : {Q, Field::prime(5)}) {
    for (std::uint64_t t = 0; t < 60; ++t) {
      Rng rng(21, "transpose", t);
      const std::size_t n = rng.dim(1, 4);
      const Matrix a = rng.matrix(f, n), b = rng.matrix(f, n);
      EXPECT_EQ(a.transpose().trace(), a.trace());
      EXPECT_EQ((a * b).transpose(), b.transpose() * a.transpose());
    }
  }
}
