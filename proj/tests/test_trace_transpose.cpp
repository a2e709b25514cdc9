#include <gtest/gtest.h>

#include "kron/appendix.hpp"
#include "support.hpp"

using namespace kron;

namespace {
const Field Q = Field::rational();

Matrix counting(std::size_t n) {
  Matrix m(Q, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Q.from_int(static_cast<long long>(i * n + j + 1));
  return m;
}

// Oracle for tr_2 on T = sum_j A_j (x) B_j (x) C_j: sum_j tr(B_j) A_j (x) C_j.
struct Rank3 {
  std::vector<Matrix> a, b, c;
  Matrix full() const {
    Matrix s = Matrix::zero(a[0].field(), a[0].rows() * b[0].rows() * c[0].rows());
    for (std::size_t j = 0; j < a.size(); ++j) s += kron_product(kron_product(a[j], b[j]), c[j]);
    return s;
  }
};
}  // namespace

TEST(BlockTrace, Examples) {
  EXPECT_EQ(block_trace(counting(4), 2, 2), Matrix::from_rows(Q, {{12, 14}, {20, 22}}));
  EXPECT_EQ(partial_trace(counting(4), 2, 2), Matrix::from_rows(Q, {{7, 11}, {23, 27}}));
  Rng rng(1);
  const Matrix c = rng.matrix(Q, 3), b = rng.matrix(Q, 2);
  EXPECT_EQ(block_trace(kron_product(Matrix::identity(Q, 2), c), 2, 3), Q.from_int(2) * c);
  EXPECT_TRUE(block_trace(kron_product(Matrix::basis_unit(Q, 1, 2, 2), c), 2, 3).is_zero());
  EXPECT_EQ(partial_trace(kron_product(b, Matrix::identity(Q, 3)), 2, 3), Q.from_int(3) * b);
  EXPECT_TRUE(partial_trace(kron_product(b, Matrix::basis_unit(Q, 1, 2, 3)), 2, 3).is_zero());
  EXPECT_ERRC(block_trace(counting(4), 3, 2), Errc::dimension_mismatch);
  EXPECT_ERRC(partial_trace(counting(4), 2, 3), Errc::dimension_mismatch);
}

TEST(ModeTrace, Examples) {
  Rng rng(2);
  const Matrix c = rng.matrix(Q, 2);
  const Matrix e11 = Matrix::basis_unit(Q, 1, 1, 2), e12 = Matrix::basis_unit(Q, 1, 2, 2);
  EXPECT_TRUE(tr12(TensorView(kron_product(kron_product(e12, e11), c), 2, 2, 2)).is_zero());
  EXPECT_EQ(tr12(TensorView(kron_product(kron_product(e11, e11), c), 2, 2, 2)), c);
  EXPECT_ERRC(parse_trace_mode("4"), Errc::invalid_mode);
  EXPECT_ERRC(parse_transpose_mode("T2"), Errc::invalid_mode);
}

TEST(ModeTrace, PureTensorOracle) {
  Rng rng(3);
  for (const Field& f : {Q, Field::prime(5)})
    for (int t = 0; t < 30; ++t) {
      const std::size_t d1 = rng.dim(1, 3), d2 = rng.dim(1, 3), d3 = rng.dim(1, 3);
      Rank3 r;
      for (int j = 0; j < 3; ++j) {
        r.a.push_back(rng.matrix(f, d1));
        r.b.push_back(rng.matrix(f, d2));
        r.c.push_back(rng.matrix(f, d3));
      }
      Matrix want1 = Matrix::zero(f, d2 * d3), want2 = Matrix::zero(f, d1 * d3), want3 = Matrix::zero(f, d1 * d2);
      Matrix want12 = Matrix::zero(f, d3);
      Matrix t3 = Matrix::zero(f, d1 * d2 * d3);
      for (int j = 0; j < 3; ++j) {
        want1 += r.a[j].trace() * kron_product(r.b[j], r.c[j]);
        want2 += r.b[j].trace() * kron_product(r.a[j], r.c[j]);
        want3 += r.c[j].trace() * kron_product(r.a[j], r.b[j]);
        want12 += (r.a[j].trace() * r.b[j].trace()) * r.c[j];
        t3 += kron_product(kron_product(r.a[j], r.b[j]), r.c[j].transpose());
      }
      const TensorView tv(r.full(), d1, d2, d3);
      EXPECT_EQ(tr1(tv), want1);
      EXPECT_EQ(tr2(tv), want2);
      EXPECT_EQ(tr3(tv), want3);
      EXPECT_EQ(tr12(tv), want12);
      EXPECT_EQ(T3(tv).matrix(), t3);
      EXPECT_EQ(block_trace(tr1(tv), d2, d3), tr12(tv));
      EXPECT_EQ(block_trace(tr2(tv), d1, d3), tr12(tv));
      EXPECT_EQ(tr12(tv).trace(), tv.matrix().trace());
    }
}

TEST(ModeTranspose, Examples) {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const std::size_t d1 = rng.dim(1, 2), d2 = rng.dim(1, 2), d3 = rng.dim(1, 2);
    const TensorView x(rng.matrix(Q, d1 * d2 * d3), d1, d2, d3);
    EXPECT_EQ(T12(T3(x)).matrix(), x.matrix().transpose());
    const Matrix b = rng.matrix(Q, d1), c = rng.matrix(Q, d2 * d3);
    const TensorView bc(kron_product(b, c), d1, d2, d3);
    EXPECT_EQ(mode_transpose(bc, TransposeMode::bt).matrix(), kron_product(b.transpose(), c));
    EXPECT_EQ(mode_transpose(bc, TransposeMode::pt).matrix(), kron_product(b, c.transpose()));
    const TensorView bi(kron_product(b, Matrix::identity(Q, d2 * d3)), d1, d2, d3);
    EXPECT_EQ(mode_transpose(bi, TransposeMode::pt).matrix(), bi.matrix());
  }
}

TEST(Appendix, TraceZeroExample) {
  const Matrix mid = Matrix::basis_unit(Q, 1, 2, 2) + Matrix::basis_unit(Q, 2, 1, 2);
  const Matrix e11 = Matrix::basis_unit(Q, 1, 1, 2);
  const Matrix c = kron_product(kron_product(e11, mid), e11);
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const Matrix a = rng.matrix(Q, 2), b = rng.matrix(Q, 2);
    const Matrix prod = c * kron_product(kron_product(a, Matrix::identity(Q, 2)), b);
    EXPECT_TRUE(trace_modes(prod, {2, 2, 2}, {0, 1}).is_zero());
  }
}

TEST(Appendix, SuitePassesOverQAndGF5) {
  for (const Field& f : {Q, Field::prime(5)}) {
    const Report r = verify_appendix_identities(CampaignConfig{f, 3, 100, 6});
    EXPECT_TRUE(r.all_passed()) << r.to_jsonl();
    for (const char* neg : {"appendix.parttrequal.negative", "appendix.Btrequiv.negative"}) {
      ASSERT_NE(r.find(neg), nullptr);
    }
  }
  EXPECT_ERRC(verify_appendix_identities(CampaignConfig{Q, 4, 1, 0}), Errc::invalid_config);
  EXPECT_ERRC(verify_appendix_identities(CampaignConfig{Field::real64(), 2, 1, 0}), Errc::unsupported_field);
}

TEST(Appendix, ParttrequalNegativeFindsWitness) {
  Rng rng(7);
  const Dims d{2, 2, 2};
  const Matrix a = rng.matrix(Q, 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      Matrix b = a;
      b(i, j) += Q.one();
      EXPECT_TRUE(detail::parttr_separating_probe(a, b, d).has_value());
    }
  EXPECT_FALSE(detail::parttr_separating_probe(a, a, d).has_value());
}
