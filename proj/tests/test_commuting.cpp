#include <gtest/gtest.h>

#include "kron/commuting.hpp"
#include "kron/random.hpp"
#include "support.hpp"

using namespace kron;

namespace {
const Field Q = Field::rational();

Matrix col(const Field& f, std::vector<long long> v) { return Matrix::column(f, v); }

// Oracle: structural Matrix kron over the full nonzero (or trace-one) space.
std::size_t oracle_count(const Field& f, std::size_t q, CommutingKind kind) {
  const auto p = static_cast<long long>(f.modulus());
  const std::size_t ra = 2, ca = kind == CommutingKind::vectors ? 1 : 2;
  const std::size_t rb = q, cb = kind == CommutingKind::vectors ? 1 : q;
  auto all = [&](std::size_t r, std::size_t c) {
    std::vector<Matrix> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < r * c; ++i) total *= static_cast<std::size_t>(p);
    for (std::size_t code = 0; code < total; ++code) {
      Matrix m(f, r, c);
      std::size_t x = code;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j, x /= static_cast<std::size_t>(p))
          m(i, j) = f.from_int(static_cast<long long>(x % static_cast<std::size_t>(p)));
      const bool keep = kind == CommutingKind::vectors ? !m.is_zero() : m.trace() == f.one();
      if (keep) out.push_back(m);
    }
    return out;
  };
  std::size_t n = 0;
  for (const auto& a : all(ra, ca))
    for (const auto& b : all(rb, cb)) n += kron_product(a, b) == kron_product(b, a) ? 1 : 0;
  return n;
}
}  // namespace

TEST(Commuting, Examples) {
  const Classification c = classify_commuting_vector(col(Q, {1, 2}), col(Q, {2, 4}), 2);
  EXPECT_EQ(c.tag, FormTag::scalar_multiple);
  ASSERT_TRUE(c.beta.has_value());
  EXPECT_EQ(*c.beta, Q.from_int(2));
  const Classification e = classify_commuting_vector(col(Q, {1, 0}), col(Q, {3, 0, 0, 0, 0}), 5);
  EXPECT_EQ(e.tag, FormTag::e1_aligned);
  EXPECT_EQ(*e.beta, Q.from_int(3));
  EXPECT_EQ(classify_commuting_vector(col(Q, {1, 1}), col(Q, {1, 0, 1}), 3).tag, FormTag::non_commuting);
  EXPECT_FALSE(kron_commutes(col(Q, {1, 0}), col(Q, {0, 1})));
  EXPECT_TRUE(kron_commutes(col(Q, {1, 1}), col(Q, {1, 1, 1})));
  EXPECT_EQ(classify_commuting_trace1(Matrix::basis_unit(Q, 1, 1, 2), Matrix::all_ones(Q, 3, 3) * Q.from_ratio(1, 3), 3).tag,
            FormTag::non_commuting);
  const Matrix r = Matrix::from_rows(Q, {{1, 1}, {0, 0}});
  EXPECT_EQ(classify_commuting_trace1(r, r, 2).tag, FormTag::q2_equal);
  const Classification d = classify_commuting_vector(col(Q, {3, 0}), col(Q, {6, 0, 0}), 3);
  EXPECT_EQ(d.tag, FormTag::e1_aligned);
  EXPECT_EQ(*d.beta, Q.from_int(2));
  EXPECT_EQ(classify_commuting_vector(col(Q, {0, 2}), col(Q, {0, 0, 0, 0, 1}), 5).tag, FormTag::eq_aligned);
  EXPECT_EQ(classify_commuting_vector(col(Q, {2, 2}), col(Q, {1, 1, 1}), 3).tag, FormTag::all_ones);
  EXPECT_EQ(classify_commuting_vector(col(Q, {1, 2}), col(Q, {1, 1, 1}), 3).tag, FormTag::non_commuting);

  const Matrix h2 = Matrix::identity(Q, 2) * Q.from_ratio(1, 2), h3 = Matrix::identity(Q, 3) * Q.from_ratio(1, 3);
  EXPECT_EQ(classify_commuting_trace1(h2, h3, 3).tag, FormTag::half_identity);
  EXPECT_EQ(classify_commuting_trace1(Matrix::all_ones(Q, 2, 2) * Q.from_ratio(1, 2),
                                      Matrix::all_ones(Q, 3, 3) * Q.from_ratio(1, 3), 3)
                .tag,
            FormTag::half_allones);
  EXPECT_EQ(classify_commuting_trace1(Matrix::basis_unit(Q, 1, 1, 2), Matrix::basis_unit(Q, 1, 1, 5), 5).tag,
            FormTag::e11_e11);
  EXPECT_EQ(classify_commuting_trace1(Matrix::from_rows(Q, {{1, 1}, {0, 0}}),
                                      Matrix::from_rows(Q, {{1, 1, 1}, {0, 0, 0}, {0, 0, 0}}), 3)
                .tag,
            FormTag::rowspan_top);
  EXPECT_EQ(classify_commuting_trace1(Matrix::from_rows(Q, {{0, 1}, {0, 1}}),
                                      Matrix::from_rows(Q, {{0, 0, 1}, {0, 0, 1}, {0, 0, 1}}), 3)
                .tag,
            FormTag::colspan_right);
  const Matrix a = Matrix::from_rows(Q, {{3, 5}, {-1, -2}});
  EXPECT_EQ(classify_commuting_trace1(a, a, 2).tag, FormTag::q2_equal);
  EXPECT_EQ(classify_commuting_trace1(a, Matrix::basis_unit(Q, 1, 1, 2), 2).tag, FormTag::non_commuting);
}

TEST(Commuting, Errors) {
  EXPECT_ERRC(classify_commuting_vector(col(Q, {0, 0}), col(Q, {1, 1}), 2), Errc::zero_vector);
  EXPECT_ERRC(classify_commuting_vector(col(Q, {1, 0}), col(Q, {1, 1, 1, 1}), 4), Errc::not_prime);
  EXPECT_ERRC(classify_commuting_vector(col(Q, {1, 0}), col(Q, {1, 1}), 3), Errc::dimension_mismatch);
  EXPECT_ERRC(classify_commuting_trace1(Matrix::identity(Q, 2), Matrix::basis_unit(Q, 1, 1, 3), 3), Errc::bad_trace);
  // over GF(3) the partner I_3 / 3 does not exist
  const Field g3 = Field::prime(3);
  EXPECT_ERRC(classify_commuting_trace1(Matrix::identity(g3, 2) * g3.from_ratio(1, 2), Matrix::basis_unit(g3, 1, 1, 3), 3),
              Errc::form_unavailable);
  EXPECT_ERRC(kron_commutes(Matrix::identity(Q, 1), Matrix::identity(g3, 1)), Errc::field_mismatch);
  EXPECT_ERRC(enumerate_commuting_pairs(Field::prime(2), 11, CommutingKind::vectors), Errc::search_space_too_large);
  EXPECT_ERRC(enumerate_commuting_pairs(Field::prime(5), 2, CommutingKind::vectors), Errc::search_space_too_large);
  EXPECT_ERRC(enumerate_commuting_pairs(Field::prime(2), 5, CommutingKind::trace1_matrices), Errc::search_space_too_large);
  EXPECT_ERRC(enumerate_commuting_pairs(Q, 2, CommutingKind::vectors), Errc::unsupported_field);
}

TEST(Commuting, EnumerationMatchesFormsAndOracle) {
  struct Case {
    std::uint64_t p;
    std::size_t q;
    CommutingKind kind;
    std::size_t count;
  };
  const std::vector<Case> cases{
      {2, 2, CommutingKind::vectors, 3},          {2, 3, CommutingKind::vectors, 3},
      {2, 5, CommutingKind::vectors, 3},          {3, 2, CommutingKind::vectors, 16},
      {3, 3, CommutingKind::vectors, 12},         {3, 5, CommutingKind::vectors, 12},
      {2, 2, CommutingKind::trace1_matrices, 8},  {2, 3, CommutingKind::trace1_matrices, 6},
      {3, 2, CommutingKind::trace1_matrices, 27}, {3, 3, CommutingKind::trace1_matrices, 6},
  };
  for (const auto& c : cases) {
    const Field f = Field::prime(c.p);
    SCOPED_TRACE("p=" + std::to_string(c.p) + " q=" + std::to_string(c.q));
    const auto pairs = enumerate_commuting_pairs(f, c.q, c.kind);
    const EnumerationSummary s = compare_with_forms(pairs, parametric_pairs(f, c.q, c.kind));
    EXPECT_TRUE(s.agree()) << s.enumerated << " " << s.predicted << " " << s.classified << " " << s.mismatched;
    EXPECT_EQ(pairs.size(), c.count);
    EXPECT_EQ(oracle_count(f, c.q, c.kind), c.count);
  }
}

TEST(Commuting, TransposeClosureOfTrace1Forms) {
  for (const Field& f : {Q, Field::prime(5), Field::prime(2)})
    for (std::size_t q : {3, 5, 7})
      for (const auto& form : detail::trace1_forms(f, q)) {
        EXPECT_TRUE(kron_commutes(form.a, form.b));
        const Classification t = classify_commuting_trace1(form.a.transpose(), form.b.transpose(), q);
        EXPECT_NE(t.tag, FormTag::non_commuting);
        EXPECT_NE(t.tag, FormTag::unclassified);
      }
}

TEST(Commuting, Property_ScaledAllOnesFormsRecoverBeta) {
  Rng rng(21);
  for (int t = 0; t < 40; ++t) {
    const Scalar c = rng.nonzero_scalar(Q), beta = rng.nonzero_scalar(Q);
    const std::size_t q = std::vector<std::size_t>{3, 5, 7}[rng.index(3)];
    const Matrix a = c * Matrix::all_ones(Q, 2, 1), b = beta * c * Matrix::all_ones(Q, q, 1);
    const Classification cl = classify_commuting_vector(a, b, q);
    EXPECT_EQ(cl.tag, FormTag::all_ones);
    EXPECT_EQ(*cl.beta, beta);
    const Matrix x = rng.matrix(Q, 2, 1);
    if (!x.is_zero() && x(0, 0) != x(1, 0) && !x(0, 0).is_zero() && !x(1, 0).is_zero()) {
      EXPECT_EQ(classify_commuting_vector(x, b, q).tag, FormTag::non_commuting);
    }
  }
}

TEST(Commuting, JsonLine) {
  const auto pairs = enumerate_commuting_pairs(Field::prime(2), 2, CommutingKind::vectors);
  const Json j = commuting_pair_to_json(pairs.front());
  EXPECT_EQ(j["tag"], "scalar-multiple");
  EXPECT_EQ(j["beta"], "1");
  EXPECT_EQ(matrix_from_json(j["a"]), pairs.front().a);
}
