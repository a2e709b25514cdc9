#include <gtest/gtest.h>

#include <thread>

#include "kron/uniform_family.hpp"
#include "support.hpp"

using namespace kron;

namespace {
const Field Q = Field::rational();

Matrix scaled_identity(std::size_t n) { return Matrix::identity(Q, n) * Q.from_ratio(1, static_cast<long long>(n)); }
Matrix e11(std::size_t n) { return Matrix::basis_unit(Q, 1, 1, n); }

UniformFamily idn_seeds() { return UniformFamily::from_seeds(Q, {{2, scaled_identity(2)}, {3, scaled_identity(3)}}); }
UniformFamily e11_seeds() { return UniformFamily::from_seeds(Q, {{2, e11(2)}, {3, e11(3)}}); }
UniformFamily inconsistent() {
  return UniformFamily(Q, {{2, e11(2)}, {3, e11(3)}, {6, Matrix::all_ones(Q, 6, 6) * Q.from_ratio(1, 6)}});
}
}  // namespace

TEST(Factorize, Examples) {
  EXPECT_EQ(integer_factorize(12), (std::vector<std::uint64_t>{2, 2, 3}));
  EXPECT_TRUE(integer_factorize(1).empty());
  EXPECT_EQ(integer_factorize(7), (std::vector<std::uint64_t>{7}));
  EXPECT_EQ(integer_factorize(4294967291ULL), (std::vector<std::uint64_t>{4294967291ULL}));
  EXPECT_EQ(integer_factorize(4294967296ULL), std::vector<std::uint64_t>(32, 2));
  EXPECT_ERRC(integer_factorize(0), Errc::invalid_arg);
}

TEST(PrimeSeeds, Products) {
  const SeedMap idn{{2, scaled_identity(2)}, {3, scaled_identity(3)}};
  EXPECT_EQ(family_from_prime_seeds(idn, 6), scaled_identity(6));
  const SeedMap unit{{2, e11(2)}, {3, e11(3)}};
  EXPECT_EQ(family_from_prime_seeds(unit, 12), e11(12));
  EXPECT_EQ(family_from_prime_seeds(unit, 1), Matrix::identity(Q, 1));
}

TEST(PrimeSeeds, Errors) {
  const SeedMap bad{{2, scaled_identity(2)}, {3, Matrix::all_ones(Q, 3, 3) * Q.from_ratio(1, 3)}};
  try {
    family_from_prime_seeds(bad, 6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::non_commuting_seeds);
    EXPECT_EQ(e.witness()["p"], 2);
    EXPECT_EQ(e.witness()["q"], 3);
  }
  EXPECT_ERRC(family_from_prime_seeds({{2, e11(2)}}, 6), Errc::missing_seed);
  EXPECT_ERRC(family_from_prime_seeds({{2, Matrix::identity(Q, 2)}}, 2), Errc::bad_trace);
  EXPECT_ERRC(family_from_prime_seeds({{4, e11(4)}}, 4), Errc::not_prime);
  EXPECT_ERRC(UniformFamily::from_seeds(Q, bad), Errc::non_commuting_seeds);
}

TEST(Family, Validation) {
  EXPECT_ERRC(UniformFamily(Q, {{2, Matrix::zero(Q, 2)}}), Errc::bad_trace);
  Rng rng(3);
  TensorView g = random_traceless_tensor(rng, Q, 2, 2, {1});
  while (tr1(g).is_zero()) g = random_traceless_tensor(rng, Q, 2, 2, {1});
  EXPECT_ERRC(UniformFamily(Q, {{2, e11(2)}}, {{{2, 2}, g}}), Errc::bad_gamma);
  const UniformFamily fam(Q, {{2, e11(2)}});
  EXPECT_FALSE(fam.has_upsilon(3));
  EXPECT_ERRC(fam.upsilon(3), Errc::missing_upsilon);
  EXPECT_ERRC(family_difference(fam, Matrix::zero(Q, 6), Matrix::zero(Q, 3)), Errc::missing_upsilon);
  EXPECT_ERRC(family_difference(fam, Matrix::zero(Q, 5), Matrix::zero(Q, 2)), Errc::dimension_mismatch);
}

TEST(Family, DifferenceAxiomAndInducedAgreement) {
  const UniformFamily fam = e11_seeds();
  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    const std::size_t m = rng.dim(1, 3), n = rng.dim(1, 3);
    const Matrix a = rng.matrix(Q, m), b = rng.matrix(Q, n), x = rng.matrix(Q, m * n);
    EXPECT_EQ(family_difference(fam, kron_sum(a, b), b), a);
    EXPECT_EQ(family_difference(fam, x, b), induced_difference(x, b));
  }
}

TEST(Family, UniformityClauses) {
  for (auto make : {idn_seeds, e11_seeds}) {
    const Report r = verify_uniform_family(make(), CampaignConfig{Q, 3, 60, 9});
    EXPECT_TRUE(r.all_passed()) << r.to_jsonl();
  }
}

TEST(Family, NonzeroGammaKeepsP1Uniformity) {
  Rng rng(5);
  UniformFamily::GammaMap g;
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t n = 1; n <= 3; ++n) g.emplace(std::make_pair(m, n), random_traceless_tensor(rng, Q, m, n, {0, 1}));
  const UniformFamily fam(Q, {{1, Matrix::identity(Q, 1)}, {2, e11(2)}, {3, scaled_identity(3)}}, g);
  const Report r = verify_uniform_family(fam, CampaignConfig{Q, 3, 60, 2});
  for (const char* c : {"uniform.axiom", "uniform.mixed_p1", "uniform.additive", "uniform.scalar"}) {
    ASSERT_NE(r.find(c), nullptr);
    EXPECT_EQ(r.find(c)->status, Status::pass) << c << "\n" << r.to_jsonl();
  }
}

TEST(Assoc, NecessaryConditions) {
  std::map<std::size_t, Matrix> id, un;
  for (std::size_t n = 1; n <= 9; ++n) {
    id.emplace(n, scaled_identity(n));
    un.emplace(n, e11(n));
  }
  const UniformFamily fid(Q, id), fun(Q, un);
  for (std::size_t p = 1; p <= 3; ++p)
    for (std::size_t q = 1; q <= 3; ++q) {
      EXPECT_TRUE(assoc_necessary_check(fid, p, q).all_passed());
      EXPECT_TRUE(assoc_necessary_check(fun, p, q).all_passed());
    }
  const Report bad = assoc_necessary_check(inconsistent(), 2, 3);
  EXPECT_FALSE(bad.all_passed());
  ASSERT_NE(bad.find("uniform.assoc.p2q3.Btr"), nullptr);
  EXPECT_EQ(bad.find("uniform.assoc.p2q3.Btr")->status, Status::fail);
  // Btr(J_6 / 6) = J_3 / 3
  EXPECT_EQ(matrix_from_json(bad.find("uniform.assoc.p2q3.Btr")->witness->at("marginal")),
            Matrix::all_ones(Q, 3, 3) * Q.from_ratio(1, 3));
  EXPECT_ERRC(assoc_necessary_check(UniformFamily(Q, {{2, e11(2)}}), 2, 3), Errc::missing_upsilon);
}

TEST(Assoc, VerifyD5) {
  for (std::size_t m = 1; m <= 2; ++m)
    for (std::size_t q = 2; q <= 3; ++q) {
      EXPECT_TRUE(verify_D5(idn_seeds(), m, 2, q, 20, 1).all_passed());
      EXPECT_TRUE(verify_D5(e11_seeds(), m, 2, q, 20, 1).all_passed());
    }
  const Report r = verify_D5(inconsistent(), 1, 2, 3, 20, 1);
  const CheckResult* d5 = r.find("uniform.D5.m1p2q3");
  ASSERT_NE(d5, nullptr);
  EXPECT_EQ(d5->status, Status::fail);
  ASSERT_TRUE(d5->witness.has_value());
  EXPECT_EQ(r.find("uniform.D5.m1p2q3.restricted")->status, Status::pass);
  EXPECT_ERRC(verify_D5(idn_seeds(), 3, 2, 2, 5, 0), Errc::invalid_config);
  EXPECT_ERRC(verify_D5(idn_seeds(), 1, 2, 4, 5, 0), Errc::invalid_config);
  EXPECT_ERRC(verify_D5(idn_seeds(), 1, 2, 2, 0, 0), Errc::invalid_config);
}

TEST(Assoc, PassingD5ImpliesProductRule) {
  // gamma = 0: exhaustive D5 passes on (1,2,3) and (1,3,2) force
  // upsilon_6 = upsilon_2 (x) upsilon_3 = upsilon_3 (x) upsilon_2
  Rng rng(12);
  int passes = 0;
  for (int t = 0; t < 12; ++t) {
    // t = 0 is the consistent scaled-identity family
    const Matrix u2 = t == 0 || rng.coin() ? scaled_identity(2) : rng.trace_one_matrix(Q, 2);
    const Matrix u3 = t == 0 || rng.coin() ? scaled_identity(3) : rng.trace_one_matrix(Q, 3);
    const Matrix u6 = t == 0 || rng.coin() ? kron_product(u2, u3) : rng.trace_one_matrix(Q, 6);
    const UniformFamily fam(Q, {{2, u2}, {3, u3}, {6, u6}});
    if (verify_D5(fam, 1, 2, 3, 5, 0).all_passed()) {
      EXPECT_EQ(u6, kron_product(u2, u3));
    }
    if (verify_D5(fam, 1, 3, 2, 5, 0).all_passed()) {
      EXPECT_EQ(u6, kron_product(u3, u2));
    }
    if (verify_D5(fam, 1, 2, 3, 5, 0).all_passed() && verify_D5(fam, 1, 3, 2, 5, 0).all_passed()) {
      ++passes;
      EXPECT_EQ(kron_product(u2, u3), kron_product(u3, u2));
    }
  }
  EXPECT_GE(passes, 1);
}

TEST(Family, SeedFamiliesSatisfyMarginals) {
  for (const SeedMap& seeds : {SeedMap{{2, scaled_identity(2)}, {3, scaled_identity(3)}}, SeedMap{{2, e11(2)}, {3, e11(3)}}}) {
    const UniformFamily fam = UniformFamily::from_seeds(Q, seeds);
    for (std::size_t p : {2, 3, 4, 6})
      for (std::size_t q : {2, 3}) EXPECT_TRUE(assoc_necessary_check(fam, p, q).all_passed());
  }
}

TEST(Family, JsonRoundTrip) {
  Rng rng(7);
  const UniformFamily fam(Q, {{2, e11(2)}, {3, rng.trace_one_matrix(Q, 3)}},
                          {{{2, 3}, random_traceless_tensor(rng, Q, 2, 3, {0, 1})}}, {{2, e11(2)}, {5, e11(5)}});
  const UniformFamily back = family_from_json(Json::parse(family_to_json(fam).dump()));
  EXPECT_EQ(back.upsilon(3), fam.upsilon(3));
  EXPECT_EQ(back.gamma(2, 3), fam.gamma(2, 3));
  EXPECT_EQ(back.upsilon(10), fam.upsilon(10));
  EXPECT_EQ(family_to_json(back).dump(), family_to_json(fam).dump());
  EXPECT_ERRC(family_from_json(Json::parse(R"({"upsilon": {"x": 1}})")), Errc::parse_error);
}

TEST(Family, ConcurrentMembersAgree) {
  const UniformFamily fam = idn_seeds();
  Rng rng(8);
  const Matrix x = rng.matrix(Q, 12), b = rng.matrix(Q, 6);
  const Matrix want = family_difference(UniformFamily::from_seeds(Q, fam.seeds()), x, b);
  std::vector<Matrix> got(4, Matrix::zero(Q, 2));
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < got.size(); ++i) pool.emplace_back([&, i] { got[i] = family_difference(fam, x, b); });
  for (auto& t : pool) t.join();
  for (const auto& g : got) EXPECT_EQ(g, want);
}
