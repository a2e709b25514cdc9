#include <gtest/gtest.h>

#include "kron/field.hpp"
#include "kron/random.hpp"

using namespace kron;

TEST(Field, Characteristic) {
  EXPECT_EQ(Field::rational().characteristic(), 0u);
  EXPECT_EQ(Field::prime(5).characteristic(), 5u);
  EXPECT_EQ(Field::real64(1e-9).characteristic(), 0u);
}

TEST(Field, DividesCharacteristic) {
  EXPECT_TRUE(Field::prime(3).divides_characteristic(6));
  EXPECT_FALSE(Field::prime(5).divides_characteristic(6));
  EXPECT_FALSE(Field::rational().divides_characteristic(6));
  EXPECT_FALSE(Field::real64().divides_characteristic(6));
}

TEST(Field, ConstructionValidates) {
  EXPECT_THROW(Field::prime(4), Error);
  EXPECT_THROW(Field::prime(1), Error);
  EXPECT_THROW(Field::real64(0.0), Error);
  try {
    Field::prime(9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_prime);
  }
}

TEST(Field, Inverse) {
  const Field q = Field::rational();
  EXPECT_EQ(q.parse("2/3").inverse(), q.parse("3/2"));
  const Field g5 = Field::prime(5);
  EXPECT_EQ(g5.from_int(2).inverse(), g5.from_int(3));
  try {
    (void)q.zero().inverse();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::zero_inverse);
  }
  EXPECT_THROW((void)g5.zero().inverse(), Error);
}

TEST(Field, ParseCanonicalizes) {
  const Field q = Field::rational();
  EXPECT_EQ(q.parse("3/6").to_string(), "1/2");
  EXPECT_EQ(q.parse("4/-6").to_string(), "-2/3");
  EXPECT_EQ(q.parse("-8/4").to_string(), "-2");
  EXPECT_EQ(q.parse("+7").to_string(), "7");
  EXPECT_THROW(q.parse("1/0"), Error);
  EXPECT_THROW(q.parse("a"), Error);
  EXPECT_THROW(q.parse("1.5"), Error);
  const Field g7 = Field::prime(7);
  EXPECT_EQ(g7.parse("-1").to_string(), "6");
  EXPECT_EQ(g7.parse("15").to_string(), "1");
  EXPECT_THROW(g7.parse("1/2"), Error);
  const Field r = Field::real64();
  EXPECT_EQ(r.parse("0.25").real(), 0.25);
  EXPECT_THROW(r.parse("nan"), Error);
}

TEST(Field, RealToleranceEquality) {
  const Field r = Field::real64(1e-6);
  EXPECT_EQ(r.from_double(1.0), r.from_double(1.0 + 1e-7));
  EXPECT_NE(r.from_double(1.0), r.from_double(1.0 + 1e-5));
}

TEST(Field, MixedFieldsRejected) {
  const auto a = Field::rational().one();
  const auto b = Field::prime(3).one();
  try {
    (void)(a + b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::field_mismatch);
  }
}

TEST(Field, ParseFieldName) {
  EXPECT_EQ(parse_field_name("q"), Field::rational());
  EXPECT_EQ(parse_field_name("gf5"), Field::prime(5));
  EXPECT_EQ(parse_field_name("prime:7"), Field::prime(7));
  EXPECT_EQ(parse_field_name("real64"), Field::real64());
  EXPECT_THROW(parse_field_name("gf"), Error);
  EXPECT_THROW(parse_field_name("gf6"), Error);
  EXPECT_THROW(parse_field_name("complex"), Error);
}

class FieldAxioms : public ::testing::TestWithParam<Field> {};

TEST_P(FieldAxioms, HoldOnRandomTriples) {
  const Field f = GetParam();
  for (std::uint64_t t = 0; t < 300; ++t) {
    Rng rng(11, "field-axioms", t);
    const Scalar a = rng.scalar(f), b = rng.scalar(f), c = rng.scalar(f);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a + f.zero(), a);
    EXPECT_EQ(a * f.one(), a);
    EXPECT_EQ(a + (-a), f.zero());
    if (!a.is_zero()) {
      EXPECT_EQ(a * a.inverse(), f.one());
    }
    EXPECT_EQ(f.parse(a.to_string()), a);
  }
}

INSTANTIATE_TEST_SUITE_P(ExactFields, FieldAxioms,
                         ::testing::Values(Field::rational(), Field::prime(2), Field::prime(5), Field::prime(101)));
