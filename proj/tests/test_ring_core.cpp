#include <gtest/gtest.h>

#include <random>

#include "arw/ring/quotient_ring.hpp"
#include "common.hpp"

using namespace arw;
using namespace testing_support;

TEST(Field, PrimeFieldArithmetic) {
  PrimeField k(7);
  EXPECT_EQ(k.mul(3, 5), 1u);
  EXPECT_EQ(k.inv(3), 5u);
  EXPECT_EQ(k.from_int(-1), 6u);
  EXPECT_EQ(k.from_rational(1, 2), 4u);
  EXPECT_THROW(PrimeField(8), Error);
  EXPECT_THROW(PrimeField((1u << 31) + 11), Error);
}

TEST(Field, RationalFieldIsExact) {
  RationalField q;
  auto a = q.from_rational(1, 3);
  auto s = q.add(q.add(a, a), a);
  EXPECT_TRUE(q.equal(s, q.one()));
  EXPECT_EQ(q.characteristic(), 0u);
}

TEST(Parse, RoundTripAndErrors) {
  auto S = make_polynomial_ring(K(), {"x", "y", "z"});
  auto f = parse_polynomial(*S, "3*x^2*y - 1/2*z + 7");
  EXPECT_EQ(parse_polynomial(*S, to_string(f)), f);
  EXPECT_EQ(parse_polynomial(*S, "2x(y+z)"), parse_polynomial(*S, "2*x*y + 2*x*z"));
  try {
    parse_polynomial(*S, "x + w");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
    EXPECT_NE(std::string(e.what()).find("'w'"), std::string::npos);
  }
  EXPECT_THROW(parse_polynomial(*S, "x +"), Error);
  EXPECT_THROW(parse_polynomial(*S, "(x"), Error);
  EXPECT_THROW(parse_polynomial(*S, ""), Error);
}

TEST(Order, GrevlexLexAndBlock) {
  auto S = make_polynomial_ring(K(), {"x", "y", "z"});
  const auto& o = S->order();
  auto m = [&](std::vector<int> e) { return S->monomial(e); };
  EXPECT_LT(o.compare(m({1, 0, 1}), m({0, 2, 0})), 0);  // xz < y^2 in grevlex
  auto L = make_polynomial_ring(K(), {"x", "y", "z"}, OrderKind::kLex);
  EXPECT_GT(L->order().compare(m({1, 0, 0}), m({0, 5, 5})), 0);
  auto B = make_polynomial_ring(K(), {"t", "x", "y"}, OrderKind::kEliminationBlock, {}, 1);
  EXPECT_GT(B->order().compare(m({1, 0, 0}), m({0, 4, 0})), 0);
  EXPECT_GT(B->order().compare(m({0, 2, 0}), m({0, 1, 0})), 0);
}

TEST(Order, RefinesDivisibility) {
  std::mt19937_64 rng(5);
  for (auto kind : {OrderKind::kGrevlex, OrderKind::kLex}) {
    auto S = make_polynomial_ring(K(), {"a", "b", "c", "d"}, kind, {1, 2, 1, 3});
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<int> a(4), b(4);
      for (int i = 0; i < 4; ++i) {
        a[i] = static_cast<int>(rng() % 4);
        b[i] = static_cast<int>(rng() % 3);
      }
      auto ma = S->monomial(a), mb = S->monomial(b);
      auto prod = mono_mul(ma, mb);
      if (!mb.is_one()) EXPECT_GT(S->order().compare(prod, ma), 0);
      EXPECT_GT(S->order().compare(prod, S->monomial({0, 0, 0, 0})), -1);
    }
  }
}

TEST(QuotientRing, Dimensions) {
  EXPECT_EQ(ring({"x", "y"})->dimension(), 2);
  EXPECT_EQ(ring({"x", "y"}, {"x*y"})->dimension(), 1);
  EXPECT_EQ(ring({"x", "y"}, {"x^2", "x*y"})->dimension(), 1);
  EXPECT_EQ(ring({"x", "y", "z"}, {"x^3+y^3+z^3"})->dimension(), 2);
}

TEST(QuotientRing, RejectsNonHomogeneousGenerator) {
  auto S = make_polynomial_ring(K(), {"x", "y"});
  try {
    make_quotient_ring(S, std::vector<std::string>{"x^2", "x + y^2"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotHomogeneous);
    EXPECT_NE(std::string(e.what()).find("generator 1"), std::string::npos);
  }
}

TEST(QuotientRing, NormalForms) {
  auto R = ring({"x", "y"}, {"x^2", "x*y"});
  auto S = R->ambient_ptr();
  EXPECT_TRUE(R->normal_form(parse_polynomial(*S, "x^2")).is_zero());
  EXPECT_EQ(R->normal_form(parse_polynomial(*S, "y^3")), parse_polynomial(*S, "y^3"));
  EXPECT_EQ(R->normal_form(parse_polynomial(*S, "x^2 + y")), parse_polynomial(*S, "y"));
}

TEST(QuotientRing, NormalFormRejectsForeignPolynomial) {
  auto R = ring({"x", "y"}, {"x^2"});
  auto T = make_polynomial_ring(K(), {"x", "y", "z"});
  EXPECT_THROW(R->normal_form(T->variable(0)), Error);
}

TEST(QuotientRing, Homogeneity) {
  auto R = ring({"x", "y"});
  EXPECT_TRUE(R->is_homogeneous(R->parse("x^2 + x*y")));
  EXPECT_FALSE(R->is_homogeneous(R->parse("x + x*y")));
  EXPECT_TRUE(R->is_homogeneous(R->zero()));
  auto R2 = ring({"x", "y"}, {"x*y"});
  EXPECT_TRUE(R2->is_homogeneous(R2->parse("x + x*y")));  // xy vanishes in R2
}

class NormalFormProperties : public ::testing::TestWithParam<int> {};

TEST_P(NormalFormProperties, ConfluenceAndIdempotence) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()));
  auto R = ring({"x", "y", "z"}, {"x^2 - y*z", "x*y*z + z^3"});
  const auto& S = R->ambient();
  for (int trial = 0; trial < 20; ++trial) {
    auto f = S.random_form(static_cast<std::int32_t>(rng() % 5), rng) + S.random_form(3, rng);
    auto g = S.random_form(static_cast<std::int32_t>(rng() % 5), rng);
    auto nf = R->normal_form(f);
    EXPECT_EQ(R->normal_form(nf), nf);
    EXPECT_EQ(R->normal_form(f + g), R->normal_form(nf + R->normal_form(g)));
    EXPECT_EQ(R->normal_form(f * g), R->normal_form(nf * R->normal_form(g)));
  }
}

TEST_P(NormalFormProperties, RingAxioms) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()) + 100);
  auto S = make_polynomial_ring(K(), {"a", "b", "c"});
  for (int trial = 0; trial < 20; ++trial) {
    auto f = S->random_form(2, rng) + S->random_form(1, rng);
    auto g = S->random_form(3, rng);
    auto h = S->random_form(1, rng) + S->one();
    EXPECT_EQ((f * g) * h, f * (g * h));
    EXPECT_EQ(f * (g + h), f * g + f * h);
    EXPECT_EQ(f + g, g + f);
    EXPECT_TRUE((f - f).is_zero());
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, NormalFormProperties, ::testing::Range(1, 6));

TEST(QuotientRing, RationalCoefficients) {
  auto S = make_polynomial_ring(RationalField(), {"x", "y"});
  auto R = make_quotient_ring(S, std::vector<std::string>{"2*x^2 - 3*y^2"});
  auto f = R->parse("x^2");
  EXPECT_EQ(f, R->parse("3/2*y^2"));
}
