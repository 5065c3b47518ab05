#include <gtest/gtest.h>

#include <random>

#include "wildmck/qseries.hpp"

using namespace wildmck;

namespace {

QLaurent random_laurent(std::mt19937& rng, int max_terms = 4) {
  std::uniform_int_distribution<int> nterms(0, max_terms), num(-6, 6), den(1, 3), coeff(-5, 5);
  QLaurent f;
  for (int i = nterms(rng); i > 0; --i) f.add_term(Rational(num(rng), den(rng)), Rational(coeff(rng), den(rng)));
  return f;
}

const QLaurent q = QLaurent::q();

}  // namespace

TEST(Rational, ReducedWithPositiveDenominator) {
  const Rational r(-6, 4);
  EXPECT_EQ(numerator(r), -3);
  EXPECT_EQ(denominator(r), 2);
  EXPECT_EQ(floor(Rational(-3, 2)), -2);
  EXPECT_EQ(ceil(Rational(-3, 2)), -1);
  EXPECT_EQ(to_string(Rational(5, 2)), "5/2");
  EXPECT_EQ(parse_rational("-7/14"), Rational(-1, 2));
}

TEST(QLaurent, CanonicalRendering) {
  EXPECT_EQ(QLaurent{}.to_string(), "0");
  EXPECT_EQ((QLaurent::q(4) + QLaurent::monomial(2, 3)).to_string(), "q^4 + 2*q^3");
  EXPECT_EQ(QLaurent::monomial(3, Rational(5, 2)).to_string(), "3*q^(5/2)");
  EXPECT_EQ((QLaurent::q(1) - QLaurent(1)).to_string(), "q - 1");
  EXPECT_EQ((-QLaurent::q(-1)).to_string(), "-q^(-1)");
  EXPECT_EQ(QLaurent(Rational(1, 2)).to_string(), "1/2");
}

TEST(QLaurent, NoZeroCoefficientsStored) {
  QLaurent f = q + QLaurent(1);
  f -= q;
  EXPECT_EQ(f.size(), 1u);
  EXPECT_TRUE((f - QLaurent(1)).is_zero());
}

TEST(QLaurent, ParseRoundTripsRandomValues) {
  std::mt19937 rng(11);
  for (int i = 0; i < 500; ++i) {
    const auto f = random_laurent(rng, 6);
    EXPECT_EQ(QLaurent::parse(f.to_string()), f) << f.to_string();
  }
}

TEST(QLaurent, RingAxiomsOnRandomTriples) {
  std::mt19937 rng(12);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_laurent(rng), b = random_laurent(rng), c = random_laurent(rng);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(SValue, Examples) {
  EXPECT_EQ(s_value(QLaurent::q(4) + QLaurent::monomial(2, 3)), 3);
  EXPECT_EQ(s_value(QLaurent::monomial(10, 3) + QLaurent::monomial(4, 2)), 14);
  EXPECT_EQ(s_value(QLaurent{}), 0);
}

TEST(SValue, IsARingHomomorphism) {
  std::mt19937 rng(13);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_laurent(rng), b = random_laurent(rng);
    EXPECT_EQ(s_value(a + b), s_value(a) + s_value(b));
    EXPECT_EQ(s_value(a * b), s_value(a) * s_value(b));
  }
}

TEST(Evaluate, RationalExponentsExact) {
  EXPECT_EQ(evaluate(QLaurent::q(Rational(1, 2)), 4), 2);
  EXPECT_EQ(evaluate(QLaurent::q(Rational(-3, 2)), 4), Rational(1, 8));
  EXPECT_EQ(evaluate(QLaurent::monomial(10, 3) + QLaurent::monomial(4, 2), 4), 704);
}

TEST(GeometricClosedForm, Examples) {
  EXPECT_EQ(geometric_closed_form(1, 0, -1), QRatFun(q, q - QLaurent(1)));
  const QRatFun folded = geometric_closed_form(2, 2, -1) * QRatFun(q - QLaurent(1));
  const auto verdict = simplify_to_polynomial(folded);
  ASSERT_TRUE(std::holds_alternative<QLaurent>(verdict));
  EXPECT_EQ(std::get<QLaurent>(verdict), QLaurent::monomial(2, 3));
  try {
    geometric_closed_form(1, 0, 1);
    FAIL() << "expected DivergentSeries";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivergentSeries);
  }
  EXPECT_THROW(geometric_closed_form(1, 0, 0), Error);
}

TEST(GeometricClosedForm, TimesDenominatorGivesLeadingTerm) {
  std::mt19937 rng(14);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4), step(-6, -1);
  for (int i = 0; i < 200; ++i) {
    const Rational c(num(rng), den(rng)), e0(num(rng), den(rng)), s(step(rng), den(rng));
    const QRatFun g = geometric_closed_form(c, e0, s);
    EXPECT_EQ(g * QRatFun(QLaurent(1) - QLaurent::q(s)), QRatFun(QLaurent::monomial(c, e0)));
  }
}

TEST(GeometricClosedForm, MatchesPartialSumPlusExactTailAtConcreteQ) {
  // sum_{a<N} c q0^(e0 + a s) + c q0^(e0 + N s) / (1 - q0^s) is the whole series.
  for (int q0 : {4, 9, 16, 25}) {
    const Rational c(3, 2), e0(5, 2), s(-1, 2);
    Rational head = 0;
    const int N = 7;
    for (int a = 0; a < N; ++a) head += c * rational_power(q0, e0 + a * s);
    const Rational tail = c * rational_power(q0, e0 + N * s) / (1 - rational_power(q0, s));
    const QRatFun g = geometric_closed_form(c, e0, s);
    EXPECT_EQ(evaluate(g.numerator(), q0) / evaluate(g.denominator(), q0), head + tail);
  }
}

TEST(SimplifyToPolynomial, Examples) {
  auto v = simplify_to_polynomial(QRatFun(QLaurent::q(2) - QLaurent(1), q - QLaurent(1)));
  ASSERT_TRUE(std::holds_alternative<QLaurent>(v));
  EXPECT_EQ(std::get<QLaurent>(v), q + QLaurent(1));

  v = simplify_to_polynomial(QRatFun(QLaurent::q(4) * (QLaurent(1) + QLaurent::monomial(2, -1))));
  ASSERT_TRUE(std::holds_alternative<QLaurent>(v));
  EXPECT_EQ(std::get<QLaurent>(v).to_string(), "q^4 + 2*q^3");

  v = simplify_to_polynomial(QRatFun(QLaurent(1), QLaurent(1) - QLaurent::q(-1)));
  ASSERT_TRUE(std::holds_alternative<NotPolynomial>(v));
  EXPECT_EQ(std::get<NotPolynomial>(v).reduced, QRatFun(QLaurent(1), QLaurent(1) - QLaurent::q(-1)));
}

TEST(SimplifyToPolynomial, HalfIntegerExponentsCancel) {
  // (q - 1) / (q^(1/2) - 1) = q^(1/2) + 1
  const QLaurent r = QLaurent::q(Rational(1, 2));
  auto v = simplify_to_polynomial(QRatFun(q - QLaurent(1), r - QLaurent(1)));
  ASSERT_TRUE(std::holds_alternative<QLaurent>(v));
  EXPECT_EQ(std::get<QLaurent>(v), r + QLaurent(1));
}

TEST(SimplifyToPolynomial, IdentityOnPolynomials) {
  std::mt19937 rng(15);
  for (int i = 0; i < 200; ++i) {
    const auto f = random_laurent(rng, 5);
    const auto v = simplify_to_polynomial(QRatFun(f));
    ASSERT_TRUE(std::holds_alternative<QLaurent>(v));
    EXPECT_EQ(std::get<QLaurent>(v), f);
  }
}

TEST(SimplifyToPolynomial, RecoversProductsOverRandomDivisors) {
  std::mt19937 rng(16);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_laurent(rng, 4);
    auto b = random_laurent(rng, 3);
    if (b.is_zero()) continue;
    const auto v = simplify_to_polynomial(QRatFun(a * b, b));
    ASSERT_TRUE(std::holds_alternative<QLaurent>(v));
    EXPECT_EQ(std::get<QLaurent>(v), a);
  }
}

TEST(QRatFun, ZeroDenominatorRejected) { EXPECT_THROW(QRatFun(QLaurent(1), QLaurent{}), Error); }

TEST(QRatFun, FieldOperationsByCrossMultiplication) {
  const QRatFun a(q, q - QLaurent(1)), b(QLaurent(1), q + QLaurent(1));
  EXPECT_EQ((a + b) - b, a);
  EXPECT_EQ((a * b) / b, a);
}

TEST(SubstituteSquare, Examples) {
  const auto v = substitute_square(QLaurent::q(4) + QLaurent::monomial(6, 3) + QLaurent::monomial(3, 2));
  ASSERT_TRUE(std::holds_alternative<std::vector<Integer>>(v));
  EXPECT_EQ(std::get<std::vector<Integer>>(v), (std::vector<Integer>{0, 0, 0, 0, 3, 0, 6, 0, 1}));
  EXPECT_EQ(std::get<std::vector<Integer>>(substitute_square(QLaurent(1))), std::vector<Integer>{1});
  EXPECT_EQ(std::get<std::vector<Integer>>(substitute_square(QLaurent::q(Rational(1, 2)))), (std::vector<Integer>{0, 1}));
}

TEST(SubstituteSquare, RejectsNonIntegralData) {
  EXPECT_TRUE(std::holds_alternative<NonIntegralBetti>(substitute_square(QLaurent::q(Rational(1, 4)))));
  EXPECT_TRUE(std::holds_alternative<NonIntegralBetti>(substitute_square(QLaurent(Rational(1, 2)))));
  EXPECT_TRUE(std::holds_alternative<NonIntegralBetti>(substitute_square(QLaurent::q(-1))));
}
