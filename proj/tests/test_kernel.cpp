#include <gtest/gtest.h>

#include <random>

#include "kncenter/matrix.hpp"
#include "kncenter/parse.hpp"
#include "kncenter/series.hpp"

using namespace kn;

namespace {

Scalar S(const char* s) { return parse_scalar(s); }

Cyclo random_cyclo(std::mt19937& rng, int m) {
  std::uniform_int_distribution<int> d(-5, 5);
  std::vector<Rat> poly(m);
  for (auto& q : poly) q = frac(d(rng), std::abs(d(rng)) + 1);
  return Cyclo::from_powers(m, poly);
}

Scalar random_scalar(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3), n(0, 3);
  Scalar s;
  const char* names[] = {"c", "b", "s1"};
  int terms = n(rng) + 1;
  for (int t = 0; t < terms; ++t) {
    Scalar mono(frac(d(rng), n(rng) + 1));
    for (const char* v : names) mono *= Scalar::var(v).pow(d(rng));
    if (n(rng) == 0) mono *= Scalar::zeta(6, d(rng));
    s += mono;
  }
  return s;
}

}  // namespace

TEST(Cyclotomic, PolynomialsFromDivisorIdentity) {
  EXPECT_EQ(cyclotomic_poly(1), (IntPoly{-1, 1}));
  EXPECT_EQ(cyclotomic_poly(4), (IntPoly{1, 0, 1}));
  EXPECT_EQ(cyclotomic_poly(6), (IntPoly{1, -1, 1}));
  EXPECT_EQ(cyclotomic_poly(12), (IntPoly{1, 0, -1, 0, 1}));
  EXPECT_EQ(euler_phi(24), 8);
}

TEST(Cyclotomic, ReductionAndDemotion) {
  Cyclo z4 = Cyclo::zeta(4);
  EXPECT_TRUE((z4 * z4).is_rational());
  EXPECT_EQ(z4 * z4, Cyclo(-1));
  EXPECT_EQ(Cyclo::zeta(8).pow(2), Cyclo::zeta(4));
  EXPECT_EQ(Cyclo::zeta(6).pow(6), Cyclo(1));
  EXPECT_EQ(Cyclo::zeta(3) + Cyclo::zeta(3, 2), Cyclo(-1));
  EXPECT_EQ(Cyclo::zeta(6).conj(), Cyclo::zeta(6, 5));
}

TEST(Cyclotomic, InverseOfZeta6) {
  Cyclo z = Cyclo::zeta(6);
  Cyclo inv = z.inverse();
  EXPECT_EQ(inv, Cyclo::zeta(6, 5));
  // zeta6 * (zeta6 - 1) reduces to -1 mod x^2 - x + 1, so the inverse is 1 - zeta6.
  EXPECT_EQ(inv, Cyclo(1) - z);
  EXPECT_EQ(z * (z - Cyclo(1)), Cyclo(-1));
  EXPECT_EQ(z * inv, Cyclo(1));
}

TEST(Cyclotomic, RandomFieldInverses) {
  std::mt19937 rng(7);
  int checked = 0;
  for (int m : {1, 3, 4, 5, 8, 12}) {
    for (int t = 0; t < 20; ++t) {
      Cyclo x = random_cyclo(rng, m);
      if (x.is_zero()) continue;
      EXPECT_EQ(x * x.inverse(), Cyclo(1)) << x.to_string();
      ++checked;
    }
  }
  EXPECT_GE(checked, 100);
}

TEST(Cyclotomic, MixedOrdersLiftToLcm) {
  Cyclo a = Cyclo::zeta(4) + Cyclo::zeta(6);
  EXPECT_EQ(a.order(), 12);
  EXPECT_EQ(a - Cyclo::zeta(6), Cyclo::zeta(4));
  EXPECT_NEAR(std::abs(a.to_complex() - (std::complex<double>(0, 1) + std::polar(1.0, std::acos(-1.0) / 3))), 0, 1e-12);
}

TEST(Cyclotomic, MinimizedPrinting) {
  EXPECT_EQ(Cyclo::zeta(8).pow(2).to_string(), "zeta(4)");
  EXPECT_EQ((Cyclo::zeta(12).pow(3) * Cyclo(2)).to_string(), "2*zeta(4)");
}

TEST(ScalarOps, MonomialInverse) {
  Scalar s = S("2*c^3");
  EXPECT_EQ(s.inverse(), S("1/2*c^-3"));
  EXPECT_EQ(s * s.inverse(), Scalar(1));
}

TEST(ScalarOps, NonUnitIsNotInvertible) {
  try {
    S("1+c").inverse();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInvertible);
  }
}

TEST(ScalarOps, VariableAlignmentAndPruning) {
  Scalar a = S("c + b"), b = S("c - b");
  Scalar sum = a + b;
  EXPECT_EQ(sum.vars(), std::vector<std::string>{"c"});
  EXPECT_EQ(sum, S("2*c"));
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_TRUE((a - a).vars().empty());
}

TEST(ScalarOps, RingAxiomsOnRandomTriples) {
  std::mt19937 rng(11);
  for (int t = 0; t < 60; ++t) {
    Scalar x = random_scalar(rng), y = random_scalar(rng), z = random_scalar(rng);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ(x + y, y + x);
    EXPECT_EQ(x * y, y * x);
  }
}

TEST(ScalarOps, Substitution) {
  Scalar s = S("c^2*s1 + c^-1");
  EXPECT_EQ(s.substitute("c", S("q^2")), S("q^4*s1 + q^-2"));
  EXPECT_EQ(s.substitute("c", Scalar(2)), S("4*s1 + 1/2"));
}

TEST(ScalarOps, SquareRootOfUnit) {
  EXPECT_EQ(S("4*c^6").sqrt_unit(), S("2*c^3"));
  EXPECT_EQ(S("-9").sqrt_unit(), S("3*zeta(4)"));
}

TEST(ScalarPrint, RationalContentFactored) {
  EXPECT_EQ(S("2*c/3").to_string(), "2*c/3");
  EXPECT_EQ(S("6160/4641*c^4 - 3388/4641*c^2 + 153/4641").to_string(), "(6160*c^4-3388*c^2+153)/4641");
  EXPECT_EQ(S("-c^-3").to_string(), "-c^-3");
  EXPECT_EQ(Scalar().to_string(), "0");
}

TEST(ScalarPrint, RoundTripThroughParser) {
  std::mt19937 rng(3);
  for (int t = 0; t < 80; ++t) {
    Scalar x = random_scalar(rng);
    EXPECT_EQ(parse_scalar(x.to_string()), x) << x.to_string();
  }
}

TEST(ScalarParse, Grammar) {
  EXPECT_EQ(S(" ( c + 1 ) ^ 2 "), S("c^2 + 2*c + 1"));
  EXPECT_EQ(S("--3"), Scalar(3));
  EXPECT_EQ(S("zeta(4)^2"), Scalar(-1));
  EXPECT_EQ(S("8*b*(128*b^2-37)/1235"), S("1024/1235*b^3 - 296/1235*b"));
  for (const char* bad : {"", "1+", "c/(1+c)", "(c", "c^", "zeta(0)", "1 $ 2", "c^-1.5"}) {
    try {
      S(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
    }
  }
}

TEST(Series, IntegratePowerRule) {
  HalfSeries f = HalfSeries::monomial(Scalar(1), 1, 9);
  HalfSeries g = series_integrate(f);
  EXPECT_EQ(g.coeff2(3), Scalar(frac(2, 3)));
  HalfSeries h = series_integrate(HalfSeries::from_dense(0, {Scalar(1), Scalar(1)}, 4));
  EXPECT_EQ(h.coeff(1), Scalar(1));
  EXPECT_EQ(h.coeff(2), Scalar(frac(1, 2)));
  EXPECT_TRUE(h.coeff(0).is_zero());
}

TEST(Series, IntegrateRejectsResidue) {
  try {
    series_integrate(HalfSeries::monomial(Scalar(1), -2, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonIntegrablePole);
  }
}

TEST(Series, IntegrateThenDifferentiate) {
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    std::map<int, Scalar> m;
    int parity = t % 2;
    for (int e2 = -5 + parity; e2 <= 9; e2 += 2)
      if (e2 != -2) m[e2] = random_scalar(rng);
    HalfSeries f = HalfSeries::from_terms(m, 9 + parity);
    HalfSeries back = series_integrate(f).derivative();
    EXPECT_EQ(back.trunc2(), f.trunc2());
    EXPECT_EQ(back, f);
  }
}

TEST(Series, MixedLatticesRejected) {
  HalfSeries a = HalfSeries::monomial(Scalar(1), 0, 6), b = HalfSeries::monomial(Scalar(1), 1, 6);
  EXPECT_THROW(a + b, Error);
  EXPECT_EQ((a * b).offset2(), 1);
}

TEST(Series, ProductTruncation) {
  // (z + O(z^3)) * (1 + O(z^5)) is known through z^3.
  HalfSeries a = HalfSeries::from_dense(1, {Scalar(1)}, 3);
  HalfSeries b = HalfSeries::from_dense(0, {Scalar(1)}, 5);
  EXPECT_EQ((a * b).trunc2(), 6);
}

TEST(Series, BinomialSquareRoot) {
  HalfSeries f = HalfSeries::from_dense(0, {Scalar(1), Scalar(1)}, 40);
  HalfSeries g = series_frac_pow(f, frac(1, 2), 2);
  EXPECT_EQ(g, HalfSeries::from_dense(0, {Scalar(1), Scalar(frac(1, 2)), Scalar(frac(-1, 8))}, 2));
}

TEST(Series, InverseThreeHalves) {
  HalfSeries f = HalfSeries::from_dense(0, {Scalar(1), Scalar(), S("-2*c"), Scalar(), Scalar(1)}, 40);
  HalfSeries g = series_frac_pow(f, frac(-3, 2), 2);
  EXPECT_EQ(g.coeff(0), Scalar(1));
  EXPECT_EQ(g.coeff(2), S("3*c"));
  HalfSeries g8 = series_frac_pow(f, frac(-3, 2), 12);
  HalfSeries check = g8 * g8 * f * f * f;
  EXPECT_EQ(check, HalfSeries::from_dense(0, {Scalar(1)}, 12));
}

TEST(Series, SquareRootWithHalfOffset) {
  std::mt19937 rng(9);
  for (int t = 0; t < 10; ++t) {
    std::vector<Scalar> cs{S("4*c^2")};
    for (int j = 0; j < 5; ++j) cs.push_back(random_scalar(rng));
    HalfSeries f = HalfSeries::from_dense(1, cs, 6);
    HalfSeries g = series_frac_pow(f, frac(1, 2), 20);
    EXPECT_EQ(g.offset2(), 1);
    EXPECT_EQ(g * g, f);
  }
}

TEST(MatrixOps, TraceAndPower) {
  Matrix m(2, 2);
  m(0, 1) = Scalar(1);
  m(1, 0) = Scalar(1);
  EXPECT_EQ(m.pow(2), Matrix::identity(2));
  EXPECT_TRUE(m.trace().is_zero());
  Matrix d(2, 2);
  d(0, 0) = Scalar::zeta(6);
  d(1, 1) = Scalar::zeta(6, -1);
  EXPECT_EQ(d.pow(6), Matrix::identity(2));
  EXPECT_EQ(d.trace(), Scalar(1));
}
