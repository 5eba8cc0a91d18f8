#include <gtest/gtest.h>

#include <random>

#include "kncenter/genseries.hpp"
#include "test_support.hpp"

using namespace kn;
using kn::testing::S;

namespace {

struct Printed {
  int i;
  int exp;
  const char* value;
};

// Printed coefficients of P_i(z) and Q_i(z) for p = t^5 - 2ct^3 + t.
const Printed kQuinticP[] = {
    {-1, 3, "1"}, {-1, 5, "2*c/3"}, {-1, 7, "28*c^2/39-1/13"}, {-1, 9, "616*c^3/663-196*c/663"},
    {-1, 11, "(6160*c^4-3388*c^2+153)/4641"},
    {-2, 2, "1"}, {-2, 4, "2*c/7"}, {-2, 6, "20*c^2/77+1/11"}, {-2, 8, "24*c^3/77+4*c/77"},
    {-2, 10, "624*c^4/1463-36*c^2/1463-7/209"},
    {-3, 1, "1"}, {-3, 5, "1/3"}, {-3, 7, "14*c/39"}, {-3, 9, "308*c^2/663-5/51"}, {-3, 11, "440*c^3/663-1364*c/4641"},
    {-4, 0, "1"}, {-4, 4, "5/7"}, {-4, 6, "50*c/77"}, {-4, 8, "60*c^2/77-1/7"}, {-4, 10, "12*c*(130*c^2-53)/1463"},
};
const Printed kQuinticQ[] = {
    {-1, 6, "1"}, {-1, 10, "5/7"}, {-1, 12, "50*c/77"}, {-1, 14, "60*c^2/77-1/7"}, {-1, 16, "12*c*(130*c^2-53)/1463"},
    {-2, 7, "1"}, {-2, 11, "1/3"}, {-2, 13, "14*c/39"}, {-2, 15, "(308*c^2-65)/663"}, {-2, 17, "44*c*(70*c^2-31)/4641"},
    {-3, 8, "1"}, {-3, 10, "2*c/7"}, {-3, 12, "(20*c^2+7)/77"}, {-3, 14, "4*(6*c^3+c)/77"},
    {-3, 16, "(624*c^4-36*c^2-49)/1463"},
    {-4, 9, "1"}, {-4, 11, "2*c/3"}, {-4, 13, "(28*c^2-3)/39"}, {-4, 15, "28*c*(22*c^2-7)/663"},
    {-4, 17, "(6160*c^4-3388*c^2+153)/4641"},
};

}  // namespace

TEST(Bell, SmallValues) {
  std::vector<Scalar> z{S("z1"), S("z2"), S("z3")};
  EXPECT_EQ(bell_partial(0, 0, {}), Scalar(1));
  EXPECT_EQ(bell_partial(3, 1, z), S("z3"));
  EXPECT_EQ(bell_partial(3, 2, z), S("3*z1*z2"));
  EXPECT_EQ(bell_partial(3, 3, z), S("z1^3"));
  EXPECT_TRUE(bell_partial(2, 3, z).is_zero());
}

TEST(Bell, PartitionSumMatchesRecurrence) {
  std::vector<Scalar> z;
  for (int j = 1; j <= 8; ++j) z.push_back(Scalar::var("z" + std::to_string(j)));
  auto B = bell_table(8, z);
  for (int m = 0; m <= 8; ++m)
    for (int k = 0; k <= m; ++k) EXPECT_EQ(B[m][k], bell_partial(m, k, z)) << m << "," << k;
  // Stirling numbers of the second kind at all-ones arguments.
  std::vector<Scalar> ones(8, Scalar(1));
  EXPECT_EQ(bell_partial(6, 3, ones), Scalar(90));
}

TEST(DoubleFactorial, Conventions) {
  EXPECT_EQ(double_factorial(-1), Rat(1));
  EXPECT_EQ(double_factorial(-3), Rat(-1));
  EXPECT_EQ(double_factorial(7), Rat(105));
  EXPECT_EQ(double_factorial(0), Rat(1));
}

TEST(FaaDiBruno, AgreesWithNewtonSeries) {
  HalfSeries f = HalfSeries::from_dense(0, {Scalar(1), Scalar(), S("-2*c"), Scalar(), Scalar(1)}, 60);
  HalfSeries g = faa_di_bruno_pow(f, frac(-3, 2), 2);
  EXPECT_EQ(g.coeff(2), S("3*c"));
  for (Rat e : {frac(-3, 2), frac(1, 2)}) EXPECT_EQ(faa_di_bruno_pow(f, e, 16), series_frac_pow(f, e, 16));
  HalfSeries h = HalfSeries::from_dense(0, {Scalar(1), Scalar(1)}, 10);
  EXPECT_EQ(faa_di_bruno_pow(h, frac(1, 2), 2),
            HalfSeries::from_dense(0, {Scalar(1), Scalar(frac(1, 2)), Scalar(frac(-1, 8))}, 2));
}

TEST(FaaDiBruno, RandomUnitSeries) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int t = 0; t < 10; ++t) {
    std::vector<Scalar> cs{S("c^2")};
    for (int j = 0; j < 6; ++j) cs.push_back(Scalar(frac(d(rng), 3)) * Scalar::var("c").pow(d(rng)));
    HalfSeries f = HalfSeries::from_dense(1, cs, 6);
    for (Rat e : {frac(-3, 2), frac(1, 2)}) EXPECT_EQ(faa_di_bruno_pow(f, e, 20), series_frac_pow(f, e, 20));
  }
}

TEST(Rhs, ClosedForms) {
  CurveSpec q = kn::testing::quintic();
  EXPECT_EQ(series_R(q, -1, 20), HalfSeries::from_terms({{6, S("5")}}, 40));
  EXPECT_EQ(series_R(q, -2, 20), HalfSeries::from_terms({{4, S("3")}}, 40));
  EXPECT_EQ(series_R(q, -3, 20), HalfSeries::from_terms({{6, S("2*c")}, {2, S("1")}}, 40));
  EXPECT_EQ(series_R(q, -4, 20), HalfSeries::from_terms({{4, S("6*c")}, {0, S("-1")}}, 40));
  EXPECT_EQ(series_S(q, -1, 20), HalfSeries::from_terms({{14, S("-1")}, {18, S("6*c")}}, 40));
  EXPECT_EQ(series_S(q, -2, 20), HalfSeries::from_terms({{16, S("1")}, {20, S("2*c")}}, 40));
  EXPECT_EQ(series_S(q, -3, 20), HalfSeries::from_terms({{18, S("3")}}, 40));
  EXPECT_EQ(series_S(q, -4, 20), HalfSeries::from_terms({{20, S("5")}}, 40));
  EXPECT_EQ(series_R(kn::testing::septic(), -1, 20), HalfSeries::from_terms({{10, S("7")}}, 40));
}

TEST(GenP, PrintedQuinticCoefficients) {
  for (const auto& p : kQuinticP) {
    HalfSeries s = gen_P(kn::testing::quintic(), p.i, 11);
    EXPECT_EQ(s.coeff(p.exp), S(p.value)) << "P_" << p.i << " z^" << p.exp;
  }
}

TEST(GenP, PrintedSepticCoefficients) {
  HalfSeries s = gen_P(kn::testing::septic(), -1, 14, Route::Bell);
  HalfSeries want = HalfSeries::from_dense(5, {Scalar(1), Scalar(), Scalar(), S("8*b/13"), Scalar(), Scalar(),
                                              S("(160*b^2-13)/247"), Scalar(), Scalar(), S("8*b*(128*b^2-37)/1235")},
                                           14);
  EXPECT_EQ(s, want);
}

TEST(GenQ, PrintedQuinticCoefficients) {
  for (const auto& p : kQuinticQ) {
    HalfSeries s = gen_Q(kn::testing::quintic(), p.i, 17);
    EXPECT_EQ(s.coeff(p.exp), S(p.value)) << "Q_" << p.i << " z^" << p.exp;
  }
  HalfSeries s3 = gen_Q(kn::testing::quintic(), -3, 12);
  EXPECT_EQ(s3, HalfSeries::from_dense(8, {Scalar(1), Scalar(), S("2*c/7"), Scalar(), S("(20*c^2+7)/77")}, 12));
}

TEST(GenP, RoutesAndRecursionAgree) {
  for (const CurveSpec& curve : {kn::testing::quintic(), kn::testing::septic()}) {
    const int r = curve.r();
    PTable P = compute_P(curve, 20);
    QTable Q = compute_Q(curve, 20);
    for (int i = -r; i <= -1; ++i) {
      HalfSeries direct = gen_P(curve, i, 20, Route::Direct);
      EXPECT_EQ(direct, gen_P(curve, i, 20, Route::Bell));
      for (int k = -r; k + r <= 20; ++k) EXPECT_EQ(direct.coeff(k + r), P.at(k, i)) << k << "," << i;
      EXPECT_TRUE(direct.coeff(-1).is_zero());
      HalfSeries q = gen_Q(curve, i, 20);
      EXPECT_EQ(q, gen_Q(curve, i, 20, Route::Bell));
      for (int k = 1; k + r + 1 <= 20; ++k) EXPECT_EQ(q.coeff(k + r + 1), Q.at(k, i)) << k << "," << i;
    }
  }
}

TEST(Ode, ResidualsVanish) {
  for (const CurveSpec& curve : {kn::testing::quintic(), kn::testing::septic()})
    for (int i = -curve.r(); i <= -1; ++i) {
      OdeData dp = ode_data(curve, OdeKind::PSide, i, 18);
      HalfSeries res = ode_residual(dp, gen_P(curve, i, 18));
      EXPECT_TRUE(res.is_zero());
      EXPECT_GE(res.trunc2(), 2 * 17);
      OdeData dq = ode_data(curve, OdeKind::QSide, i, 18);
      EXPECT_TRUE(ode_residual(dq, gen_Q(curve, i, 18)).is_zero());
    }
}

TEST(Ode, ZeroSeriesLeavesMinusRhs) {
  OdeData d = ode_data(kn::testing::quintic(), OdeKind::PSide, -4, 10);
  HalfSeries res = ode_residual(d, HalfSeries(20));
  EXPECT_EQ(res, (-d.rhs).truncated(res.trunc2()));
}

TEST(Ode, IntegratingFactorMakesExactDerivative) {
  // (mu S)' = mu R / (2 z T) on the P side.
  CurveSpec curve = kn::testing::quintic();
  OdeData d = ode_data(curve, OdeKind::PSide, -1, 16);
  HalfSeries s = gen_P(curve, -1, 16);
  HalfSeries lhs = (d.mu * s).derivative();
  HalfSeries rhs = d.mu * d.rhs * series_frac_pow(d.base, Rat(-1), 16).shifted(-2).scaled(Scalar(frac(1, 2)));
  EXPECT_TRUE((lhs - rhs).is_zero());
}
