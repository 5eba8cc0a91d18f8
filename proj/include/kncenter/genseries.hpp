#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kncenter/recursions.hpp"
#include "kncenter/series.hpp"

namespace kn {

/// n!! with (-1)!! = 1 and (n)!! = (n+2)!!/(n+2) below that.
inline Rat double_factorial(long n) {
  if (n >= 0) {
    mpz_class p = 1;
    for (long k = n; k > 1; k -= 2) p *= k;
    return Rat(p);
  }
  if (n % 2 == 0) throw Error(ErrorCode::InconsistentParams, "double factorial of a negative even number");
  // Walk down from (-1)!! = 1 using (k-2)!! = k!!/k.
  Rat v = 1;
  for (long k = -1; k > n; k -= 2) v /= k;
  return v;
}

inline mpz_class factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

inline mpz_class binomial(long n, long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

/// B_{m,k}(z_1, ..., z_{m-k+1}) as a sum over multiplicity vectors.
inline Scalar bell_partial(int m, int k, const std::vector<Scalar>& args) {
  if (m == 0 && k == 0) return Scalar(1);
  if (k <= 0 || k > m) return Scalar();
  const int len = m - k + 1;
  if (static_cast<int>(args.size()) < len) throw Error(ErrorCode::InconsistentParams, "too few Bell arguments");
  Scalar total;
  std::vector<int> l(len + 1, 0);
  // Choose l_j from j = len down to 1 with remaining block count and weight.
  std::function<void(int, int, int)> rec = [&](int j, int blocks, int weight) {
    if (j == 0) {
      if (blocks != 0 || weight != 0) return;
      mpz_class den = 1;
      Scalar prod(1);
      for (int q = 1; q <= len; ++q) {
        if (l[q] == 0) continue;
        den *= factorial(l[q]);
        mpz_class jf = factorial(q);
        for (int t = 0; t < l[q]; ++t) den *= jf;
        prod *= args[q - 1].pow(l[q]);
      }
      total += prod * Scalar(frac(factorial(m), den));
      return;
    }
    for (int c = 0; c * j <= weight && c <= blocks; ++c) {
      l[j] = c;
      rec(j - 1, blocks - c, weight - c * j);
    }
    l[j] = 0;
  };
  rec(len, k, m);
  return total;
}

/// B_{m,k} for 0 <= k <= m <= mmax through the standard recurrence.
inline std::vector<std::vector<Scalar>> bell_table(int mmax, const std::vector<Scalar>& x) {
  std::vector<std::vector<Scalar>> B(mmax + 1, std::vector<Scalar>(mmax + 1));
  B[0][0] = Scalar(1);
  for (int m = 1; m <= mmax; ++m)
    for (int k = 1; k <= m; ++k) {
      Scalar s;
      for (int i = 1; i <= m - k + 1; ++i) {
        if (x[i - 1].is_zero() || B[m - i][k - 1].is_zero()) continue;
        s += x[i - 1] * B[m - i][k - 1] * Scalar(Rat(binomial(m - 1, i - 1)));
      }
      B[m][k] = s;
    }
  return B;
}

/// l-th derivative of x^e at x = 1 for e = -3/2 or 1/2.
inline Rat outer_derivative(const Rat& e, long l) {
  const Rat sign = l % 2 == 0 ? Rat(1) : Rat(-1);
  const Rat two_l = Rat(mpz_class(1) << static_cast<mp_bitcnt_t>(l));
  if (e == frac(-3, 2)) return sign * double_factorial(2 * l + 1) / two_l;
  if (e == frac(1, 2)) return -sign * double_factorial(2 * l - 3) / two_l;
  throw Error(ErrorCode::InconsistentParams, "Faa di Bruno route supports e = 1/2 and e = -3/2");
}

/// f^e expanded with Faa di Bruno over Bell polynomials of the unit part.
inline HalfSeries faa_di_bruno_pow(const HalfSeries& f, const Rat& e, int order) {
  if (f.is_zero()) throw Error(ErrorCode::NotInvertible, "power of the zero series");
  if (f.offset2() % 2 != 0) throw Error(ErrorCode::InconsistentParams, "half power needs an integer offset");
  const Scalar lead = f.leading();
  if (!lead.is_unit()) throw Error(ErrorCode::NotInvertible, "leading coefficient is not a unit");
  const Scalar lead_e = unit_power(lead, e);
  const int base2 = static_cast<int>(Rat(e * f.offset2()).get_num().get_si());
  const int t2 = detail::power_trunc2(f, e, order);
  if (t2 < base2) return HalfSeries(t2);
  const int n = (t2 - base2) / 2;
  std::vector<Scalar> u = detail::unit_part(f, n);
  // Derivatives of the unit part at 0: u^{(j)}(0) = j! u_j.
  std::vector<Scalar> x(n + 1);
  for (int j = 1; j <= n; ++j) x[j - 1] = u[j] * Scalar(Rat(factorial(j)));
  auto B = bell_table(n, x);
  std::map<int, Scalar> m;
  for (int k = 0; k <= n; ++k) {
    Scalar s;
    for (int l = 0; l <= k; ++l)
      if (!B[k][l].is_zero()) s += B[k][l] * Scalar(outer_derivative(e, l));
    m[base2 + 2 * k] = s * Scalar(frac(1, factorial(k))) * lead_e;
  }
  return HalfSeries::from_terms(m, t2);
}

enum class Route { Direct, Bell };
enum class OdeKind { PSide, QSide };

/// Data of the first-order ODE 2 z B S' - Qfun S = rhs for one generating series.
struct OdeData {
  CurveSpec curve;
  OdeKind kind;
  int i;
  HalfSeries base;  // T(z) on the P side, P(z) on the Q side
  HalfSeries qfun;
  HalfSeries rhs;   // R_i or S_i
  HalfSeries mu;    // integrating factor
};

namespace detail {

inline int exact_trunc2(const CurveSpec& curve, int order) { return 2 * (order + 2 * curve.r() + 8); }

inline HalfSeries frac_pow_route(const HalfSeries& f, const Rat& e, int order, Route route) {
  return route == Route::Direct ? series_frac_pow(f, e, order) : faa_di_bruno_pow(f, e, order);
}

}  // namespace detail

/// T(z) = sum_j a_j z^{r+1-j}.
inline HalfSeries series_T(const CurveSpec& curve, int trunc) {
  std::map<int, Scalar> m;
  for (const auto& [j, a] : curve.coeffs()) m[2 * (curve.r() + 1 - j)] = a;
  return HalfSeries::from_terms(m, 2 * trunc);
}

/// P(z) = sum_j a_j z^j.
inline HalfSeries series_p(const CurveSpec& curve, int trunc) {
  std::map<int, Scalar> m;
  for (const auto& [j, a] : curve.coeffs()) m[2 * j] = a;
  return HalfSeries::from_terms(m, 2 * trunc);
}

/// R_i(z) = sum_j sum_{1-j <= k < 0} (3j + 2k - 2r) a_j delta_{k+j-r-1,i} z^{k+r}.
inline HalfSeries series_R(const CurveSpec& curve, int i, int trunc) {
  const int r = curve.r();
  std::map<int, Scalar> m;
  for (int j = 1; j <= r + 1; ++j)
    for (int k = 1 - j; k < 0; ++k)
      if (k + j - r - 1 == i) m[2 * (k + r)] += Scalar(3 * j + 2 * k - 2 * r) * curve.a(j);
  return HalfSeries::from_terms(m, 2 * trunc);
}

/// S_i(z) = -sum_{m=1}^{r+1} sum_{j=1}^{m-1} (3j - 2m + 2) a_j Q_{m-j,i} z^{m+r+1}.
inline HalfSeries series_S(const CurveSpec& curve, int i, int trunc) {
  const int r = curve.r();
  auto Q = [&](int m) { return m == -i ? 1 : 0; };  // initial rows only: m - j <= r
  std::map<int, Scalar> m;
  for (int mm = 1; mm <= r + 1; ++mm)
    for (int j = 1; j <= mm - 1; ++j)
      if (Q(mm - j)) m[2 * (mm + r + 1)] -= Scalar(3 * j - 2 * mm + 2) * curve.a(j);
  return HalfSeries::from_terms(m, 2 * trunc);
}

inline OdeData ode_data(const CurveSpec& curve, OdeKind kind, int i, int order) {
  const int r = curve.r();
  if (i < -r || i > -1) throw Error(ErrorCode::InconsistentParams, "series index must satisfy -r <= i <= -1");
  const int big = order + 2 * r + 8;
  OdeData d{curve, kind, i, HalfSeries(), HalfSeries(), HalfSeries(), HalfSeries()};
  const HalfSeries z = HalfSeries::monomial(Scalar(1), 2, 2 * big);
  if (kind == OdeKind::PSide) {
    d.base = series_T(curve, big);
    d.qfun = z * d.base.derivative() + d.base.scaled(Scalar(r - 3));
    d.rhs = series_R(curve, i, big);
    d.mu = series_frac_pow(d.base, frac(-1, 2), order).shifted(-(r - 3));
  } else {
    d.base = series_p(curve, big);
    d.qfun = z * d.base.derivative() + d.base.scaled(Scalar(2 * (r + 2)));
    d.rhs = series_S(curve, i, big);
    d.mu = series_frac_pow(d.base, frac(-1, 2), order).shifted(-2 * (r + 2));
  }
  return d;
}

/// 2 z B S' - Qfun S - rhs.
inline HalfSeries ode_residual(const OdeData& d, const HalfSeries& s) {
  const HalfSeries z = HalfSeries::monomial(Scalar(1), 2, d.base.trunc2());
  return (z * d.base * s.derivative()).scaled(Scalar(2)) - d.qfun * s - d.rhs;
}

/// P_i(z) = z^{(r-3)/2} sqrt(T) int R_i / (2 z^{(r-1)/2} T^{3/2}) dz, zero constant.
/// The coefficient of z^{k+r} is P_{k,i}.
inline HalfSeries gen_P(const CurveSpec& curve, int i, int order, Route route = Route::Direct) {
  const int r = curve.r();
  const int work = order + r + 4;
  const HalfSeries T = series_T(curve, work + 2 * r + 4);
  const HalfSeries R = series_R(curve, i, work + 2 * r + 4);
  const HalfSeries Tm32 = detail::frac_pow_route(T, frac(-3, 2), work, route);
  const HalfSeries sqrtT = detail::frac_pow_route(T, frac(1, 2), work, route);
  HalfSeries integrand = (R * Tm32).shifted(-(r - 1)).scaled(Scalar(frac(1, 2)));
  HalfSeries out = (sqrtT * series_integrate(integrand)).shifted(r - 3);
  if (out.trunc2() < 2 * order) throw Error(ErrorCode::TableTooSmall, "insufficient working precision");
  out = out.truncated(2 * order);
  if (!out.integer_exponents()) throw Error(ErrorCode::IncompatibleLattice, "P series kept half-integer exponents");
  return out;
}

/// Q_i(z) = z^{r+2} sqrt(P) int S_i / (2 z^{r+3} P^{3/2}) dz, zero constant.
/// The coefficient of z^{k+r+1} is Q_{k,i}.
inline HalfSeries gen_Q(const CurveSpec& curve, int i, int order, Route route = Route::Direct) {
  const int r = curve.r();
  if (!curve.a(1).is_unit()) throw Error(ErrorCode::NotInvertible, "a_1 must be a unit");
  const int work = order + r + 4;
  const HalfSeries P = series_p(curve, work + 2 * r + 4);
  const HalfSeries S = series_S(curve, i, work + 2 * r + 4);
  // P = z * (unit), so P^{-3/2} starts at z^{-3/2} and sqrt(P) at z^{1/2}.
  const HalfSeries Pm32 = detail::frac_pow_route(P, frac(-3, 2), work, route);
  const HalfSeries sqrtP = detail::frac_pow_route(P, frac(1, 2), work, route);
  HalfSeries integrand = (S * Pm32).shifted(-2 * (r + 3)).scaled(Scalar(frac(1, 2)));
  HalfSeries out = (sqrtP * series_integrate(integrand)).shifted(2 * (r + 2));
  if (out.trunc2() < 2 * order) throw Error(ErrorCode::TableTooSmall, "insufficient working precision");
  out = out.truncated(2 * order);
  if (!out.integer_exponents()) throw Error(ErrorCode::IncompatibleLattice, "Q series kept half-integer exponents");
  return out;
}

}  // namespace kn
