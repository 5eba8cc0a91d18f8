#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <string>
#include <vector>

#include "kncenter/scalar.hpp"

namespace kn {

/// Truncated Laurent series in z with exponents in (1/2)Z.
///
/// Exponents are stored doubled: coefficient j sits at z^{(offset2 + 2j)/2},
/// and every coefficient with doubled exponent <= trunc2 is known.  All
/// exponents of a nonzero series share the parity of offset2.
class HalfSeries {
 public:
  /// The zero series known through doubled exponent trunc2.
  explicit HalfSeries(int trunc2 = 0) : off2_(trunc2 + 1), trunc2_(trunc2) {}

  static HalfSeries from_terms(const std::map<int, Scalar>& by_exp2, int trunc2) {
    HalfSeries s(trunc2);
    int parity = INT_MIN;
    for (const auto& [e2, c] : by_exp2) {
      if (c.is_zero() || e2 > trunc2) continue;
      int p = ((e2 % 2) + 2) % 2;
      if (parity == INT_MIN) parity = p;
      if (p != parity) throw Error(ErrorCode::IncompatibleLattice, "mixed integer and half-integer exponents");
    }
    if (parity == INT_MIN) return s;
    int lo = INT_MAX;
    for (const auto& [e2, c] : by_exp2)
      if (!c.is_zero() && e2 <= trunc2) lo = std::min(lo, e2);
    s.off2_ = lo;
    s.c_.assign((trunc2 - lo) / 2 + 1, Scalar());
    for (const auto& [e2, c] : by_exp2)
      if (!c.is_zero() && e2 <= trunc2) s.c_[(e2 - lo) / 2] = c;
    return s;
  }

  /// Integer-exponent series sum_j coeffs[j] z^{offset+j}, exact through z^trunc.
  static HalfSeries from_dense(int offset, const std::vector<Scalar>& coeffs, int trunc) {
    std::map<int, Scalar> m;
    for (std::size_t j = 0; j < coeffs.size(); ++j) m[2 * (offset + static_cast<int>(j))] = coeffs[j];
    return from_terms(m, 2 * trunc);
  }

  static HalfSeries monomial(const Scalar& c, int exp2, int trunc2) { return from_terms({{exp2, c}}, trunc2); }

  bool is_zero() const { return c_.empty(); }
  int offset2() const { return off2_; }
  int trunc2() const { return trunc2_; }
  bool integer_exponents() const { return is_zero() || off2_ % 2 == 0; }

  /// Coefficient of z^{exp2/2}; zero off the lattice or outside the stored range.
  Scalar coeff2(int exp2) const {
    if (exp2 > trunc2_) throw Error(ErrorCode::TableTooSmall, "coefficient beyond truncation order");
    if (is_zero() || exp2 < off2_ || (exp2 - off2_) % 2 != 0) return Scalar();
    std::size_t j = (exp2 - off2_) / 2;
    return j < c_.size() ? c_[j] : Scalar();
  }
  Scalar coeff(int exp) const { return coeff2(2 * exp); }

  /// Nonzero terms keyed by doubled exponent.
  std::map<int, Scalar> terms() const {
    std::map<int, Scalar> m;
    for (std::size_t j = 0; j < c_.size(); ++j)
      if (!c_[j].is_zero()) m[off2_ + 2 * static_cast<int>(j)] = c_[j];
    return m;
  }

  HalfSeries truncated(int trunc2) const {
    auto t = terms();
    return from_terms(t, std::min(trunc2, trunc2_));
  }

  HalfSeries operator-() const {
    HalfSeries s = *this;
    for (auto& c : s.c_) c = -c;
    return s;
  }

  friend HalfSeries operator+(const HalfSeries& a, const HalfSeries& b) {
    const int t = std::min(a.trunc2_, b.trunc2_);
    if (!a.is_zero() && !b.is_zero() && (a.off2_ - b.off2_) % 2 != 0)
      throw Error(ErrorCode::IncompatibleLattice, "adding series on different half-integer lattices");
    std::map<int, Scalar> m = a.terms();
    for (const auto& [e, c] : b.terms()) m[e] += c;
    return from_terms(m, t);
  }
  friend HalfSeries operator-(const HalfSeries& a, const HalfSeries& b) { return a + (-b); }

  /// Truncation of a product: min(trunc_a + off_b, trunc_b + off_a).
  friend HalfSeries operator*(const HalfSeries& a, const HalfSeries& b) {
    const int t = std::min(a.trunc2_ + b.off2_, b.trunc2_ + a.off2_);
    if (a.is_zero() || b.is_zero()) return HalfSeries(t);
    std::map<int, Scalar> m;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      const int ei = a.off2_ + 2 * static_cast<int>(i);
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        const int e = ei + b.off2_ + 2 * static_cast<int>(j);
        if (e > t) break;
        if (!b.c_[j].is_zero()) m[e] += a.c_[i] * b.c_[j];
      }
    }
    return from_terms(m, t);
  }

  HalfSeries scaled(const Scalar& k) const {
    std::map<int, Scalar> m;
    for (const auto& [e, c] : terms()) m[e] = c * k;
    return from_terms(m, trunc2_);
  }

  /// Multiplication by z^{exp2/2}.
  HalfSeries shifted(int exp2) const {
    std::map<int, Scalar> m;
    for (const auto& [e, c] : terms()) m[e + exp2] = c;
    return from_terms(m, trunc2_ + exp2);
  }

  HalfSeries derivative() const {
    std::map<int, Scalar> m;
    for (const auto& [e, c] : terms()) m[e - 2] = c * Scalar(frac(e, 2));
    return from_terms(m, trunc2_ - 2);
  }

  Scalar leading() const {
    if (is_zero()) throw Error(ErrorCode::NotInvertible, "zero series has no leading term");
    return c_.front();
  }

  friend bool operator==(const HalfSeries& a, const HalfSeries& b) {
    return a.trunc2_ == b.trunc2_ && a.terms() == b.terms();
  }

 private:
  int off2_;
  int trunc2_;
  std::vector<Scalar> c_;
};

/// Term-by-term antiderivative with zero constant.
inline HalfSeries series_integrate(const HalfSeries& f) {
  std::map<int, Scalar> m;
  for (const auto& [e, c] : f.terms()) {
    if (e == -2) throw Error(ErrorCode::NonIntegrablePole, "z^-1 term cannot be integrated");
    m[e + 2] = c * Scalar(frac(2, e + 2));
  }
  return HalfSeries::from_terms(m, f.trunc2() + 2);
}

/// Newton coefficient binom(e, k) for rational e.
inline Rat binom_rat(const Rat& e, long k) {
  Rat b = 1;
  for (long i = 0; i < k; ++i) b = b * (e - i) / (i + 1);
  return b;
}

/// lead^e for a single-term Scalar and e in (1/2)Z.
inline Scalar unit_power(const Scalar& lead, const Rat& e) {
  if (e.get_den() == 1) return lead.pow(e.get_num().get_si());
  if (e.get_den() != 2) throw Error(ErrorCode::InconsistentParams, "only half-integer powers are supported");
  return lead.sqrt_unit().pow(e.get_num().get_si());
}

namespace detail {

// Splits f = lead * z^alpha * (1 + g) and returns the coefficients of
// 1 + g through relative degree `n`.
inline std::vector<Scalar> unit_part(const HalfSeries& f, int n) {
  const Scalar inv = f.leading().inverse();
  std::vector<Scalar> u(n + 1);
  for (int j = 0; j <= n; ++j) u[j] = f.coeff2(f.offset2() + 2 * j) * inv;
  return u;
}

// Doubled truncation of f^e, capped by `order` (absolute, integer exponent).
inline int power_trunc2(const HalfSeries& f, const Rat& e, int order) {
  const Rat two_alpha_e = e * f.offset2();
  if (two_alpha_e.get_den() != 1) throw Error(ErrorCode::InconsistentParams, "result exponent outside (1/2)Z");
  const int base2 = static_cast<int>(two_alpha_e.get_num().get_si());
  return std::min(2 * order, base2 + (f.trunc2() - f.offset2()));
}

}  // namespace detail

/// f^e via the Newton binomial series of the unit part.
inline HalfSeries series_frac_pow(const HalfSeries& f, const Rat& e, int order) {
  if (f.is_zero()) throw Error(ErrorCode::NotInvertible, "power of the zero series");
  if (e.get_den() == 2 && f.offset2() % 2 != 0)
    throw Error(ErrorCode::InconsistentParams, "half power needs an integer offset");
  const Scalar lead = f.leading();
  if (!lead.is_unit()) throw Error(ErrorCode::NotInvertible, "leading coefficient is not a unit");
  const Scalar lead_e = unit_power(lead, e);
  const int base2 = static_cast<int>(Rat(e * f.offset2()).get_num().get_si());
  const int t2 = detail::power_trunc2(f, e, order);
  if (t2 < base2) return HalfSeries(t2);
  const int n = (t2 - base2) / 2;
  std::vector<Scalar> u = detail::unit_part(f, n);
  std::vector<Scalar> g(u);
  g[0] = Scalar();
  std::vector<Scalar> acc(n + 1), gk(n + 1);
  gk[0] = Scalar(1);
  for (int k = 0; k <= n; ++k) {
    Rat b = binom_rat(e, k);
    for (int j = k; j <= n; ++j)
      if (!gk[j].is_zero()) acc[j] += gk[j] * Scalar(b);
    if (k == n) break;
    std::vector<Scalar> next(n + 1);
    for (int i = k; i <= n; ++i) {
      if (gk[i].is_zero()) continue;
      for (int j = 1; i + j <= n; ++j)
        if (!g[j].is_zero()) next[i + j] += gk[i] * g[j];
    }
    gk = std::move(next);
  }
  std::map<int, Scalar> m;
  for (int j = 0; j <= n; ++j) m[base2 + 2 * j] = acc[j] * lead_e;
  return HalfSeries::from_terms(m, t2);
}

}  // namespace kn
