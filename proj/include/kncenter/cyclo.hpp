#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "kncenter/error.hpp"

namespace kn {

using Rat = mpq_class;

/// Canonical a/b; mpq_class(a, b) alone does not reduce.
inline Rat frac(const mpz_class& a, const mpz_class& b) {
  if (b == 0) throw Error(ErrorCode::NotInvertible, "zero denominator");
  Rat q(a, b);
  q.canonicalize();
  return q;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

/// Integer polynomial, ascending coefficients.
using IntPoly = std::vector<long>;

namespace detail {

// Exact quotient of a by the monic polynomial b.
inline IntPoly divide_monic(IntPoly a, const IntPoly& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {0};
  IntPoly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    long lead = a[i];
    q[i - db] = lead;
    if (lead == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= lead * b[j];
  }
  return q;
}

inline std::vector<int> divisors(int m) {
  std::vector<int> out;
  for (int d = 1; d <= m; ++d)
    if (m % d == 0) out.push_back(d);
  return out;
}

}  // namespace detail

/// Phi_m from x^m - 1 = prod_{d | m} Phi_d.
inline IntPoly cyclotomic_poly(int m) {
  if (m < 1) throw Error(ErrorCode::InconsistentParams, "cyclotomic order must be positive");
  thread_local std::map<int, IntPoly> cache;
  if (auto it = cache.find(m); it != cache.end()) return it->second;
  IntPoly p(m + 1, 0);
  p[0] = -1;
  p[m] = 1;
  for (int d : detail::divisors(m))
    if (d < m) p = detail::divide_monic(p, cyclotomic_poly(d));
  cache[m] = p;
  return p;
}

inline int euler_phi(int m) { return static_cast<int>(cyclotomic_poly(m).size()) - 1; }

/// Element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^{phi(m)-1}.
/// Rational values are always stored with order 1.
class Cyclo {
 public:
  Cyclo() : m_(1), c_{Rat(0)} {}
  Cyclo(long v) : m_(1), c_{Rat(v)} {}  // NOLINT(google-explicit-constructor)
  Cyclo(const Rat& q) : m_(1), c_{q} {}  // NOLINT(google-explicit-constructor)

  /// Reduces sum_j poly[j] zeta_m^j (any length) into canonical form.
  static Cyclo from_powers(int m, const std::vector<Rat>& poly) {
    std::vector<Rat> folded(m, Rat(0));
    for (std::size_t j = 0; j < poly.size(); ++j) folded[j % m] += poly[j];
    const IntPoly phi = cyclotomic_poly(m);
    const std::size_t d = phi.size() - 1;
    for (std::size_t i = folded.size(); i-- > d;) {
      if (folded[i] == 0) continue;
      Rat lead = folded[i];
      for (std::size_t j = 0; j <= d; ++j) folded[i - d + j] -= lead * phi[j];
    }
    folded.resize(d);
    Cyclo out;
    out.m_ = m;
    out.c_ = std::move(folded);
    out.demote();
    return out;
  }

  static Cyclo zeta(int m, long j = 1) {
    long e = ((j % m) + m) % m;
    std::vector<Rat> poly(e + 1, Rat(0));
    poly[e] = 1;
    return from_powers(m, poly);
  }

  int order() const { return m_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& q : c_)
      if (q != 0) return false;
    return true;
  }
  bool is_rational() const { return m_ == 1; }
  const Rat& rational() const {
    if (m_ != 1) throw Error(ErrorCode::InconsistentParams, "cyclotomic value is not rational");
    return c_[0];
  }

  Cyclo lift(int M) const {
    if (M == m_) return *this;
    if (M % m_ != 0) throw Error(ErrorCode::InconsistentParams, "cannot lift to a non-multiple order");
    const int s = M / m_;
    std::vector<Rat> poly(static_cast<std::size_t>(s) * (c_.size() - 1) + 1, Rat(0));
    for (std::size_t j = 0; j < c_.size(); ++j) poly[j * s] = c_[j];
    if (m_ == 1) {
      Cyclo out;
      out.m_ = M;
      out.c_.assign(euler_phi(M), Rat(0));
      out.c_[0] = c_[0];
      return out;
    }
    return raw_from_powers(M, poly);
  }

  Cyclo operator-() const {
    Cyclo out = *this;
    for (auto& q : out.c_) q = -q;
    return out;
  }

  friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    if (a.m_ == 1 && b.m_ == 1) return Cyclo(Rat(a.c_[0] + b.c_[0]));
    const int M = std::lcm(a.m_, b.m_);
    Cyclo x = a.lift(M), y = b.lift(M);
    for (std::size_t j = 0; j < x.c_.size(); ++j) x.c_[j] += y.c_[j];
    x.demote();
    return x;
  }
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    if (a.m_ == 1 && b.m_ == 1) return Cyclo(Rat(a.c_[0] * b.c_[0]));
    if (a.m_ == 1 || b.m_ == 1) {
      const Cyclo& s = a.m_ == 1 ? a : b;
      Cyclo out = a.m_ == 1 ? b : a;
      for (auto& q : out.c_) q *= s.c_[0];
      out.demote();
      return out;
    }
    const int M = std::lcm(a.m_, b.m_);
    Cyclo x = a.lift(M), y = b.lift(M);
    std::vector<Rat> poly(x.c_.size() + y.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < x.c_.size(); ++i) {
      if (x.c_[i] == 0) continue;
      for (std::size_t j = 0; j < y.c_.size(); ++j) poly[i + j] += x.c_[i] * y.c_[j];
    }
    return from_powers(M, poly);
  }

  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
  Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

  friend bool operator==(const Cyclo& a, const Cyclo& b) {
    if (a.m_ == b.m_) return a.c_ == b.c_;
    return (a - b).is_zero();
  }

  Cyclo inverse() const {
    if (is_zero()) throw Error(ErrorCode::NotInvertible, "zero has no inverse");
    if (m_ == 1) return Cyclo(Rat(1 / c_[0]));
    // Solve x * y = 1 against the multiplication matrix of x.
    const std::size_t d = c_.size();
    std::vector<std::vector<Rat>> a(d, std::vector<Rat>(d + 1, Rat(0)));
    for (std::size_t j = 0; j < d; ++j) {
      Cyclo col = *this * zeta(m_, static_cast<long>(j));
      Cyclo lifted = col.lift(m_);
      for (std::size_t i = 0; i < d; ++i) a[i][j] = lifted.c_[i];
    }
    a[0][d] = 1;
    std::vector<Rat> y = solve(a, d);
    Cyclo out;
    out.m_ = m_;
    out.c_ = std::move(y);
    out.demote();
    return out;
  }

  Cyclo pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclo result(1), base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  /// Complex conjugation, zeta -> zeta^{-1}.
  Cyclo conj() const {
    if (m_ == 1) return *this;
    std::vector<Rat> poly(m_, Rat(0));
    for (std::size_t j = 0; j < c_.size(); ++j) poly[(m_ - j) % m_] += c_[j];
    return from_powers(m_, poly);
  }

  std::complex<double> to_complex() const {
    std::complex<double> z = 0;
    const double pi = std::acos(-1.0);
    for (std::size_t j = 0; j < c_.size(); ++j)
      if (c_[j] != 0) z += c_[j].get_d() * std::polar(1.0, 2 * pi * static_cast<double>(j) / m_);
    return z;
  }

  /// Same value expressed over the smallest cyclotomic field containing it.
  Cyclo minimized() const {
    if (m_ == 1) return *this;
    for (int d : detail::divisors(m_)) {
      if (d == m_) break;
      if (d % 2 == 1 && m_ % (2 * d) == 0) continue;  // same field as order 2d
      const std::size_t pd = euler_phi(d), pm = c_.size();
      std::vector<std::vector<Rat>> a(pm, std::vector<Rat>(pd + 1, Rat(0)));
      for (std::size_t j = 0; j < pd; ++j) {
        Cyclo b = zeta(d, static_cast<long>(j)).lift(m_);
        for (std::size_t i = 0; i < pm; ++i) a[i][j] = b.c_[i];
      }
      for (std::size_t i = 0; i < pm; ++i) a[i][pd] = c_[i];
      std::vector<Rat> y;
      if (!try_solve(a, pd, y)) continue;
      Cyclo out;
      out.m_ = d;
      out.c_ = std::move(y);
      out.demote();
      return out;
    }
    return *this;
  }

  std::string to_string() const {
    Cyclo v = minimized();
    if (v.m_ == 1) return rat_to_string(v.c_[0]);
    std::string s;
    for (std::size_t j = 0; j < v.c_.size(); ++j) {
      const Rat& q = v.c_[j];
      if (q == 0) continue;
      std::string mag;
      Rat aq = abs(q);
      std::string z = "zeta(" + std::to_string(v.m_) + ")" + (j > 1 ? "^" + std::to_string(j) : "");
      if (j == 0)
        mag = rat_to_string(aq);
      else if (aq == 1)
        mag = z;
      else
        mag = rat_to_string(aq) + "*" + z;
      if (s.empty())
        s = (q < 0 ? "-" : "") + mag;
      else
        s += (q < 0 ? "-" : "+") + mag;
    }
    return s;
  }

 private:
  int m_;
  std::vector<Rat> c_;

  static Cyclo raw_from_powers(int m, const std::vector<Rat>& poly) {
    Cyclo out = from_powers(m, poly);
    if (out.m_ != m) out = out.lift(m);
    return out;
  }

  void demote() {
    if (m_ == 1) return;
    for (std::size_t j = 1; j < c_.size(); ++j)
      if (c_[j] != 0) return;
    Rat q = c_[0];
    m_ = 1;
    c_.assign(1, q);
  }

  // Gaussian elimination on an augmented matrix with `n` unknowns; false if inconsistent.
  static bool try_solve(std::vector<std::vector<Rat>> a, std::size_t n, std::vector<Rat>& out) {
    const std::size_t rows = a.size();
    std::vector<std::size_t> pivcol;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < rows; ++col) {
      std::size_t p = r;
      while (p < rows && a[p][col] == 0) ++p;
      if (p == rows) continue;
      std::swap(a[p], a[r]);
      Rat inv = 1 / a[r][col];
      for (std::size_t j = col; j <= n; ++j) a[r][j] *= inv;
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == r || a[i][col] == 0) continue;
        Rat f = a[i][col];
        for (std::size_t j = col; j <= n; ++j) a[i][j] -= f * a[r][j];
      }
      pivcol.push_back(col);
      ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
      if (a[i][n] != 0) return false;
    out.assign(n, Rat(0));
    for (std::size_t i = 0; i < r; ++i) out[pivcol[i]] = a[i][n];
    return true;
  }

  static std::vector<Rat> solve(std::vector<std::vector<Rat>> a, std::size_t n) {
    std::vector<Rat> out;
    if (!try_solve(std::move(a), n, out)) throw Error(ErrorCode::NotInvertible, "singular cyclotomic system");
    return out;
  }
};

}  // namespace kn
