#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "kncenter/recursions.hpp"

namespace kn {

/// Class in Omega_R/dR over omega_0 = t^-1 dt, omega_k = t^-k u dt (1 <= k <= r).
class CenterVector {
 public:
  CenterVector() = default;
  explicit CenterVector(int r) : c_(r + 1) {}

  static CenterVector basis(int r, int k) {
    CenterVector v(r);
    v.c_.at(k) = Scalar(1);
    return v;
  }

  int r() const { return static_cast<int>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  const Scalar& operator[](std::size_t k) const { return c_.at(k); }
  Scalar& operator[](std::size_t k) { return c_.at(k); }
  const std::vector<Scalar>& coeffs() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  friend CenterVector operator+(CenterVector a, const CenterVector& b) {
    check(a, b);
    for (std::size_t k = 0; k < a.c_.size(); ++k) a.c_[k] += b.c_[k];
    return a;
  }
  friend CenterVector operator-(CenterVector a, const CenterVector& b) {
    check(a, b);
    for (std::size_t k = 0; k < a.c_.size(); ++k) a.c_[k] -= b.c_[k];
    return a;
  }
  friend CenterVector operator*(const Scalar& s, CenterVector v) {
    for (auto& x : v.c_) x *= s;
    return v;
  }
  CenterVector& operator+=(const CenterVector& o) { return *this = *this + o; }
  friend bool operator==(const CenterVector& a, const CenterVector& b) { return a.c_ == b.c_; }

  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + c_[k].to_string() + ")*omega" + std::to_string(k);
    }
    return s.empty() ? "0" : s;
  }

 private:
  std::vector<Scalar> c_;

  static void check(const CenterVector& a, const CenterVector& b) {
    if (a.c_.size() != b.c_.size()) throw Error(ErrorCode::InconsistentParams, "center vectors of different curves");
  }
};

/// t^i d(t^j) = j delta_{i+j,0} omega_0.
inline CenterVector reduce_even(const CurveSpec& curve, int i, int j) {
  CenterVector v(curve.r());
  if (i + j == 0) v[0] = Scalar(j);
  return v;
}

/// t^i u d(t^j u) = sum_k (j + k/2) a_k delta_{i+j,-k} omega_0.
inline CenterVector reduce_uu(const CurveSpec& curve, int i, int j) {
  CenterVector v(curve.r());
  const int k = -(i + j);
  if (k >= 1 && k <= curve.r() + 1) v[0] = curve.a(k) * Scalar(frac(2 * j + k, 2));
  return v;
}

/// Class of t^m u dt.
inline CenterVector reduce_udt(const CurveSpec& curve, int m, const PTable& P, const QTable& Q) {
  const int r = curve.r();
  CenterVector v(r);
  if (m >= -r) {
    if (!P.covers(m)) throw Error(ErrorCode::TableTooSmall, "P table needs kmax >= " + std::to_string(m));
    for (int k = 1; k <= r; ++k) v[k] = P.at(m, -k);
  } else {
    if (!Q.covers(-m)) throw Error(ErrorCode::TableTooSmall, "Q table needs mmax >= " + std::to_string(-m));
    for (int k = 1; k <= r; ++k) v[k] = Q.at(-m, -k);
  }
  return v;
}

/// t^i u d(t^j) = j t^{i+j-1} u dt.
inline CenterVector reduce_u(const CurveSpec& curve, int i, int j, const PTable& P, const QTable& Q) {
  if (j == 0) return CenterVector(curve.r());
  return Scalar(j) * reduce_udt(curve, i + j - 1, P, Q);
}

/// Class of t^i u^e1 d(t^j u^e2).
inline CenterVector reduce_form(const CurveSpec& curve, int i, int e1, int j, int e2, const PTable& P, const QTable& Q) {
  if (e1 == 0 && e2 == 0) return reduce_even(curve, i, j);
  if (e1 == 1 && e2 == 1) return reduce_uu(curve, i, j);
  if (e1 == 1) return reduce_u(curve, i, j, P, Q);
  // t^i d(t^j u) = d(t^{i+j} u) - t^j u d(t^i).
  return Scalar(-1) * reduce_u(curve, j, i, P, Q);
}

/// Tables large enough for every reduce_form call with |i|, |j| <= bound.
struct Tables {
  PTable P;
  QTable Q;
};

inline Tables make_tables(const CurveSpec& curve, int bound) {
  return {compute_P(curve, std::max(0, 2 * bound)), compute_Q(curve, std::max(curve.r() + 1, 2 * bound + 1))};
}

//////////////////////////////////////////////////////////////////////////////
// Brute-force reduction by elimination in a finite monomial window.

namespace oracle {

enum class Kind { Dt = 0, UDt = 1, Du = 2, UDu = 3 };

struct Mono {
  Kind kind;
  int a;
  friend bool operator<(const Mono& x, const Mono& y) {
    return std::pair(static_cast<int>(x.kind), x.a) < std::pair(static_cast<int>(y.kind), y.a);
  }
  friend bool operator==(const Mono& x, const Mono& y) { return x.kind == y.kind && x.a == y.a; }
};

/// Element of Omega_R written over t^a dt, t^a u dt, t^a du, t^a u du.
using Form = std::map<Mono, Scalar>;

inline void add_to(Form& f, Mono m, const Scalar& s) {
  if (s.is_zero()) return;
  auto it = f.find(m);
  if (it == f.end()) {
    f.emplace(m, s);
    return;
  }
  it->second += s;
  if (it->second.is_zero()) f.erase(it);
}

/// f dg for f = t^i u^e1, g = t^j u^e2, before any relation is applied.
inline Form form_of(const CurveSpec& curve, int i, int e1, int j, int e2) {
  Form f;
  if (e1 == 0 && e2 == 0)
    add_to(f, {Kind::Dt, i + j - 1}, Scalar(j));
  else if (e1 == 1 && e2 == 0)
    add_to(f, {Kind::UDt, i + j - 1}, Scalar(j));
  else if (e1 == 0 && e2 == 1) {
    add_to(f, {Kind::UDt, i + j - 1}, Scalar(j));
    add_to(f, {Kind::Du, i + j}, Scalar(1));
  } else {
    for (const auto& [l, al] : curve.coeffs()) add_to(f, {Kind::Dt, i + j + l - 1}, Scalar(j) * al);
    add_to(f, {Kind::UDu, i + j}, Scalar(1));
  }
  return f;
}

class Reducer {
 public:
  Reducer(const CurveSpec& curve, int window) : curve_(curve), window_(window) {
    const int r = curve.r();
    std::vector<Form> rows;
    for (int j = -window; j <= window; ++j) {
      if (j != 0) rows.push_back(form_of(curve, 0, 0, j, 0));
      rows.push_back(form_of(curve, 0, 0, j, 1));
    }
    // t^a (p du - p'/2 u dt) = 0 and t^a (u du - p'/2 dt) = 0.
    for (int a = -window - 1; a + r + 1 <= window; ++a) {
      Form f;
      for (const auto& [l, al] : curve.coeffs()) {
        add_to(f, {Kind::Du, a + l}, al);
        add_to(f, {Kind::UDt, a + l - 1}, -al * Scalar(frac(l, 2)));
      }
      rows.push_back(f);
    }
    for (int a = -window - r - 1; a <= window + r; ++a) {
      Form f;
      add_to(f, {Kind::UDu, a}, Scalar(1));
      for (const auto& [l, al] : curve.coeffs()) add_to(f, {Kind::Dt, a + l - 1}, -al * Scalar(frac(l, 2)));
      rows.push_back(f);
    }
    eliminate(rows);
  }

  /// Class of `target` in the basis, or WindowTooSmall.
  CenterVector reduce(Form target) const {
    for (const auto& [col, row] : pivots_) {
      auto it = target.find(col);
      if (it == target.end()) continue;
      Scalar f = it->second * row.at(col).inverse();
      for (const auto& [m, s] : row) add_to(target, m, -f * s);
    }
    const int r = curve_.r();
    CenterVector v(r);
    for (const auto& [m, s] : target) {
      if (m.kind == Kind::Dt && m.a == -1)
        v[0] = s;
      else if (m.kind == Kind::UDt && m.a >= -r && m.a <= -1)
        v[-m.a] = s;
      else
        throw Error(ErrorCode::WindowTooSmall, "window " + std::to_string(window_) + " leaves a non-basis monomial");
    }
    return v;
  }

 private:
  CurveSpec curve_;
  int window_;
  std::vector<std::pair<Mono, Form>> pivots_;

  bool is_basis(const Mono& m) const {
    return (m.kind == Kind::Dt && m.a == -1) || (m.kind == Kind::UDt && m.a >= -curve_.r() && m.a <= -1);
  }

  // Lower rank means eliminated earlier.
  long rank(const Mono& m) const {
    const int r = curve_.r();
    switch (m.kind) {
      case Kind::Du:
      case Kind::UDu:
        return 0;
      case Kind::UDt: {
        int dist = m.a >= 0 ? m.a + 1 : -r - m.a;
        return 1000000L - dist;
      }
      case Kind::Dt:
        return 2000000L - std::abs(m.a + 1);
    }
    return 0;
  }

  void eliminate(std::vector<Form> rows) {
    std::vector<Mono> cols;
    {
      std::map<Mono, bool> seen;
      for (const auto& row : rows)
        for (const auto& [m, s] : row)
          if (!is_basis(m)) seen[m] = true;
      for (const auto& [m, b] : seen) cols.push_back(m);
    }
    std::stable_sort(cols.begin(), cols.end(), [&](const Mono& x, const Mono& y) {
      long rx = rank(x), ry = rank(y);
      if (rx != ry) return rx < ry;
      return y < x;
    });
    std::vector<bool> used(rows.size(), false);
    for (const Mono& col : cols) {
      std::size_t best = rows.size();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (used[i]) continue;
        auto it = rows[i].find(col);
        if (it == rows[i].end() || !it->second.is_unit()) continue;
        if (best == rows.size() || rows[i].size() < rows[best].size()) best = i;
      }
      if (best == rows.size()) continue;
      used[best] = true;
      const Form& p = rows[best];
      const Scalar inv = p.at(col).inverse();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (used[i]) continue;
        auto it = rows[i].find(col);
        if (it == rows[i].end()) continue;
        Scalar f = it->second * inv;
        for (const auto& [m, s] : p) add_to(rows[i], m, -f * s);
      }
      pivots_.emplace_back(col, p);
    }
  }
};

}  // namespace oracle

/// Class of t^m u^eps dt by elimination over exact forms with |j| <= window.
inline CenterVector oracle_reduce(const CurveSpec& curve, int m, int eps, int window) {
  oracle::Form target;
  oracle::add_to(target, {eps ? oracle::Kind::UDt : oracle::Kind::Dt, m}, Scalar(1));
  return oracle::Reducer(curve, window).reduce(target);
}

}  // namespace kn
