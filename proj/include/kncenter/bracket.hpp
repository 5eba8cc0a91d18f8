#pragma once

#include <regex>
#include <string>
#include <tuple>
#include <vector>

#include "kncenter/differentials.hpp"

namespace kn {

/// Finite-dimensional Lie algebra given by structure constants and an invariant form.
struct SimpleLieData {
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<Rat> c;     // c[(i*dim + j)*dim + k]: [x_i, x_j] = sum_k c_ij^k x_k
  std::vector<Rat> form;  // form[i*dim + j]

  const Rat& structure(int i, int j, int k) const { return c[(i * dim + j) * dim + k]; }
  Rat& structure(int i, int j, int k) { return c[(i * dim + j) * dim + k]; }
  const Rat& kappa(int i, int j) const { return form[i * dim + j]; }

  int index_of(const std::string& label) const {
    for (int i = 0; i < dim; ++i)
      if (labels[i] == label) return i;
    throw Error(ErrorCode::ParseError, "unknown basis element '" + label + "'");
  }
};

/// Basis e, h, f with the Killing form: kappa(h,h) = 8, kappa(e,f) = 4.
inline SimpleLieData make_sl2() {
  SimpleLieData g;
  g.dim = 3;
  g.labels = {"e", "h", "f"};
  g.c.assign(27, Rat(0));
  g.form.assign(9, Rat(0));
  const int e = 0, h = 1, f = 2;
  g.structure(h, e, e) = 2;
  g.structure(e, h, e) = -2;
  g.structure(h, f, f) = -2;
  g.structure(f, h, f) = 2;
  g.structure(e, f, h) = 1;
  g.structure(f, e, h) = -1;
  g.form[h * 3 + h] = 8;
  g.form[e * 3 + f] = 4;
  g.form[f * 3 + e] = 4;
  return g;
}

namespace detail {

inline std::vector<Rat> lie_bracket_vec(const SimpleLieData& g, const std::vector<Rat>& x, const std::vector<Rat>& y) {
  std::vector<Rat> out(g.dim, Rat(0));
  for (int i = 0; i < g.dim; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < g.dim; ++j) {
      if (y[j] == 0) continue;
      for (int k = 0; k < g.dim; ++k) out[k] += x[i] * y[j] * g.structure(i, j, k);
    }
  }
  return out;
}

inline std::vector<Rat> unit_vec(int dim, int i) {
  std::vector<Rat> v(dim, Rat(0));
  v[i] = 1;
  return v;
}

}  // namespace detail

/// Empty string when all invariants hold, otherwise the first violation.
inline std::string validate(const SimpleLieData& g) {
  const int n = g.dim;
  if (static_cast<int>(g.c.size()) != n * n * n || static_cast<int>(g.form.size()) != n * n ||
      static_cast<int>(g.labels.size()) != n)
    return "array sizes do not match dim";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (g.kappa(i, j) != g.kappa(j, i)) return "form is not symmetric";
      for (int k = 0; k < n; ++k)
        if (g.structure(i, j, k) != -g.structure(j, i, k)) return "structure constants are not antisymmetric";
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        auto xi = detail::unit_vec(n, i), xj = detail::unit_vec(n, j), xk = detail::unit_vec(n, k);
        auto a = detail::lie_bracket_vec(g, detail::lie_bracket_vec(g, xi, xj), xk);
        auto b = detail::lie_bracket_vec(g, detail::lie_bracket_vec(g, xj, xk), xi);
        auto c = detail::lie_bracket_vec(g, detail::lie_bracket_vec(g, xk, xi), xj);
        for (int l = 0; l < n; ++l)
          if (a[l] + b[l] + c[l] != 0) return "Jacobi identity fails";
        Rat lhs = 0, rhs = 0;
        for (int l = 0; l < n; ++l) {
          lhs += g.structure(i, j, l) * g.kappa(l, k);
          rhs += g.kappa(i, l) * g.structure(j, k, l);
        }
        if (lhs != rhs) return "form is not invariant";
      }
  return {};
}

/// Element of (g (x) R) + Omega_R/dR: terms keyed by (basis index, t-exponent, u-parity).
class LoopElement {
 public:
  using Key = std::tuple<int, int, int>;

  LoopElement() = default;
  explicit LoopElement(int r) : center_(r) {}

  static LoopElement monomial(int r, int basis, int i, int eps, const Scalar& coeff = Scalar(1)) {
    LoopElement x(r);
    x.add(basis, i, eps, coeff);
    return x;
  }
  static LoopElement central(const CenterVector& v) {
    LoopElement x(v.r());
    x.center_ = v;
    return x;
  }

  int r() const { return center_.r(); }
  const std::map<Key, Scalar>& terms() const { return terms_; }
  const CenterVector& center() const { return center_; }
  CenterVector& center() { return center_; }

  void add(int basis, int i, int eps, const Scalar& s) {
    if (s.is_zero()) return;
    Key k{basis, i, eps};
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, s);
      return;
    }
    it->second += s;
    if (it->second.is_zero()) terms_.erase(it);
  }

  bool is_zero() const { return terms_.empty() && center_.is_zero(); }

  friend LoopElement operator+(LoopElement a, const LoopElement& b) {
    for (const auto& [k, s] : b.terms_) a.add(std::get<0>(k), std::get<1>(k), std::get<2>(k), s);
    a.center_ += b.center_;
    return a;
  }
  friend LoopElement operator*(const Scalar& s, const LoopElement& x) {
    LoopElement y(x.r());
    for (const auto& [k, v] : x.terms_) y.add(std::get<0>(k), std::get<1>(k), std::get<2>(k), s * v);
    y.center_ = s * x.center_;
    return y;
  }
  friend LoopElement operator-(const LoopElement& a, const LoopElement& b) { return a + Scalar(-1) * b; }
  friend bool operator==(const LoopElement& a, const LoopElement& b) {
    return a.terms_ == b.terms_ && a.center_ == b.center_;
  }

 private:
  std::map<Key, Scalar> terms_;
  CenterVector center_;
};

/// Bracket of the universal central extension; the cocycle is the class of f dg times kappa.
inline LoopElement bracket(const SimpleLieData& g, const CurveSpec& curve, const LoopElement& x, const LoopElement& y,
                           const PTable& P, const QTable& Q) {
  LoopElement out(curve.r());
  for (const auto& [kx, sx] : x.terms()) {
    const auto [a, i, e1] = kx;
    for (const auto& [ky, sy] : y.terms()) {
      const auto [b, j, e2] = ky;
      const Scalar coeff = sx * sy;
      for (int k = 0; k < g.dim; ++k) {
        const Rat& ck = g.structure(a, b, k);
        if (ck == 0) continue;
        if (e1 == 1 && e2 == 1) {
          for (const auto& [l, al] : curve.coeffs()) out.add(k, i + j + l, 0, coeff * al * Scalar(ck));
        } else {
          out.add(k, i + j, e1 ^ e2, coeff * Scalar(ck));
        }
      }
      const Rat& kap = g.kappa(a, b);
      if (kap != 0) out.center() += (coeff * Scalar(kap)) * reduce_form(curve, i, e1, j, e2, P, Q);
    }
  }
  return out;
}

inline LoopElement jacobi_defect(const SimpleLieData& g, const CurveSpec& curve, const LoopElement& x,
                                 const LoopElement& y, const LoopElement& z, const PTable& P, const QTable& Q) {
  auto br = [&](const LoopElement& a, const LoopElement& b) { return bracket(g, curve, a, b, P, Q); };
  return br(br(x, y), z) + br(br(y, z), x) + br(br(z, x), y);
}

/// Parses sums of terms like "2*c*e@1*u - h@-1".
inline LoopElement parse_loop_element(const SimpleLieData& g, const CurveSpec& curve, const std::string& text) {
  LoopElement out(curve.r());
  std::vector<std::pair<int, std::string>> pieces;
  int depth = 0, sign = 1;
  std::string cur;
  for (std::size_t p = 0; p < text.size(); ++p) {
    char ch = text[p];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    std::size_t q = cur.find_last_not_of(" \t");
    bool after_op = q == std::string::npos || cur[q] == '@' || cur[q] == '^' || cur[q] == '*' || cur[q] == '/';
    if (depth == 0 && (ch == '+' || ch == '-') && !after_op) {
      pieces.emplace_back(sign, cur);
      cur.clear();
      sign = ch == '-' ? -1 : 1;
      continue;
    }
    if (depth == 0 && ch == '-' && q == std::string::npos) {
      sign = -sign;
      continue;
    }
    cur += ch;
  }
  pieces.emplace_back(sign, cur);
  static const std::regex term_re(R"(^\s*(?:(.*)\*)?\s*([A-Za-z][A-Za-z0-9_]*)\s*@\s*(-?\d+)\s*(\*\s*u)?\s*$)");
  for (const auto& [sg, piece] : pieces) {
    std::smatch m;
    if (!std::regex_match(piece, m, term_re)) throw Error(ErrorCode::ParseError, "bad loop element term '" + piece + "'");
    Scalar coeff(sg);
    if (m[1].matched && !std::string(m[1]).empty()) coeff *= parse_scalar(std::string(m[1]));
    out.add(g.index_of(m[2]), std::stoi(m[3]), m[4].matched ? 1 : 0, coeff);
  }
  return out;
}

}  // namespace kn
