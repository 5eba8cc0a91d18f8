#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "kncenter/curve.hpp"

namespace kn {

using Complex = std::complex<double>;

enum class SignCase { None, A, B };
enum class GroupKind { Cyclic, Dihedral, U, V, Dic };

inline std::string sign_name(SignCase s) { return s == SignCase::A ? "a" : s == SignCase::B ? "b" : "none"; }

/// Label such as "D_4"; `order` is the group order.
struct GroupLabel {
  GroupKind kind;
  int index;
  int order;

  std::string name() const {
    switch (kind) {
      case GroupKind::Cyclic: return "C_" + std::to_string(index);
      case GroupKind::Dihedral: return "D_" + std::to_string(index);
      case GroupKind::U: return "U_" + std::to_string(index);
      case GroupKind::V: return "V_" + std::to_string(index);
      case GroupKind::Dic: return "Dic_" + std::to_string(index);
    }
    return "?";
  }
};

/// Group from the rotation order k, l = 2n/k, and the dihedral sign case.
inline GroupLabel group_for(int k, int l, bool dihedral, SignCase sign) {
  if (dihedral && sign == SignCase::A && l % 2 == 0) return {GroupKind::Dihedral, 2 * k, 4 * k};
  if (dihedral && sign == SignCase::A) return {GroupKind::U, k, 4 * k};
  if (dihedral && sign == SignCase::B && l % 2 == 1) return {GroupKind::V, 2 * k, 4 * k};
  if (dihedral && sign == SignCase::B) return {GroupKind::Dic, k, 4 * k};
  return {GroupKind::Cyclic, 2 * k, 2 * k};
}

struct SymmetryReport {
  int n = 0;
  int k = 1;
  int l = 0;
  bool dihedral = false;
  SignCase sign = SignCase::None;
  std::optional<Scalar> c;       // exact c when representable
  std::optional<Scalar> c2;      // exact c^2 when representable
  std::optional<Complex> c2_numeric;
  std::vector<Complex> c2_candidates;
  bool ambiguous_sign = false;   // l odd: the sign case flips across the c coset
  GroupLabel group{GroupKind::Cyclic, 2, 2};
};

//////////////////////////////////////////////////////////////////////////////
// Coefficients from roots

/// p(t) = t * prod (t - alpha_i).
inline CurveSpec roots_to_coeffs(const std::vector<Scalar>& roots) {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i].is_zero()) throw Error(ErrorCode::ZeroRoot, "root " + std::to_string(i) + " is zero");
    for (std::size_t j = 0; j < i; ++j)
      if (roots[i] == roots[j]) throw Error(ErrorCode::DuplicateRoot, "roots " + std::to_string(j) + " and " + std::to_string(i));
  }
  std::vector<Scalar> poly{Scalar(1)};  // ascending in t
  for (const Scalar& a : roots) {
    std::vector<Scalar> next(poly.size() + 1);
    for (std::size_t d = 0; d < poly.size(); ++d) {
      next[d + 1] += poly[d];
      next[d] -= poly[d] * a;
    }
    poly = std::move(next);
  }
  std::map<int, Scalar> coeffs;
  for (std::size_t d = 0; d < poly.size(); ++d) coeffs[static_cast<int>(d) + 1] = poly[d];
  return CurveSpec(static_cast<int>(roots.size()), coeffs);
}

/// Numeric a_1..a_{N+1} (index 0 holds a_1).
inline std::vector<Complex> roots_to_coeffs(const std::vector<Complex>& roots, double tol = 1e-9) {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (std::abs(roots[i]) <= tol) throw Error(ErrorCode::ZeroRoot, "root " + std::to_string(i) + " is zero");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(roots[i] - roots[j]) <= tol) throw Error(ErrorCode::DuplicateRoot, "roots too close");
  }
  std::vector<Complex> poly{1.0};
  for (const Complex& a : roots) {
    std::vector<Complex> next(poly.size() + 1, 0.0);
    for (std::size_t d = 0; d < poly.size(); ++d) {
      next[d + 1] += poly[d];
      next[d] -= poly[d] * a;
    }
    poly = std::move(next);
  }
  return poly;
}

//////////////////////////////////////////////////////////////////////////////
// Exact detection

/// Largest k | 2n with a_j = 0 whenever j != 1 mod k.
inline int detect_cyclic(const CurveSpec& curve) {
  const int two_n = curve.r();
  for (int k = two_n; k >= 1; --k) {
    if (two_n % k != 0) continue;
    bool ok = true;
    for (const auto& [j, a] : curve.coeffs())
      if ((j - 1) % k != 0) ok = false;
    if (ok) return k;
  }
  return 1;
}

/// a_j = (+-) w^{n-j+1} a_{2n+2-j} for all j, with w = c^2.
inline bool check_dihedral_c2(const CurveSpec& curve, const Scalar& w, SignCase sign) {
  if (curve.r() % 2 != 0) throw Error(ErrorCode::InvalidCurve, "dihedral symmetry needs odd degree");
  const int n = curve.r() / 2;
  if (!w.is_unit()) throw Error(ErrorCode::NotInvertible, "c^2 must be a unit");
  const Scalar s(sign == SignCase::B ? -1 : 1);
  for (int j = 1; j <= 2 * n + 1; ++j)
    if (curve.a(j) != s * w.pow(n - j + 1) * curve.a(2 * n + 2 - j)) return false;
  return true;
}

inline bool check_dihedral(const CurveSpec& curve, const Scalar& c, SignCase sign) {
  if (!c.is_unit()) throw Error(ErrorCode::NotInvertible, "c must be a unit");
  return check_dihedral_c2(curve, c * c, sign);
}

namespace detail {

inline double arg_0_2pi(Complex z) {
  double a = std::arg(z);
  const double two_pi = 2 * std::acos(-1.0);
  if (a < 0) a += two_pi;
  if (a > two_pi - 1e-9) a = 0;
  return a;
}

// Rational r-th root of q > 0, if any.
inline std::optional<Rat> rational_root(const Rat& q, int r) {
  mpz_class num = q.get_num(), den = q.get_den(), rn, rd;
  mpz_root(rn.get_mpz_t(), num.get_mpz_t(), r);
  mpz_root(rd.get_mpz_t(), den.get_mpz_t(), r);
  mpz_class pn, pd;
  mpz_pow_ui(pn.get_mpz_t(), rn.get_mpz_t(), r);
  mpz_pow_ui(pd.get_mpz_t(), rd.get_mpz_t(), r);
  if (pn != num || pd != den) return std::nullopt;
  return frac(rn, rd);
}

inline void finish_report(SymmetryReport& rep) {
  rep.l = 2 * rep.n / rep.k;
  rep.group = group_for(rep.k, rep.l, rep.dihedral, rep.sign);
  rep.ambiguous_sign = rep.dihedral && rep.l % 2 == 1;
}

}  // namespace detail

/// Classification from coefficients.  With c given the symmetry is checked
/// directly; otherwise coefficients must be rational and c^2 is searched
/// among q * zeta_{2n}^s with q = |a_1|^{1/n}.
inline SymmetryReport classify(const CurveSpec& curve, std::optional<Scalar> c = std::nullopt,
                               std::optional<SignCase> sign = std::nullopt) {
  if (curve.r() % 2 != 0) throw Error(ErrorCode::InvalidCurve, "classification needs deg p = 2n+1");
  SymmetryReport rep;
  rep.n = curve.r() / 2;
  rep.k = detect_cyclic(curve);
  const int n = rep.n;
  if (c) {
    if (!c->is_unit()) throw Error(ErrorCode::NotInvertible, "c must be a unit");
    std::vector<SignCase> tries = sign ? std::vector<SignCase>{*sign} : std::vector<SignCase>{SignCase::A, SignCase::B};
    for (SignCase s : tries)
      if (check_dihedral(curve, *c, s)) {
        rep.dihedral = true;
        rep.sign = s;
        rep.c = *c;
        rep.c2 = *c * *c;
        break;
      }
    detail::finish_report(rep);
    return rep;
  }
  for (const auto& [j, a] : curve.coeffs())
    if (!a.is_rational_constant())
      throw Error(ErrorCode::InconsistentParams, "c search needs rational coefficients; supply c");
  const Rat a1 = curve.a(1).constant_value().rational();
  const auto q = detail::rational_root(abs(a1), n);
  struct Cand {
    int s;
    SignCase sign;
  };
  std::vector<Cand> found;
  for (int s = 0; s < 2 * n; ++s) {
    const SignCase sc = ((s % 2 == 0) == (a1 > 0)) ? SignCase::A : SignCase::B;
    bool ok;
    if (q) {
      ok = check_dihedral_c2(curve, Scalar(*q) * Scalar::zeta(2 * n, s), sc);
    } else {
      const Complex w = std::polar(std::pow(std::abs(a1.get_d()), 1.0 / n), std::acos(-1.0) * s / n);
      const double sg = sc == SignCase::B ? -1 : 1;
      ok = true;
      for (int j = 1; j <= 2 * n + 1; ++j) {
        const Complex lhs = curve.a(j).constant_value().to_complex();
        const Complex rhs = sg * std::pow(w, n - j + 1) * curve.a(2 * n + 2 - j).constant_value().to_complex();
        if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(lhs))) ok = false;
      }
    }
    if (ok) found.push_back({s, sc});
  }
  for (const Cand& cd : found)
    rep.c2_candidates.push_back(std::polar(q ? q->get_d() : std::pow(std::abs(a1.get_d()), 1.0 / n), std::acos(-1.0) * cd.s / n));
  if (!found.empty()) {
    // All candidates must lie in one coset of the k-th roots of unity: s differs by multiples of 2n/k.
    const int step = 2 * n / rep.k;
    for (const Cand& cd : found)
      if ((cd.s - found.front().s) % step != 0)
        throw Error(ErrorCode::AmbiguousC, std::to_string(found.size()) + " inequivalent c^2 candidates");
    const Cand best = found.front();
    rep.dihedral = true;
    rep.sign = best.sign;
    rep.c2_numeric = rep.c2_candidates.front();
    if (q) {
      rep.c2 = Scalar(*q) * Scalar::zeta(2 * n, best.s);
      if (auto sq = detail::rational_root(*q, 2)) rep.c = Scalar(*sq) * Scalar::zeta(4 * n, best.s);
    }
  }
  detail::finish_report(rep);
  return rep;
}

//////////////////////////////////////////////////////////////////////////////
// Numeric detection from roots

namespace detail {

// Permutation sending roots[i] near f(roots[i]); nullopt if some image is
// missing, ToleranceConflict if an image is matched twice within tol or the
// match does not survive tol/10.
template <class F>
std::optional<std::vector<int>> match_roots(const std::vector<Complex>& roots, F f, double tol) {
  std::vector<int> perm(roots.size(), -1);
  std::vector<bool> hit(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const Complex img = f(roots[i]);
    const double scale = std::max(1.0, std::abs(img));
    int best = -1;
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (std::abs(roots[j] - img) > tol * scale) continue;
      if (best >= 0) throw Error(ErrorCode::ToleranceConflict, "two roots match one image within tolerance");
      best = static_cast<int>(j);
    }
    if (best < 0) return std::nullopt;
    if (std::abs(roots[best] - img) > tol / 10 * scale)
      throw Error(ErrorCode::ToleranceConflict, "match does not survive the tighter tolerance");
    if (hit[best]) throw Error(ErrorCode::ToleranceConflict, "matching is not a permutation");
    hit[best] = true;
    perm[i] = best;
  }
  return perm;
}

}  // namespace detail

inline SymmetryReport detect_from_roots(const std::vector<Complex>& roots, double tol = 1e-9) {
  if (roots.empty() || roots.size() % 2 != 0) throw Error(ErrorCode::InvalidCurve, "need 2n nonzero roots");
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (std::abs(roots[i]) <= tol) throw Error(ErrorCode::ZeroRoot, "root " + std::to_string(i) + " is zero");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(roots[i] - roots[j]) <= tol * std::max(1.0, std::abs(roots[i])))
        throw Error(ErrorCode::DuplicateRoot, "roots " + std::to_string(j) + " and " + std::to_string(i));
  }
  SymmetryReport rep;
  rep.n = static_cast<int>(roots.size()) / 2;
  const int two_n = 2 * rep.n;
  const double pi = std::acos(-1.0);
  for (int k = two_n; k >= 1; --k) {
    if (two_n % k != 0) continue;
    const Complex zeta = std::polar(1.0, 2 * pi / k);
    if (detail::match_roots(roots, [&](Complex a) { return zeta * a; }, tol)) {
      rep.k = k;
      break;
    }
  }
  Complex a1 = 1.0;
  for (const Complex& a : roots) a1 *= a;  // a_1 = prod(-alpha) = prod(alpha) for an even count
  std::vector<Complex> cands;
  for (const Complex& b : roots) {
    const Complex w = roots.front() * b;
    bool dup = false;
    for (const Complex& x : cands)
      if (std::abs(x - w) <= tol * std::max(1.0, std::abs(w))) dup = true;
    if (dup) continue;
    if (detail::match_roots(roots, [&](Complex a) { return w / a; }, tol)) cands.push_back(w);
  }
  std::sort(cands.begin(), cands.end(), [](Complex x, Complex y) { return detail::arg_0_2pi(x) < detail::arg_0_2pi(y); });
  rep.c2_candidates = cands;
  if (!cands.empty()) {
    const Complex rot = std::polar(1.0, 2 * pi / rep.k);
    for (const Complex& w : cands) {
      // Same coset iff w / w0 is a k-th root of unity.
      const Complex q = std::pow(w / cands.front(), rep.k);
      if (std::abs(q - 1.0) > 1e-6) throw Error(ErrorCode::AmbiguousC, "inequivalent c^2 candidates");
    }
    (void)rot;
    const Complex w = cands.front();
    const Complex wn = std::pow(w, rep.n);
    const double scale = std::max(1.0, std::abs(wn));
    if (std::abs(a1 - wn) <= 1e-6 * scale)
      rep.sign = SignCase::A;
    else if (std::abs(a1 + wn) <= 1e-6 * scale)
      rep.sign = SignCase::B;
    else
      throw Error(ErrorCode::ToleranceConflict, "a_1 is not +-c^{2n} within tolerance");
    rep.dihedral = true;
    rep.c2_numeric = w;
  }
  detail::finish_report(rep);
  return rep;
}

//////////////////////////////////////////////////////////////////////////////
// Ring elements of C[t, t^-1, u]/(u^2 - p) and the automorphisms

/// Sum of coeff * t^i u^eps, eps in {0, 1}.
class RingElement {
 public:
  using Key = std::pair<int, int>;

  RingElement() = default;
  static RingElement monomial(int i, int eps, const Scalar& c = Scalar(1)) {
    RingElement x;
    x.add(i, eps, c);
    return x;
  }
  static RingElement t() { return monomial(1, 0); }
  static RingElement u() { return monomial(0, 1); }
  static RingElement of_curve(const CurveSpec& curve) {
    RingElement x;
    for (const auto& [j, a] : curve.coeffs()) x.add(j, 0, a);
    return x;
  }

  const std::map<Key, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(int i, int eps, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find({i, eps});
    if (it == terms_.end()) {
      terms_.emplace(Key{i, eps}, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  friend RingElement operator+(RingElement a, const RingElement& b) {
    for (const auto& [k, s] : b.terms_) a.add(k.first, k.second, s);
    return a;
  }
  friend RingElement operator-(RingElement a, const RingElement& b) {
    for (const auto& [k, s] : b.terms_) a.add(k.first, k.second, -s);
    return a;
  }
  friend bool operator==(const RingElement& a, const RingElement& b) { return a.terms_ == b.terms_; }

  /// Product with u^2 replaced by p(t).
  RingElement times(const RingElement& o, const CurveSpec& curve) const {
    RingElement out;
    for (const auto& [ka, sa] : terms_)
      for (const auto& [kb, sb] : o.terms_) {
        const Scalar s = sa * sb;
        if (ka.second + kb.second == 2) {
          for (const auto& [j, aj] : curve.coeffs()) out.add(ka.first + kb.first + j, 0, s * aj);
        } else {
          out.add(ka.first + kb.first, ka.second + kb.second, s);
        }
      }
    return out;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& [k, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.to_string() + ")*t^" + std::to_string(k.first) + (k.second ? "*u" : "");
    }
    return s.empty() ? "0" : s;
  }

 private:
  std::map<Key, Scalar> terms_;
};

enum class AutKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

struct AutParams {
  int k = 1;
  Scalar c = Scalar(1);
  SignCase sign = SignCase::A;
};

/// Image of coeff * t^i u^eps.
inline RingElement apply_automorphism(const CurveSpec& curve, AutKind which, const AutParams& prm, int i, int eps,
                                      const Scalar& coeff = Scalar(1)) {
  const int two_n = curve.r();
  const int n = two_n / 2;
  const bool plus = which == AutKind::PhiPlus || which == AutKind::PsiPlus;
  const Scalar pm(plus ? 1 : -1);
  if (which == AutKind::PhiPlus || which == AutKind::PhiMinus) {
    if (prm.k < 1 || two_n % prm.k != 0 || detect_cyclic(curve) % prm.k != 0)
      throw Error(ErrorCode::InconsistentParams, "curve has no rotation of order " + std::to_string(prm.k));
    const Scalar xi = Scalar::zeta(2 * prm.k);
    Scalar f = xi.pow(2 * i) * coeff;
    if (eps) f *= pm * xi;
    return RingElement::monomial(i, eps, f);
  }
  if (curve.r() % 2 != 0 || prm.sign == SignCase::None || !check_dihedral(curve, prm.c, prm.sign))
    throw Error(ErrorCode::InconsistentParams, "c and the sign case do not give a symmetry of this curve");
  Scalar f = prm.c.pow(2 * i) * coeff;
  int exp = -i;
  if (eps) {
    f *= pm * prm.c.pow(n + 1);
    if (prm.sign == SignCase::B) f *= Scalar::zeta(4);
    exp -= n + 1;
  }
  return RingElement::monomial(exp, eps, f);
}

inline RingElement apply_automorphism(const CurveSpec& curve, AutKind which, const AutParams& prm, const RingElement& x) {
  RingElement out;
  for (const auto& [k, s] : x.terms()) out = out + apply_automorphism(curve, which, prm, k.first, k.second, s);
  return out;
}

/// Applies `word` right to left: the last entry acts first.
inline RingElement apply_word(const CurveSpec& curve, const std::vector<AutKind>& word, const AutParams& prm,
                              RingElement x) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) x = apply_automorphism(curve, *it, prm, x);
  return x;
}

/// sigma(u)^2 - sigma(p); zero exactly when sigma respects u^2 = p.
inline RingElement homomorphism_defect(const CurveSpec& curve, AutKind which, const AutParams& prm) {
  const RingElement su = apply_automorphism(curve, which, prm, RingElement::u());
  return su.times(su, curve) - apply_automorphism(curve, which, prm, RingElement::of_curve(curve));
}

}  // namespace kn
