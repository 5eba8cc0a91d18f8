#pragma once

#include <map>
#include <string>
#include <vector>

#include "kncenter/automorphisms.hpp"
#include "kncenter/differentials.hpp"
#include "kncenter/matrix.hpp"

namespace kn {

/// C_{2k} = <phi> or the order-4k dihedral group <phi, psi>.
struct GroupSpec {
  enum class Kind { Cyclic, Dihedral } kind;
  int k;

  struct Class {
    std::string name;
    int psi;  // 0 or 1
    int phi;  // representative psi^psi phi^phi
    int size;
  };

  int order() const { return kind == Kind::Cyclic ? 2 * k : 4 * k; }

  std::vector<Class> classes() const {
    std::vector<Class> out;
    if (kind == Kind::Cyclic) {
      for (int s = 0; s < 2 * k; ++s) out.push_back({s == 0 ? "1" : "phi^" + std::to_string(s), 0, s, 1});
      return out;
    }
    out.push_back({"1", 0, 0, 1});
    out.push_back({"psi", 1, 0, k});
    out.push_back({"psi*phi", 1, 1, k});
    for (int j = 1; j <= k; ++j) out.push_back({"phi^" + std::to_string(j), 0, j, j == k ? 1 : 2});
    return out;
  }

  static GroupSpec cyclic(int k) { return {Kind::Cyclic, k}; }
  static GroupSpec dihedral(int k) {
    if (k < 2) throw Error(ErrorCode::InconsistentParams, "dihedral table needs k >= 2");
    return {Kind::Dihedral, k};
  }
  std::string name() const { return (kind == Kind::Cyclic ? "C_" : "D_") + std::to_string(2 * k); }
};

struct CharacterTable {
  GroupSpec group;
  std::vector<std::string> names;
  std::vector<int> dims;
  std::vector<std::vector<Cyclo>> rows;  // rows[irrep][class]
};

inline CharacterTable char_table(const GroupSpec& g) {
  CharacterTable t{g, {}, {}, {}};
  const auto cls = g.classes();
  const int k = g.k;
  if (g.kind == GroupSpec::Kind::Cyclic) {
    for (int h = 0; h < 2 * k; ++h) {
      std::vector<Cyclo> row;
      for (const auto& c : cls) row.push_back(Cyclo::zeta(2 * k, static_cast<long>(h) * c.phi));
      t.names.push_back("chi" + std::to_string(h));
      t.dims.push_back(1);
      t.rows.push_back(row);
    }
    return t;
  }
  // rho_2: psi -> -1; rho_3: phi -> -1; rho_4: both.
  for (int r = 1; r <= 4; ++r) {
    const int psi_sign = (r == 2 || r == 4) ? -1 : 1;
    const int phi_sign = (r == 3 || r == 4) ? -1 : 1;
    std::vector<Cyclo> row;
    for (const auto& c : cls) {
      int v = 1;
      if (c.psi && psi_sign < 0) v = -v;
      if (c.phi % 2 == 1 && phi_sign < 0) v = -v;
      row.push_back(Cyclo(Rat(v)));
    }
    t.names.push_back("rho" + std::to_string(r));
    t.dims.push_back(1);
    t.rows.push_back(row);
  }
  for (int h = 1; h < k; ++h) {
    std::vector<Cyclo> row;
    for (const auto& c : cls)
      row.push_back(c.psi ? Cyclo() : Cyclo::zeta(2 * k, static_cast<long>(h) * c.phi) + Cyclo::zeta(2 * k, -static_cast<long>(h) * c.phi));
    t.names.push_back("chi" + std::to_string(h));
    t.dims.push_back(2);
    t.rows.push_back(row);
  }
  return t;
}

/// sum over classes of |C|/|G| chi_a(g) conj(chi_b(g)).
inline Cyclo inner_product(const CharacterTable& t, const std::vector<Cyclo>& a, const std::vector<Cyclo>& b) {
  const auto cls = t.group.classes();
  if (a.size() != cls.size() || b.size() != cls.size())
    throw Error(ErrorCode::InconsistentParams, "character length differs from class count");
  Cyclo s;
  for (std::size_t i = 0; i < cls.size(); ++i) s = s + Cyclo(frac(cls[i].size, t.group.order())) * a[i] * b[i].conj();
  return s;
}

//////////////////////////////////////////////////////////////////////////////
// Action on Omega_R/dR

struct ActionMatrices {
  Matrix Phi;  // column j holds the image of omega_j
  Matrix Psi;
  int n, k;
};

namespace detail {

inline Matrix action_of(const CurveSpec& curve, AutKind which, const AutParams& prm, const Tables& tab) {
  const int r = curve.r();
  Matrix m(r + 1, r + 1);
  const RingElement tt = apply_automorphism(curve, which, prm, RingElement::t());
  const auto [tkey, tcoef] = *tt.terms().begin();
  for (int j = 0; j <= r; ++j) {
    // omega_0 = t^-1 dt, omega_j = t^-j u dt.
    const RingElement f = apply_automorphism(curve, which, prm, j == 0 ? -1 : -j, j == 0 ? 0 : 1);
    const auto [fkey, fcoef] = *f.terms().begin();
    const CenterVector v = (fcoef * tcoef) * reduce_form(curve, fkey.first, fkey.second, tkey.first, 0, tab.P, tab.Q);
    for (int i = 0; i <= r; ++i) m(i, j) = v[i];
  }
  return m;
}

}  // namespace detail

/// Phi = phi_xi^+ and Psi = psi_c^+ on omega_0..omega_{2n}.  Needs the case (a)
/// symmetry with this c.
inline ActionMatrices action_matrices(const CurveSpec& curve, int k, const Scalar& c, const Tables& tab) {
  if (curve.r() % 2 != 0 || !c.is_unit() || !check_dihedral(curve, c, SignCase::A))
    throw Error(ErrorCode::NotDihedralCaseA, "no psi_c^+ with sign (a) for this c");
  const AutParams prm{k, c, SignCase::A};
  return {detail::action_of(curve, AutKind::PhiPlus, prm, tab), detail::action_of(curve, AutKind::PsiPlus, prm, tab),
          curve.r() / 2, k};
}

inline ActionMatrices action_matrices(const CurveSpec& curve, int k, const Scalar& c) {
  return action_matrices(curve, k, c, make_tables(curve, curve.r() + 4));
}

/// Phi alone, for curves with only the rotation.
inline Matrix rotation_matrix(const CurveSpec& curve, int k) {
  return detail::action_of(curve, AutKind::PhiPlus, AutParams{k, Scalar(1), SignCase::A}, make_tables(curve, curve.r() + 4));
}

/// Traces at the class representatives.  `from` = 1 drops the omega_0 line.
inline std::vector<Cyclo> character_vector(const Matrix& Phi, const Matrix* Psi, const GroupSpec& g, std::size_t from = 0) {
  std::vector<Cyclo> out;
  for (const auto& cl : g.classes()) {
    Matrix w = Phi.pow(static_cast<unsigned>(cl.phi));
    if (cl.psi) {
      if (!Psi) throw Error(ErrorCode::InconsistentParams, "reflection class without Psi");
      w = *Psi * w;
    }
    const Scalar tr = w.block(from, w.rows()).trace();
    if (!tr.is_constant())
      throw Error(ErrorCode::NonConstantCharacter, "trace at " + cl.name + " is " + tr.to_string());
    out.push_back(tr.constant_value());
  }
  return out;
}

struct DecompositionResult {
  int n = 0, k = 0;
  GroupSpec group{GroupSpec::Kind::Cyclic, 1};
  std::vector<std::string> class_names;
  std::vector<Cyclo> character;          // on the quotient by the omega_0 line
  std::vector<Cyclo> omega0_character;
  std::string omega0_irrep;              // irreducible matching the omega_0 line
  std::vector<std::pair<std::string, long>> multiplicities;
  long bookkeeping = 0;                  // sum of multiplicity * dimension
};

inline DecompositionResult multiplicities(const CharacterTable& t, const std::vector<Cyclo>& charvec) {
  DecompositionResult res;
  res.group = t.group;
  res.k = t.group.k;
  for (const auto& c : t.group.classes()) res.class_names.push_back(c.name);
  res.character = charvec;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const Cyclo m = inner_product(t, charvec, t.rows[i]);
    if (!m.is_rational() || m.rational().get_den() != 1 || m.rational() < 0)
      throw Error(ErrorCode::NonIntegralMultiplicity, t.names[i] + " multiplicity " + m.to_string());
    const long v = m.rational().get_num().get_si();
    res.multiplicities.emplace_back(t.names[i], v);
    res.bookkeeping += v * t.dims[i];
  }
  return res;
}

inline long multiplicity_of(const DecompositionResult& d, const std::string& name) {
  for (const auto& [nm, v] : d.multiplicities)
    if (nm == name) return v;
  throw Error(ErrorCode::InconsistentParams, "no irreducible " + name);
}

/// Full pipeline: dihedral when a case (a) c is given, else cyclic.
inline DecompositionResult decompose(const CurveSpec& curve, int k, const std::optional<Scalar>& c) {
  const int n = curve.r() / 2;
  const Matrix Phi = c ? Matrix() : rotation_matrix(curve, k);
  std::optional<ActionMatrices> am;
  if (c) {
    if ((2 * n / k) % 2 != 0) throw Error(ErrorCode::NotDihedralCaseA, "l = 2n/k is odd, the group is not dihedral");
    am = action_matrices(curve, k, *c);
  }
  const GroupSpec g = c ? GroupSpec::dihedral(k) : GroupSpec::cyclic(k);
  const Matrix& phi = am ? am->Phi : Phi;
  const Matrix* psi = am ? &am->Psi : nullptr;
  const CharacterTable t = char_table(g);
  const auto full = character_vector(phi, psi, g, 0);
  const auto quot = character_vector(phi, psi, g, 1);
  DecompositionResult res = multiplicities(t, quot);
  res.n = n;
  for (std::size_t i = 0; i < full.size(); ++i) res.omega0_character.push_back(full[i] - quot[i]);
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    if (t.dims[i] == 1 && t.rows[i] == res.omega0_character) res.omega0_irrep = t.names[i];
  return res;
}

//////////////////////////////////////////////////////////////////////////////
// Closed forms

/// S1 = sum c^{n+3-2i} P_{i-n-3,-i}, S2 = the same weighted by xi^{3-2i}, i = n+3..2n.
inline std::pair<Scalar, Scalar> p_sums(const CurveSpec& curve, int k, const Scalar& c, const PTable& P) {
  const int n = curve.r() / 2;
  const Scalar xi = Scalar::zeta(2 * k);
  Scalar s1, s2;
  for (int i = n + 3; i <= 2 * n; ++i) {
    const Scalar term = c.pow(n + 3 - 2 * i) * P.at(i - n - 3, -i);
    s1 += term;
    s2 += xi.pow(3 - 2 * i) * term;
  }
  return {s1, s2};
}

/// Predicted multiplicities on the quotient; the k-odd branch uses S1 and S2.
inline std::vector<std::pair<std::string, Scalar>> closed_form_dihedral(int n, int k, const Scalar& S1, const Scalar& S2) {
  if ((2 * n) % k != 0) throw Error(ErrorCode::KDoesNotDivide, "k must divide 2n");
  const Scalar odd_k(frac(k % 2 ? n : 0, k));  // (1-(-1)^k) n / 2k
  const Scalar par(frac(n % 2 ? 1 : 0, 2));      // (1-(-1)^n) / 4
  const Scalar q(frac(1, 4));
  std::vector<std::pair<std::string, Scalar>> out;
  if (k % 2 == 0) {
    if (n % k != 0) throw Error(ErrorCode::KDoesNotDivide, "k even needs k | n");
    for (int r = 1; r <= 4; ++r) out.emplace_back("rho" + std::to_string(r), Scalar(0));
  } else {
    out.emplace_back("rho1", Scalar(0) - q * S1 - q * S2);
    out.emplace_back("rho2", q * S1 + q * S2);
    out.emplace_back("rho3", odd_k - par - q * S1 + q * S2);
    out.emplace_back("rho4", odd_k + par + q * S1 - q * S2);
  }
  for (int h = 1; h < k; ++h) out.emplace_back("chi" + std::to_string(h), Scalar(frac(h % 2 ? 2 * n : 0, k)));
  return out;
}

/// Upsilon_i for i = 3, 4 as printed, a function of (n, k, S1).
inline Scalar upsilon(int n, int k, int i, const Scalar& S1) {
  const Scalar a(frac(k % 2 ? n : 0, k));
  const Scalar b(frac(n % 2 ? 1 : 0, 2));
  const Scalar half(frac(i % 2 ? -1 : 1, 2));
  return (i == 3 ? a - b : a + b) + half * S1;
}

/// sum_{i=1}^{2n} xi^{(3-2i)j}.
inline Cyclo rotation_trace(int n, int k, int j) {
  Cyclo s;
  for (int i = 1; i <= 2 * n; ++i) s = s + Cyclo::zeta(2 * k, static_cast<long>(3 - 2 * i) * j);
  return s;
}

struct EigenClass {
  int exponent;              // eigenvalue xi^exponent, exponent mod 2k
  std::vector<int> indices;  // omega indices
};

/// Group omega_0..omega_{2n} by phi eigenvalue; omega_i has exponent 3-2i.
inline std::vector<EigenClass> cyclic_eigendecomposition(int n, int k) {
  if ((2 * n) % k != 0) throw Error(ErrorCode::KDoesNotDivide, "k must divide 2n");
  std::map<int, std::vector<int>> by;
  for (int i = 1; i <= 2 * n; ++i) by[((3 - 2 * i) % (2 * k) + 2 * k) % (2 * k)].push_back(i);
  std::vector<EigenClass> out{{0, {0}}};
  for (auto& [e, v] : by) out.push_back({e, v});
  return out;
}

//////////////////////////////////////////////////////////////////////////////
// Rescaled basis

struct RescaledCheck {
  bool passes = false;         // classical 2-dim dihedral blocks, middle vector signs
  bool printed_form = false;   // psi block entries exactly xi^{+-(2n+3-2i)}
  Cyclo psi_sign;              // entry ratio to the printed form, the same for every pair
  bool middle_ok = true;       // n odd: psi -> -1 and phi -> -1 on the middle vector
  std::vector<int> reducible;  // pairs (i, n+3-i) whose phi eigenvalue is +-1
  std::string detail;
};

/// Basis bar(omega_i) = c^{-(n+3-2i)/2} xi^{-i} omega_i on omega_1..omega_{n+2},
/// with c = h^2 so half powers are exact.
inline RescaledCheck rescaled_basis_check(int n, int k);

//////////////////////////////////////////////////////////////////////////////

/// Support {1, 1+k, ..., 2n+1}; free s_m on the upper half, mirrored by
/// a_j = c^{2j-2n-2} a_{2n+2-j}.
inline CurveSpec generic_dihedral_curve(int n, int k) {
  if (n < 1 || k < 1 || (2 * n) % k != 0) throw Error(ErrorCode::KDoesNotDivide, "k must divide 2n");
  std::map<int, Scalar> a;
  const Scalar c = Scalar::var("c");
  a[2 * n + 1] = Scalar(1);
  a[1] = c.pow(2 * n);
  int m = 0;
  for (int j = 2 * n + 1 - k; j >= n + 1; j -= k) {
    if (j == 1) break;
    const Scalar s = Scalar::var("s" + std::to_string(++m));
    a[j] = s;
    if (j != n + 1) a[2 * n + 2 - j] = c.pow(2 * j - 2 * n - 2) * s;
  }
  return CurveSpec(2 * n, a);
}

inline RescaledCheck rescaled_basis_check(int n, int k) {
  RescaledCheck out;
  const CurveSpec curve = generic_dihedral_curve(n, k);
  const ActionMatrices am = action_matrices(curve, k, Scalar::var("c"));
  const Scalar h = Scalar::var("h");
  const Matrix Phi = am.Phi.substitute("c", h * h);
  const Matrix Psi = am.Psi.substitute("c", h * h);
  const Scalar xi = Scalar::zeta(2 * k);
  const int top = n + 2;
  std::vector<Scalar> d(top + 1);
  for (int i = 1; i <= top; ++i) d[i] = h.pow(-(n + 3 - 2 * i)) * xi.pow(-i);
  auto conj = [&](const Matrix& M, int i, int j) { return M(i, j) * d[j] / d[i]; };  // entry of D^-1 M D
  auto fail = [&](const std::string& why) {
    out.detail = why;
    out.passes = false;
    return out;
  };
  for (int j = 1; j <= top; ++j)
    for (int i = 0; i <= 2 * n; ++i)
      if ((i == 0 || i > top) && !(Psi(i, j).is_zero() && Phi(i, j).is_zero()))
        return fail("span of omega_1..omega_{n+2} is not invariant");
  bool sign_set = false;
  out.printed_form = true;
  for (int i = 1; 2 * i < n + 3; ++i) {
    const int j = n + 3 - i;
    const Scalar x = conj(Phi, i, i), y = conj(Phi, j, j);
    if (!conj(Phi, i, j).is_zero() || !conj(Phi, j, i).is_zero() || !(x * y == Scalar(1)))
      return fail("Phi block " + std::to_string(i) + " is not diag(x, 1/x)");
    if (x == y) out.reducible.push_back(i);
    if (!(x == xi.pow(2 * n + 3 - 2 * i))) return fail("Phi eigenvalue differs from zeta^{(2n+3-2i)/2}");
    const Scalar p = conj(Psi, j, i), q = conj(Psi, i, j);
    if (!conj(Psi, i, i).is_zero() || !conj(Psi, j, j).is_zero() || !(p * q == Scalar(1)))
      return fail("Psi block " + std::to_string(i) + " is not an involutive anti-diagonal");
    const Scalar ratio = p / xi.pow(2 * n + 3 - 2 * i);
    if (!ratio.is_constant()) return fail("Psi block entry depends on parameters");
    if (!sign_set) {
      out.psi_sign = ratio.constant_value();
      sign_set = true;
    } else if (!(ratio.constant_value() == out.psi_sign)) {
      return fail("Psi block ratio varies between pairs");
    }
    if (!(ratio == Scalar(1))) out.printed_form = false;
  }
  if (n % 2 == 1) {
    const int mid = (n + 3) / 2;
    out.middle_ok = conj(Psi, mid, mid) == Scalar(-1) && conj(Phi, mid, mid) == Scalar(-1);
  }
  out.passes = out.middle_ok && out.reducible.empty();
  if (!out.middle_ok) out.detail = "middle vector signs differ";
  if (!out.reducible.empty()) out.detail = std::to_string(out.reducible.size()) + " pair(s) with phi eigenvalue +-1 split into lines";
  return out;
}

}  // namespace kn
