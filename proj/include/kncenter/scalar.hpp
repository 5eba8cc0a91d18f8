#pragma once

#include <algorithm>
#include <complex>
#include <iterator>
#include <ostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kncenter/cyclo.hpp"

namespace kn {

/// Multivariate Laurent polynomial over a cyclotomic field.
///
/// Variables are kept sorted by name and unused ones are dropped after every
/// operation, so two equal values always have identical representations up
/// to the order of their cyclotomic coefficients.
class Scalar {
 public:
  using Exps = std::vector<int>;

  Scalar() = default;
  Scalar(long v) : Scalar(Cyclo(v)) {}         // NOLINT(google-explicit-constructor)
  Scalar(int v) : Scalar(Cyclo(long(v))) {}    // NOLINT(google-explicit-constructor)
  Scalar(const Rat& q) : Scalar(Cyclo(q)) {}   // NOLINT(google-explicit-constructor)
  Scalar(const Cyclo& c) {                     // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.emplace(Exps{}, c);
  }

  static Scalar var(const std::string& name, int power = 1) {
    Scalar s;
    s.vars_ = {name};
    s.terms_.emplace(Exps{power}, Cyclo(1));
    s.prune();
    return s;
  }

  static Scalar zeta(int m, long j = 1) { return Scalar(Cyclo::zeta(m, j)); }

  /// Builds from explicit data; vars need not be sorted.
  static Scalar from_terms(std::vector<std::string> vars, const std::map<Exps, Cyclo>& terms) {
    std::vector<std::size_t> perm(vars.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return vars[a] < vars[b]; });
    Scalar s;
    for (std::size_t i : perm) s.vars_.push_back(vars[i]);
    for (const auto& [e, c] : terms) {
      if (e.size() != vars.size()) throw Error(ErrorCode::InconsistentParams, "exponent arity mismatch");
      Exps ne(e.size());
      for (std::size_t i = 0; i < perm.size(); ++i) ne[i] = e[perm[i]];
      s.add_term(ne, c);
    }
    s.prune();
    return s;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Exps, Cyclo>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return vars_.empty(); }
  bool is_unit() const { return terms_.size() == 1; }

  Cyclo constant_value() const {
    if (!is_constant()) throw Error(ErrorCode::NonConstantCharacter, "value depends on " + vars_.front());
    return terms_.empty() ? Cyclo() : terms_.begin()->second;
  }

  bool is_rational_constant() const { return is_constant() && constant_value().is_rational(); }

  int total_degree_max() const {
    int best = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      int d = 0;
      for (int x : e) d += x;
      if (first || d > best) best = d;
      first = false;
    }
    return best;
  }

  Scalar operator-() const {
    Scalar s = *this;
    for (auto& [e, c] : s.terms_) c = -c;
    return s;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    if (a.vars_ == b.vars_) {
      Scalar s = a;
      for (const auto& [e, c] : b.terms_) s.add_term(e, c);
      s.prune();
      return s;
    }
    auto [x, y] = align(a, b);
    for (const auto& [e, c] : y.terms_) x.add_term(e, c);
    x.prune();
    return x;
  }

  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return Scalar();
    if (a.is_constant() && a.terms_.size() == 1) return b.scaled(a.terms_.begin()->second);
    if (b.is_constant() && b.terms_.size() == 1) return a.scaled(b.terms_.begin()->second);
    auto [x, y] = a.vars_ == b.vars_ ? std::pair<Scalar, Scalar>(a, b) : align(a, b);
    Scalar s;
    s.vars_ = x.vars_;
    Exps e(x.vars_.size());
    for (const auto& [ea, ca] : x.terms_)
      for (const auto& [eb, cb] : y.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        s.add_term(e, ca * cb);
      }
    s.prune();
    return s;
  }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar scaled(const Cyclo& k) const {
    if (k.is_zero()) return Scalar();
    Scalar s = *this;
    for (auto& [e, c] : s.terms_) c *= k;
    return s;
  }

  /// Inverse of a single-term value; the Laurent ring has no other units.
  Scalar inverse() const {
    if (terms_.size() != 1)
      throw Error(ErrorCode::NotInvertible, is_zero() ? "zero has no inverse" : "not a unit: " + to_string());
    Scalar s;
    s.vars_ = vars_;
    Exps e = terms_.begin()->first;
    for (int& x : e) x = -x;
    s.terms_.emplace(e, terms_.begin()->second.inverse());
    return s;
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar result(1), base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  /// Replaces variable `name` by `value`; negative powers need a unit value.
  Scalar substitute(const std::string& name, const Scalar& value) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) return *this;
    const std::size_t idx = it - vars_.begin();
    std::vector<std::string> rest = vars_;
    rest.erase(rest.begin() + idx);
    std::map<int, Scalar> powers;
    Scalar out;
    for (const auto& [e, c] : terms_) {
      Exps re = e;
      re.erase(re.begin() + idx);
      Scalar mono = from_terms(rest, {{re, c}});
      auto pit = powers.find(e[idx]);
      if (pit == powers.end()) pit = powers.emplace(e[idx], value.pow(e[idx])).first;
      out += mono * pit->second;
    }
    return out;
  }

  std::complex<double> evaluate(const std::map<std::string, std::complex<double>>& at) const {
    std::complex<double> z = 0;
    for (const auto& [e, c] : terms_) {
      std::complex<double> t = c.to_complex();
      for (std::size_t i = 0; i < e.size(); ++i) {
        auto it = at.find(vars_[i]);
        if (it == at.end()) throw Error(ErrorCode::InconsistentParams, "no value for " + vars_[i]);
        t *= std::pow(it->second, e[i]);
      }
      z += t;
    }
    return z;
  }

  /// Square root of a single-term value with even exponents and a rational
  /// coefficient; negative coefficients pick up zeta(4).
  Scalar sqrt_unit() const {
    if (terms_.size() != 1) throw Error(ErrorCode::NotInvertible, "square root needs a single term");
    const auto& [e, c] = *terms_.begin();
    Exps h(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] % 2 != 0) throw Error(ErrorCode::NotInvertible, "odd exponent under square root");
      h[i] = e[i] / 2;
    }
    if (!c.is_rational()) throw Error(ErrorCode::NotInvertible, "square root of irrational coefficient");
    Rat q = c.rational();
    bool neg = q < 0;
    if (neg) q = -q;
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class sn = sqrt(num), sd = sqrt(den);
    if (sn * sn != num || sd * sd != den)
      throw Error(ErrorCode::NotInvertible, "coefficient is not a rational square");
    Cyclo root(frac(sn, sd));
    if (neg) root *= Cyclo::zeta(4);
    Scalar s;
    s.vars_ = vars_;
    s.terms_.emplace(h, root);
    return s;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.vars_ != b.vars_ || a.terms_.size() != b.terms_.size()) return (a - b).is_zero();
    auto it = b.terms_.begin();
    for (const auto& [e, c] : a.terms_) {
      if (e != it->first || !(c == it->second)) return false;
      ++it;
    }
    return true;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Literal form accepted back by parse_scalar().
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Exps, Cyclo>> order(terms_.begin(), terms_.end());
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
      int da = 0, db = 0;
      for (int x : a.first) da += x;
      for (int x : b.first) db += x;
      if (da != db) return da > db;
      return a.first > b.first;
    });
    bool all_rational = true;
    for (const auto& [e, c] : order) all_rational = all_rational && c.is_rational();
    if (all_rational) {
      mpz_class den = 1;
      for (const auto& [e, c] : order) {
        mpz_class d = c.rational().get_den();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
      }
      std::string body;
      for (const auto& [e, c] : order) {
        Rat scaled = c.rational() * Rat(den);
        mpz_class num = scaled.get_num();
        bool neg = num < 0;
        mpz_class mag = abs(num);
        std::string mono = monomial_string(e);
        std::string term;
        if (mono.empty())
          term = mag.get_str();
        else if (mag == 1)
          term = mono;
        else
          term = mag.get_str() + "*" + mono;
        if (body.empty())
          body = (neg ? "-" : "") + term;
        else
          body += (neg ? "-" : "+") + term;
      }
      if (den == 1) return body;
      if (order.size() == 1) return body + "/" + den.get_str();
      return "(" + body + ")/" + den.get_str();
    }
    std::string body;
    for (const auto& [e, c] : order) {
      std::string mono = monomial_string(e);
      std::string term;
      if (c.is_rational()) {
        Rat q = c.rational();
        bool neg = q < 0;
        Rat mag = abs(q);
        if (mono.empty())
          term = rat_to_string(mag);
        else if (mag == 1)
          term = mono;
        else
          term = rat_to_string(mag) + "*" + mono;
        body += neg ? "-" : (body.empty() ? "" : "+");
        body += term;
      } else {
        term = "(" + c.to_string() + ")";
        if (!mono.empty()) term += "*" + mono;
        if (!body.empty()) body += "+";
        body += term;
      }
    }
    return body;
  }

 private:
  std::vector<std::string> vars_;
  std::map<Exps, Cyclo> terms_;

  void add_term(const Exps& e, const Cyclo& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  void prune() {
    if (vars_.empty()) return;
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [e, c] : terms_)
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) used[i] = true;
    if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return;
    std::vector<std::string> nv;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (used[i]) nv.push_back(vars_[i]);
    std::map<Exps, Cyclo> nt;
    for (const auto& [e, c] : terms_) {
      Exps ne;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (used[i]) ne.push_back(e[i]);
      nt.emplace(std::move(ne), c);
    }
    vars_ = std::move(nv);
    terms_ = std::move(nt);
  }

  Scalar reindexed(const std::vector<std::string>& all) const {
    std::vector<std::size_t> pos(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i)
      pos[i] = std::lower_bound(all.begin(), all.end(), vars_[i]) - all.begin();
    Scalar s;
    s.vars_ = all;
    for (const auto& [e, c] : terms_) {
      Exps ne(all.size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
      s.terms_.emplace(std::move(ne), c);
    }
    return s;
  }

  static std::pair<Scalar, Scalar> align(const Scalar& a, const Scalar& b) {
    std::vector<std::string> all;
    std::set_union(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end(), std::back_inserter(all));
    return {a.reindexed(all), b.reindexed(all)};
  }

  std::string monomial_string(const Exps& e) const {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += vars_[i];
      if (e[i] != 1) s += "^" + std::to_string(e[i]);
    }
    return s;
  }
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const Cyclo& c) { return os << c.to_string(); }

}  // namespace kn
