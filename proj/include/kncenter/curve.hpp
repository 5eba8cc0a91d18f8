#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "kncenter/parse.hpp"

namespace kn {

/// p(t) = sum_{j=1}^{r+1} a_j t^j, monic with p(0) = 0 and a_1 != 0.
class CurveSpec {
 public:
  CurveSpec() = default;

  CurveSpec(int r, std::map<int, Scalar> coeffs) : r_(r) {
    for (auto& [j, a] : coeffs)
      if (!a.is_zero()) coeffs_[j] = a;
    validate();
  }

  static CurveSpec from_literals(int r, const std::map<int, std::string>& coeffs) {
    std::map<int, Scalar> m;
    for (const auto& [j, s] : coeffs) m[j] = parse_scalar(s);
    return CurveSpec(r, m);
  }

  int r() const { return r_; }
  int degree() const { return r_ + 1; }
  const std::map<int, Scalar>& coeffs() const { return coeffs_; }

  const Scalar& a(int j) const {
    static const Scalar zero;
    auto it = coeffs_.find(j);
    return it == coeffs_.end() ? zero : it->second;
  }

  std::vector<std::string> variables() const {
    std::set<std::string> vs;
    for (const auto& [j, a] : coeffs_) vs.insert(a.vars().begin(), a.vars().end());
    return {vs.begin(), vs.end()};
  }

  bool constant_coefficients() const {
    for (const auto& [j, a] : coeffs_)
      if (!a.is_constant()) return false;
    return true;
  }

  CurveSpec substitute(const std::string& name, const Scalar& value) const {
    std::map<int, Scalar> m;
    for (const auto& [j, a] : coeffs_) m[j] = a.substitute(name, value);
    return CurveSpec(r_, m);
  }

  friend bool operator==(const CurveSpec& x, const CurveSpec& y) { return x.r_ == y.r_ && x.coeffs_ == y.coeffs_; }

 private:
  int r_ = 0;
  std::map<int, Scalar> coeffs_;

  void validate() const {
    if (r_ < 1) throw Error(ErrorCode::InvalidCurve, "r must be positive");
    for (const auto& [j, a] : coeffs_)
      if (j < 1 || j > r_ + 1)
        throw Error(ErrorCode::InvalidCurve, "coefficient index " + std::to_string(j) + " outside 1.." + std::to_string(r_ + 1));
    if (a(r_ + 1) != Scalar(1)) throw Error(ErrorCode::InvalidCurve, "p(t) must be monic");
    if (a(1).is_zero()) throw Error(ErrorCode::InvalidCurve, "a_1 must be nonzero");
  }
};

}  // namespace kn
