#pragma once

#include <vector>

#include "kncenter/curve.hpp"

namespace kn {

/// P_{k,i} for -r <= k <= kmax, -r <= i <= -1.
class PTable {
 public:
  PTable(CurveSpec curve, int kmax)
      : curve_(std::move(curve)), kmax_(kmax), v_(static_cast<std::size_t>(kmax + curve_.r() + 1) * curve_.r()) {}

  const CurveSpec& curve() const { return curve_; }
  int kmax() const { return kmax_; }
  bool covers(int k) const { return k >= -curve_.r() && k <= kmax_; }

  const Scalar& at(int k, int i) const { return v_[index(k, i)]; }
  Scalar& at(int k, int i) { return v_[index(k, i)]; }

 private:
  CurveSpec curve_;
  int kmax_;
  std::vector<Scalar> v_;

  std::size_t index(int k, int i) const {
    const int r = curve_.r();
    if (k < -r || k > kmax_) throw Error(ErrorCode::TableTooSmall, "P table has no row k=" + std::to_string(k));
    if (i < -r || i > -1) throw Error(ErrorCode::InconsistentParams, "P column i=" + std::to_string(i) + " out of range");
    return static_cast<std::size_t>(k + r) * r + (i + r);
  }
};

/// Q_{m,i} for 1 <= m <= mmax, -r <= i <= -1.
class QTable {
 public:
  QTable(CurveSpec curve, int mmax)
      : curve_(std::move(curve)), mmax_(mmax), v_(static_cast<std::size_t>(mmax) * curve_.r()) {}

  const CurveSpec& curve() const { return curve_; }
  int mmax() const { return mmax_; }
  bool covers(int m) const { return m >= 1 && m <= mmax_; }

  const Scalar& at(int m, int i) const { return v_[index(m, i)]; }
  Scalar& at(int m, int i) { return v_[index(m, i)]; }

 private:
  CurveSpec curve_;
  int mmax_;
  std::vector<Scalar> v_;

  std::size_t index(int m, int i) const {
    const int r = curve_.r();
    if (m < 1 || m > mmax_) throw Error(ErrorCode::TableTooSmall, "Q table has no row m=" + std::to_string(m));
    if (i < -r || i > -1) throw Error(ErrorCode::InconsistentParams, "Q column i=" + std::to_string(i) + " out of range");
    return static_cast<std::size_t>(m - 1) * r + (i + r);
  }
};

/// (2k+r+3) P_{k,i} = -sum_j (3j+2k-2r) a_j P_{k-r+j-1,i}, from P_{l,i} = delta_{l,i}.
inline PTable compute_P(const CurveSpec& curve, int kmax) {
  const int r = curve.r();
  if (kmax < -r) throw Error(ErrorCode::InconsistentParams, "kmax must be at least -r");
  PTable t(curve, kmax);
  for (int l = -r; l <= -1 && l <= kmax; ++l) t.at(l, l) = Scalar(1);
  for (int k = 0; k <= kmax; ++k) {
    const Scalar inv(frac(-1, 2 * k + r + 3));
    for (int i = -r; i <= -1; ++i) {
      Scalar s;
      for (int j = 1; j <= r; ++j) {
        const Scalar& aj = curve.a(j);
        const Scalar& prev = t.at(k - r + j - 1, i);
        if (aj.is_zero() || prev.is_zero()) continue;
        s += aj * prev * Scalar(3 * j + 2 * k - 2 * r);
      }
      t.at(k, i) = s * inv;
    }
  }
  return t;
}

/// Q_{m,i} = (1/((2m-3) a_1)) sum_{j=2}^{r+1} (3j-2m) a_j Q_{m-j+1,i}, from Q_{m,i} = delta_{m,-i}.
inline QTable compute_Q(const CurveSpec& curve, int mmax) {
  const int r = curve.r();
  if (mmax < 1) throw Error(ErrorCode::InconsistentParams, "mmax must be positive");
  const Scalar a1_inv = curve.a(1).inverse();
  QTable t(curve, mmax);
  for (int m = 1; m <= r && m <= mmax; ++m) t.at(m, -m) = Scalar(1);
  for (int m = r + 1; m <= mmax; ++m) {
    const Scalar f = a1_inv * Scalar(frac(1, 2 * m - 3));
    for (int i = -r; i <= -1; ++i) {
      Scalar s;
      for (int j = 2; j <= r + 1; ++j) {
        const Scalar& aj = curve.a(j);
        const Scalar& prev = t.at(m - j + 1, i);
        if (aj.is_zero() || prev.is_zero()) continue;
        s += aj * prev * Scalar(3 * j - 2 * m);
      }
      t.at(m, i) = s * f;
    }
  }
  return t;
}

/// Closed form of P_{k,i} on p(t) = t^{2n+1} - t.
inline Rat closed_form_P_oddcurve(int n, int k, int i) {
  if (k < 0) return k == i ? Rat(1) : Rat(0);
  const int period = 2 * n;
  if (((k - i) % period + period) % period != 0) return Rat(0);
  const int steps = (k - i) / period;
  Rat prod = 1;
  for (int j = 1; j <= steps; ++j) prod *= frac(-4 * j * n + 2 * k + 3, (2 - 4 * (j - 1)) * n + 2 * k + 3);
  return prod;
}

}  // namespace kn
