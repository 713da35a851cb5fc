#pragma once

// Truncated multivariate Taylor polynomials ("jets").  A jet carries the
// value of a function together with all its Taylor coefficients up to a
// fixed total order at one base point; arithmetic on jets propagates exact
// derivatives through whole computations.  The scalar type is a template
// parameter so jets nest: JetT<JetT<double>> gives fresh outer derivatives
// on top of an inner jet computation.

#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rlab/scalar.hpp"

namespace rlab {

// Multi-index bookkeeping for jets in `nvars` variables truncated at total
// degree `order`.  Positions enumerate multi-indices in graded
// lexicographic order, so the coefficient block of total degree <= d is a
// prefix of the block for any higher truncation order.  Layouts are cached
// and shared; all jets in one computation hold the same layout object.
class JetLayout {
 public:
  static std::shared_ptr<const JetLayout> get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }

  // Number of multi-indices of total degree <= d (0 for negative d).
  int size(int d) const { return d < 0 ? 0 : cum_[static_cast<size_t>(d)]; }
  int size() const { return size(order_); }

  int degree(int pos) const { return deg_[static_cast<size_t>(pos)]; }
  int exponent(int pos, int v) const {
    return exps_[static_cast<size_t>(pos) * nvars_ + v];
  }
  // Position of a multi-index, or -1 if its degree exceeds order().
  int position(std::span<const int> exps) const;
  // alpha! for the multi-index at `pos` (derivative = coefficient * alpha!).
  double factorial(int pos) const { return fact_[static_cast<size_t>(pos)]; }

  // Product table: for position i, entry j < size(order() - degree(i)) holds
  // the position of multi-index(i) + multi-index(j).
  const std::uint32_t* product_row(int pos) const {
    return prod_.data() + row_start_[static_cast<size_t>(pos)];
  }
  // Position of multi-index(pos) + e_v, or -1 if it leaves the truncation.
  int shift_up(int pos, int v) const {
    return up_[static_cast<size_t>(v) * size() + pos];
  }

 private:
  JetLayout(int nvars, int order);

  int nvars_ = 0;
  int order_ = 0;
  std::vector<int> cum_;             // cumulative block sizes, index 0..order
  std::vector<std::int8_t> deg_;     // degree per position
  std::vector<std::int8_t> exps_;    // exponents, nvars per position
  std::vector<double> fact_;         // alpha! per position
  std::vector<std::uint32_t> prod_;  // compressed product table
  std::vector<size_t> row_start_;
  std::vector<std::int32_t> up_;     // shift-up positions, nvars * size
};

template <class T>
class JetT {
 public:
  using Layout = std::shared_ptr<const JetLayout>;

  // A constant: behaves like a plain scalar against any jet.
  JetT() : c_(1, T(0)) {}
  JetT(double v) : c_(1, T(v)) {}  // NOLINT: implicit by design
  template <class U = T, class = std::enable_if_t<!std::is_same_v<U, double>>>
  JetT(const T& v) : c_(1, v) {}  // NOLINT: implicit by design

  static JetT constant(const Layout& layout, const T& v) {
    JetT r = zeros(layout, layout->order());
    r.c_[0] = v;
    return r;
  }

  // Coordinate seed: value v, unit first-order coefficient in variable `var`.
  static JetT variable(const Layout& layout, int var, const T& v) {
    JetT r = constant(layout, v);
    if (layout->order() >= 1) {
      std::vector<int> e(static_cast<size_t>(layout->nvars()), 0);
      e[static_cast<size_t>(var)] = 1;
      r.c_[static_cast<size_t>(layout->position(e))] = T(1);
    }
    return r;
  }

  bool is_constant() const { return layout_ == nullptr; }
  const Layout& layout() const { return layout_; }
  // Truncation order of this jet (INT_MAX-like for constants: they never
  // limit the order of a combination).
  int order() const { return layout_ ? ord_ : kInfOrder; }
  const T& value() const { return c_[0]; }
  const std::vector<T>& coeffs() const { return c_; }

  // Value of the mixed partial derivative for the given exponents.
  T partial(std::span<const int> exps) const {
    int total = 0;
    for (int e : exps) total += e;
    if (total == 0) return c_[0];
    if (!layout_) return T(0);
    if (total > ord_)
      throw std::logic_error("jet partial: order " + std::to_string(total) +
                             " exceeds jet order " + std::to_string(ord_));
    const int pos = layout_->position(exps);
    return c_[static_cast<size_t>(pos)] * T(layout_->factorial(pos));
  }

  // Jet of the partial derivative with respect to variable `var`; the
  // truncation order drops by one.
  JetT deriv(int var) const {
    if (!layout_) return JetT(T(0));
    if (ord_ == 0)
      throw std::logic_error("jet deriv: order-0 jet has no derivative data");
    JetT r;
    r.layout_ = layout_;
    r.ord_ = ord_ - 1;
    const int out_size = layout_->size(r.ord_);
    r.c_.resize(static_cast<size_t>(out_size));
    for (int p = 0; p < out_size; ++p) {
      const int q = layout_->shift_up(p, var);
      r.c_[static_cast<size_t>(p)] =
          c_[static_cast<size_t>(q)] * T(layout_->exponent(p, var) + 1);
    }
    return r;
  }

  // Same jet truncated to a lower order (prefix copy).
  JetT truncated(int new_order) const {
    if (!layout_ || new_order >= ord_) return *this;
    JetT r;
    r.layout_ = layout_;
    r.ord_ = new_order;
    r.c_.assign(c_.begin(), c_.begin() + layout_->size(new_order));
    return r;
  }

  JetT operator-() const {
    JetT r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend JetT operator+(const JetT& a, const JetT& b) {
    return linear_combine(a, b, /*bsign=*/1);
  }
  friend JetT operator-(const JetT& a, const JetT& b) {
    return linear_combine(a, b, /*bsign=*/-1);
  }

  friend JetT operator*(const JetT& a, const JetT& b) {
    if (a.is_constant()) return scaled(b, a.c_[0]);
    if (b.is_constant()) return scaled(a, b.c_[0]);
    const JetLayout& L = *a.layout_;
    JetT r;
    r.layout_ = a.layout_;
    r.ord_ = std::min(a.ord_, b.ord_);
    r.c_.assign(static_cast<size_t>(L.size(r.ord_)), T(0));
    for (int i = 0, ilim = L.size(r.ord_); i < ilim; ++i) {
      const std::uint32_t* row = L.product_row(i);
      const T& ai = a.c_[static_cast<size_t>(i)];
      const int jlim = L.size(r.ord_ - L.degree(i));
      for (int j = 0; j < jlim; ++j)
        r.c_[row[j]] += ai * b.c_[static_cast<size_t>(j)];
    }
    return r;
  }

  // Power-series long division, graded degree by degree.
  friend JetT operator/(const JetT& a, const JetT& b) {
    if (b.is_constant()) {
      JetT r = a;
      for (auto& x : r.c_) x = x / b.c_[0];
      return r;
    }
    if (scalar_value(b.c_[0]) == 0.0)
      throw std::domain_error("jet division by zero value part");
    const JetLayout& L = *b.layout_;
    const int ord = std::min(a.order(), b.ord_);
    JetT q;
    q.layout_ = b.layout_;
    q.ord_ = ord;
    const int n = L.size(ord);
    q.c_.assign(static_cast<size_t>(n), T(0));
    std::vector<T> acc(static_cast<size_t>(n), T(0));
    const T inv_b0 = T(1) / b.c_[0];
    q.c_[0] = num_coeff(a, 0) * inv_b0;
    for (int d = 1; d <= ord; ++d) {
      for (int i = L.size(0); i < L.size(std::min(d, b.ord_)); ++i) {
        const std::uint32_t* row = L.product_row(i);
        const T& bi = b.c_[static_cast<size_t>(i)];
        const int rem = d - L.degree(i);
        for (int j = L.size(rem - 1); j < L.size(rem); ++j)
          acc[row[j]] += bi * q.c_[static_cast<size_t>(j)];
      }
      for (int p = L.size(d - 1); p < L.size(d); ++p)
        q.c_[static_cast<size_t>(p)] =
            (num_coeff(a, p) - acc[static_cast<size_t>(p)]) * inv_b0;
    }
    return q;
  }

  friend JetT operator+(const JetT& a, double s) { return a + JetT(s); }
  friend JetT operator+(double s, const JetT& a) { return JetT(s) + a; }
  friend JetT operator-(const JetT& a, double s) { return a - JetT(s); }
  friend JetT operator-(double s, const JetT& a) { return JetT(s) - a; }
  friend JetT operator*(const JetT& a, double s) { return a * JetT(s); }
  friend JetT operator*(double s, const JetT& a) { return JetT(s) * a; }
  friend JetT operator/(const JetT& a, double s) { return a / JetT(s); }
  friend JetT operator/(double s, const JetT& a) { return JetT(s) / a; }

  JetT& operator+=(const JetT& o) { return *this = *this + o; }
  JetT& operator-=(const JetT& o) { return *this = *this - o; }
  JetT& operator*=(const JetT& o) { return *this = *this * o; }
  JetT& operator/=(const JetT& o) { return *this = *this / o; }

  friend bool operator==(const JetT& a, const JetT& b) {
    return scalar_value(a.c_[0]) == scalar_value(b.c_[0]);
  }
  friend bool operator!=(const JetT& a, const JetT& b) { return !(a == b); }
  friend bool operator<(const JetT& a, const JetT& b) {
    return scalar_value(a.c_[0]) < scalar_value(b.c_[0]);
  }
  friend bool operator>(const JetT& a, const JetT& b) { return b < a; }

  // Square root by the graded Taylor recurrence
  //   s_gamma = (a_gamma - sum_{0<|b|<|gamma|} s_b s_{gamma-b}) / (2 s_0).
  friend JetT sqrt(const JetT& a) {
    if (scalar_value(a.c_[0]) <= 0.0)
      throw std::domain_error("jet sqrt: value part must be positive");
    using std::sqrt;
    if (a.is_constant()) return JetT(sqrt(a.c_[0]));
    const JetLayout& L = *a.layout_;
    JetT s;
    s.layout_ = a.layout_;
    s.ord_ = a.ord_;
    const int n = L.size(s.ord_);
    s.c_.assign(static_cast<size_t>(n), T(0));
    std::vector<T> acc(static_cast<size_t>(n), T(0));
    s.c_[0] = sqrt(a.c_[0]);
    const T inv_2s0 = T(1) / (T(2) * s.c_[0]);
    for (int d = 1; d <= s.ord_; ++d) {
      for (int i = L.size(0); i < L.size(d - 1); ++i) {
        const std::uint32_t* row = L.product_row(i);
        const T& si = s.c_[static_cast<size_t>(i)];
        const int rem = d - L.degree(i);
        if (rem < 1) continue;
        for (int j = L.size(rem - 1); j < L.size(rem); ++j)
          acc[row[j]] += si * s.c_[static_cast<size_t>(j)];
      }
      for (int p = L.size(d - 1); p < L.size(d); ++p)
        s.c_[static_cast<size_t>(p)] =
            (a.c_[static_cast<size_t>(p)] - acc[static_cast<size_t>(p)]) *
            inv_2s0;
    }
    return s;
  }

  friend JetT exp(const JetT& a) {
    using std::exp;
    if (a.is_constant()) return JetT(exp(a.c_[0]));
    const int k = a.ord_;
    std::vector<T> c(static_cast<size_t>(k) + 1);
    const T e0 = exp(a.c_[0]);
    double inv_fact = 1.0;
    for (int j = 0; j <= k; ++j) {
      if (j > 0) inv_fact /= j;
      c[static_cast<size_t>(j)] = e0 * T(inv_fact);
    }
    return compose_series(a, c);
  }

  friend JetT log(const JetT& a) {
    using std::log;
    if (scalar_value(a.c_[0]) <= 0.0)
      throw std::domain_error("jet log: value part must be positive");
    if (a.is_constant()) return JetT(log(a.c_[0]));
    const int k = a.ord_;
    std::vector<T> c(static_cast<size_t>(k) + 1);
    c[0] = log(a.c_[0]);
    const T inv_u0 = T(1) / a.c_[0];
    T p = inv_u0;
    double sign = 1.0;
    for (int j = 1; j <= k; ++j) {
      c[static_cast<size_t>(j)] = p * T(sign / j);
      p = p * inv_u0;
      sign = -sign;
    }
    return compose_series(a, c);
  }

  friend JetT sin(const JetT& a) { return sincos_impl(a, /*want_sin=*/true); }
  friend JetT cos(const JetT& a) { return sincos_impl(a, /*want_sin=*/false); }

  friend JetT pow(const JetT& a, unsigned e) {
    if (e == 0) return JetT(T(1));
    JetT r = a;
    JetT base = a;
    --e;
    while (e > 0) {
      if (e & 1u) r = r * base;
      e >>= 1u;
      if (e > 0) base = base * base;
    }
    return r;
  }

  friend JetT abs(const JetT& a) {
    return scalar_value(a.c_[0]) < 0.0 ? -a : a;
  }

 private:
  static constexpr int kInfOrder = 1 << 20;

  // Coefficient of `a` at position p, treating constants as padded with 0.
  static const T& num_coeff(const JetT& a, int p) {
    static const T zero(0);
    if (a.is_constant()) return p == 0 ? a.c_[0] : zero;
    return c_at(a, p);
  }
  static const T& c_at(const JetT& a, int p) {
    return a.c_[static_cast<size_t>(p)];
  }

  static JetT scaled(const JetT& a, const T& s) {
    JetT r = a;
    for (auto& x : r.c_) x = x * s;
    return r;
  }

  static JetT linear_combine(const JetT& a, const JetT& b, int bsign) {
    if (a.is_constant() && b.is_constant())
      return JetT(bsign > 0 ? a.c_[0] + b.c_[0] : a.c_[0] - b.c_[0]);
    JetT r;
    if (a.is_constant()) {
      r = bsign > 0 ? b : -b;
      r.c_[0] = r.c_[0] + a.c_[0];
      return r;
    }
    if (b.is_constant()) {
      r = a;
      r.c_[0] = bsign > 0 ? r.c_[0] + b.c_[0] : r.c_[0] - b.c_[0];
      return r;
    }
    r.layout_ = a.layout_;
    r.ord_ = std::min(a.ord_, b.ord_);
    const size_t n = static_cast<size_t>(a.layout_->size(r.ord_));
    r.c_.resize(n);
    for (size_t i = 0; i < n; ++i)
      r.c_[i] = bsign > 0 ? a.c_[i] + b.c_[i] : a.c_[i] - b.c_[i];
    return r;
  }

  static JetT zeros(const Layout& layout, int ord) {
    JetT r;
    r.layout_ = layout;
    r.ord_ = ord;
    r.c_.assign(static_cast<size_t>(layout->size(ord)), T(0));
    return r;
  }

  // Evaluate sum_j c_j * (a - a0)^j by Horner; exact in the truncated ring
  // because (a - a0) is nilpotent.
  static JetT compose_series(const JetT& a, const std::vector<T>& c) {
    JetT u = a;
    u.c_[0] = T(0);
    const int k = a.ord_;
    JetT r = zeros(a.layout_, a.ord_);
    r.c_[0] = c[static_cast<size_t>(k)];
    for (int j = k - 1; j >= 0; --j) {
      r = r * u;
      r.c_[0] = r.c_[0] + c[static_cast<size_t>(j)];
    }
    return r;
  }

  static JetT sincos_impl(const JetT& a, bool want_sin) {
    using std::cos;
    using std::sin;
    if (a.is_constant())
      return JetT(want_sin ? sin(a.c_[0]) : cos(a.c_[0]));
    const int k = a.ord_;
    std::vector<T> c(static_cast<size_t>(k) + 1);
    // Derivative cycle sin -> cos -> -sin -> -cos (shifted for cos).
    const T s0 = sin(a.c_[0]);
    const T c0 = cos(a.c_[0]);
    const T cycle[4] = {want_sin ? s0 : c0, want_sin ? c0 : -s0,
                        want_sin ? -s0 : -c0, want_sin ? -c0 : s0};
    double inv_fact = 1.0;
    for (int j = 0; j <= k; ++j) {
      if (j > 0) inv_fact /= j;
      c[static_cast<size_t>(j)] = cycle[j % 4] * T(inv_fact);
    }
    return compose_series(a, c);
  }

  Layout layout_;  // null for constants
  int ord_ = 0;
  std::vector<T> c_;
};

using Jet = JetT<double>;
using Jet2 = JetT<JetT<double>>;

template <class T>
double scalar_value(const JetT<T>& j) {
  return scalar_value(j.value());
}

// Coordinate seeds for all variables of a layout at a base point.
template <class T>
std::vector<JetT<T>> seed_jets(const std::shared_ptr<const JetLayout>& layout,
                               std::span<const T> base) {
  std::vector<JetT<T>> r;
  r.reserve(base.size());
  for (size_t v = 0; v < base.size(); ++v)
    r.push_back(JetT<T>::variable(layout, static_cast<int>(v), base[v]));
  return r;
}

}  // namespace rlab

namespace Eigen {

// Minimal adapter so Eigen dense matrices can hold jets (storage, sums,
// products); decompositions are not used on jet matrices.
template <class T>
struct NumTraits<rlab::JetT<T>> : NumTraits<double> {
  using Real = rlab::JetT<T>;
  using NonInteger = rlab::JetT<T>;
  using Nested = rlab::JetT<T>;
  using Literal = double;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 32,
    MulCost = 128
  };
  static inline Real epsilon() { return Real(NumTraits<double>::epsilon()); }
  static inline Real dummy_precision() { return Real(1e-12); }
  static inline Real highest() { return Real(NumTraits<double>::highest()); }
  static inline Real lowest() { return Real(NumTraits<double>::lowest()); }
  static inline int digits10() { return NumTraits<double>::digits10(); }
};

}  // namespace Eigen
