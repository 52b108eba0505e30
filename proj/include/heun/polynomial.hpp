#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "heun/error.hpp"
#include "heun/numeric.hpp"

namespace heun {

/// Univariate polynomial with coefficients indexed by power. Trailing zero
/// coefficients are always trimmed, so the zero polynomial has no coefficients.
template <class T>
class DensePolynomial {
 public:
  DensePolynomial() = default;
  explicit DensePolynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  /// Constant polynomial.
  DensePolynomial(const T& c) : coeffs_{c} { trim(); }  // NOLINT(google-explicit-constructor)

  static DensePolynomial monomial(const T& c, std::size_t power) {
    std::vector<T> v(power + 1, T(0));
    v[power] = c;
    return DensePolynomial(std::move(v));
  }
  /// a + b x
  static DensePolynomial linear(const T& a, const T& b) { return DensePolynomial(std::vector<T>{a, b}); }

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<T>& coeffs() const { return coeffs_; }

  /// Coefficient of x^i, zero beyond the degree.
  T coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : T(0); }
  const T& leading() const {
    if (coeffs_.empty()) throw InvalidParameter("leading coefficient of the zero polynomial");
    return coeffs_.back();
  }

  T operator()(const T& x) const {
    T acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      acc *= x;
      acc += coeffs_[i];
    }
    return acc;
  }

  /// p(x) and p'(x) by a single Horner pass.
  std::pair<T, T> eval_with_derivative(const T& x) const {
    T p(0), dp(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      dp *= x;
      dp += p;
      p *= x;
      p += coeffs_[i];
    }
    return {p, dp};
  }

  DensePolynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<T> d;
    d.reserve(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * T(static_cast<long>(i)));
    return DensePolynomial(std::move(d));
  }

  /// Division by (x - root): quotient and remainder p(root).
  std::pair<DensePolynomial, T> divide_linear(const T& root) const {
    if (coeffs_.empty()) return {DensePolynomial(), T(0)};
    std::vector<T> q(coeffs_.size() - 1, T(0));
    T carry(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      T next = carry * root + coeffs_[i];
      if (i > 0) q[i - 1] = next;
      carry = std::move(next);
    }
    return {DensePolynomial(std::move(q)), carry};
  }

  /// Truncate to powers < n.
  DensePolynomial truncated(std::size_t n) const {
    if (n >= coeffs_.size()) return *this;
    return DensePolynomial(std::vector<T>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n)));
  }

  DensePolynomial& operator+=(const DensePolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  DensePolynomial& operator-=(const DensePolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  DensePolynomial& operator*=(const DensePolynomial& o) { return *this = *this * o; }

  /// Division is only defined by constant polynomials (used by ring-generic code).
  DensePolynomial& operator/=(const DensePolynomial& o) {
    if (o.degree() != 0) throw InvalidParameter("polynomial division by a non-constant");
    for (auto& c : coeffs_) c /= o.coeffs_[0];
    return *this;
  }

  friend DensePolynomial operator+(DensePolynomial a, const DensePolynomial& b) { return a += b; }
  friend DensePolynomial operator-(DensePolynomial a, const DensePolynomial& b) { return a -= b; }
  friend DensePolynomial operator/(DensePolynomial a, const DensePolynomial& b) { return a /= b; }
  friend DensePolynomial operator-(const DensePolynomial& a) {
    std::vector<T> v;
    v.reserve(a.coeffs_.size());
    for (const auto& c : a.coeffs_) v.push_back(-c);
    return DensePolynomial(std::move(v));
  }
  friend DensePolynomial operator*(const DensePolynomial& a, const DensePolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> v(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (zero_coeff(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return DensePolynomial(std::move(v));
  }
  friend DensePolynomial operator*(const T& c, const DensePolynomial& p) {
    if (zero_coeff(c)) return {};
    std::vector<T> v;
    v.reserve(p.coeffs_.size());
    for (const auto& x : p.coeffs_) v.push_back(c * x);
    return DensePolynomial(std::move(v));
  }
  friend bool operator==(const DensePolynomial& a, const DensePolynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && zero_coeff(coeffs_.back())) coeffs_.pop_back();
  }
  static bool zero_coeff(const T& c) {
    using heun::is_zero;
    return is_zero(c);
  }

  std::vector<T> coeffs_;
};

template <class T>
bool is_zero(const DensePolynomial<T>& p) {
  return p.is_zero();
}

using ExactPolynomial = DensePolynomial<GaussRational>;
using FloatPolynomial = DensePolynomial<BigComplex>;

/// Round every coefficient once to working precision.
inline FloatPolynomial to_float(const ExactPolynomial& p) {
  std::vector<BigComplex> v;
  v.reserve(p.size());
  for (const auto& c : p.coeffs()) v.emplace_back(c);
  return FloatPolynomial(std::move(v));
}

}  // namespace heun
