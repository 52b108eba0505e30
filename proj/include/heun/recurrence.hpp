#pragma once

#include <utility>
#include <vector>

#include "heun/families.hpp"
#include "heun/polynomial.hpp"

namespace heun {

enum class Field { Exact, BigFloat };

/// c_0(B), ..., c_{m_max}(B) for one spec, as polynomials in B.
template <class T>
struct PolynomialFamily {
  BasicRecurrenceSpec<T> spec;
  std::vector<DensePolynomial<T>> polys;

  int m_max() const { return static_cast<int>(polys.size()) - 1; }
  const DensePolynomial<T>& operator[](int k) const { return polys.at(static_cast<std::size_t>(k)); }
};

/// Runs the three-term recurrence symbolically in B. T = GaussRational gives
/// exact coefficients; T = BigComplex works at working precision.
template <class T>
PolynomialFamily<T> build_family(const BasicRecurrenceSpec<T>& spec, int m_max);

/// Convenience: exact spec built in the requested field (float path converts
/// `spec` once and runs the recurrence at working precision).
PolynomialFamily<BigComplex> build_float_family(const RecurrenceSpec& spec, int m_max);

/// One-time rounding of exact coefficients to working precision.
PolynomialFamily<BigComplex> round_family(const PolynomialFamily<GaussRational>& family);

/// c_0(B), ..., c_{m_max}(B) at a scalar B.
template <class T>
std::vector<T> eval_sequence(const BasicRecurrenceSpec<T>& spec, const T& B, int m_max);

/// c_index(B) and dc_index/dB(B) via the differentiated recurrence.
template <class T>
std::pair<T, T> eval_with_derivative(const BasicRecurrenceSpec<T>& spec, const T& B, int index);

/// c_{m+1}(B(s)) as an exact polynomial in s, with the s stored in `spec` ignored
/// and B given as a polynomial in s. Uses only exact arithmetic.
ExactPolynomial eval_s_polynomial(const RecurrenceSpec& spec, const ExactPolynomial& B_of_s, int m);
inline ExactPolynomial eval_s_polynomial(const RecurrenceSpec& spec, const GaussRational& B, int m) {
  return eval_s_polynomial(spec, ExactPolynomial(B), m);
}

/// R_k = 1 / (k! (gamma)_k), the leading coefficient of c_k.
template <class T>
T leading_coefficient(const BasicRecurrenceSpec<T>& spec, int k);

/// (m+1)(m+gamma) c_{m+1} - (B + D_m + s E_m) c_m + s F_m c_{m-1} for 0 <= m < m_max.
template <class T>
DensePolynomial<T> recurrence_residual(const PolynomialFamily<T>& family, int m);

}  // namespace heun
