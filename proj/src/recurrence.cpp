#include "heun/recurrence.hpp"

namespace heun {

template <class T>
PolynomialFamily<T> build_family(const BasicRecurrenceSpec<T>& spec, int m_max) {
  if (m_max < 0) throw InvalidParameter("m_max must be nonnegative");
  validate(spec);
  PolynomialFamily<T> family{spec, {}};
  family.polys.reserve(static_cast<std::size_t>(m_max) + 1);
  family.polys.emplace_back(T(1));
  DensePolynomial<T> previous;  // c_{-1} = 0
  for (int m = 0; m < m_max; ++m) {
    const auto rc = recurrence_coeffs(spec, m);
    const T shift = rc.D + spec.s * rc.E;
    const T back = spec.s * rc.F;
    const T inv_den = T(1) / (T(static_cast<long>(m) + 1) * (T(static_cast<long>(m)) + spec.gamma));
    const auto& current = family.polys.back();
    std::vector<T> next(current.size() + 1, T(0));
    for (std::size_t i = 0; i < next.size(); ++i) {
      T acc = current.coeff(i) * shift;
      if (i > 0) acc += current.coeffs()[i - 1];
      if (i < previous.size() && !is_zero(back)) acc -= back * previous.coeffs()[i];
      next[i] = acc * inv_den;
    }
    previous = current;
    family.polys.emplace_back(std::move(next));
  }
  return family;
}

PolynomialFamily<BigComplex> build_float_family(const RecurrenceSpec& spec, int m_max) {
  return build_family(to_float(spec), m_max);
}

PolynomialFamily<BigComplex> round_family(const PolynomialFamily<GaussRational>& family) {
  PolynomialFamily<BigComplex> out{to_float(family.spec), {}};
  out.polys.reserve(family.polys.size());
  for (const auto& p : family.polys) out.polys.push_back(to_float(p));
  return out;
}

template <class T>
std::vector<T> eval_sequence(const BasicRecurrenceSpec<T>& spec, const T& B, int m_max) {
  if (m_max < 0) throw InvalidParameter("m_max must be nonnegative");
  validate(spec);
  std::vector<T> c;
  c.reserve(static_cast<std::size_t>(m_max) + 1);
  c.emplace_back(1);
  T previous(0);
  for (int m = 0; m < m_max; ++m) {
    const auto rc = recurrence_coeffs(spec, m);
    T next = (B + rc.D + spec.s * rc.E) * c.back();
    if (m > 0) next -= spec.s * rc.F * previous;
    next /= T(static_cast<long>(m) + 1) * (T(static_cast<long>(m)) + spec.gamma);
    previous = c.back();
    c.push_back(std::move(next));
  }
  return c;
}

template <class T>
std::pair<T, T> eval_with_derivative(const BasicRecurrenceSpec<T>& spec, const T& B, int index) {
  if (index < 0) throw InvalidParameter("index must be nonnegative");
  validate(spec);
  T c(1), c_prev(0), d(0), d_prev(0);
  for (int m = 0; m < index; ++m) {
    const auto rc = recurrence_coeffs(spec, m);
    const T a = B + rc.D + spec.s * rc.E;
    const T b = spec.s * rc.F;
    const T inv_den = T(1) / (T(static_cast<long>(m) + 1) * (T(static_cast<long>(m)) + spec.gamma));
    T c_next = (a * c - b * c_prev) * inv_den;
    T d_next = (c + a * d - b * d_prev) * inv_den;
    c_prev = std::move(c);
    c = std::move(c_next);
    d_prev = std::move(d);
    d = std::move(d_next);
  }
  return {c, d};
}

ExactPolynomial eval_s_polynomial(const RecurrenceSpec& spec, const ExactPolynomial& B_of_s, int m) {
  if (m < -1) throw InvalidParameter("m must be >= -1");
  validate(spec);
  const ExactPolynomial s_var = ExactPolynomial::monomial(GaussRational(1), 1);
  ExactPolynomial c(GaussRational(1)), previous;
  for (int j = 0; j <= m; ++j) {
    const auto rc = recurrence_coeffs(spec, j);
    ExactPolynomial factor = B_of_s + ExactPolynomial::linear(rc.D, rc.E);
    ExactPolynomial next = factor * c - (rc.F * s_var) * previous;
    const GaussRational den = GaussRational(static_cast<long>(j) + 1) * (GaussRational(static_cast<long>(j)) + spec.gamma);
    next = (GaussRational(1) / den) * next;
    previous = std::move(c);
    c = std::move(next);
  }
  return c;
}

template <class T>
T leading_coefficient(const BasicRecurrenceSpec<T>& spec, int k) {
  T denom(1);
  for (int j = 0; j < k; ++j) denom *= T(static_cast<long>(j) + 1) * (spec.gamma + T(static_cast<long>(j)));
  return T(1) / denom;
}

template <class T>
DensePolynomial<T> recurrence_residual(const PolynomialFamily<T>& family, int m) {
  if (m < 0 || m >= family.m_max()) throw InvalidParameter("residual index out of range");
  const auto& spec = family.spec;
  const auto rc = recurrence_coeffs(spec, m);
  const DensePolynomial<T> factor = DensePolynomial<T>::linear(rc.D + spec.s * rc.E, T(1));
  DensePolynomial<T> r = (T(static_cast<long>(m) + 1) * (T(static_cast<long>(m)) + spec.gamma)) * family[m + 1];
  r -= factor * family[m];
  if (m > 0) r += (spec.s * rc.F) * family[m - 1];
  return r;
}

template PolynomialFamily<GaussRational> build_family(const BasicRecurrenceSpec<GaussRational>&, int);
template PolynomialFamily<BigComplex> build_family(const BasicRecurrenceSpec<BigComplex>&, int);
template std::vector<GaussRational> eval_sequence(const BasicRecurrenceSpec<GaussRational>&, const GaussRational&,
                                                  int);
template std::vector<BigComplex> eval_sequence(const BasicRecurrenceSpec<BigComplex>&, const BigComplex&, int);
template std::pair<GaussRational, GaussRational> eval_with_derivative(const BasicRecurrenceSpec<GaussRational>&,
                                                                      const GaussRational&, int);
template std::pair<BigComplex, BigComplex> eval_with_derivative(const BasicRecurrenceSpec<BigComplex>&,
                                                                const BigComplex&, int);
template GaussRational leading_coefficient(const BasicRecurrenceSpec<GaussRational>&, int);
template BigComplex leading_coefficient(const BasicRecurrenceSpec<BigComplex>&, int);
template DensePolynomial<GaussRational> recurrence_residual(const PolynomialFamily<GaussRational>&, int);
template DensePolynomial<BigComplex> recurrence_residual(const PolynomialFamily<BigComplex>&, int);

}  // namespace heun
