#include "heun/perturbation.hpp"

#include <string>

namespace heun {

namespace {

template <class T>
void check_expandable(const BasicRecurrenceSpec<T>& spec, int k, int m) {
  validate(spec);
  if (is_d_degenerate(spec)) throw InvalidParameter("gamma + delta is a nonpositive integer: D_k are not distinct");
  if (k < 0 || k > m) throw InvalidParameter("label k must satisfy 0 <= k <= m");
}

// Shorthand for D_j, E_j, F_j and j(j-1+gamma).
template <class T>
struct Terms {
  const BasicRecurrenceSpec<T>& spec;

  T D(long j) const { return d_coeff(spec, j); }
  T E(long j) const { return recurrence_coeffs(spec, j).E; }
  T F(long j) const { return recurrence_coeffs(spec, j).F; }
  // j(j-1+gamma), zero for j = 0
  T a(long j) const { return T(j) * (T(j - 1) + spec.gamma); }
};

}  // namespace

template <class T>
T first_order_coeff(const BasicRecurrenceSpec<T>& spec, int k, int m) {
  check_expandable(spec, k, m);
  const Terms<T> t{spec};
  T v = t.E(k);
  if (k >= 1) v += t.a(k) * t.F(k) / (t.D(k) - t.D(k - 1));
  if (k < m) v += t.a(k + 1) * t.F(k + 1) / (t.D(k) - t.D(k + 1));
  return v;
}

template <class T>
T second_order_coeff(const BasicRecurrenceSpec<T>& spec, int k, int m) {
  check_expandable(spec, k, m);
  if (k > m - 2) {
    throw InvalidParameter("no second-order coefficient for k = " + std::to_string(k) + " in c_" +
                           std::to_string(m + 1) + " (needs k <= m-2)");
  }
  const Terms<T> t{spec};
  const T Dk = t.D(k);
  // lower-neighbour terms vanish at k = 0 through a(0) = 0
  T lower_w(0), lower_1(0), lower_2(0);
  if (k >= 1) {
    const T diff = Dk - t.D(k - 1);
    lower_1 = t.a(k) * t.F(k) / diff;
    lower_w = lower_1 / diff;
    lower_2 = t.E(k - 1);
    if (k >= 2) lower_2 += t.a(k - 1) * t.F(k - 1) / (Dk - t.D(k - 2));
  }
  const T diff_up = Dk - t.D(k + 1);
  const T upper_1 = t.a(k + 1) * t.F(k + 1) / diff_up;
  const T upper_w = upper_1 / diff_up;
  const T upper_2 = t.E(k + 1) + t.a(k + 2) * t.F(k + 2) / (Dk - t.D(k + 2));
  const T first = t.E(k) + lower_1 + upper_1;
  return -(lower_w + upper_w) * first + lower_w * lower_2 + upper_w * upper_2;
}

int max_order(int k, int m) { return k <= m - 2 ? 2 : 1; }

template <class T>
BasicPerturbativeExpansion<T> expansion(const BasicRecurrenceSpec<T>& spec, int k, int m, int order) {
  if (order < 0 || order > 2) throw InvalidParameter("expansion order must be 0, 1 or 2");
  check_expandable(spec, k, m);
  BasicPerturbativeExpansion<T> e;
  e.k = k;
  e.m = m;
  e.order = order;
  e.c0 = -d_coeff(spec, k);
  e.c1 = order >= 1 ? T(-first_order_coeff(spec, k, m)) : T(0);
  if (order >= 2) e.c2 = -second_order_coeff(spec, k, m);
  return e;
}

template <class T>
T zero_estimate(const BasicRecurrenceSpec<T>& spec, int k, int m, int order) {
  return expansion(spec, k, m, order).evaluate(spec.s);
}

PerturbativeExpansion lame_expansion(const GaussRational& n, int k, int order) {
  if (k < 0) throw InvalidParameter("label k must be nonnegative");
  if (order < 0 || order > 2) throw InvalidParameter("expansion order must be 0, 1 or 2");
  using Q = GaussRational;
  const Q nn = n * (n + Q(1));
  const Q nn2 = nn * nn;
  const Q kk = Q(static_cast<long>(k) * k);
  PerturbativeExpansion e;
  e.k = k;
  e.m = k + 2;
  e.order = order;
  e.c0 = -kk;
  Q c1, c2;
  if (k == 0) {
    c1 = -nn / Q(8);
    c2 = -nn / Q(64) + nn2 / Q(128);
  } else if (k == 1) {
    c1 = Q::ratio(1, 2) - nn / Q(8);
    c2 = Q::ratio(3, 32) - nn / Q(128) - Q(5) * nn2 / Q(768);
  } else {
    c1 = kk / Q(2) - nn / Q(8);
    c2 = Q(3) * kk / Q(32) - nn / Q(64) - nn2 / (Q(128) * (Q(4) * kk - Q(1)));
  }
  if (order >= 1) e.c1 = c1;
  if (order >= 2) e.c2 = c2;
  return e;
}

PerturbativeExpansion reduced_confluent_expansion(const GaussRational& gamma, const GaussRational& delta, int k,
                                                  int order) {
  if (k < 2) throw InvalidParameter("the closed reduced confluent form needs k >= 2");
  if (order < 0 || order > 2) throw InvalidParameter("expansion order must be 0, 1 or 2");
  using Q = GaussRational;
  const Q sum = gamma + delta;
  if (sum.is_nonpositive_integer()) throw InvalidParameter("gamma + delta is a nonpositive integer");
  const Q K(static_cast<long>(k));
  const Q P = (Q(2) * K - Q(2) + sum) * (Q(2) * K + sum);
  const Q asym = (gamma - delta) * (sum - Q(2));
  const Q asym2 = asym * asym;
  PerturbativeExpansion e;
  e.k = k;
  e.m = k + 2;
  e.order = order;
  e.c0 = -K * (K - Q(1) + sum);
  if (order >= 1) e.c1 = Q::ratio(1, 2) + asym / (Q(2) * P);
  if (order >= 2) {
    const Q gm = gamma - Q(1), dm = delta - Q(1);
    const Q bracket = Q::ratio(-1, 8) + Q::ratio(3, 4) * (gm * gm + dm * dm) / P -
                      Q::ratio(5, 8) * asym2 / (P * P) - Q::ratio(3, 2) * asym2 / (P * P * P);
    e.c2 = bracket / ((Q(2) * K - Q(3) + sum) * (Q(2) * K + Q(1) + sum));
  }
  return e;
}

template GaussRational first_order_coeff(const BasicRecurrenceSpec<GaussRational>&, int, int);
template BigComplex first_order_coeff(const BasicRecurrenceSpec<BigComplex>&, int, int);
template GaussRational second_order_coeff(const BasicRecurrenceSpec<GaussRational>&, int, int);
template BigComplex second_order_coeff(const BasicRecurrenceSpec<BigComplex>&, int, int);
template BasicPerturbativeExpansion<GaussRational> expansion(const BasicRecurrenceSpec<GaussRational>&, int, int, int);
template BasicPerturbativeExpansion<BigComplex> expansion(const BasicRecurrenceSpec<BigComplex>&, int, int, int);
template GaussRational zero_estimate(const BasicRecurrenceSpec<GaussRational>&, int, int, int);
template BigComplex zero_estimate(const BasicRecurrenceSpec<BigComplex>&, int, int, int);

}  // namespace heun
