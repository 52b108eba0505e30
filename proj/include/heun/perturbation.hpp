#pragma once

// Small-s expansion of the zeros of c_{m+1}(B). The zero labelled k has
//
//   B = -D_k - D_k^[1] s - D_k^[2] s^2 + O(s^3),
//
// where D_k^[j] does not depend on m once m >= k + j.

#include <optional>

#include "heun/families.hpp"

namespace heun {

/// D_k^[1] for the zero labelled k of c_{m+1}, 0 <= k <= m. The boundary
/// index k = m has its own one-sided form. Throws InvalidParameter for
/// D-degenerate specs or k out of range.
template <class T>
T first_order_coeff(const BasicRecurrenceSpec<T>& spec, int k, int m);

/// D_k^[2] for 0 <= k <= m-2. No formula exists for k in {m-1, m}; those
/// throw InvalidParameter.
template <class T>
T second_order_coeff(const BasicRecurrenceSpec<T>& spec, int k, int m);

template <class T>
struct BasicPerturbativeExpansion {
  int k = 0;
  int m = 0;
  T c0;                 // -D_k
  T c1;                 // -D_k^[1]
  std::optional<T> c2;  // -D_k^[2]
  int order = 0;

  /// c0 + c1 s (+ c2 s^2), truncated at min(order, requested).
  T evaluate(const T& s, int up_to = 2) const {
    const int j = up_to < order ? up_to : order;
    T v = c0;
    if (j >= 1) v += c1 * s;
    if (j >= 2) v += *c2 * s * s;
    return v;
  }
};

using PerturbativeExpansion = BasicPerturbativeExpansion<GaussRational>;
using FloatPerturbativeExpansion = BasicPerturbativeExpansion<BigComplex>;

/// `spec.s` is ignored; order in {0, 1, 2}.
template <class T>
BasicPerturbativeExpansion<T> expansion(const BasicRecurrenceSpec<T>& spec, int k, int m, int order);

/// -D_k - D_k^[1] s - D_k^[2] s^2 truncated at `order`, at `spec.s`.
template <class T>
T zero_estimate(const BasicRecurrenceSpec<T>& spec, int k, int m, int order);

/// Highest order available for label k in c_{m+1} (2 for k <= m-2, else 1).
int max_order(int k, int m);

/// Closed-form Lame coefficients (k >= 2 interior form, k = 0, 1 special
/// forms). The expansion is reported with m = k + 2.
PerturbativeExpansion lame_expansion(const GaussRational& n, int k, int order);

/// Closed-form reduced confluent coefficients for k >= 2, reported with
/// m = k + 2.
PerturbativeExpansion reduced_confluent_expansion(const GaussRational& gamma, const GaussRational& delta, int k,
                                                  int order);

}  // namespace heun
