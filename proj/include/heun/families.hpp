#pragma once

// Heun-class equation families as parameter sets for the unified three-term
// recurrence
//
//   (m+1)(m+gamma) c_{m+1} = (B + D_m + s E_m) c_m - s F_m c_{m-1},
//   c_{-1} = 0, c_0 = 1,
//
// with D_m = m(m-1+gamma+delta) for every family and (E_m, F_m) given by
//   Heun                  (m(m-1+gamma+epsilon), (m-1+alpha)(m-1+beta))
//   confluent Heun        (m, m-1+alpha)
//   reduced confluent     (0, 1)

#include <optional>
#include <string>
#include <string_view>

#include "heun/error.hpp"
#include "heun/numeric.hpp"

namespace heun {

enum class FamilyKind { Heun, ConfluentHeun, ReducedConfluentHeun };

std::string_view to_string(FamilyKind kind);
/// Accepts "heun", "cheun"/"confluent", "rcheun"/"reduced".
FamilyKind parse_family_kind(std::string_view text);

template <class T>
struct RecurrenceCoeffs {
  T D, E, F;
};

/// Parameters of one family member. Fields that a family does not use are
/// kept at zero. epsilon is never stored: it is derived from the Heun
/// constraint gamma + delta + epsilon = alpha + beta + 1.
template <class T>
struct BasicRecurrenceSpec {
  FamilyKind kind = FamilyKind::Heun;
  T gamma{0};
  T delta{0};
  T alpha{0};
  T beta{0};
  T s{0};

  T epsilon() const {
    if (kind != FamilyKind::Heun) return T(0);
    return alpha + beta + T(1) - gamma - delta;
  }

  BasicRecurrenceSpec with_s(T new_s) const {
    BasicRecurrenceSpec r = *this;
    r.s = std::move(new_s);
    return r;
  }
};

using RecurrenceSpec = BasicRecurrenceSpec<GaussRational>;
using FloatRecurrenceSpec = BasicRecurrenceSpec<BigComplex>;

RecurrenceSpec make_heun(GaussRational gamma, GaussRational delta, GaussRational alpha, GaussRational beta,
                         GaussRational s);
RecurrenceSpec make_confluent_heun(GaussRational gamma, GaussRational delta, GaussRational alpha, GaussRational s);
RecurrenceSpec make_reduced_confluent_heun(GaussRational gamma, GaussRational delta, GaussRational s);

/// Throws InvalidParameter when gamma is a nonpositive integer.
template <class T>
void validate(const BasicRecurrenceSpec<T>& spec);

/// gamma + delta in {0, -1, -2, ...}: some D_j coincide.
template <class T>
bool is_d_degenerate(const BasicRecurrenceSpec<T>& spec);

template <class T>
RecurrenceCoeffs<T> recurrence_coeffs(const BasicRecurrenceSpec<T>& spec, long m);

/// D_m = m(m-1+gamma+delta) alone (shared by every family).
template <class T>
T d_coeff(const BasicRecurrenceSpec<T>& spec, long m);

FloatRecurrenceSpec to_float(const RecurrenceSpec& spec);

// --- named specializations --------------------------------------------------

struct LameParams {
  GaussRational n;
  GaussRational s;
  std::optional<GaussRational> eta;
};

struct LameMap {
  RecurrenceSpec spec;
  std::optional<GaussRational> B;  // present iff eta was supplied
};

/// gamma = delta = epsilon = 1/2, alpha = (n+1)/2, beta = -n/2.
LameMap from_lame(const LameParams& p);
/// B = -eta s / 4.
GaussRational lame_b_from_eta(const GaussRational& eta, const GaussRational& s);
/// eta = -4 B / s; requires s != 0.
GaussRational lame_eta_from_b(const GaussRational& B, const GaussRational& s);

struct MathieuParams {
  GaussRational a;
  GaussRational q;
};

struct MathieuMap {
  RecurrenceSpec spec;
  GaussRational B;
};

/// Reduced confluent with gamma = delta = 1/2, s = q, B = q/2 - a/4.
MathieuMap from_mathieu(const MathieuParams& p);
/// a = 2q - 4B.
GaussRational mathieu_a_from_b(const GaussRational& B, const GaussRational& q);

struct WhittakerHillParams {
  GaussRational A0;
  GaussRational A1;
  GaussRational h;  // gauge parameter, A2 = h^2/2
};

struct WhittakerHillMap {
  RecurrenceSpec spec;
  GaussRational B;
  GaussRational A2;
};

/// Confluent with gamma = delta = 1/2, s = -2h, alpha = 1/2 + A1/(4h),
/// B = -(2A0 + 2A1 + 4h + h^2)/8. Requires h != 0.
WhittakerHillMap from_whittaker_hill(const WhittakerHillParams& p);

struct WhittakerHillGauge {
  GaussRational h;
  GaussRational A1;
  GaussRational A2;
};

/// Inverse of the (alpha, s) part of from_whittaker_hill: h = -s/2,
/// A1 = 4h(alpha - 1/2). Requires s != 0.
WhittakerHillGauge whittaker_hill_gauge(const GaussRational& alpha, const GaussRational& s);

}  // namespace heun
