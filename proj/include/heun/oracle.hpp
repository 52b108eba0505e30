#pragma once

// Brute-force cross-checks that do not step the three-term recurrence. The
// ODE of each family is written with polynomial coefficients,
//
//   P(t) y'' + Q(t) y' + R(t) y = 0,
//
// in the local variable t = z (anchor 0) or t = 1 - z (anchor 1), and local
// solutions come from the generic Frobenius recursion for that form.

#include <optional>
#include <utility>
#include <vector>

#include "heun/families.hpp"
#include "heun/polynomial.hpp"

namespace heun::oracle {

/// Coefficient lists by power of the local variable.
template <class T>
struct LocalOde {
  std::vector<T> P, Q, R;
};

/// Family parameters lifted into a ring T (scalars, or polynomials in s).
template <class T>
struct OdeParams {
  FamilyKind kind = FamilyKind::Heun;
  T gamma, delta, alpha, beta, s, B;

  T epsilon() const { return alpha + beta + T(1L) - gamma - delta; }
};

template <class T>
OdeParams<T> lift(const RecurrenceSpec& spec, const T& B);
OdeParams<BigComplex> lift(const FloatRecurrenceSpec& spec, const BigComplex& B);

/// Multiplied form around z = 0 (Heun: P = z(z-1)(1-sz); confluent and
/// reduced: P = z(z-1)).
template <class T>
LocalOde<T> ode_at_zero(const OdeParams<T>& p);

/// The same equation in w = 1 - z: P(1-w) y'' - Q(1-w) y' + R(1-w) y = 0.
template <class T>
LocalOde<T> ode_at_one(const OdeParams<T>& p);

/// a_0 = 1, a_1..a_N of the solution t^rho sum a_n t^n. Throws
/// InvalidParameter if P(0) != 0 or the indicial factor vanishes at some
/// n >= 1 (resonant exponents).
template <class T>
std::vector<T> frobenius_series(const LocalOde<T>& ode, const T& rho, int N);

enum class Anchor { ZeroHolomorphic, OneHolomorphic, OneSingular };

struct SeriesSolution {
  Anchor anchor = Anchor::ZeroHolomorphic;
  BigComplex exponent;
  std::vector<BigComplex> coefficients;

  int N() const { return static_cast<int>(coefficients.size()) - 1; }
  /// y and dy/dt at local variable t (t^exponent on the principal branch).
  std::pair<BigComplex, BigComplex> evaluate(const BigComplex& t) const;
};

/// max_z |P y'' + Q y' + R y| for y = sum_k coefficients[k] z^k (multiplied
/// form around z = 0), together with a scale of the truncation tail
/// sum_{j=N-2}^{N} |a_j| (j+1)^2 |z|^(j-1), maximized over the samples.
struct ResidualReport {
  BigFloat max_residual;
  BigFloat tail_scale;
};
ResidualReport ode_residual(const FloatRecurrenceSpec& spec, const BigComplex& B,
                            const std::vector<BigComplex>& coefficients, const std::vector<BigComplex>& z_samples);
/// Uses c_0..c_N from the recurrence module (the quantity under test).
/// Samples must lie in 0 < |z| < min(1, 1/|s|) (Heun) or 0 < |z| < 1.
ResidualReport ode_residual(const RecurrenceSpec& spec, const BigComplex& B, int N,
                            const std::vector<BigComplex>& z_samples);

/// The same residual for a series anchored at z = 1 (exponent included), at
/// points given in z.
ResidualReport ode_residual_at_one(const FloatRecurrenceSpec& spec, const BigComplex& B, const SeriesSolution& y,
                                   const std::vector<BigComplex>& z_samples);

/// Holomorphic and (1-z)^(1-delta) solutions at z = 1, both normalized to
/// leading coefficient 1. Exact arithmetic for the exact overload.
std::pair<SeriesSolution, SeriesSolution> local_solutions_at_1(const RecurrenceSpec& spec, const GaussRational& B,
                                                               int N);
std::pair<SeriesSolution, SeriesSolution> local_solutions_at_1(const RecurrenceSpec& spec, const BigComplex& B, int N);

/// Holomorphic solution at z = 0 with a_0 = 1.
SeriesSolution local_solution_at_0(const RecurrenceSpec& spec, const GaussRational& B, int N);
SeriesSolution local_solution_at_0(const RecurrenceSpec& spec, const BigComplex& B, int N);

struct MidpointOptions {
  /// 0: grow N until the last term of every series at the matching point is
  /// below tol/100.
  int N = 0;
  int N_max = 8000;
  GaussRational z0 = GaussRational::ratio(1, 2);
  double tol = 1e-40;
};

struct MidpointMatch {
  BigComplex d1, d2;
  /// infinity-norm condition number of the 2x2 matching system
  BigFloat condition;
  int N = 0;
  /// largest last-term magnitude among the three series at the matching point
  BigFloat tail;
};

/// Solves y = d1 y1 + d2 y2 (and the derivative) at z0 for the holomorphic
/// solution y at z = 0. Throws InvalidParameter for integer delta and
/// ConvergenceError if the tails do not fall below tolerance by N_max.
MidpointMatch d2_by_midpoint_matching(const RecurrenceSpec& spec, const GaussRational& B,
                                      const MidpointOptions& options = {});
MidpointMatch d2_by_midpoint_matching(const RecurrenceSpec& spec, const BigComplex& B,
                                      const MidpointOptions& options = {});

/// D_k^[1] (and D_k^[2] for order 2) of the zero labelled k of c_{m+1},
/// found by substituting B = -D_k + x1 s (+ x2 s^2) into the holomorphic
/// series with s kept as a polynomial variable and solving the linear
/// conditions on x1, x2 exactly.
struct SubstitutionCoefficients {
  GaussRational first;
  std::optional<GaussRational> second;
};
SubstitutionCoefficients expansion_by_substitution(const RecurrenceSpec& spec, int k, int m, int order);

/// Coefficient of z^(m+1) of the holomorphic series as an exact polynomial
/// in s, for B given as a polynomial in s (the s stored in `spec` is ignored).
ExactPolynomial series_coefficient_in_s(const RecurrenceSpec& spec, const ExactPolynomial& B_of_s, int m);

}  // namespace heun::oracle
