#pragma once

#include <optional>
#include <span>
#include <vector>

#include "heun/polynomial.hpp"

namespace heun {

struct RootOptions {
  mpfr_prec_t precision_bits = 256;
  /// Newton-correction tolerance relative to max(1, |z|); default 2^-(precision_bits/2).
  std::optional<BigFloat> tol;
  int max_iterations = 2000;
};

/// All zeros of one polynomial, sorted by decreasing real part then
/// increasing imaginary part.
struct ZeroSet {
  int degree = 0;
  std::vector<BigComplex> zeros;
  /// |p(z)/p'(z)| at each returned zero.
  std::vector<BigFloat> residuals;
  std::vector<bool> converged;
  int iterations = 0;
  mpfr_prec_t precision_bits = 0;

  bool all_converged() const;
  std::size_t size() const { return zeros.size(); }
};

BigFloat default_tolerance(mpfr_prec_t precision_bits);

/// Aberth-Ehrlich simultaneous iteration followed by a Newton polish of each
/// root. `seeds` (at most degree many) are used first, the remainder comes
/// from circle_seeds(). Deterministic for fixed inputs. Roots that did not
/// meet the tolerance are returned with converged[i] == false.
ZeroSet find_all_roots(const FloatPolynomial& poly, std::span<const BigComplex> seeds = {},
                       const RootOptions& options = {});
/// Rounds the exact coefficients once at options.precision_bits.
ZeroSet find_all_roots(const ExactPolynomial& poly, std::span<const BigComplex> seeds = {},
                       const RootOptions& options = {});

/// Starting points on circles whose radii come from the upper convex hull of
/// (i, log|a_i|), one circle per hull edge.
std::vector<BigComplex> circle_seeds(const FloatPolynomial& poly);

struct RefinedRoot {
  BigComplex z;
  BigFloat residual;
  int iterations = 0;
};

/// Newton iteration from z0 at the working precision of `tol`'s caller.
/// Throws ConvergenceError on divergence or when max_iterations is exhausted.
RefinedRoot refine_root(const FloatPolynomial& poly, const BigComplex& z0, const BigFloat& tol,
                        int max_iterations = 200);

/// Zeros with |Im z| < imag_tol (1 + |Re z|). Throws ConvergenceError if
/// any zero in the set is unconverged.
int real_zero_count(const ZeroSet& zset, double imag_tol = 1e-6);

/// Relative Vieta defects: |sum z + a_{n-1}/a_n| / max(1, sum |z|) and
/// |prod z - (-1)^n a_0/a_n| / max(|prod z|, tiny).
struct VietaCheck {
  BigFloat sum_defect;
  BigFloat product_defect;
};
VietaCheck vieta_check(const FloatPolynomial& poly, const ZeroSet& zset);

}  // namespace heun
