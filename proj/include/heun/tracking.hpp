#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "heun/families.hpp"
#include "heun/rootfind.hpp"

namespace heun {

enum class SeedPolicy {
  Auto,          // perturbative when |s| <= 1 and the family is not D-degenerate, else circle
  Perturbative,  // -D_k - D^[1] s - D^[2] s^2
  Circle,        // coefficient-magnitude circles only
};

/// Zeros of c_index(B) (degree `index`) for an exact spec. Coefficients are
/// built exactly and rounded once.
ZeroSet polynomial_zeros(const RecurrenceSpec& spec, int index, const RootOptions& options = {},
                         SeedPolicy policy = SeedPolicy::Auto);

/// Perturbative estimates for every label k = 0..index-1 of c_index at
/// `spec.s`: order 2 where available (k <= index-3), else order 1; order 0
/// for D-degenerate specs.
std::vector<BigComplex> label_estimates(const RecurrenceSpec& spec, int index);

struct Matching {
  /// b_of_a[i] is the index in `b` matched to a[i].
  std::vector<std::size_t> b_of_a;
  std::vector<BigFloat> distance;
  /// Indices in `b` not matched to anything.
  std::vector<std::size_t> unmatched_b;
  bool used_optimal_assignment = false;
};

/// Injective pairing of a into b (|a| <= |b|): pairs are taken greedily by
/// increasing distance. Distances equal to relative 1e-8 are ordered by
/// index in a, then by increasing Im and decreasing Re of the b point. If a
/// matched distance exceeds `fallback_distance`, the pairing is recomputed
/// as a minimum-total-distance assignment.
Matching match_points(const std::vector<BigComplex>& a, const std::vector<BigComplex>& b,
                      std::optional<double> fallback_distance = std::nullopt);

/// Half the smallest gap |D_{k+1} - D_k| over k < max_index; the fallback
/// threshold used for matching zero sets of this spec.
double grid_half_gap(const RecurrenceSpec& spec, int max_index);

Matching match_zeros(const ZeroSet& za, const ZeroSet& zb, std::optional<double> fallback_distance = std::nullopt);

/// label_k for each zero of `zset` (zeros of c_index), by matching against
/// label_estimates().
std::vector<int> label_zeros(const RecurrenceSpec& spec, int index, const ZeroSet& zset);

/// floor(-log10(2 |a-b| / |b|)), capped at the number of decimal digits the
/// precision carries. Relative difference below 0.5e-d gives at least d.
int stabilized_digits(const BigComplex& a, const BigComplex& b, mpfr_prec_t precision_bits);

struct ZeroTrack {
  int label_k = 0;
  /// polynomial index -> zero of c_index
  std::map<int, BigComplex> entries;
  std::map<std::pair<int, int>, int> stabilized_digits;
};

struct ConvergenceReport {
  RecurrenceSpec spec;
  /// Polynomial indices (c_index) in ascending order.
  std::vector<int> m_list;
  std::vector<ZeroTrack> tracks;
  /// Zero sets in m_list order.
  std::vector<ZeroSet> zero_sets;
  mpfr_prec_t precision_bits = 0;

  /// Tracks whose value at the last two indices agrees to at least `digits`.
  int n_stable(int digits) const;
};

/// Zeros of c_m for each m in m_list, chained by matching, labelled at the
/// smallest m. Throws ConvergenceError if any zero set is unconverged.
ConvergenceReport convergence_report(const RecurrenceSpec& spec, const std::vector<int>& m_list,
                                     const RootOptions& options = {});

/// Comparison row: k, the three approximations, and the zero of
/// c_index carrying label k.
struct ApproximationRow {
  int k = 0;
  GaussRational approx0;
  std::optional<GaussRational> approx1;
  std::optional<GaussRational> approx2;
  BigComplex zero;
};

std::vector<ApproximationRow> approximation_table(const RecurrenceSpec& spec, int index, int k_max,
                                                  const RootOptions& options = {});

// --- connection coefficient d2 --------------------------------------------

struct D2Estimate {
  BigComplex B;
  /// a_k = k! / (delta-1)_k * c_k(B), k = 1..K (a[0] is a_1).
  std::vector<BigComplex> a;
  int K = 0;
  /// Extrapolated limit of a_k (polynomial extrapolation in 1/k).
  BigComplex estimate;
  /// |a_K - a_{K-1}|
  BigFloat error_indicator;
  /// Difference between extrapolations with one fewer node.
  BigFloat extrapolation_error;
  /// Heun family with |s| >= 1: the limit is not known to represent d2.
  bool outside_known_region = false;
};

/// Throws InvalidParameter if gamma or delta is an integer.
D2Estimate d2_sequence(const RecurrenceSpec& spec, const BigComplex& B, int K);

/// s = 0 connection coefficient Gamma(gamma) Gamma(delta-1) / (Gamma(l1) Gamma(l2))
/// with l1, l2 the roots of l^2 - (gamma+delta-1) l + B.
BigComplex d2_closed_form_s0(const RecurrenceSpec& spec, const BigComplex& B);

struct D2ZeroOptions {
  int max_iterations = 60;
  /// Stop when the secant step is below tol * max(1, |B|).
  double tol = 1e-14;
  int K = 500;
  int K_max = 8000;
};

struct D2Zero {
  BigComplex B;
  BigComplex value;
  int iterations = 0;
  int K = 0;
  BigFloat extrapolation_error;
};

/// Secant iteration on B -> d2_sequence(B).estimate from B0. K is doubled
/// (up to K_max) while the extrapolation error exceeds |step|-scale accuracy.
D2Zero d2_zero_search(const RecurrenceSpec& spec, const BigComplex& B0, const D2ZeroOptions& options = {});

}  // namespace heun
