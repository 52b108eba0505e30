#include "heun/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "heun/perturbation.hpp"
#include "heun/recurrence.hpp"
#include "heun/special.hpp"

namespace heun {

namespace {

bool precedes_for_ties(const BigComplex& x, const BigComplex& y) {
  if (x.im != y.im) return x.im < y.im;
  return x.re > y.re;
}

// Minimum-cost assignment of every row to a distinct column (rows <= cols).
std::vector<std::size_t> hungarian(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  const std::size_t m = n ? cost[0].size() : 0;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> col_of_row(n, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) col_of_row[p[j] - 1] = j - 1;
  }
  return col_of_row;
}

// Polynomial extrapolation of a_k to 1/k -> 0 (Neville) through the nodes ks.
BigComplex extrapolate(const std::vector<BigComplex>& a, const std::vector<int>& ks) {
  std::vector<BigComplex> t;
  std::vector<BigFloat> h;
  for (int k : ks) {
    t.push_back(a[static_cast<std::size_t>(k - 1)]);
    h.push_back(BigFloat(1) / BigFloat(k));
  }
  const std::size_t n = t.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      // value at 0 of the interpolant through nodes i..i+level
      const BigFloat& hi = h[i];
      const BigFloat& hj = h[i + level];
      t[i] = scale(t[i + 1], hi / (hi - hj)) - scale(t[i], hj / (hi - hj));
    }
  }
  return t[0];
}

std::vector<int> extrapolation_nodes(int K, int count) {
  // equally spaced in k over [K/2, K]
  std::vector<int> ks;
  const int lo = std::max(1, K / 2);
  for (int i = 0; i < count; ++i) {
    const int k = K - static_cast<int>(std::lround(static_cast<double>(i) * (K - lo) / std::max(1, count - 1)));
    if (ks.empty() || ks.back() != k) ks.push_back(k);
  }
  return ks;
}

bool is_integer(const GaussRational& x) { return x.is_integer(); }

}  // namespace

std::vector<BigComplex> label_estimates(const RecurrenceSpec& spec, int index) {
  std::vector<BigComplex> out;
  out.reserve(static_cast<std::size_t>(std::max(0, index)));
  const bool degenerate = is_d_degenerate(spec);
  for (int k = 0; k < index; ++k) {
    const int order = degenerate ? 0 : max_order(k, index - 1);
    if (order == 0) {
      out.emplace_back(-d_coeff(spec, k));
    } else {
      out.emplace_back(zero_estimate(spec, k, index - 1, order));
    }
  }
  return out;
}

ZeroSet polynomial_zeros(const RecurrenceSpec& spec, int index, const RootOptions& options, SeedPolicy policy) {
  if (index < 1) throw InvalidParameter("zeros need a polynomial index >= 1");
  PrecisionGuard guard(options.precision_bits);
  const auto family = build_family(spec, index);
  const auto poly = to_float(family[index]);
  std::vector<BigComplex> seeds;
  bool perturbative = policy == SeedPolicy::Perturbative;
  if (policy == SeedPolicy::Auto) {
    perturbative = !is_d_degenerate(spec) && abs(BigComplex(spec.s)) <= BigFloat(1);
  }
  if (perturbative) {
    seeds = label_estimates(spec, index);
    // Real seeds for a real polynomial would never leave the real axis.
    for (std::size_t k = 0; k < seeds.size(); ++k) {
      const double theta = 1.0 + 2.0 * std::numbers::pi * 0.6180339887 * static_cast<double>(k);
      const BigFloat r = BigFloat(1e-3) * max(BigFloat(1), abs(seeds[k]));
      seeds[k] += BigComplex(r * BigFloat(std::cos(theta)), r * BigFloat(std::sin(theta)));
    }
  }
  return find_all_roots(poly, seeds, options);
}

Matching match_points(const std::vector<BigComplex>& a, const std::vector<BigComplex>& b,
                      std::optional<double> fallback_distance) {
  if (a.size() > b.size()) throw InvalidParameter("match_points needs |a| <= |b|");
  struct Pair {
    BigFloat d;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  pairs.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) pairs.push_back({abs(a[i] - b[j]), i, j});
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.d < y.d; });
  // reorder runs of (relatively) equal distances by the tie-break rule
  const BigFloat rel(1e-8);
  for (std::size_t start = 0; start < pairs.size();) {
    std::size_t end = start + 1;
    const BigFloat limit = pairs[start].d * (BigFloat(1) + rel) + BigFloat::ldexp(1, -200);
    while (end < pairs.size() && pairs[end].d <= limit) ++end;
    std::stable_sort(pairs.begin() + static_cast<std::ptrdiff_t>(start), pairs.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](const Pair& x, const Pair& y) {
                       if (x.i != y.i) return x.i < y.i;
                       return precedes_for_ties(b[x.j], b[y.j]);
                     });
    start = end;
  }
  Matching out;
  out.b_of_a.assign(a.size(), 0);
  out.distance.assign(a.size(), BigFloat());
  std::vector<bool> a_done(a.size(), false), b_used(b.size(), false);
  std::size_t assigned = 0;
  for (const auto& p : pairs) {
    if (assigned == a.size()) break;
    if (a_done[p.i] || b_used[p.j]) continue;
    a_done[p.i] = true;
    b_used[p.j] = true;
    out.b_of_a[p.i] = p.j;
    out.distance[p.i] = p.d;
    ++assigned;
  }
  if (fallback_distance) {
    const BigFloat threshold(*fallback_distance);
    const bool too_far =
        std::any_of(out.distance.begin(), out.distance.end(), [&](const BigFloat& d) { return d > threshold; });
    if (too_far) {
      std::vector<std::vector<double>> cost(a.size(), std::vector<double>(b.size()));
      for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) cost[i][j] = abs(a[i] - b[j]).to_double();
      }
      out.b_of_a = hungarian(cost);
      std::fill(b_used.begin(), b_used.end(), false);
      for (std::size_t i = 0; i < a.size(); ++i) {
        out.distance[i] = abs(a[i] - b[out.b_of_a[i]]);
        b_used[out.b_of_a[i]] = true;
      }
      out.used_optimal_assignment = true;
    }
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (!b_used[j]) out.unmatched_b.push_back(j);
  }
  return out;
}

double grid_half_gap(const RecurrenceSpec& spec, int max_index) {
  double gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k + 1 <= std::max(1, max_index); ++k) {
    const double d = abs(BigComplex(d_coeff(spec, k + 1) - d_coeff(spec, k))).to_double();
    if (d > 0) gap = std::min(gap, d);
  }
  return gap / 2;
}

Matching match_zeros(const ZeroSet& za, const ZeroSet& zb, std::optional<double> fallback_distance) {
  return match_points(za.zeros, zb.zeros, fallback_distance);
}

std::vector<int> label_zeros(const RecurrenceSpec& spec, int index, const ZeroSet& zset) {
  const auto estimates = label_estimates(spec, index);
  if (estimates.size() != zset.size()) throw InvalidParameter("zero set does not belong to c_" + std::to_string(index));
  const auto m = match_points(estimates, zset.zeros);
  std::vector<int> labels(zset.size(), -1);
  for (std::size_t k = 0; k < estimates.size(); ++k) labels[m.b_of_a[k]] = static_cast<int>(k);
  return labels;
}

int stabilized_digits(const BigComplex& a, const BigComplex& b, mpfr_prec_t precision_bits) {
  const int cap = static_cast<int>(std::floor(static_cast<double>(precision_bits) * std::log10(2.0)));
  const BigFloat diff = abs(a - b);
  if (diff.is_zero()) return cap;
  const BigFloat scale_ = b.is_zero() ? BigFloat(1) : abs(b);
  const BigFloat rd = BigFloat(2) * diff / scale_;
  const double digits = std::floor(-log10(rd).to_double());
  if (digits < 0) return 0;
  return std::min(cap, static_cast<int>(digits));
}

int ConvergenceReport::n_stable(int digits) const {
  if (m_list.size() < 2) return 0;
  const std::pair<int, int> key{m_list[m_list.size() - 2], m_list.back()};
  int n = 0;
  for (const auto& t : tracks) {
    auto it = t.stabilized_digits.find(key);
    if (it != t.stabilized_digits.end() && it->second >= digits) ++n;
  }
  return n;
}

ConvergenceReport convergence_report(const RecurrenceSpec& spec, const std::vector<int>& m_list,
                                     const RootOptions& options) {
  if (m_list.empty()) throw InvalidParameter("m_list is empty");
  if (!std::is_sorted(m_list.begin(), m_list.end()) ||
      std::adjacent_find(m_list.begin(), m_list.end()) != m_list.end()) {
    throw InvalidParameter("m_list must be strictly ascending");
  }
  ConvergenceReport report;
  report.spec = spec;
  report.m_list = m_list;
  report.precision_bits = options.precision_bits;
  for (int m : m_list) {
    auto zs = polynomial_zeros(spec, m, options);
    if (!zs.all_converged()) throw ConvergenceError("zeros of c_" + std::to_string(m) + " did not converge");
    report.zero_sets.push_back(std::move(zs));
  }
  PrecisionGuard guard(options.precision_bits);
  // track index of each zero in the current set
  std::vector<std::size_t> track_of;
  {
    const auto labels = label_zeros(spec, m_list[0], report.zero_sets[0]);
    for (std::size_t j = 0; j < labels.size(); ++j) {
      ZeroTrack t;
      t.label_k = labels[j];
      t.entries.emplace(m_list[0], report.zero_sets[0].zeros[j]);
      report.tracks.push_back(std::move(t));
      track_of.push_back(j);
    }
  }
  for (std::size_t step = 1; step < m_list.size(); ++step) {
    const int ma = m_list[step - 1], mb = m_list[step];
    const auto& za = report.zero_sets[step - 1];
    const auto& zb = report.zero_sets[step];
    const auto matching = match_zeros(za, zb, grid_half_gap(spec, mb));
    std::vector<std::size_t> next(zb.size(), 0);
    for (std::size_t i = 0; i < za.size(); ++i) {
      const std::size_t j = matching.b_of_a[i];
      auto& track = report.tracks[track_of[i]];
      track.entries.emplace(mb, zb.zeros[j]);
      track.stabilized_digits[{ma, mb}] = stabilized_digits(za.zeros[i], zb.zeros[j], options.precision_bits);
      next[j] = track_of[i];
    }
    if (!matching.unmatched_b.empty()) {
      const auto labels = label_zeros(spec, mb, zb);
      for (std::size_t j : matching.unmatched_b) {
        ZeroTrack t;
        t.label_k = labels[j];
        t.entries.emplace(mb, zb.zeros[j]);
        next[j] = report.tracks.size();
        report.tracks.push_back(std::move(t));
      }
    }
    track_of = std::move(next);
  }
  std::stable_sort(report.tracks.begin(), report.tracks.end(), [](const ZeroTrack& x, const ZeroTrack& y) {
    if (x.entries.begin()->first != y.entries.begin()->first) return x.entries.begin()->first < y.entries.begin()->first;
    return x.label_k < y.label_k;
  });
  return report;
}

std::vector<ApproximationRow> approximation_table(const RecurrenceSpec& spec, int index, int k_max,
                                                  const RootOptions& options) {
  if (k_max < 0 || k_max >= index) throw InvalidParameter("table rows need 0 <= k_max < index");
  const auto zs = polynomial_zeros(spec, index, options);
  if (!zs.all_converged()) throw ConvergenceError("zeros of c_" + std::to_string(index) + " did not converge");
  const auto labels = label_zeros(spec, index, zs);
  std::vector<ApproximationRow> rows;
  const bool degenerate = is_d_degenerate(spec);
  for (int k = 0; k <= k_max; ++k) {
    ApproximationRow row;
    row.k = k;
    row.approx0 = -d_coeff(spec, k);
    if (!degenerate) {
      row.approx1 = zero_estimate(spec, k, index - 1, 1);
      if (max_order(k, index - 1) >= 2) row.approx2 = zero_estimate(spec, k, index - 1, 2);
    }
    const auto it = std::find(labels.begin(), labels.end(), k);
    row.zero = zs.zeros[static_cast<std::size_t>(it - labels.begin())];
    rows.push_back(std::move(row));
  }
  return rows;
}

D2Estimate d2_sequence(const RecurrenceSpec& spec, const BigComplex& B, int K) {
  if (is_integer(spec.gamma) || is_integer(spec.delta)) {
    throw InvalidParameter("d2 needs gamma and delta outside the integers");
  }
  if (K < 4) throw InvalidParameter("d2 sequence needs K >= 4");
  const FloatRecurrenceSpec fspec = to_float(spec);
  const auto c = eval_sequence(fspec, B, K);
  D2Estimate out;
  out.B = B;
  out.K = K;
  out.outside_known_region = spec.kind == FamilyKind::Heun && abs(fspec.s) >= BigFloat(1);
  out.a.reserve(static_cast<std::size_t>(K));
  // k! / (delta-1)_k built one factor at a time
  BigComplex factor(1);
  const BigComplex dm2 = fspec.delta - BigComplex(2);
  for (int k = 1; k <= K; ++k) {
    factor = factor * BigComplex(k) / (dm2 + BigComplex(k));
    out.a.push_back(factor * c[static_cast<std::size_t>(k)]);
  }
  out.error_indicator = abs(out.a[static_cast<std::size_t>(K - 1)] - out.a[static_cast<std::size_t>(K - 2)]);
  const int nodes = std::min(14, K / 4);
  out.estimate = extrapolate(out.a, extrapolation_nodes(K, nodes));
  out.extrapolation_error = abs(out.estimate - extrapolate(out.a, extrapolation_nodes(K, nodes - 2)));
  return out;
}

BigComplex d2_closed_form_s0(const RecurrenceSpec& spec, const BigComplex& B) {
  if (!spec.s.is_zero()) throw InvalidParameter("closed-form d2 needs s = 0");
  const GaussRational dm1 = spec.delta - GaussRational(1);
  if (spec.gamma.is_nonpositive_integer() || dm1.is_nonpositive_integer()) {
    throw InvalidParameter("Gamma(gamma) or Gamma(delta-1) has a pole");
  }
  const BigComplex sum(spec.gamma + spec.delta - GaussRational(1));
  const BigComplex root = sqrt(sum * sum - BigComplex(4) * B);
  const BigComplex l1 = scale(sum + root, BigFloat(0.5));
  const BigComplex l2 = scale(sum - root, BigFloat(0.5));
  return gamma(BigComplex(spec.gamma)) * gamma(BigComplex(dm1)) * rgamma(l1) * rgamma(l2);
}

D2Zero d2_zero_search(const RecurrenceSpec& spec, const BigComplex& B0, const D2ZeroOptions& options) {
  int K = options.K;
  const BigFloat tol(options.tol);
  BigComplex b0 = B0;
  BigComplex b1 = B0 + BigComplex(BigFloat(1e-4) * max(BigFloat(1), abs(B0)));
  auto f0 = d2_sequence(spec, b0, K);
  auto f1 = d2_sequence(spec, b1, K);
  for (int it = 1; it <= options.max_iterations; ++it) {
    const BigComplex df = f1.estimate - f0.estimate;
    if (df.is_zero()) throw ConvergenceError("d2 secant iteration stalled (flat estimate)");
    const BigComplex slope = df / (b1 - b0);
    // the extrapolation error must not dominate the requested accuracy in B
    const BigFloat allowed = BigFloat(0.1) * tol * max(BigFloat(1), abs(b1)) * abs(slope);
    if (f1.extrapolation_error > allowed && K < options.K_max) {
      K = std::min(2 * K, options.K_max);
      f0 = d2_sequence(spec, b0, K);
      f1 = d2_sequence(spec, b1, K);
      continue;
    }
    const BigComplex step = f1.estimate / slope;
    BigComplex b2 = b1 - step;
    b0 = std::move(b1);
    f0 = std::move(f1);
    b1 = std::move(b2);
    f1 = d2_sequence(spec, b1, K);
    if (abs(step) <= tol * max(BigFloat(1), abs(b1))) {
      if (f1.extrapolation_error > allowed * BigFloat(10)) {
        throw ConvergenceError("d2 sequence not settled at K = " + std::to_string(K));
      }
      return {b1, f1.estimate, it, K, f1.extrapolation_error};
    }
  }
  throw ConvergenceError("d2 zero search did not converge");
}

}  // namespace heun
