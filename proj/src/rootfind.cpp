#include "heun/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace heun {

namespace {

// Scratch registers for the allocation-free hot loops.
struct Scratch {
  BigFloat t1, t2, t3, t4;
};

// acc = acc * z + c
void mul_add(BigComplex& acc, const BigComplex& z, const BigComplex& c, Scratch& s) {
  mpfr_mul(s.t1.raw(), acc.re.raw(), z.re.raw(), MPFR_RNDN);
  mpfr_mul(s.t2.raw(), acc.im.raw(), z.im.raw(), MPFR_RNDN);
  mpfr_sub(s.t1.raw(), s.t1.raw(), s.t2.raw(), MPFR_RNDN);
  mpfr_mul(s.t2.raw(), acc.re.raw(), z.im.raw(), MPFR_RNDN);
  mpfr_fma(acc.im.raw(), acc.im.raw(), z.re.raw(), s.t2.raw(), MPFR_RNDN);
  mpfr_add(acc.im.raw(), acc.im.raw(), c.im.raw(), MPFR_RNDN);
  mpfr_add(acc.re.raw(), s.t1.raw(), c.re.raw(), MPFR_RNDN);
}

struct Evaluation {
  BigComplex p, dp;
  BigFloat bound;  // sum |a_k| |z|^k
};

void evaluate(const std::vector<BigComplex>& a, const std::vector<BigFloat>& abs_a, const BigComplex& z,
              Evaluation& out, Scratch& s) {
  const BigComplex zero;
  mpfr_set_zero(out.p.re.raw(), 1);
  mpfr_set_zero(out.p.im.raw(), 1);
  mpfr_set_zero(out.dp.re.raw(), 1);
  mpfr_set_zero(out.dp.im.raw(), 1);
  mpfr_set_zero(out.bound.raw(), 1);
  mpfr_hypot(s.t3.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
  for (std::size_t i = a.size(); i-- > 0;) {
    mul_add(out.dp, z, out.p, s);
    mul_add(out.p, z, a[i], s);
    mpfr_fma(out.bound.raw(), out.bound.raw(), s.t3.raw(), abs_a[i].raw(), MPFR_RNDN);
  }
}

bool precedes(const BigComplex& x, const BigComplex& y) {
  if (x.re != y.re) return x.re > y.re;
  return x.im < y.im;
}

BigFloat unit_scale(const BigComplex& z) { return max(BigFloat(1), abs(z)); }

}  // namespace

bool ZeroSet::all_converged() const {
  return std::all_of(converged.begin(), converged.end(), [](bool c) { return c; });
}

BigFloat default_tolerance(mpfr_prec_t precision_bits) {
  PrecisionGuard guard(precision_bits);
  return BigFloat::ldexp(1, -static_cast<long>(precision_bits / 2));
}

std::vector<BigComplex> circle_seeds(const FloatPolynomial& poly) {
  const int n = poly.degree();
  std::vector<BigComplex> seeds;
  if (n < 1) return seeds;
  std::vector<int> idx;
  std::vector<double> log2mag;
  for (int i = 0; i <= n; ++i) {
    const auto& c = poly.coeffs()[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    long e = 0;
    const double mant = mpfr_get_d_2exp(&e, abs(c).raw(), MPFR_RNDN);
    idx.push_back(i);
    log2mag.push_back(std::log2(mant) + static_cast<double>(e));
  }
  // upper convex hull of (i, log2|a_i|)
  std::vector<std::size_t> hull;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2], b = hull.back();
      const double cross = (idx[b] - idx[a]) * (log2mag[k] - log2mag[a]) - (log2mag[b] - log2mag[a]) * (idx[k] - idx[a]);
      if (cross >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(k);
  }
  const double two_pi = 2.0 * std::numbers::pi;
  const double sigma = 0.7;
  double smallest_log_radius = 0.0;
  bool have_radius = false;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const std::size_t a = hull[h], b = hull[h + 1];
    const int count = idx[b] - idx[a];
    const double log_r = (log2mag[a] - log2mag[b]) / count;
    if (!have_radius || log_r < smallest_log_radius) smallest_log_radius = log_r;
    have_radius = true;
    BigFloat radius;
    mpfr_exp2(radius.raw(), BigFloat(log_r).raw(), MPFR_RNDN);
    for (int j = 0; j < count; ++j) {
      const double theta = two_pi * j / count + two_pi * idx[a] / n + sigma;
      seeds.emplace_back(radius * BigFloat(std::cos(theta)), radius * BigFloat(std::sin(theta)));
    }
  }
  // zero roots: a_0 = ... = a_{idx[0]-1} = 0
  for (int j = 0; j < idx.front(); ++j) {
    BigFloat radius;
    mpfr_exp2(radius.raw(), BigFloat(smallest_log_radius - 10.0).raw(), MPFR_RNDN);
    const double theta = two_pi * j / std::max(1, idx.front()) + sigma;
    seeds.emplace_back(radius * BigFloat(std::cos(theta)), radius * BigFloat(std::sin(theta)));
  }
  return seeds;
}

ZeroSet find_all_roots(const ExactPolynomial& poly, std::span<const BigComplex> seeds, const RootOptions& options) {
  PrecisionGuard guard(options.precision_bits);
  return find_all_roots(to_float(poly), seeds, options);
}

ZeroSet find_all_roots(const FloatPolynomial& input, std::span<const BigComplex> seeds, const RootOptions& options) {
  const int n = input.degree();
  if (n < 1) throw InvalidParameter("root finding needs degree >= 1");
  PrecisionGuard guard(options.precision_bits);
  const BigFloat tol = options.tol ? *options.tol : default_tolerance(options.precision_bits);
  const BigFloat unit_roundoff = BigFloat::ldexp(1, -static_cast<long>(options.precision_bits));
  const BigFloat noise_factor = BigFloat(4 * static_cast<long>(n) + 4) * unit_roundoff;

  std::vector<BigComplex> a;
  std::vector<BigFloat> abs_a;
  a.reserve(input.size());
  for (const auto& c : input.coeffs()) {
    a.emplace_back(BigComplex(BigFloat() + c.re, BigFloat() + c.im));  // round to working precision
    abs_a.push_back(abs(a.back()));
  }
  const FloatPolynomial poly{std::vector<BigComplex>(a)};

  std::vector<BigComplex> z;
  z.reserve(static_cast<std::size_t>(n));
  for (const auto& sd : seeds) {
    if (static_cast<int>(z.size()) == n) break;
    z.push_back(BigComplex(BigFloat() + sd.re, BigFloat() + sd.im));
  }
  if (static_cast<int>(z.size()) < n) {
    auto pad = circle_seeds(poly);
    std::stable_sort(pad.begin(), pad.end(),
                     [](const BigComplex& x, const BigComplex& y) { return abs(x) > abs(y); });
    for (std::size_t i = 0; static_cast<int>(z.size()) < n; ++i) z.push_back(pad.at(i));
  }
  // separate coincident starting points
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (abs(z[i] - z[j]) <= tol * unit_scale(z[i])) {
        const double theta = 0.9 + 0.37 * static_cast<double>(i);
        const BigFloat shift = BigFloat(1e-8) * unit_scale(z[i]);
        z[i] += BigComplex(shift * BigFloat(std::cos(theta)), shift * BigFloat(std::sin(theta)));
      }
    }
  }

  ZeroSet out;
  out.degree = n;
  out.precision_bits = options.precision_bits;
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  Scratch scratch;
  Evaluation ev;
  BigComplex sum, w;
  BigFloat dr, di, nrm;
  int sweep = 0;
  for (; sweep < options.max_iterations; ++sweep) {
    bool all_done = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      evaluate(a, abs_a, z[i], ev, scratch);
      if (ev.p.is_zero() || abs(ev.p) <= noise_factor * ev.bound) {
        done[i] = true;
        continue;
      }
      mpfr_set_zero(sum.re.raw(), 1);
      mpfr_set_zero(sum.im.raw(), 1);
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j == i) continue;
        mpfr_sub(dr.raw(), z[i].re.raw(), z[j].re.raw(), MPFR_RNDN);
        mpfr_sub(di.raw(), z[i].im.raw(), z[j].im.raw(), MPFR_RNDN);
        mpfr_sqr(nrm.raw(), dr.raw(), MPFR_RNDN);
        mpfr_fma(nrm.raw(), di.raw(), di.raw(), nrm.raw(), MPFR_RNDN);
        if (mpfr_zero_p(nrm.raw())) continue;
        mpfr_div(dr.raw(), dr.raw(), nrm.raw(), MPFR_RNDN);
        mpfr_div(di.raw(), di.raw(), nrm.raw(), MPFR_RNDN);
        mpfr_add(sum.re.raw(), sum.re.raw(), dr.raw(), MPFR_RNDN);
        mpfr_sub(sum.im.raw(), sum.im.raw(), di.raw(), MPFR_RNDN);
      }
      // w = p / (p' - p * sum)
      BigComplex denom = ev.dp - ev.p * sum;
      if (denom.is_zero()) {
        denom = BigComplex(BigFloat(1));
      }
      w = ev.p / denom;
      z[i] -= w;
      if (abs(w) <= tol * unit_scale(z[i])) {
        done[i] = true;
      } else {
        all_done = false;
      }
    }
    if (all_done && std::all_of(done.begin(), done.end(), [](bool d) { return d; })) {
      ++sweep;
      break;
    }
  }
  out.iterations = sweep;

  // Newton polish; a step is only taken if it stays well inside the root's
  // own neighbourhood.
  for (std::size_t i = 0; i < z.size(); ++i) {
    BigFloat nearest;
    bool have = false;
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (j == i) continue;
      BigFloat d = abs(z[i] - z[j]);
      if (!have || d < nearest) nearest = d;
      have = true;
    }
    for (int step = 0; step < 4; ++step) {
      evaluate(a, abs_a, z[i], ev, scratch);
      if (ev.p.is_zero() || ev.dp.is_zero()) break;
      BigComplex corr = ev.p / ev.dp;
      const BigFloat size = abs(corr);
      if (have && size * BigFloat(4) > nearest) break;
      z[i] -= corr;
      if (size <= tol * unit_scale(z[i]) * unit_roundoff) break;
    }
  }

  std::vector<std::size_t> order(z.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return precedes(z[x], z[y]); });
  for (std::size_t k : order) {
    evaluate(a, abs_a, z[k], ev, scratch);
    BigFloat residual = ev.dp.is_zero() ? abs(ev.p) : abs(ev.p / ev.dp);
    const bool ok = done[k] || residual <= tol * unit_scale(z[k]);
    out.zeros.push_back(z[k]);
    out.residuals.push_back(std::move(residual));
    out.converged.push_back(ok);
  }
  return out;
}

RefinedRoot refine_root(const FloatPolynomial& poly, const BigComplex& z0, const BigFloat& tol, int max_iterations) {
  if (poly.degree() < 1) throw InvalidParameter("refine_root needs degree >= 1");
  const BigFloat unit_roundoff = BigFloat::ldexp(1, -static_cast<long>(working_precision()));
  const BigFloat noise_factor = BigFloat(4 * static_cast<long>(poly.degree()) + 4) * unit_roundoff;
  std::vector<BigComplex> a(poly.coeffs());
  std::vector<BigFloat> abs_a;
  for (const auto& c : a) abs_a.push_back(abs(c));
  Scratch scratch;
  Evaluation ev;
  BigComplex z = z0;
  BigFloat previous_size;
  int growth = 0;
  for (int it = 0; it <= max_iterations; ++it) {
    evaluate(a, abs_a, z, ev, scratch);
    if (ev.p.is_zero()) return {z, BigFloat(0), it};
    if (ev.dp.is_zero()) throw ConvergenceError("Newton iteration hit a critical point");
    BigComplex corr = ev.p / ev.dp;
    BigFloat size = abs(corr);
    if (size <= tol * unit_scale(z) || abs(ev.p) <= noise_factor * ev.bound) {
      return {z, size, it};
    }
    if (it > 0 && size > previous_size) {
      if (++growth > 8) throw ConvergenceError("Newton iteration diverges");
    }
    previous_size = size;
    z -= corr;
  }
  throw ConvergenceError("Newton iteration did not converge within the iteration limit");
}

int real_zero_count(const ZeroSet& zset, double imag_tol) {
  if (!zset.all_converged()) throw ConvergenceError("zero set contains unconverged roots");
  int count = 0;
  for (const auto& z : zset.zeros) {
    if (abs(z.im) < BigFloat(imag_tol) * (BigFloat(1) + abs(z.re))) ++count;
  }
  return count;
}

VietaCheck vieta_check(const FloatPolynomial& poly, const ZeroSet& zset) {
  PrecisionGuard guard(zset.precision_bits);
  const int n = poly.degree();
  BigComplex sum, prod(BigFloat(1));
  BigFloat sum_abs;
  for (const auto& z : zset.zeros) {
    sum += z;
    prod *= z;
    sum_abs += abs(z);
  }
  const auto& an = poly.coeffs()[static_cast<std::size_t>(n)];
  BigComplex expected_sum = -(poly.coeff(static_cast<std::size_t>(n - 1)) / an);
  BigComplex expected_prod = poly.coeff(0) / an;
  if (n % 2 == 1) expected_prod = -expected_prod;
  VietaCheck check;
  check.sum_defect = abs(sum - expected_sum) / max(BigFloat(1), sum_abs);
  BigFloat prod_scale = max(abs(prod), BigFloat::ldexp(1, -static_cast<long>(zset.precision_bits)));
  check.product_defect = abs(prod - expected_prod) / prod_scale;
  return check;
}

}  // namespace heun
