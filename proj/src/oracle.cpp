#include "heun/oracle.hpp"

#include <algorithm>

#include "heun/recurrence.hpp"

namespace heun::oracle {

namespace {

// Coefficient-list arithmetic over a ring T.
template <class T>
std::vector<T> mul(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<T> out(a.size() + b.size() - 1, T(0L));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

template <class T>
std::vector<T> add(std::vector<T> a, const std::vector<T>& b) {
  if (b.size() > a.size()) a.resize(b.size(), T(0L));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

template <class T>
std::vector<T> times(const T& c, std::vector<T> a) {
  for (auto& x : a) x = c * x;
  return a;
}

// f(1 - w) as a list in w.
template <class T>
std::vector<T> reflect(const std::vector<T>& f) {
  const std::vector<T> one_minus_w{T(1L), T(-1L)};
  std::vector<T> out;
  std::vector<T> power{T(1L)};
  for (const auto& c : f) {
    out = add(out, times(c, power));
    power = mul(power, one_minus_w);
  }
  return out;
}

template <class T>
const T& at(const std::vector<T>& v, std::size_t i, const T& zero) {
  return i < v.size() ? v[i] : zero;
}

BigComplex eval_poly(const std::vector<BigComplex>& c, const BigComplex& z) {
  BigComplex acc;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

std::vector<BigComplex> to_float(const std::vector<GaussRational>& v) {
  std::vector<BigComplex> out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

std::vector<BigComplex> to_float(std::vector<BigComplex> v) { return v; }

void require_noninteger_delta(const RecurrenceSpec& spec) {
  if (spec.delta.is_integer()) throw InvalidParameter("local solutions at z = 1 need non-integer delta");
}

template <class T>
std::pair<SeriesSolution, SeriesSolution> solutions_at_1(const RecurrenceSpec& spec, const T& B, int N) {
  require_noninteger_delta(spec);
  const auto ode = ode_at_one(lift(spec, B));
  const T rho = T(1L) - T(spec.delta);
  SeriesSolution y1{Anchor::OneHolomorphic, BigComplex(0), to_float(frobenius_series(ode, T(0L), N))};
  SeriesSolution y2{Anchor::OneSingular, BigComplex(GaussRational(1) - spec.delta),
                    to_float(frobenius_series(ode, rho, N))};
  return {std::move(y1), std::move(y2)};
}

template <class T>
SeriesSolution solution_at_0(const RecurrenceSpec& spec, const T& B, int N) {
  const auto ode = ode_at_zero(lift(spec, B));
  return {Anchor::ZeroHolomorphic, BigComplex(0), to_float(frobenius_series(ode, T(0L), N))};
}

template <class T>
MidpointMatch midpoint(const RecurrenceSpec& spec, const T& B, const MidpointOptions& options) {
  require_noninteger_delta(spec);
  const mpfr_prec_t target = working_precision();
  MidpointMatch out;
  {
    PrecisionGuard guard(target + 64);
    const BigComplex z0(options.z0);
    const BigComplex w0 = BigComplex(1) - z0;
    const BigFloat tol(options.tol);
    int N = options.N > 0 ? options.N : 64;
    for (;;) {
      const SeriesSolution y = solution_at_0(spec, B, N);
      const auto [y1, y2] = solutions_at_1(spec, B, N);
      auto last_term = [&](const SeriesSolution& ser, const BigComplex& t) {
        return abs(ser.coefficients.back()) * pow(abs(t), N);
      };
      out.tail = max(last_term(y, z0), max(last_term(y1, w0), last_term(y2, w0)));
      if (options.N == 0 && out.tail > tol / BigFloat(100)) {
        if (N >= options.N_max) throw ConvergenceError("midpoint series tails did not settle by N_max");
        N = std::min(2 * N, options.N_max);
        continue;
      }
      out.N = N;
      const auto [f, fz] = y.evaluate(z0);
      auto [g1, g1w] = y1.evaluate(w0);
      auto [g2, g2w] = y2.evaluate(w0);
      // d/dz = -d/dw
      const BigComplex g1z = -g1w, g2z = -g2w;
      const BigComplex det = g1 * g2z - g2 * g1z;
      if (det.is_zero()) throw InvalidParameter("singular matching system");
      out.d1 = (f * g2z - g2 * fz) / det;
      out.d2 = (g1 * fz - f * g1z) / det;
      const BigFloat norm_m = max(abs(g1) + abs(g2), abs(g1z) + abs(g2z));
      const BigFloat norm_inv = max(abs(g2z) + abs(g2), abs(g1z) + abs(g1)) / abs(det);
      out.condition = norm_m * norm_inv;
      break;
    }
  }
  auto round = [](const BigComplex& z) { return BigComplex(BigFloat() + z.re, BigFloat() + z.im); };
  out.d1 = round(out.d1);
  out.d2 = round(out.d2);
  out.condition = BigFloat() + out.condition;
  out.tail = BigFloat() + out.tail;
  return out;
}

GaussRational d_of(const RecurrenceSpec& spec, int k) {
  const GaussRational kk(static_cast<long>(k));
  return kk * (kk - GaussRational(1) + spec.gamma + spec.delta);
}

// Solves the coefficient of s^j, which is affine in x, for x.
template <class F>
GaussRational solve_affine(F&& coefficient_at) {
  const GaussRational f0 = coefficient_at(GaussRational(0));
  const GaussRational f1 = coefficient_at(GaussRational(1));
  const GaussRational slope = f1 - f0;
  if (slope.is_zero()) throw InvalidParameter("substitution gives no condition on the expansion coefficient");
  const GaussRational x = -f0 / slope;
  // affine check at a third point
  if (!(coefficient_at(GaussRational(2)) == f0 + GaussRational(2) * slope)) {
    throw std::logic_error("expansion condition is not affine in the unknown");
  }
  return x;
}

}  // namespace

template <class T>
OdeParams<T> lift(const RecurrenceSpec& spec, const T& B) {
  OdeParams<T> p;
  p.kind = spec.kind;
  p.gamma = T(spec.gamma);
  p.delta = T(spec.delta);
  p.alpha = T(spec.alpha);
  p.beta = T(spec.beta);
  p.s = T(spec.s);
  p.B = B;
  return p;
}

OdeParams<BigComplex> lift(const FloatRecurrenceSpec& spec, const BigComplex& B) {
  return {spec.kind, spec.gamma, spec.delta, spec.alpha, spec.beta, spec.s, B};
}

template <class T>
LocalOde<T> ode_at_zero(const OdeParams<T>& p) {
  const std::vector<T> z{T(0L), T(1L)};
  const std::vector<T> z_minus_1{T(-1L), T(1L)};
  const std::vector<T> zz1 = mul(z, z_minus_1);
  LocalOde<T> ode;
  switch (p.kind) {
    case FamilyKind::Heun: {
      const std::vector<T> one_minus_sz{T(1L), -p.s};
      ode.P = mul(zz1, one_minus_sz);
      ode.Q = add(add(times(p.gamma, mul(z_minus_1, one_minus_sz)), times(p.delta, mul(z, one_minus_sz))),
                  times(T(-p.s * p.epsilon()), zz1));
      ode.R = {p.B, T(-p.s * p.alpha * p.beta)};
      break;
    }
    case FamilyKind::ConfluentHeun:
      ode.P = zz1;
      ode.Q = add(add(times(T(-p.s), zz1), times(p.gamma, z_minus_1)), times(p.delta, z));
      ode.R = {p.B, T(-p.s * p.alpha)};
      break;
    case FamilyKind::ReducedConfluentHeun:
      ode.P = zz1;
      ode.Q = add(times(p.gamma, z_minus_1), times(p.delta, z));
      ode.R = {p.B, T(-p.s)};
      break;
  }
  return ode;
}

template <class T>
LocalOde<T> ode_at_one(const OdeParams<T>& p) {
  const LocalOde<T> at0 = ode_at_zero(p);
  LocalOde<T> ode{reflect(at0.P), times(T(-1L), reflect(at0.Q)), reflect(at0.R)};
  ode.P[0] = T(0L);  // P(1) = 0 for every family; keep it exact in floating arithmetic
  return ode;
}

template <class T>
std::vector<T> frobenius_series(const LocalOde<T>& ode, const T& rho, int N) {
  using heun::is_zero;
  if (N < 0) throw InvalidParameter("series length must be nonnegative");
  const T zero(0L);
  if (!ode.P.empty() && !is_zero(ode.P[0])) throw InvalidParameter("anchor is not a singular point of P");
  const T& p1 = at(ode.P, 1, zero);
  const T& q0 = at(ode.Q, 0, zero);
  std::vector<T> a;
  a.reserve(static_cast<std::size_t>(N) + 1);
  a.emplace_back(1L);
  for (long n = 1; n <= N; ++n) {
    const T nr = T(n) + rho;
    const T indicial = p1 * nr * (nr - T(1L)) + q0 * nr;
    if (is_zero(indicial)) throw InvalidParameter("resonant exponents: indicial factor vanishes");
    T acc(0L);
    for (std::size_t i = 2; i < ode.P.size(); ++i) {
      const long idx = n + 1 - static_cast<long>(i);
      if (idx < 0) break;
      const T x = T(idx) + rho;
      acc += ode.P[i] * a[static_cast<std::size_t>(idx)] * x * (x - T(1L));
    }
    for (std::size_t i = 1; i < ode.Q.size(); ++i) {
      const long idx = n - static_cast<long>(i);
      if (idx < 0) break;
      acc += ode.Q[i] * a[static_cast<std::size_t>(idx)] * (T(idx) + rho);
    }
    for (std::size_t i = 0; i < ode.R.size(); ++i) {
      const long idx = n - 1 - static_cast<long>(i);
      if (idx < 0) break;
      acc += ode.R[i] * a[static_cast<std::size_t>(idx)];
    }
    a.push_back(-acc / indicial);
  }
  return a;
}

std::pair<BigComplex, BigComplex> SeriesSolution::evaluate(const BigComplex& t) const {
  BigComplex y, dy;
  for (std::size_t i = coefficients.size(); i-- > 0;) {
    dy = dy * t + y;
    y = y * t + coefficients[i];
  }
  if (exponent.is_zero()) return {y, dy};
  // d/dt [t^r f] = t^r (f' + r f / t)
  const BigComplex tr = exp(exponent * log(t));
  return {tr * y, tr * (dy + exponent * y / t)};
}

ResidualReport ode_residual(const FloatRecurrenceSpec& spec, const BigComplex& B,
                            const std::vector<BigComplex>& coefficients, const std::vector<BigComplex>& z_samples) {
  const auto ode = ode_at_zero(lift(spec, B));
  ResidualReport report;
  const int N = static_cast<int>(coefficients.size()) - 1;
  for (const auto& z : z_samples) {
    if (z.is_zero()) throw InvalidParameter("residual samples must avoid z = 0");
    BigComplex y, dy, d2y;
    for (std::size_t i = coefficients.size(); i-- > 0;) {
      d2y = d2y * z + BigComplex(2) * dy;
      dy = dy * z + y;
      y = y * z + coefficients[i];
    }
    const BigComplex lhs = eval_poly(ode.P, z) * d2y + eval_poly(ode.Q, z) * dy + eval_poly(ode.R, z) * y;
    report.max_residual = max(report.max_residual, abs(lhs));
    BigFloat tail;
    for (int j = std::max(0, N - 2); j <= N; ++j) {
      tail += abs(coefficients[static_cast<std::size_t>(j)]) * BigFloat(static_cast<long>(j + 1) * (j + 1)) *
              pow(abs(z), std::max(0, j - 1));
    }
    report.tail_scale = max(report.tail_scale, tail);
  }
  return report;
}

ResidualReport ode_residual(const RecurrenceSpec& spec, const BigComplex& B, int N,
                            const std::vector<BigComplex>& z_samples) {
  const FloatRecurrenceSpec fspec = heun::to_float(spec);
  BigFloat radius(1);
  if (spec.kind == FamilyKind::Heun && !spec.s.is_zero()) {
    const BigFloat r = BigFloat(1) / abs(fspec.s);
    if (r < radius) radius = r;
  }
  for (const auto& z : z_samples) {
    if (!(abs(z) < radius)) throw InvalidParameter("residual sample outside the disk of convergence");
  }
  return ode_residual(fspec, B, eval_sequence(fspec, B, N), z_samples);
}

ResidualReport ode_residual_at_one(const FloatRecurrenceSpec& spec, const BigComplex& B, const SeriesSolution& y,
                                   const std::vector<BigComplex>& z_samples) {
  const auto ode = ode_at_zero(lift(spec, B));
  ResidualReport report;
  for (const auto& z : z_samples) {
    const BigComplex w = BigComplex(1) - z;
    // second derivative of w^r f(w) in w
    BigComplex f, df, d2f;
    for (std::size_t i = y.coefficients.size(); i-- > 0;) {
      d2f = d2f * w + BigComplex(2) * df;
      df = df * w + f;
      f = f * w + y.coefficients[i];
    }
    const BigComplex& r = y.exponent;
    const BigComplex wr = y.exponent.is_zero() ? BigComplex(1) : exp(r * log(w));
    const BigComplex yw = wr * (df + r * f / w);
    const BigComplex yww = wr * (d2f + BigComplex(2) * r * df / w + r * (r - BigComplex(1)) * f / (w * w));
    const BigComplex val = wr * f;
    // d/dz = -d/dw
    const BigComplex lhs = eval_poly(ode.P, z) * yww - eval_poly(ode.Q, z) * yw + eval_poly(ode.R, z) * val;
    report.max_residual = max(report.max_residual, abs(lhs));
    const int N = y.N();
    BigFloat tail;
    for (int j = std::max(0, N - 2); j <= N; ++j) {
      tail += abs(y.coefficients[static_cast<std::size_t>(j)]) * BigFloat(static_cast<long>(j + 1) * (j + 1)) *
              pow(abs(w), std::max(0, j - 1)) * abs(wr);
    }
    report.tail_scale = max(report.tail_scale, tail);
  }
  return report;
}

std::pair<SeriesSolution, SeriesSolution> local_solutions_at_1(const RecurrenceSpec& spec, const GaussRational& B,
                                                               int N) {
  return solutions_at_1(spec, B, N);
}

std::pair<SeriesSolution, SeriesSolution> local_solutions_at_1(const RecurrenceSpec& spec, const BigComplex& B,
                                                               int N) {
  return solutions_at_1(spec, B, N);
}

SeriesSolution local_solution_at_0(const RecurrenceSpec& spec, const GaussRational& B, int N) {
  return solution_at_0(spec, B, N);
}

SeriesSolution local_solution_at_0(const RecurrenceSpec& spec, const BigComplex& B, int N) {
  return solution_at_0(spec, B, N);
}

MidpointMatch d2_by_midpoint_matching(const RecurrenceSpec& spec, const GaussRational& B,
                                      const MidpointOptions& options) {
  return midpoint(spec, B, options);
}

MidpointMatch d2_by_midpoint_matching(const RecurrenceSpec& spec, const BigComplex& B,
                                      const MidpointOptions& options) {
  return midpoint(spec, B, options);
}

ExactPolynomial series_coefficient_in_s(const RecurrenceSpec& spec, const ExactPolynomial& B_of_s, int m) {
  if (m < -1) throw InvalidParameter("m must be >= -1");
  OdeParams<ExactPolynomial> p = lift(spec, B_of_s);
  p.s = ExactPolynomial::monomial(GaussRational(1), 1);
  const auto series = frobenius_series(ode_at_zero(p), ExactPolynomial(), m + 1);
  return series.back();
}

SubstitutionCoefficients expansion_by_substitution(const RecurrenceSpec& spec, int k, int m, int order) {
  if (order < 1 || order > 2) throw InvalidParameter("substitution order must be 1 or 2");
  if (k < 0 || k > m) throw InvalidParameter("label k must satisfy 0 <= k <= m");
  const GaussRational Dk = d_of(spec, k);
  SubstitutionCoefficients out;
  const GaussRational x1 = solve_affine([&](const GaussRational& x) {
    return series_coefficient_in_s(spec, ExactPolynomial::linear(-Dk, x), m).coeff(1);
  });
  out.first = -x1;
  if (order == 2) {
    const GaussRational x2 = solve_affine([&](const GaussRational& x) {
      return series_coefficient_in_s(spec, ExactPolynomial(std::vector<GaussRational>{-Dk, x1, x}), m).coeff(2);
    });
    out.second = -x2;
  }
  return out;
}

template OdeParams<GaussRational> lift(const RecurrenceSpec&, const GaussRational&);
template OdeParams<BigComplex> lift(const RecurrenceSpec&, const BigComplex&);
template OdeParams<ExactPolynomial> lift(const RecurrenceSpec&, const ExactPolynomial&);
template LocalOde<GaussRational> ode_at_zero(const OdeParams<GaussRational>&);
template LocalOde<BigComplex> ode_at_zero(const OdeParams<BigComplex>&);
template LocalOde<ExactPolynomial> ode_at_zero(const OdeParams<ExactPolynomial>&);
template LocalOde<GaussRational> ode_at_one(const OdeParams<GaussRational>&);
template LocalOde<BigComplex> ode_at_one(const OdeParams<BigComplex>&);
template std::vector<GaussRational> frobenius_series(const LocalOde<GaussRational>&, const GaussRational&, int);
template std::vector<BigComplex> frobenius_series(const LocalOde<BigComplex>&, const BigComplex&, int);
template std::vector<ExactPolynomial> frobenius_series(const LocalOde<ExactPolynomial>&, const ExactPolynomial&, int);

}  // namespace heun::oracle
