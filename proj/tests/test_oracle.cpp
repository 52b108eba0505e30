#include "doctest.h"

#include "heun/oracle.hpp"
#include "heun/perturbation.hpp"
#include "heun/recurrence.hpp"
#include "heun/tracking.hpp"

using namespace heun;

namespace {

GaussRational q(long p, long d = 1) { return GaussRational::ratio(p, d); }
GaussRational cq(const GaussRational& re, const GaussRational& im) { return GaussRational(re.re, im.re); }

std::vector<RecurrenceSpec> sample_specs() {
  return {make_heun(q(1, 3), q(3, 4), q(5, 2), cq(q(-1, 2), q(1, 5)), q(1, 7)),
          make_confluent_heun(q(2, 3), cq(q(1, 2), q(1)), q(3), q(-2)),
          make_reduced_confluent_heun(q(1, 2), q(1, 2), cq(q(0), q(2)))};
}

// Parameters and B after z -> 1 - z (holomorphic solution at z = 1 becomes
// the holomorphic solution at 0 of the mapped equation).
std::pair<RecurrenceSpec, GaussRational> reflected(const RecurrenceSpec& sp, const GaussRational& B) {
  switch (sp.kind) {
    case FamilyKind::Heun: {
      const GaussRational den = sp.s - GaussRational(1);
      return {make_heun(sp.delta, sp.gamma, sp.alpha, sp.beta, sp.s / den), (sp.alpha * sp.beta * sp.s - B) / den};
    }
    case FamilyKind::ConfluentHeun:
      return {make_confluent_heun(sp.delta, sp.gamma, sp.alpha, -sp.s), B - sp.s * sp.alpha};
    case FamilyKind::ReducedConfluentHeun:
      return {make_reduced_confluent_heun(sp.delta, sp.gamma, -sp.s), B - sp.s};
  }
  throw std::logic_error("unreachable");
}

BigFloat tiny(int bits) { return BigFloat::ldexp(1, -bits); }

}  // namespace

TEST_CASE("Frobenius series at z = 0 reproduces the recurrence coefficients exactly") {
  const GaussRational B = cq(q(-3, 7), q(2, 5));
  for (const auto& spec : sample_specs()) {
    const auto ode = oracle::ode_at_zero(oracle::lift(spec, B));
    const auto series = oracle::frobenius_series(ode, GaussRational(0), 25);
    const auto c = eval_sequence(spec, B, 25);
    for (int k = 0; k <= 25; ++k) CHECK(series[static_cast<std::size_t>(k)] == c[static_cast<std::size_t>(k)]);
  }
}

TEST_CASE("holomorphic solution at z = 1 matches the reflected parameter set") {
  const GaussRational B = cq(q(5, 4), q(-1, 3));
  for (const auto& spec : sample_specs()) {
    const auto ode = oracle::ode_at_one(oracle::lift(spec, B));
    const auto series = oracle::frobenius_series(ode, GaussRational(0), 20);
    const auto [mapped, mapped_B] = reflected(spec, B);
    const auto c = eval_sequence(mapped, mapped_B, 20);
    for (int k = 0; k <= 20; ++k) CHECK(series[static_cast<std::size_t>(k)] == c[static_cast<std::size_t>(k)]);
  }
}

TEST_CASE("indicial structure at z = 1") {
  const auto spec = from_lame({q(2), q(1, 100), std::nullopt}).spec;
  const auto ode = oracle::ode_at_one(oracle::lift(spec, q(-1)));
  CHECK(ode.P[0] == GaussRational(0));
  const auto [y1, y2] = oracle::local_solutions_at_1(spec, q(-1), 5);
  CHECK(y1.coefficients[0] == BigComplex(1));
  CHECK(y2.coefficients[0] == BigComplex(1));
  CHECK(y2.exponent == BigComplex(0.5));
  CHECK_THROWS_AS(oracle::local_solutions_at_1(make_heun(q(1, 2), q(2), q(1), q(1), q(0)), q(0), 5),
                  InvalidParameter);
}

TEST_CASE("ODE residual of the recurrence series") {
  PrecisionGuard g(256);
  const auto spec = from_lame({q(2), q(1, 100), std::nullopt}).spec;
  const BigComplex B = parse_complex("-.007481156136");
  const auto r = oracle::ode_residual(spec, B, 60, {BigComplex(0.3)});
  CHECK(r.max_residual < BigFloat(1e-20));
  CHECK(r.max_residual <= BigFloat(100) * r.tail_scale);

  // the residual falls with N like the tail
  const auto r2 = oracle::ode_residual(spec, B, 2, {BigComplex(1e-3)});
  const auto r3 = oracle::ode_residual(spec, B, 2, {BigComplex(1e-4)});
  CHECK(r3.max_residual < r2.max_residual / BigFloat(5));

  // a perturbed coefficient is detected
  auto c = eval_sequence(to_float(spec), B, 60);
  c[3] += BigComplex(1e-6);
  const auto bad = oracle::ode_residual(to_float(spec), B, c, {BigComplex(0.3)});
  CHECK(bad.max_residual > BigFloat(1e-8));

  CHECK_THROWS_AS(oracle::ode_residual(make_heun(q(1, 2), q(1, 2), q(1), q(1), q(2)), B, 10, {BigComplex(0.6)}),
                  InvalidParameter);
}

TEST_CASE("local solutions at z = 1 satisfy the ODE") {
  PrecisionGuard g(256);
  for (const auto& spec : sample_specs()) {
    const BigComplex B(0.3, -0.2);
    const auto [y1, y2] = oracle::local_solutions_at_1(spec, B, 200);
    for (const auto* y : {&y1, &y2}) {
      const auto r = oracle::ode_residual_at_one(to_float(spec), B, *y, {BigComplex(0.6), BigComplex(0.8, 0.1)});
      CHECK(r.max_residual < BigFloat(1e-25));
    }
  }
}

TEST_CASE("midpoint matching at s = 0 agrees with the Gauss connection coefficient") {
  PrecisionGuard g(256);
  const auto spec = make_heun(q(1, 2), q(1, 2), q(3, 2), q(-1), q(0));
  auto one = oracle::d2_by_midpoint_matching(spec, q(-1, 4));
  CHECK(abs(one.d2 - BigComplex(1)) < BigFloat(1e-30));
  auto zero = oracle::d2_by_midpoint_matching(spec, q(-1));
  CHECK(abs(zero.d2) < BigFloat(1e-30));
  for (auto B : {q(3, 10), q(-27, 10), cq(q(1), q(1, 2))}) {
    auto m = oracle::d2_by_midpoint_matching(spec, B);
    CHECK(abs(m.d2 - d2_closed_form_s0(spec, BigComplex(B))) < BigFloat(1e-30));
  }
}

TEST_CASE("midpoint matching agrees with the sequence limit away from s = 0") {
  PrecisionGuard g(256);
  const auto specs = {from_lame({q(2), q(1, 2), std::nullopt}).spec,
                      make_confluent_heun(q(1, 2), q(1, 2), q(5), q(-1, 2)),
                      make_reduced_confluent_heun(q(1, 2), q(1, 2), cq(q(0), q(1, 2)))};
  for (const auto& spec : specs) {
    for (auto B : {q(-3, 2), cq(q(1, 3), q(1, 4))}) {
      auto m = oracle::d2_by_midpoint_matching(spec, B);
      auto e = d2_sequence(spec, BigComplex(B), 500);
      CHECK(abs(m.d2 - e.estimate) < BigFloat(1e-12));
    }
  }
}

TEST_CASE("series coefficient in s agrees with the recurrence") {
  const auto spec = make_confluent_heun(q(1, 2), q(3, 2), q(2), q(0));
  const ExactPolynomial B(std::vector<GaussRational>{q(-1), q(1, 3), q(2)});
  for (int m = -1; m <= 6; ++m) CHECK(oracle::series_coefficient_in_s(spec, B, m) == eval_s_polynomial(spec, B, m));
}

TEST_CASE("expansion coefficients by substitution match the closed forms") {
  const auto lame = from_lame({q(2), q(0), std::nullopt}).spec;
  auto c = oracle::expansion_by_substitution(lame, 3, 6, 2);
  CHECK(c.first == first_order_coeff(lame, 3, 6));
  CHECK(*c.second == q(-831, 1120));
  auto b = oracle::expansion_by_substitution(lame, 4, 4, 1);
  CHECK(b.first == first_order_coeff(lame, 4, 4));
}
