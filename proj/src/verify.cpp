#include "heun/verify.hpp"

#include <sstream>

#include "heun/oracle.hpp"
#include "heun/perturbation.hpp"
#include "heun/recurrence.hpp"
#include "heun/tracking.hpp"

namespace heun {

namespace {

CheckResult skipped(std::string name, const std::string& why) { return {std::move(name), true, "skipped: " + why}; }

bool non_integer(const GaussRational& x) { return !x.is_integer(); }

std::string first_failure(int k, int m) {
  std::ostringstream os;
  os << "first failure at k=" << k << ", m=" << m;
  return os.str();
}

BigFloat relative(const BigComplex& a, const BigComplex& b) {
  return abs(a - b) / max(BigFloat(1), abs(b));
}

}  // namespace

Suite parse_suite(std::string_view text) {
  if (text == "recurrence") return Suite::Recurrence;
  if (text == "perturbation") return Suite::Perturbation;
  if (text == "oracle") return Suite::Oracle;
  if (text == "all") return Suite::All;
  throw ParseError("unknown suite '" + std::string(text) + "'");
}

std::vector<CheckResult> verify_recurrence(const RecurrenceSpec& spec, const VerifyOptions& options) {
  std::vector<CheckResult> out;
  const int m_max = options.m_max;
  const auto family = build_family(spec, m_max);

  {
    CheckResult r{"recurrence residual vanishes exactly", true, "m < " + std::to_string(m_max)};
    for (int m = 0; m < m_max && r.passed; ++m) {
      if (!recurrence_residual(family, m).is_zero()) r = {r.name, false, "nonzero residual at m=" + std::to_string(m)};
    }
    out.push_back(std::move(r));
  }
  {
    CheckResult r{"degree k with leading coefficient 1/(k! (gamma)_k)", true, "k <= " + std::to_string(m_max)};
    for (int k = 0; k <= m_max && r.passed; ++k) {
      if (family[k].degree() != k || family[k].leading() != leading_coefficient(spec, k)) {
        r = {r.name, false, "mismatch at k=" + std::to_string(k)};
      }
    }
    out.push_back(std::move(r));
  }
  {
    const auto at0 = build_family(spec.with_s(GaussRational(0)), m_max);
    CheckResult r{"s = 0 product form R_k prod_{j<k} (B + D_j)", true, "k <= " + std::to_string(m_max)};
    for (int k = 0; k <= m_max && r.passed; ++k) {
      ExactPolynomial product(leading_coefficient(spec, k));
      for (int j = 0; j < k; ++j) product = product * ExactPolynomial::linear(d_coeff(spec, j), GaussRational(1));
      if (!(product.coeffs() == at0[k].coeffs())) r = {r.name, false, "mismatch at k=" + std::to_string(k)};
    }
    out.push_back(std::move(r));
  }
  {
    const auto rounded = round_family(family);
    const auto floated = build_float_family(spec, m_max);
    BigFloat worst(0);
    for (int k = 0; k <= m_max; ++k) {
      for (std::size_t i = 0; i < rounded[k].size(); ++i) {
        const BigComplex& a = rounded[k].coeffs()[i];
        const BigFloat d = abs(floated[k].coeff(i) - a) / abs(a);
        if (d > worst) worst = d;
      }
    }
    const BigFloat tol = BigFloat::ldexp(1, -static_cast<long>(working_precision()) + 20);
    out.push_back({"float recurrence agrees with rounded exact coefficients", worst <= tol,
                   "max relative difference " + worst.to_string(3)});
  }
  {
    const GaussRational B(mpq_class(-7, 3), mpq_class(2, 5));
    const auto c = eval_sequence(spec, B, m_max);
    CheckResult r{"scalar recurrence equals polynomial evaluation", true, "B = " + B.to_string()};
    for (int k = 0; k <= m_max && r.passed; ++k) {
      if (!(family[k](B) == c[static_cast<std::size_t>(k)])) r = {r.name, false, "mismatch at k=" + std::to_string(k)};
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckResult> verify_perturbation(const RecurrenceSpec& spec, const VerifyOptions& options) {
  std::vector<CheckResult> out;
  if (is_d_degenerate(spec)) {
    out.push_back(skipped("perturbative expansion", "gamma + delta is a nonpositive integer"));
    return out;
  }
  const int k_max = options.k_max, m_max = options.m_max;
  const std::string range = "k <= " + std::to_string(k_max) + ", m <= " + std::to_string(m_max);
  {
    CheckResult r{"D_k^[1] independent of m for m >= k+1", true, range};
    for (int k = 0; k <= k_max && r.passed; ++k) {
      const auto ref = first_order_coeff(spec, k, k + 1);
      for (int m = k + 2; m <= m_max; ++m) {
        if (!(first_order_coeff(spec, k, m) == ref)) {
          r = {r.name, false, first_failure(k, m)};
          break;
        }
      }
    }
    out.push_back(std::move(r));
  }
  {
    CheckResult r{"D_k^[2] independent of m for m >= k+2", true, range};
    for (int k = 0; k <= k_max && r.passed; ++k) {
      const auto ref = second_order_coeff(spec, k, k + 2);
      for (int m = k + 3; m <= m_max; ++m) {
        if (!(second_order_coeff(spec, k, m) == ref)) {
          r = {r.name, false, first_failure(k, m)};
          break;
        }
      }
    }
    out.push_back(std::move(r));
  }
  {
    CheckResult r{"c_{m+1}(B(s)) = O(s^3) along the order-2 expansion", true, range + ", k <= m-2"};
    CheckResult b{"c_{m+1}(B(s)) = O(s^2) along the order-1 expansion at k = m-1, m", true,
                  "m <= " + std::to_string(m_max)};
    for (int m = 0; m <= m_max; ++m) {
      for (int k = 0; k <= std::min(k_max, m); ++k) {
        const int order = max_order(k, m);
        const auto e = expansion(spec, k, m, order);
        std::vector<GaussRational> coeffs{e.c0, e.c1};
        if (e.c2) coeffs.push_back(*e.c2);
        const auto c = eval_s_polynomial(spec, ExactPolynomial(coeffs), m);
        bool ok = true;
        for (int j = 0; j <= order; ++j) ok = ok && c.coeff(static_cast<std::size_t>(j)).is_zero();
        CheckResult& target = order == 2 ? r : b;
        if (!ok && target.passed) target = {target.name, false, first_failure(k, m)};
      }
    }
    out.push_back(std::move(r));
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<CheckResult> verify_oracle(const RecurrenceSpec& spec, const VerifyOptions& options) {
  std::vector<CheckResult> out;
  const GaussRational B(mpq_class(-3, 2), mpq_class(1, 4));
  {
    const auto series = oracle::frobenius_series(oracle::ode_at_zero(oracle::lift(spec, B)), GaussRational(0), 30);
    const auto c = eval_sequence(spec, B, 30);
    out.push_back({"Frobenius series at z = 0 equals the recurrence", series == c, "N = 30, exact"});
  }
  {
    const BigFloat s_abs = abs(BigComplex(spec.s));
    BigFloat radius(1);
    if (spec.kind == FamilyKind::Heun && s_abs > BigFloat(1)) radius = BigFloat(1) / s_abs;
    const BigComplex z = BigComplex(radius * BigFloat(0.3));
    const auto r = oracle::ode_residual(spec, BigComplex(B), 120, {z});
    const bool ok = r.max_residual <= BigFloat(100) * r.tail_scale + BigFloat::ldexp(1, -200);
    out.push_back({"ODE residual of the truncated series is at the tail scale", ok,
                   "residual " + r.max_residual.to_string(3) + ", tail " + r.tail_scale.to_string(3)});
  }
  if (is_d_degenerate(spec)) {
    out.push_back(skipped("substitution oracle", "gamma + delta is a nonpositive integer"));
  } else {
    const int k_max = std::min(options.k_max, 6);
    CheckResult r{"substitution oracle reproduces D_k^[1], D_k^[2]", true,
                  "k <= " + std::to_string(k_max) + ", m = k+2"};
    for (int k = 0; k <= k_max && r.passed; ++k) {
      const auto sub = oracle::expansion_by_substitution(spec, k, k + 2, 2);
      if (!(sub.first == first_order_coeff(spec, k, k + 2)) || !(*sub.second == second_order_coeff(spec, k, k + 2))) {
        r = {r.name, false, first_failure(k, k + 2)};
      }
    }
    out.push_back(std::move(r));
  }
  if (!non_integer(spec.gamma) || !non_integer(spec.delta)) {
    out.push_back(skipped("midpoint d2 against sequence d2", "gamma or delta is an integer"));
  } else if (abs(BigComplex(spec.s)) > BigFloat(0.5)) {
    out.push_back(skipped("midpoint d2 against sequence d2", "|s| > 1/2"));
  } else {
    BigFloat worst(0);
    for (const auto& b : {GaussRational(mpq_class(-3, 2)), B, GaussRational(mpq_class(7, 10))}) {
      const auto m = oracle::d2_by_midpoint_matching(spec, b);
      const auto e = d2_sequence(spec, BigComplex(b), 500);
      worst = max(worst, relative(e.estimate, m.d2));
    }
    out.push_back({"midpoint d2 agrees with sequence d2", worst < BigFloat(1e-8),
                   "max difference " + worst.to_string(3) + " (tolerance 1e-8)"});
  }
  return out;
}

std::vector<CheckResult> run_suite(const RecurrenceSpec& spec, Suite suite, const VerifyOptions& options) {
  std::vector<CheckResult> out;
  auto append = [&out](std::vector<CheckResult> more) {
    for (auto& r : more) out.push_back(std::move(r));
  };
  if (suite == Suite::Recurrence || suite == Suite::All) append(verify_recurrence(spec, options));
  if (suite == Suite::Perturbation || suite == Suite::All) append(verify_perturbation(spec, options));
  if (suite == Suite::Oracle || suite == Suite::All) append(verify_oracle(spec, options));
  return out;
}

}  // namespace heun
