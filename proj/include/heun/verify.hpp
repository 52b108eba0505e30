#pragma once

// Property checks on one spec, grouped into suites. Exact checks compare in
// Gaussian-rational arithmetic; the rest state their tolerance in `detail`.

#include <string>
#include <string_view>
#include <vector>

#include "heun/families.hpp"

namespace heun {

enum class Suite { Recurrence, Perturbation, Oracle, All };

/// "recurrence", "perturbation", "oracle", "all".
Suite parse_suite(std::string_view text);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  int m_max = 14;
  int k_max = 10;
};

/// Exact recurrence residual, degree and leading coefficient 1/(k! (gamma)_k),
/// the s = 0 product form R_k prod (B + D_j), and float-vs-exact agreement.
std::vector<CheckResult> verify_recurrence(const RecurrenceSpec& spec, const VerifyOptions& options = {});

/// m-independence of D_k^[1] (m >= k+1) and D_k^[2] (m >= k+2), and the
/// exact vanishing of c_{m+1}(B(s)) through s^2 (order 2) or s^1 (order 1
/// at the boundary labels) when B(s) is the truncated expansion.
std::vector<CheckResult> verify_perturbation(const RecurrenceSpec& spec, const VerifyOptions& options = {});

/// Frobenius series against the recurrence, ODE residual of the truncated
/// series, the substitution oracle against the closed-form coefficients, and
/// midpoint matching against the d2 sequence.
std::vector<CheckResult> verify_oracle(const RecurrenceSpec& spec, const VerifyOptions& options = {});

std::vector<CheckResult> run_suite(const RecurrenceSpec& spec, Suite suite, const VerifyOptions& options = {});

}  // namespace heun
