#pragma once

#include <gmpxx.h>

#include "heun/numeric.hpp"

namespace heun {

/// Exact Bernoulli number B_n (B_1 = -1/2). Cached per thread.
const mpq_class& bernoulli(int n);

/// 1/Gamma(z) at working precision; entire, exactly zero at z = 0, -1, -2, ...
BigComplex rgamma(const BigComplex& z);

/// Gamma(z); throws InvalidParameter at the poles.
BigComplex gamma(const BigComplex& z);

}  // namespace heun
