#include "heun/special.hpp"

#include <cmath>
#include <vector>

#include "heun/error.hpp"

namespace heun {

namespace {

bool is_nonpositive_integer(const BigComplex& z) {
  if (!z.im.is_zero() || z.re.sign() > 0) return false;
  BigFloat r;
  mpfr_rint(r.raw(), z.re.raw(), MPFR_RNDN);
  return r == z.re;
}

// log Gamma(w) by the Stirling series, for Re w >= 1/2 and |w| large enough
// that the terms fall below 2^-bits before they start to grow.
BigComplex stirling_log_gamma(const BigComplex& w, mpfr_prec_t bits) {
  const BigFloat half_log_two_pi = log(BigFloat(2) * BigFloat::pi()) / BigFloat(2);
  BigComplex sum = (w - BigComplex(BigFloat(0.5))) * log(w) - w + BigComplex(half_log_two_pi);
  const BigComplex inv = BigComplex(1) / w;
  const BigComplex inv2 = inv * inv;
  BigComplex power = inv;
  const BigFloat threshold = BigFloat::ldexp(1, -static_cast<long>(bits) - 8) * max(BigFloat(1), abs(sum));
  for (int j = 1; j < 1000; ++j) {
    const BigFloat b(bernoulli(2 * j));
    BigComplex term = scale(power, b / BigFloat(static_cast<long>(2 * j) * (2 * j - 1)));
    sum += term;
    if (abs(term) < threshold) return sum;
    power *= inv2;
  }
  throw ConvergenceError("Stirling series did not converge");
}

}  // namespace

const mpq_class& bernoulli(int n) {
  if (n < 0) throw InvalidParameter("Bernoulli index must be nonnegative");
  thread_local std::vector<mpq_class> cache{mpq_class(1)};
  while (static_cast<int>(cache.size()) <= n) {
    // sum_{k=0}^{m} C(m+1, k) B_k = 0
    const int m = static_cast<int>(cache.size());
    mpz_class binom = 1;  // C(m+1, 0)
    mpq_class acc = 0;
    for (int k = 0; k < m; ++k) {
      acc += mpq_class(binom) * cache[static_cast<std::size_t>(k)];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    mpq_class bm = -acc / (m + 1);
    bm.canonicalize();
    cache.push_back(bm);
  }
  return cache[static_cast<std::size_t>(n)];
}

BigComplex rgamma(const BigComplex& z) {
  if (is_nonpositive_integer(z)) return BigComplex();
  const mpfr_prec_t target = working_precision();
  BigComplex result;
  {
    PrecisionGuard guard(target + 32);
    const BigComplex x(BigFloat() + z.re, BigFloat() + z.im);
    if (x.re < BigFloat(0.5)) {
      // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
      const BigComplex reflected = BigComplex(1) - x;
      const BigComplex g = BigComplex(1) / rgamma(reflected);
      result = sin(scale(x, BigFloat::pi())) * g;
      result = scale(result, BigFloat(1) / BigFloat::pi());
    } else {
      const double radius = 0.12 * static_cast<double>(target + 32) + 10.0;
      BigComplex w = x;
      BigComplex shift_product(1);
      while (abs(w).to_double() < radius) {
        shift_product *= w;
        w += BigComplex(1);
      }
      // Gamma(x) = Gamma(w) / (x (x+1) ... (w-1))
      result = shift_product * exp(-stirling_log_gamma(w, target + 32));
    }
  }
  return BigComplex(BigFloat() + result.re, BigFloat() + result.im);
}

BigComplex gamma(const BigComplex& z) {
  if (is_nonpositive_integer(z)) throw InvalidParameter("Gamma has a pole at " + z.to_string());
  return BigComplex(1) / rgamma(z);
}

}  // namespace heun
