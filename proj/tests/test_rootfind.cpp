#include "doctest.h"

#include <cmath>

#include "heun/recurrence.hpp"
#include "heun/rootfind.hpp"

using namespace heun;

namespace {

GaussRational q(long p, long d = 1) { return GaussRational::ratio(p, d); }

bool near(const BigComplex& z, double re, double im, double tol) {
  return std::abs(z.re.to_double() - re) <= tol && std::abs(z.im.to_double() - im) <= tol;
}

}  // namespace

TEST_CASE("roots of the Lame n=2 c_4 at s = 1/100") {
  auto spec = from_lame({GaussRational(2), q(1, 100), std::nullopt}).spec;
  auto fam = build_family(spec, 4);
  auto zs = find_all_roots(fam[4]);
  REQUIRE(zs.all_converged());
  REQUIRE(zs.size() == 4);
  CHECK(near(zs.zeros[0], -0.007481156136, 0, 1e-12));
  CHECK(near(zs.zeros[1], -1.002518844, 0, 1e-9));
  CHECK(near(zs.zeros[2], -3.988544101, 0, 1e-9));
  CHECK(near(zs.zeros[3], -9.141455899, 0, 1e-9));
  CHECK(real_zero_count(zs) == 4);
}

TEST_CASE("zero roots and product form at s = 0") {
  auto spec = make_heun(q(1, 2), q(1, 2), q(1), q(1), q(0));
  auto fam = build_family(spec, 5);
  auto zs = find_all_roots(fam[5]);
  REQUIRE(zs.all_converged());
  // roots are -D_j = -j^2 for j = 0..4
  for (int j = 0; j < 5; ++j) CHECK(near(zs.zeros[static_cast<std::size_t>(j)], -j * j, 0, 1e-30));
}

TEST_CASE("complex coefficients and Vieta relations") {
  PrecisionGuard g(256);
  std::vector<BigComplex> c;
  for (int i = 0; i <= 30; ++i) c.emplace_back(BigFloat(std::cos(i * 1.3)) , BigFloat(std::sin(i * 0.7 + 0.1)));
  FloatPolynomial p(c);
  auto zs = find_all_roots(p);
  REQUIRE(zs.all_converged());
  auto v = vieta_check(p, zs);
  CHECK(v.sum_defect < BigFloat::ldexp(1, -120));
  CHECK(v.product_defect < BigFloat::ldexp(1, -120));
  for (std::size_t i = 1; i < zs.size(); ++i) {
    const auto& a = zs.zeros[i - 1];
    const auto& b = zs.zeros[i];
    CHECK((a.re > b.re || (a.re == b.re && a.im <= b.im)));
  }
}

TEST_CASE("refine_root converges to a nearby simple root") {
  PrecisionGuard g(256);
  FloatPolynomial p(std::vector<BigComplex>{BigComplex(-2), BigComplex(0), BigComplex(1)});
  auto r = refine_root(p, BigComplex(1.4), BigFloat::ldexp(1, -200));
  CHECK(abs(r.z - BigComplex(sqrt(BigFloat(2)))) < BigFloat::ldexp(1, -190));
}

TEST_CASE("seeds are honoured and padded") {
  auto spec = from_lame({GaussRational(2), q(1, 100), std::nullopt}).spec;
  auto fam = build_family(spec, 4);
  std::vector<BigComplex> seeds{BigComplex(-1.0), BigComplex(-9.0)};
  auto zs = find_all_roots(fam[4], seeds);
  REQUIRE(zs.all_converged());
  CHECK(near(zs.zeros[3], -9.141455899, 0, 1e-9));
}
