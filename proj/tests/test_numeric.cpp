#include "doctest.h"

#include "heun/error.hpp"
#include "heun/numeric.hpp"

using namespace heun;

TEST_CASE("exact parsing of rationals and decimals") {
  CHECK(GaussRational::parse("1/100") == GaussRational::ratio(1, 100));
  CHECK(GaussRational::parse("-.007481156136") == GaussRational::ratio(-7481156136L, 1000000000000L));
  CHECK(GaussRational::parse("0.09") == GaussRational::ratio(9, 100));
  CHECK(GaussRational::parse("010/3") == GaussRational::ratio(10, 3));
  CHECK(GaussRational::parse("2.5e-3") == GaussRational::ratio(1, 400));
  CHECK(GaussRational::parse("1e3") == GaussRational(1000));
}

TEST_CASE("complex syntax") {
  CHECK(GaussRational::parse("2i") == GaussRational(0, 2));
  CHECK(GaussRational::parse("i") == GaussRational(0, 1));
  CHECK(GaussRational::parse("-i") == GaussRational(0, -1));
  CHECK(GaussRational::parse("-.5+i") == GaussRational(mpq_class(-1, 2), 1));
  CHECK(GaussRational::parse("1/2-3/4i") == GaussRational(mpq_class(1, 2), mpq_class(-3, 4)));
  CHECK(GaussRational::parse("-15.99206349+i").im == 1);
  CHECK_THROWS_AS(GaussRational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(GaussRational::parse("abc"), ParseError);
  CHECK_THROWS_AS(GaussRational::parse("1+"), ParseError);
}

TEST_CASE("rational text round trip") {
  for (auto text : {"2/315", "-3/4+5/7i", "7i", "0", "-1/3i"}) {
    auto x = GaussRational::parse(text);
    CHECK(GaussRational::parse(x.to_string()) == x);
  }
}

TEST_CASE("hex float round trip is bit exact") {
  PrecisionGuard g(256);
  const BigFloat x = BigFloat(1) / BigFloat(3);
  const auto text = x.to_hex();
  const BigFloat y = BigFloat::from_hex(text, 256);
  CHECK(mpfr_equal_p(x.raw(), y.raw()));
  CHECK(y.precision() == 256);
}

TEST_CASE("decimal rendering") {
  PrecisionGuard g(128);
  CHECK(BigFloat::parse("-3.9875").to_string(10) == "-3.987500000");
  CHECK(BigComplex(GaussRational::parse("-1/2+i")).to_string(10) == "-0.5000000000+1.000000000i");
}

TEST_CASE("working precision guard") {
  const auto before = working_precision();
  {
    PrecisionGuard g(77);
    CHECK(working_precision() == 77);
    CHECK(BigFloat(1).precision() == 77);
  }
  CHECK(working_precision() == before);
  CHECK_THROWS_AS(set_working_precision(3), InvalidParameter);
}
