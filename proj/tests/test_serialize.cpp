#include "doctest.h"

#include "heun/serialize.hpp"

using namespace heun;

namespace {

GaussRational q(long p, long d = 1) { return GaussRational::ratio(p, d); }

}  // namespace

TEST_CASE("spec round trip through JSON") {
  const std::vector<RecurrenceSpec> specs{
      make_heun(q(1, 2), q(1, 2), q(3, 2), q(-1), q(1, 100)),
      make_confluent_heun(q(1, 3), GaussRational(mpq_class(1, 2), mpq_class(-2, 7)), q(5), q(-20)),
      make_reduced_confluent_heun(q(1, 2), q(1, 2), GaussRational(0, 2)),
  };
  for (const auto& spec : specs) {
    const auto back = spec_from_json(json::parse(to_json(spec).dump()));
    CHECK(back.kind == spec.kind);
    CHECK(back.gamma == spec.gamma);
    CHECK(back.delta == spec.delta);
    CHECK(back.alpha == spec.alpha);
    CHECK(back.beta == spec.beta);
    CHECK(back.s == spec.s);
  }
}

TEST_CASE("exact Lame family carries the c_4 coefficients as p/q strings") {
  const auto spec = from_lame({q(2), q(1, 100), std::nullopt}).spec;
  const auto family = build_family(spec, 4);
  const json j = to_json(family);
  CHECK(j["schema"] == "polynomial_family");
  CHECK(j["field"] == "exact");
  const auto& c4 = j["coeffs"][4];
  CHECK(c4[4][0] == "2/315");
  CHECK(c4[3][0] == "101/1125");
  CHECK(c4[2][0] == "497299/1575000");
  CHECK(c4[1][0] == "6154031/26250000");
  CHECK(c4[0][0] == "121537/70000000");
  CHECK(c4[0][1] == "0");

  const auto back = exact_family_from_json(json::parse(j.dump()));
  REQUIRE(back.m_max() == 4);
  for (int m = 0; m <= 4; ++m) CHECK(back[m].coeffs() == family[m].coeffs());
}

TEST_CASE("float family round trips bit-exactly") {
  PrecisionGuard guard(200);
  const auto spec = make_confluent_heun(q(1, 2), q(1, 2), q(5), GaussRational(mpq_class(-1, 3), mpq_class(1, 7)));
  const auto family = build_float_family(spec, 12);
  const json j = to_json(family);
  CHECK(j["precision_bits"] == 200);
  const auto back = float_family_from_json(json::parse(j.dump()));
  for (int m = 0; m <= 12; ++m) {
    const auto& a = family[m].coeffs();
    const auto& b = back[m].coeffs();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i] == b[i]);
      CHECK(b[i].re.precision() == 200);
    }
  }
  CHECK(back.spec.s == family.spec.s);
}

TEST_CASE("rejects documents of the wrong kind or version") {
  json j = to_json(build_family(make_reduced_confluent_heun(q(1, 2), q(1, 2), q(1)), 2));
  CHECK_THROWS_AS(float_family_from_json(j), ParseError);
  j["version"] = 99;
  CHECK_THROWS_AS(exact_family_from_json(j), ParseError);
  CHECK_THROWS_AS(spec_from_json(json{{"gamma", "1/2"}}), ParseError);
}

TEST_CASE("display drops noise-level imaginary parts only") {
  const BigComplex real_like(BigFloat(-3.5), BigFloat::ldexp(1, -200));
  CHECK(format_value(real_like, 10, 256) == "-3.500000000");
  const BigComplex complex_zero(BigFloat(-3.5), BigFloat(1));
  CHECK(format_value(complex_zero, 10, 256) == "-3.500000000+1.000000000i");
  CHECK(format_value(GaussRational(-9), 10) == "-9");
  CHECK(format_value(q(-57, 8), 10) == "-7.125000000");
}

TEST_CASE("table text has one header, a rule and one line per row") {
  const auto spec = from_lame({q(2), q(1, 100), std::nullopt}).spec;
  const auto rows = approximation_table(spec, 8, 3);
  const std::string text = table_text(rows, 8, 10);
  CHECK(text.find("zero of c_8") != std::string::npos);
  CHECK(text.find("-3.987500000") != std::string::npos);
  CHECK(text.find("-3.987473618") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 6);

  const json j = to_json(rows, 8, 10);
  CHECK(j["rows"][3]["approx1"] == "-717/80");
}
