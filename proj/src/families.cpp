#include "heun/families.hpp"

namespace heun {

namespace {

bool is_nonpositive_integer(const GaussRational& x) { return x.is_nonpositive_integer(); }

bool is_nonpositive_integer(const BigComplex& x) {
  if (!x.im.is_zero() || x.re.sign() > 0) return false;
  BigFloat r;
  mpfr_rint(r.raw(), x.re.raw(), MPFR_RNDN);
  return r == x.re;
}

}  // namespace

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Heun:
      return "heun";
    case FamilyKind::ConfluentHeun:
      return "cheun";
    case FamilyKind::ReducedConfluentHeun:
      return "rcheun";
  }
  return "?";
}

FamilyKind parse_family_kind(std::string_view text) {
  if (text == "heun") return FamilyKind::Heun;
  if (text == "cheun" || text == "confluent") return FamilyKind::ConfluentHeun;
  if (text == "rcheun" || text == "reduced") return FamilyKind::ReducedConfluentHeun;
  throw ParseError("unknown family '" + std::string(text) + "'");
}

RecurrenceSpec make_heun(GaussRational gamma, GaussRational delta, GaussRational alpha, GaussRational beta,
                         GaussRational s) {
  RecurrenceSpec spec{FamilyKind::Heun, std::move(gamma), std::move(delta), std::move(alpha), std::move(beta),
                      std::move(s)};
  validate(spec);
  return spec;
}

RecurrenceSpec make_confluent_heun(GaussRational gamma, GaussRational delta, GaussRational alpha, GaussRational s) {
  RecurrenceSpec spec{FamilyKind::ConfluentHeun, std::move(gamma), std::move(delta), std::move(alpha),
                      GaussRational(0), std::move(s)};
  validate(spec);
  return spec;
}

RecurrenceSpec make_reduced_confluent_heun(GaussRational gamma, GaussRational delta, GaussRational s) {
  RecurrenceSpec spec{FamilyKind::ReducedConfluentHeun, std::move(gamma), std::move(delta), GaussRational(0),
                      GaussRational(0), std::move(s)};
  validate(spec);
  return spec;
}

template <class T>
void validate(const BasicRecurrenceSpec<T>& spec) {
  if (is_nonpositive_integer(spec.gamma)) {
    throw InvalidParameter("gamma must not be a nonpositive integer (recurrence denominator vanishes)");
  }
}

template <class T>
bool is_d_degenerate(const BasicRecurrenceSpec<T>& spec) {
  return is_nonpositive_integer(T(spec.gamma + spec.delta));
}

template <class T>
T d_coeff(const BasicRecurrenceSpec<T>& spec, long m) {
  return T(m) * (T(m - 1) + spec.gamma + spec.delta);
}

template <class T>
RecurrenceCoeffs<T> recurrence_coeffs(const BasicRecurrenceSpec<T>& spec, long m) {
  if (m < 0) throw InvalidParameter("recurrence index must be nonnegative");
  validate(spec);
  T D = d_coeff(spec, m);
  switch (spec.kind) {
    case FamilyKind::Heun:
      return {std::move(D), T(m) * (T(m - 1) + spec.gamma + spec.epsilon()),
              (T(m - 1) + spec.alpha) * (T(m - 1) + spec.beta)};
    case FamilyKind::ConfluentHeun:
      return {std::move(D), T(m), T(m - 1) + spec.alpha};
    case FamilyKind::ReducedConfluentHeun:
      return {std::move(D), T(0), T(1)};
  }
  throw InvalidParameter("unknown family");
}

template void validate(const BasicRecurrenceSpec<GaussRational>&);
template void validate(const BasicRecurrenceSpec<BigComplex>&);
template bool is_d_degenerate(const BasicRecurrenceSpec<GaussRational>&);
template bool is_d_degenerate(const BasicRecurrenceSpec<BigComplex>&);
template GaussRational d_coeff(const BasicRecurrenceSpec<GaussRational>&, long);
template BigComplex d_coeff(const BasicRecurrenceSpec<BigComplex>&, long);
template RecurrenceCoeffs<GaussRational> recurrence_coeffs(const BasicRecurrenceSpec<GaussRational>&, long);
template RecurrenceCoeffs<BigComplex> recurrence_coeffs(const BasicRecurrenceSpec<BigComplex>&, long);

FloatRecurrenceSpec to_float(const RecurrenceSpec& spec) {
  return {spec.kind, BigComplex(spec.gamma), BigComplex(spec.delta), BigComplex(spec.alpha), BigComplex(spec.beta),
          BigComplex(spec.s)};
}

LameMap from_lame(const LameParams& p) {
  const GaussRational half = GaussRational::ratio(1, 2);
  LameMap out{make_heun(half, half, (p.n + GaussRational(1)) * half, -p.n * half, p.s), std::nullopt};
  if (p.eta) out.B = lame_b_from_eta(*p.eta, p.s);
  return out;
}

GaussRational lame_b_from_eta(const GaussRational& eta, const GaussRational& s) {
  if (s.is_zero()) throw InvalidParameter("Lame eta <-> B conversion needs s != 0");
  return -eta * s / GaussRational(4);
}

GaussRational lame_eta_from_b(const GaussRational& B, const GaussRational& s) {
  if (s.is_zero()) throw InvalidParameter("Lame eta <-> B conversion needs s != 0");
  return GaussRational(-4) * B / s;
}

MathieuMap from_mathieu(const MathieuParams& p) {
  const GaussRational half = GaussRational::ratio(1, 2);
  return {make_reduced_confluent_heun(half, half, p.q), p.q * half - p.a / GaussRational(4)};
}

GaussRational mathieu_a_from_b(const GaussRational& B, const GaussRational& q) {
  return GaussRational(2) * q - GaussRational(4) * B;
}

WhittakerHillMap from_whittaker_hill(const WhittakerHillParams& p) {
  if (p.h.is_zero()) throw InvalidParameter("Whittaker-Hill gauge parameter h must be nonzero");
  const GaussRational half = GaussRational::ratio(1, 2);
  GaussRational alpha = half + p.A1 / (GaussRational(4) * p.h);
  GaussRational B =
      -(GaussRational(2) * p.A0 + GaussRational(2) * p.A1 + GaussRational(4) * p.h + p.h * p.h) / GaussRational(8);
  return {make_confluent_heun(half, half, std::move(alpha), GaussRational(-2) * p.h), std::move(B),
          p.h * p.h * half};
}

WhittakerHillGauge whittaker_hill_gauge(const GaussRational& alpha, const GaussRational& s) {
  if (s.is_zero()) throw InvalidParameter("Whittaker-Hill gauge needs s != 0");
  GaussRational h = -s / GaussRational(2);
  GaussRational A1 = GaussRational(4) * h * (alpha - GaussRational::ratio(1, 2));
  return {h, std::move(A1), h * h / GaussRational(2)};
}

}  // namespace heun
