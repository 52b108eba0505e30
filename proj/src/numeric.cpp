#include "heun/numeric.hpp"

#include <climits>
#include <cstdlib>
#include <ostream>
#include <regex>

#include "heun/error.hpp"

namespace heun {

namespace {

thread_local mpfr_prec_t g_working_precision = 256;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

// integer, p/q, or decimal with optional exponent -> exact rational
mpq_class parse_real_rational(std::string_view text) {
  static const std::regex fraction(R"(([+-]?)(\d+)/(\d+))");
  static const std::regex decimal(R"(([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?)");
  const std::string s(trim(text));
  std::smatch m;
  if (std::regex_match(s, m, fraction)) {
    mpz_class num(m[2].str(), 10), den(m[3].str(), 10);
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    mpq_class q(num, den);
    q.canonicalize();
    if (m[1].str() == "-") q = -q;
    return q;
  }
  if (std::regex_match(s, m, decimal) && (m[2].length() > 0 || m[3].length() > 0)) {
    const std::string int_part = m[2].str();
    const std::string frac_part = m[3].str();
    mpz_class digits(int_part + frac_part == "" ? "0" : int_part + frac_part, 10);
    long exponent = -static_cast<long>(frac_part.size());
    if (m[4].matched) {
      try {
        exponent += std::stol(m[4].str());
      } catch (const std::exception&) {
        throw ParseError("exponent out of range in '" + s + "'");
      }
    }
    if (exponent > 100000 || exponent < -100000) throw ParseError("exponent out of range in '" + s + "'");
    mpq_class q;
    if (exponent >= 0) {
      q = mpq_class(digits * pow10(static_cast<unsigned long>(exponent)));
    } else {
      q = mpq_class(digits, pow10(static_cast<unsigned long>(-exponent)));
      q.canonicalize();
    }
    if (m[1].str() == "-") q = -q;
    return q;
  }
  throw ParseError("cannot parse number '" + s + "'");
}

std::string rational_text(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace

mpfr_prec_t working_precision() { return g_working_precision; }

void set_working_precision(mpfr_prec_t bits) {
  if (bits < 24 || bits > (1L << 20)) throw InvalidParameter("precision must be between 24 and 2^20 bits");
  g_working_precision = bits;
}

PrecisionGuard::PrecisionGuard(mpfr_prec_t bits) : saved_(g_working_precision) { set_working_precision(bits); }
PrecisionGuard::~PrecisionGuard() { g_working_precision = saved_; }

// --- BigFloat -------------------------------------------------------------

BigFloat::BigFloat() {
  mpfr_init2(value_, g_working_precision);
  mpfr_set_zero(value_, 1);
}
BigFloat::BigFloat(int v) {
  mpfr_init2(value_, g_working_precision);
  mpfr_set_si(value_, v, MPFR_RNDN);
}
BigFloat::BigFloat(long v) {
  mpfr_init2(value_, g_working_precision);
  mpfr_set_si(value_, v, MPFR_RNDN);
}
BigFloat::BigFloat(double v) {
  mpfr_init2(value_, g_working_precision);
  mpfr_set_d(value_, v, MPFR_RNDN);
}
BigFloat::BigFloat(const mpz_class& v) {
  mpfr_init2(value_, g_working_precision);
  mpfr_set_z(value_, v.get_mpz_t(), MPFR_RNDN);
}
BigFloat::BigFloat(const mpq_class& v) {
  mpfr_init2(value_, g_working_precision);
  mpfr_set_q(value_, v.get_mpq_t(), MPFR_RNDN);
}
BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}
BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}
BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}
BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}
BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::parse(std::string_view text) {
  const std::string s(trim(text));
  if (s.rfind("0x", 0) == 0 || s.rfind("-0x", 0) == 0 || s.rfind("+0x", 0) == 0) {
    return from_hex(s, g_working_precision);
  }
  return BigFloat(parse_real_rational(s));
}

BigFloat BigFloat::from_hex(std::string_view text, mpfr_prec_t bits) {
  const std::string s(trim(text));
  PrecisionGuard guard(bits);
  BigFloat r;
  char* end = nullptr;
  mpfr_strtofr(r.value_, s.c_str(), &end, 0, MPFR_RNDN);
  if (s.empty() || end == nullptr || *end != '\0') throw ParseError("malformed hex float '" + s + "'");
  return r;
}

BigFloat BigFloat::pi() {
  BigFloat r;
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::ldexp(long mantissa, long exponent) {
  BigFloat r(mantissa);
  mpfr_mul_2si(r.value_, r.value_, exponent, MPFR_RNDN);
  return r;
}

double BigFloat::to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

long BigFloat::exponent2() const {
  if (!mpfr_regular_p(value_)) return LONG_MIN / 4;
  return mpfr_get_exp(value_);
}

std::string BigFloat::to_hex() const {
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%Ra", value_);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

std::string BigFloat::to_string(int digits) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return sign() < 0 ? "-inf" : "inf";
  if (is_zero()) return "0";
  if (digits < 1) digits = 1;
  mpfr_exp_t e10 = 0;
  char* raw = mpfr_get_str(nullptr, &e10, 10, static_cast<size_t>(digits), value_, MPFR_RNDN);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string sign_text;
  if (!mant.empty() && mant[0] == '-') {
    sign_text = "-";
    mant.erase(0, 1);
  }
  // value = 0.mant * 10^e10
  const long e = static_cast<long>(e10);
  std::string body;
  if (e <= 0 && e > -5) {
    body = "0." + std::string(static_cast<size_t>(-e), '0') + mant;
  } else if (e > 0 && e < static_cast<long>(mant.size())) {
    body = mant.substr(0, static_cast<size_t>(e)) + "." + mant.substr(static_cast<size_t>(e));
  } else if (e == static_cast<long>(mant.size())) {
    body = mant;
  } else {
    body = mant.substr(0, 1);
    if (mant.size() > 1) body += "." + mant.substr(1);
    body += "e" + std::to_string(e - 1);
  }
  return sign_text + body;
}

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  if (mpfr_get_prec(value_) != g_working_precision) mpfr_prec_round(value_, g_working_precision, MPFR_RNDN);
  mpfr_add(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator-=(const BigFloat& o) {
  if (mpfr_get_prec(value_) != g_working_precision) mpfr_prec_round(value_, g_working_precision, MPFR_RNDN);
  mpfr_sub(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator*=(const BigFloat& o) {
  if (mpfr_get_prec(value_) != g_working_precision) mpfr_prec_round(value_, g_working_precision, MPFR_RNDN);
  mpfr_mul(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator/=(const BigFloat& o) {
  if (mpfr_get_prec(value_) != g_working_precision) mpfr_prec_round(value_, g_working_precision, MPFR_RNDN);
  mpfr_div(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r;
  mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r;
  mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r;
  mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r;
  mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
BigFloat operator-(const BigFloat& a) {
  BigFloat r;
  mpfr_neg(r.value_, a.value_, MPFR_RNDN);
  return r;
}
bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

#define HEUN_UNARY(name, fn)              \
  BigFloat name(const BigFloat& x) {      \
    BigFloat r;                           \
    fn(r.raw(), x.raw(), MPFR_RNDN);      \
    return r;                             \
  }
HEUN_UNARY(abs, mpfr_abs)
HEUN_UNARY(sqrt, mpfr_sqrt)
HEUN_UNARY(exp, mpfr_exp)
HEUN_UNARY(log, mpfr_log)
HEUN_UNARY(log10, mpfr_log10)
HEUN_UNARY(sin, mpfr_sin)
HEUN_UNARY(cos, mpfr_cos)
HEUN_UNARY(sinh, mpfr_sinh)
HEUN_UNARY(cosh, mpfr_cosh)
#undef HEUN_UNARY

BigFloat atan2(const BigFloat& y, const BigFloat& x) {
  BigFloat r;
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}
BigFloat hypot(const BigFloat& x, const BigFloat& y) {
  BigFloat r;
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
BigFloat pow(const BigFloat& x, long n) {
  BigFloat r;
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}
BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const BigFloat& x) { return os << x.to_string(20); }

// --- BigComplex -----------------------------------------------------------

BigComplex::BigComplex(const GaussRational& q) : re(q.re), im(q.im) {}

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}
BigComplex& BigComplex::operator-=(const BigComplex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}
BigComplex& BigComplex::operator*=(const BigComplex& o) { return *this = *this * o; }
BigComplex& BigComplex::operator/=(const BigComplex& o) { return *this = *this / o; }

BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  BigComplex r;
  BigFloat t;
  // re = a.re*b.re - a.im*b.im ; im = a.re*b.im + a.im*b.re
  mpfr_mul(r.re.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
  mpfr_mul(t.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
  mpfr_sub(r.re.raw(), r.re.raw(), t.raw(), MPFR_RNDN);
  mpfr_mul(r.im.raw(), a.re.raw(), b.im.raw(), MPFR_RNDN);
  mpfr_mul(t.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
  mpfr_add(r.im.raw(), r.im.raw(), t.raw(), MPFR_RNDN);
  return r;
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  if (b.im.is_zero()) return {a.re / b.re, a.im / b.re};
  BigFloat denom = b.re * b.re + b.im * b.im;
  BigComplex r;
  r.re = (a.re * b.re + a.im * b.im) / denom;
  r.im = (a.im * b.re - a.re * b.im) / denom;
  return r;
}

std::string BigComplex::to_string(int digits) const {
  if (im.is_zero()) return re.to_string(digits);
  std::string imag = abs(im).to_string(digits) + "i";
  if (re.is_zero()) return (im.sign() < 0 ? "-" : "") + imag;
  return re.to_string(digits) + (im.sign() < 0 ? "-" : "+") + imag;
}

BigFloat abs(const BigComplex& z) { return hypot(z.re, z.im); }
BigFloat norm(const BigComplex& z) { return z.re * z.re + z.im * z.im; }
BigFloat arg(const BigComplex& z) { return atan2(z.im, z.re); }
BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }

BigComplex sqrt(const BigComplex& z) {
  if (z.is_zero()) return {};
  BigFloat r = abs(z);
  if (z.re.sign() >= 0) {
    BigFloat t = sqrt((r + z.re) / BigFloat(2));
    return {t, z.im / (t * BigFloat(2))};
  }
  BigFloat t = sqrt((r - z.re) / BigFloat(2));
  BigFloat re_part = abs(z.im) / (t * BigFloat(2));
  return {re_part, z.im.sign() < 0 ? -t : t};
}

BigComplex exp(const BigComplex& z) {
  BigFloat m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

BigComplex log(const BigComplex& z) { return {log(abs(z)), arg(z)}; }

BigComplex sin(const BigComplex& z) { return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)}; }

BigComplex scale(const BigComplex& z, const BigFloat& f) { return {z.re * f, z.im * f}; }

std::ostream& operator<<(std::ostream& os, const BigComplex& z) { return os << z.to_string(20); }

// --- GaussRational --------------------------------------------------------

GaussRational GaussRational::ratio(long p, long q) {
  mpq_class r(p, q);
  r.canonicalize();
  return GaussRational(r);
}

GaussRational GaussRational::parse(std::string_view text) {
  std::string s(trim(text));
  if (s.empty()) throw ParseError("empty number");
  if (s.back() != 'i') return GaussRational(parse_real_rational(s));
  s.pop_back();
  size_t split = std::string::npos;
  for (size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag_of = [](const std::string& part) -> mpq_class {
    std::string_view p = trim(part);
    if (p.empty() || p == "+") return mpq_class(1);
    if (p == "-") return mpq_class(-1);
    return parse_real_rational(p);
  };
  if (split == std::string::npos) return GaussRational(mpq_class(0), imag_of(s));
  return GaussRational(parse_real_rational(s.substr(0, split)), imag_of(s.substr(split)));
}

bool GaussRational::is_integer() const { return sgn(im) == 0 && re.get_den() == 1; }

bool GaussRational::is_nonpositive_integer() const { return is_integer() && sgn(re) <= 0; }

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re += o.re;
  if (sgn(o.im) != 0) im += o.im;
  return *this;
}
GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re -= o.re;
  if (sgn(o.im) != 0) im -= o.im;
  return *this;
}
GaussRational& GaussRational::operator*=(const GaussRational& o) { return *this = *this * o; }
GaussRational& GaussRational::operator/=(const GaussRational& o) { return *this = *this / o; }

GaussRational operator+(const GaussRational& a, const GaussRational& b) {
  GaussRational r(a);
  r += b;
  return r;
}
GaussRational operator-(const GaussRational& a, const GaussRational& b) {
  GaussRational r(a);
  r -= b;
  return r;
}
GaussRational operator-(const GaussRational& a) { return GaussRational(-a.re, -a.im); }

GaussRational operator*(const GaussRational& a, const GaussRational& b) {
  const bool ar = a.is_real(), br = b.is_real();
  if (ar && br) return GaussRational(mpq_class(a.re * b.re));
  if (br) return GaussRational(mpq_class(a.re * b.re), mpq_class(a.im * b.re));
  if (ar) return GaussRational(mpq_class(a.re * b.re), mpq_class(a.re * b.im));
  return GaussRational(mpq_class(a.re * b.re - a.im * b.im), mpq_class(a.re * b.im + a.im * b.re));
}

GaussRational operator/(const GaussRational& a, const GaussRational& b) {
  if (b.is_zero()) throw InvalidParameter("division by zero in exact arithmetic");
  if (b.is_real()) {
    if (a.is_real()) return GaussRational(mpq_class(a.re / b.re));
    return GaussRational(mpq_class(a.re / b.re), mpq_class(a.im / b.re));
  }
  mpq_class denom = b.re * b.re + b.im * b.im;
  return GaussRational(mpq_class((a.re * b.re + a.im * b.im) / denom), mpq_class((a.im * b.re - a.re * b.im) / denom));
}

std::string GaussRational::to_string() const {
  if (sgn(im) == 0) return rational_text(re);
  mpq_class mag = abs(im);
  std::string imag = (mag == 1 ? std::string() : rational_text(mag)) + "i";
  if (sgn(re) == 0) return (sgn(im) < 0 ? "-" : "") + imag;
  return rational_text(re) + (sgn(im) < 0 ? "-" : "+") + imag;
}

GaussRational conj(const GaussRational& z) { return GaussRational(z.re, -z.im); }

std::ostream& operator<<(std::ostream& os, const GaussRational& z) { return os << z.to_string(); }

BigComplex parse_complex(std::string_view text) {
  const std::string s(trim(text));
  if (s.find("0x") != std::string::npos) {
    if (s.back() == 'i') throw ParseError("hex floats are only accepted for real values");
    return BigComplex(BigFloat::parse(s));
  }
  return BigComplex(GaussRational::parse(s));
}

}  // namespace heun
