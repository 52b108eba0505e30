#pragma once

// Scalar fields used throughout the library:
//   GaussRational  exact complex rational (GMP mpq real and imaginary parts)
//   BigFloat       MPFR float, result precision taken from the thread's working precision
//   BigComplex     pair of BigFloat
//
// All BigFloat/BigComplex arithmetic rounds to nearest at working_precision().

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace heun {

/// Precision (bits) of newly created BigFloat values on the calling thread.
mpfr_prec_t working_precision();
void set_working_precision(mpfr_prec_t bits);

/// Scoped override of working_precision().
class PrecisionGuard {
 public:
  explicit PrecisionGuard(mpfr_prec_t bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  mpfr_prec_t saved_;
};

class BigFloat {
 public:
  BigFloat();
  BigFloat(int v);
  BigFloat(long v);
  BigFloat(double v);
  explicit BigFloat(const mpz_class& v);
  explicit BigFloat(const mpq_class& v);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  /// Decimal or C99 hex-float text ("0x1.8p+3"); throws ParseError.
  static BigFloat parse(std::string_view text);
  /// Bit-exact inverse of to_hex(); the value keeps `bits` of precision.
  static BigFloat from_hex(std::string_view text, mpfr_prec_t bits);
  static BigFloat pi();
  static BigFloat ldexp(long mantissa, long exponent);

  mpfr_ptr raw() { return value_; }
  mpfr_srcptr raw() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double to_double() const;
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  /// Exponent e with 0.5 <= |x|/2^e < 1; very negative for zero.
  long exponent2() const;

  std::string to_hex() const;
  /// `digits` significant decimal digits, plain positional notation when reasonable.
  std::string to_string(int digits = 10) const;

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a);

  friend bool operator==(const BigFloat& a, const BigFloat& b);
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);

 private:
  mpfr_t value_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat log10(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat sinh(const BigFloat& x);
BigFloat cosh(const BigFloat& x);
BigFloat atan2(const BigFloat& y, const BigFloat& x);
BigFloat hypot(const BigFloat& x, const BigFloat& y);
BigFloat pow(const BigFloat& x, long n);
BigFloat max(const BigFloat& a, const BigFloat& b);
std::ostream& operator<<(std::ostream& os, const BigFloat& x);

class GaussRational;

class BigComplex {
 public:
  BigFloat re;
  BigFloat im;

  BigComplex() = default;
  BigComplex(int v) : re(v) {}
  BigComplex(long v) : re(v) {}
  BigComplex(double v) : re(v) {}
  BigComplex(BigFloat r) : re(std::move(r)) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  explicit BigComplex(const GaussRational& q);

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_finite() const { return re.is_finite() && im.is_finite(); }

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator-(const BigComplex& a);
  friend bool operator==(const BigComplex& a, const BigComplex& b) {
    return a.re == b.re && a.im == b.im;
  }

  /// "re+imi" with `digits` significant digits per part; imaginary part
  /// omitted when it is exactly zero.
  std::string to_string(int digits = 10) const;
};

BigFloat abs(const BigComplex& z);
BigFloat norm(const BigComplex& z);  // |z|^2
BigFloat arg(const BigComplex& z);
BigComplex conj(const BigComplex& z);
BigComplex sqrt(const BigComplex& z);
BigComplex exp(const BigComplex& z);
BigComplex log(const BigComplex& z);
BigComplex sin(const BigComplex& z);
BigComplex scale(const BigComplex& z, const BigFloat& f);
std::ostream& operator<<(std::ostream& os, const BigComplex& z);

class GaussRational {
 public:
  mpq_class re;
  mpq_class im;

  GaussRational() = default;
  GaussRational(int v) : re(v) {}
  GaussRational(long v) : re(v) {}
  GaussRational(mpq_class r) : re(std::move(r)) {}
  GaussRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
  /// Convenience: p/q as a real rational.
  static GaussRational ratio(long p, long q);

  /// Grammar: real | [real](+|-)[real]i | [real]i, where real is an
  /// integer, p/q, or decimal with optional exponent. Throws ParseError.
  static GaussRational parse(std::string_view text);

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  bool is_integer() const;
  bool is_nonpositive_integer() const;

  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(const GaussRational& a, const GaussRational& b);
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b);
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b);
  friend GaussRational operator/(const GaussRational& a, const GaussRational& b);
  friend GaussRational operator-(const GaussRational& a);
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  /// "p/q", "p/q+r/ti", "r/ti": decimal-free, parseable by parse().
  std::string to_string() const;
};

GaussRational conj(const GaussRational& z);
std::ostream& operator<<(std::ostream& os, const GaussRational& z);

// Field helpers shared by the templated algorithms.
inline bool is_zero(const BigComplex& z) { return z.is_zero(); }
inline bool is_zero(const GaussRational& z) { return z.is_zero(); }

template <class T>
T field_cast(const GaussRational& q);
template <>
inline GaussRational field_cast<GaussRational>(const GaussRational& q) { return q; }
template <>
inline BigComplex field_cast<BigComplex>(const GaussRational& q) { return BigComplex(q); }

inline BigComplex to_complex(const BigComplex& z) { return z; }
inline BigComplex to_complex(const GaussRational& z) { return BigComplex(z); }

/// Parse a complex number given as "re+imi" with decimal or rational parts
/// into a float at working precision (rational text is rounded once).
BigComplex parse_complex(std::string_view text);

}  // namespace heun
