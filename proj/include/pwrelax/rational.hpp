#ifndef PWRELAX_RATIONAL_HPP
#define PWRELAX_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace pwrelax {

// Exact rational. Values whose numerator and denominator fit in int64 stay
// in a small inline form; anything larger lives in an mpq_class.
class Rational {
 public:
  Rational() noexcept = default;
  Rational(long long n) noexcept : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(int n) noexcept : num_(n) {}        // NOLINT(google-explicit-constructor)
  Rational(long n) noexcept : num_(n) {}       // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d);
  explicit Rational(const mpq_class& q);

  Rational(const Rational& o);
  Rational(Rational&& o) noexcept = default;
  Rational& operator=(const Rational& o);
  Rational& operator=(Rational&& o) noexcept = default;
  ~Rational() = default;

  // Exact binary value of a finite double.
  static Rational from_double(double v);
  // Nearest multiple of 10^-digits.
  static Rational snap_decimal(double v, int digits);
  // Accepts "p", "p/q" and decimal notation with optional exponent.
  static Rational parse(const std::string& text);

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);
  Rational operator-() const;

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  int sign() const;
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_integer() const;
  bool is_small() const { return !big_; }
  Rational floor() const;
  Rational ceil() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }
  double to_double() const;
  mpq_class to_mpq() const;

  // "p" or "p/q".
  std::string str() const;
  // Exact decimal text when the denominator is of the form 2^a 5^b.
  std::optional<std::string> exact_decimal() const;
  // Exact decimal when available, otherwise "p/q".
  std::string decimal_or_fraction() const;
  // Decimal with 17 significant digits (lossy for non-terminating values).
  std::string approx_decimal() const;

 private:
  void set_big(mpq_class&& q);
  void normalize_big();

  long long num_ = 0;
  long long den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace pwrelax

#endif
