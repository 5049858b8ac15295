#include "pwrelax/rational.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pwrelax {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr long long kMax = std::numeric_limits<long long>::max();

bool fits(i128 v) { return v <= kMax && v >= -kMax; }

unsigned long long uabs(long long v) {
  return v < 0 ? 0ULL - static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
}

unsigned long long gcd_u128_u64(u128 a, unsigned long long b) {
  if (b == 0) return 0;
  unsigned long long r = static_cast<unsigned long long>(a % b);
  return std::gcd(r, b);
}

mpq_class small_to_mpq(long long n, long long d) {
  mpq_class q;
  mpz_set_si(q.get_num_mpz_t(), n);
  mpz_set_si(q.get_den_mpz_t(), d);
  return q;
}

}  // namespace

Rational::Rational(long long n, long long d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (n == std::numeric_limits<long long>::min() || d == std::numeric_limits<long long>::min()) {
    mpq_class q = small_to_mpq(n, 1) / small_to_mpq(d, 1);
    set_big(std::move(q));
    return;
  }
  if (d < 0) {
    n = -n;
    d = -d;
  }
  unsigned long long g = std::gcd(uabs(n), static_cast<unsigned long long>(d));
  num_ = n / static_cast<long long>(g);
  den_ = d / static_cast<long long>(g);
}

Rational::Rational(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  set_big(std::move(c));
}

Rational::Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
  if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
}

Rational& Rational::operator=(const Rational& o) {
  if (this == &o) return *this;
  num_ = o.num_;
  den_ = o.den_;
  if (o.big_) {
    if (big_)
      *big_ = *o.big_;
    else
      big_ = std::make_unique<mpq_class>(*o.big_);
  } else {
    big_.reset();
  }
  return *this;
}

void Rational::set_big(mpq_class&& q) {
  big_ = std::make_unique<mpq_class>(std::move(q));
  normalize_big();
}

void Rational::normalize_big() {
  if (!big_) return;
  if (mpz_fits_slong_p(big_->get_num_mpz_t()) && mpz_fits_slong_p(big_->get_den_mpz_t())) {
    long n = mpz_get_si(big_->get_num_mpz_t());
    long d = mpz_get_si(big_->get_den_mpz_t());
    if (n != std::numeric_limits<long>::min()) {
      num_ = n;
      den_ = d;
      big_.reset();
    }
  }
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return small_to_mpq(num_, den_);
}

Rational Rational::from_double(double v) {
  if (!std::isfinite(v)) throw std::domain_error("non-finite double");
  if (v == 0.0) return Rational();
  mpq_class q(v);
  return Rational(q);
}

Rational Rational::snap_decimal(double v, int digits) {
  if (!std::isfinite(v)) throw std::domain_error("non-finite double");
  double scale = std::pow(10.0, digits);
  double scaled = std::nearbyint(v * scale);
  if (std::fabs(scaled) < 9.0e15) {
    long long den = 1;
    for (int i = 0; i < digits; ++i) den *= 10;
    return Rational(static_cast<long long>(scaled), den);
  }
  // Too large for the integer route; fall back on exact text rounding.
  std::ostringstream os;
  os.precision(digits);
  os << std::fixed << v;
  return parse(os.str());
}

Rational Rational::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    return Rational(q);
  }
  // decimal, optional exponent
  std::size_t epos = s.find_first_of("eE");
  std::string mant = s.substr(0, epos);
  long exp10 = 0;
  if (epos != std::string::npos) {
    try {
      exp10 = std::stol(s.substr(epos + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent: " + text);
    }
  }
  bool neg = false;
  std::size_t i = 0;
  if (i < mant.size() && (mant[i] == '+' || mant[i] == '-')) {
    neg = mant[i] == '-';
    ++i;
  }
  std::string digits;
  long frac = 0;
  bool seen_dot = false;
  for (; i < mant.size(); ++i) {
    char c = mant[i];
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("bad decimal: " + text);
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) ++frac;
    } else {
      throw std::invalid_argument("bad decimal: " + text);
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad decimal: " + text);
  mpz_class num(digits, 10);
  if (neg) num = -num;
  long shift = exp10 - frac;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  mpq_class q = shift < 0 ? mpq_class(num, p10) : mpq_class(num * p10);
  return Rational(q);
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      long long r;
      if (!__builtin_add_overflow(num_, o.num_, &r) && r != std::numeric_limits<long long>::min()) {
        num_ = r;
        return *this;
      }
    } else {
      unsigned long long g = std::gcd(static_cast<unsigned long long>(den_), static_cast<unsigned long long>(o.den_));
      long long gd = static_cast<long long>(g);
      i128 n = static_cast<i128>(num_) * (o.den_ / gd) + static_cast<i128>(o.num_) * (den_ / gd);
      i128 d = static_cast<i128>(den_ / gd) * o.den_;
      if (n == 0) {
        num_ = 0;
        den_ = 1;
        return *this;
      }
      u128 an = n < 0 ? static_cast<u128>(-n) : static_cast<u128>(n);
      unsigned long long g2 = gcd_u128_u64(an, g);
      if (g2 > 1) {
        n /= static_cast<i128>(g2);
        d /= static_cast<i128>(g2);
      }
      if (fits(n) && fits(d)) {
        num_ = static_cast<long long>(n);
        den_ = static_cast<long long>(d);
        return *this;
      }
    }
  }
  mpq_class r = to_mpq() + o.to_mpq();
  set_big(std::move(r));
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  if (!o.big_ && o.num_ != std::numeric_limits<long long>::min()) {
    Rational neg;
    neg.num_ = -o.num_;
    neg.den_ = o.den_;
    return *this += neg;
  }
  return *this += -o;
}

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (num_ == 0 || o.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    long long g1 = static_cast<long long>(std::gcd(uabs(num_), static_cast<unsigned long long>(o.den_)));
    long long g2 = static_cast<long long>(std::gcd(uabs(o.num_), static_cast<unsigned long long>(den_)));
    long long n, d;
    if (!__builtin_mul_overflow(num_ / g1, o.num_ / g2, &n) && !__builtin_mul_overflow(den_ / g2, o.den_ / g1, &d) &&
        n != std::numeric_limits<long long>::min()) {
      num_ = n;
      den_ = d;
      return *this;
    }
  }
  mpq_class r = to_mpq() * o.to_mpq();
  set_big(std::move(r));
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  if (!o.big_) {
    Rational inv;
    if (o.num_ < 0) {
      inv.num_ = -o.den_;
      inv.den_ = -o.num_;
    } else {
      inv.num_ = o.den_;
      inv.den_ = o.num_;
    }
    return *this *= inv;
  }
  mpq_class r = to_mpq() / o.to_mpq();
  set_big(std::move(r));
  return *this;
}

Rational Rational::operator-() const {
  if (!big_ && num_ == std::numeric_limits<long long>::min()) return Rational(mpq_class(-to_mpq()));
  Rational r(*this);
  if (r.big_)
    *r.big_ = -*r.big_;
  else
    r.num_ = -r.num_;
  return r;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  // canonical forms differ in representation only if one value is too large
  return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const {
  if (big_) return big_->get_den() == 1;
  return den_ == 1;
}

Rational Rational::floor() const {
  if (!big_) {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return Rational(q);
  }
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  return Rational(mpq_class(f));
}

Rational Rational::ceil() const { return -((-*this).floor()); }

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
  if (big_) return big_->get_str(10);
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::optional<std::string> Rational::exact_decimal() const {
  mpq_class q = to_mpq();
  mpz_class den = q.get_den();
  unsigned long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return std::nullopt;
  unsigned long k = std::max(twos, fives);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, k);
  mpz_class scaled = q.get_num() * scale / q.get_den();
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string digits = scaled.get_str(10);
  if (k > 0) {
    if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
    digits.insert(digits.size() - k, ".");
  }
  return (neg ? "-" : "") + digits;
}

std::string Rational::decimal_or_fraction() const {
  auto d = exact_decimal();
  return d ? *d : str();
}

std::string Rational::approx_decimal() const {
  std::ostringstream os;
  os.precision(17);
  os << to_double();
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace pwrelax
