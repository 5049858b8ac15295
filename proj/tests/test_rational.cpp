#include <doctest.h>

#include <climits>
#include <sstream>

#include "pwrelax/random.hpp"
#include "pwrelax/rational.hpp"

using pwrelax::Rational;

namespace {

mpz_class zz(long long v) { return mpz_class(std::to_string(v)); }

}  // namespace

TEST_CASE("rational basics") {
  Rational a(1, 3), b(-2, 6);
  CHECK(a + b == Rational(0));
  CHECK((a * b) == Rational(-1, 9));
  CHECK((a / b) == Rational(-1));
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(-7, 2).floor() == Rational(-4));
  CHECK(Rational(-7, 2).ceil() == Rational(-3));
  CHECK(Rational(7, 2).floor() == Rational(3));
  CHECK(Rational(4, 2).is_integer());
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 3) > Rational(-1, 2));
  CHECK_THROWS(Rational(1, 0));
  CHECK_THROWS(Rational(1) / Rational(0));
}

TEST_CASE("rational text forms") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-0.125") == Rational(-1, 8));
  CHECK(Rational::parse("1.5e2") == Rational(150));
  CHECK(Rational::parse("2.5E-1") == Rational(1, 4));
  CHECK(Rational::parse("+7") == Rational(7));
  CHECK_THROWS(Rational::parse("abc"));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse(""));
  CHECK(Rational(3, 8).exact_decimal().value() == "0.375");
  CHECK(Rational(-5, 2).exact_decimal().value() == "-2.5");
  CHECK(Rational(12).exact_decimal().value() == "12");
  CHECK_FALSE(Rational(1, 3).exact_decimal().has_value());
  CHECK(Rational(1, 3).decimal_or_fraction() == "1/3");
  CHECK(Rational(1, 3).str() == "1/3");
  std::ostringstream os;
  os << Rational(-2, 4);
  CHECK(os.str() == "-1/2");
}

TEST_CASE("decimal snapping and exact doubles") {
  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational::from_double(0.1) != Rational(1, 10));
  CHECK(Rational::from_double(0.1).to_double() == 0.1);
  CHECK(Rational::snap_decimal(0.1, 12) == Rational(1, 10));
  CHECK(Rational::snap_decimal(3.14159265358979, 6) == Rational(3141593, 1000000));
  CHECK(Rational::snap_decimal(-1.0000000000004, 12) == Rational(-1));
}

TEST_CASE("overflow falls back to big rationals") {
  Rational big(LLONG_MAX);
  Rational sum = big + big;
  CHECK_FALSE(sum.is_small());
  CHECK(sum.to_mpq() == mpq_class(zz(LLONG_MAX) * 2));
  Rational back = sum - big;
  CHECK(back == big);
  CHECK(back.is_small());
  Rational q(LLONG_MAX - 1, LLONG_MAX);
  Rational p = q * q;
  mpq_class oracle(zz(LLONG_MAX - 1), zz(LLONG_MAX));
  oracle *= oracle;
  CHECK(p.to_mpq() == oracle);
  CHECK(-Rational(LLONG_MIN) == Rational(mpq_class(zz(LLONG_MIN) * -1)));
}

TEST_CASE("property: arithmetic agrees with GMP on random operands") {
  pwrelax::Rng rng(99);
  for (int t = 0; t < 5000; ++t) {
    // mix tiny and near-overflow magnitudes
    long long lim = (t % 3 == 0) ? (1LL << 62) : 1000;
    long long an = rng.integer(-lim, lim), ad = rng.integer(1, lim);
    long long bn = rng.integer(-lim, lim), bd = rng.integer(1, lim);
    Rational a(an, ad), b(bn, bd);
    mpq_class qa(zz(an), zz(ad));
    mpq_class qb(zz(bn), zz(bd));
    qa.canonicalize();
    qb.canonicalize();
    REQUIRE((a + b).to_mpq() == qa + qb);
    REQUIRE((a - b).to_mpq() == qa - qb);
    REQUIRE((a * b).to_mpq() == qa * qb);
    if (bn != 0) REQUIRE((a / b).to_mpq() == qa / qb);
    REQUIRE((a < b) == (qa < qb));
    REQUIRE((a == b) == (qa == qb));
    REQUIRE(Rational::parse(a.str()) == a);
  }
}
