#include "doctest.h"
#include "spingeom/rational.hpp"

using namespace spingeom;

TEST_CASE("parse_rational accepts integers, fractions and decimals") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-3/2") == Rational(-3, 2));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("-1.5e-3") == Rational(-3, 2000));
  CHECK(parse_rational("2e2") == Rational(200));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("Gaussian rationals form a field") {
  const GaussianRational a(Rational(1, 2), Rational(-3)), b(Rational(2), Rational(1, 3));
  CHECK(a * a.inverse() == GaussianRational(1));
  CHECK((a / b) * b == a);
  CHECK(GaussianRational::i() * GaussianRational::i() == GaussianRational(-1));
  CHECK(a.conj().conj() == a);
  CHECK_THROWS(GaussianRational().inverse());
}

TEST_CASE("Gaussian rational printing") {
  CHECK(to_string(GaussianRational(Rational(3, 2))) == "3/2");
  CHECK(to_string(GaussianRational::i()) == "i");
  CHECK(to_string(GaussianRational(Rational(0), Rational(3, 2))) == "3/2*i");
  CHECK(to_string(GaussianRational(Rational(1), Rational(-1))) == "(1-i)");
}

TEST_CASE("Laurent polynomials in pi stay exact") {
  const PiLaurent two_pi(GaussianRational(2), 1);
  const PiLaurent x = PiLaurent(1) / two_pi;
  CHECK(x * two_pi == PiLaurent(1));
  CHECK((x + x) * PiLaurent::pi_power(1) == PiLaurent(1));
  CHECK(PiLaurent(3) - PiLaurent(3) == PiLaurent());
  CHECK(PiLaurent().is_zero());
  CHECK(x.to_complex().real() == doctest::Approx(1 / (2 * 3.14159265358979323846)));
  // a binomial is not a unit of the ring
  CHECK_THROWS(PiLaurent(1) / (PiLaurent(1) + PiLaurent::pi_power(1)));
}
