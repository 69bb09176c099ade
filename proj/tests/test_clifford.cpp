#include <bit>
#include <random>

#include "doctest.h"
#include "spingeom/clifford.hpp"
#include "support/oracles.hpp"

using namespace spingeom;

namespace {

Multivector e(const Signature& s, int i) { return Multivector::generator(s, i); }
Multivector one(const Signature& s) { return Multivector::scalar(s, GaussianRational(1)); }

}  // namespace

TEST_CASE("blade products") {
  const auto sq = blade_mul(Blade::generator(1), Blade::generator(1), Signature(1, 0));
  CHECK(sq.sign == -1);
  CHECK(sq.blade.mask == 0);

  const auto e12 = blade_mul(Blade::generator(1), Blade::generator(2), Signature(2, 0));
  CHECK(e12.sign == 1);
  CHECK(e12.blade.mask == 0b11);

  const auto sq12 = blade_mul(Blade{0b11}, Blade{0b11}, Signature(2, 0));
  CHECK(sq12.sign == -1);
  CHECK(sq12.blade.mask == 0);

  CHECK_THROWS_AS(blade_mul(Blade::generator(3), Blade{}, Signature(2, 0)), DimensionError);
}

TEST_CASE("blade products agree with the bubble-sort oracle") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 5);
  for (int trial = 0; trial < 2000; ++trial) {
    const int p = pick(rng), q = pick(rng) % (6 - p) + (p == 0);
    const Signature s(p, q);
    std::uniform_int_distribution<std::uint64_t> mask(0, (std::uint64_t{1} << s.dim()) - 1);
    const Blade a{mask(rng)}, b{mask(rng)};
    std::vector<int> word;
    for (Blade x : {a, b})
      for (int i = 1; i <= s.dim(); ++i)
        if (x.contains(i)) word.push_back(i);
    const auto expected = oracle::bubble_sort_product(word, s);
    const auto got = blade_mul(a, b, s);
    REQUIRE(got.sign == expected.sign);
    REQUIRE(got.blade.mask == expected.mask);
  }
}

TEST_CASE("multivector arithmetic") {
  const Signature s1(1, 0);
  CHECK((one(s1) + e(s1, 1)) * (one(s1) - e(s1, 1)) == Multivector::scalar(s1, GaussianRational(2)));

  std::mt19937_64 rng(3);
  const Signature s(2, 2);
  const auto a = oracle::random_multivector(s, 6, rng);
  CHECK(a * one(s) == a);
  CHECK(one(s) * a == a);
  CHECK(a - a == Multivector(s));

  CHECK_THROWS_AS(e(Signature(1, 0), 1) + e(Signature(2, 0), 1), SignatureMismatch);
  CHECK_THROWS_AS(e(s, 5), DimensionError);
  CHECK_THROWS_AS(e(s, 0), DimensionError);
}

TEST_CASE("involutions and norm") {
  const Signature s(3, 0);
  CHECK(e(s, 1).grade_involution() == -e(s, 1));
  CHECK((e(s, 1) * e(s, 2)).transpose() == e(s, 2) * e(s, 1));
  CHECK((e(s, 1) * e(s, 2)).transpose() == -(e(s, 1) * e(s, 2)));
  CHECK(e(s, 1).norm() == one(s));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Signature sig(2, 2);
    const auto a = oracle::random_multivector(sig, 5, rng), b = oracle::random_multivector(sig, 5, rng);
    REQUIRE((a * b).grade_involution() == a.grade_involution() * b.grade_involution());
    REQUIRE((a * b).transpose() == b.transpose() * a.transpose());
  }
}

TEST_CASE("norm is multiplicative on Clifford-group elements") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Signature s(3, 1);
    auto vec = [&] {
      auto v = oracle::random_multivector(s, 6, rng).grade(1);
      return v.is_zero() ? e(s, 1) : v;
    };
    const auto x = vec() * vec(), y = vec() * vec() * vec();
    REQUIRE(x.norm().is_scalar());
    REQUIRE((x * y).norm() == x.norm() * y.norm());
  }
}

TEST_CASE("Clifford relations and associativity") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> pick(0, 5);
  for (int trial = 0; trial < 300; ++trial) {
    const int p = pick(rng), q = pick(rng) % (6 - p) + (p == 0);
    const Signature s(p, q);
    for (int i = 1; i <= s.dim(); ++i)
      for (int j = 1; j <= s.dim(); ++j) {
        const int eta = i == j ? s.metric(i) : 0;
        REQUIRE(e(s, i) * e(s, j) + e(s, j) * e(s, i) == Multivector::scalar(s, GaussianRational(-2 * eta)));
      }
    const auto a = oracle::random_multivector(s, 4, rng), b = oracle::random_multivector(s, 4, rng),
               c = oracle::random_multivector(s, 4, rng);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("volume element") {
  const Signature s1(1, 0);
  const auto w1 = volume_element<GaussianRational>(1);
  CHECK(w1 == Multivector::blade(s1, Blade{1}, GaussianRational::i()));
  for (int n = 1; n <= 8; ++n) {
    const Signature s(n, 0);
    const auto w = volume_element<GaussianRational>(n);
    REQUIRE(w * w == one(s));
    std::mt19937_64 rng(n);
    const auto v = oracle::random_multivector(s, 8, rng).grade(1);
    // v w = (-1)^{n-1} w v
    if (n % 2 == 0)
      REQUIRE(v * w + w * v == Multivector(s));
    else
      REQUIRE(v * w - w * v == Multivector(s));
  }
  CHECK_THROWS_AS(volume_element<GaussianRational>(0), DimensionError);
}

TEST_CASE("supercommutator") {
  const Signature s2(2, 0), s1(1, 0);
  CHECK(supercommutator(e(s2, 1), e(s2, 2)) == Multivector(s2));
  CHECK(supercommutator(e(s1, 1), e(s1, 1)) == Multivector::scalar(s1, GaussianRational(-2)));
  for (int n : {2, 4, 6}) {
    const Signature s(n, 0);
    const auto w = volume_element<GaussianRational>(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      // w is even and anticommutes with odd blades: w a = (-1)^|a| a w
      const auto a = Multivector::blade(s, Blade{mask});
      const bool odd = std::popcount(mask) % 2 == 1;
      REQUIRE(w * a == (odd ? -(a * w) : a * w));
      REQUIRE(supercommutator(w, a) == (odd ? (w * a) * GaussianRational(2) : Multivector(s)));
    }
  }
}

TEST_CASE("inverse") {
  const Signature s(2, 1);
  const auto v = e(s, 1) + e(s, 3) * GaussianRational(2);
  CHECK(v * v.inverse() == one(s));
  const auto x = one(s) + e(s, 1) * e(s, 2);
  CHECK(x * x.inverse() == one(s));
  // 1 + e3 squares to 2 + 2 e3 and is a zero divisor
  CHECK_THROWS_AS((one(s) + e(s, 3)).inverse(), NotInvertible);
  CHECK_THROWS_AS(Multivector(s).inverse(), NotInvertible);
}

TEST_CASE("text round trip") {
  const Signature s(3, 1);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = oracle::random_multivector(s, 5, rng);
    REQUIRE(parse_multivector(to_string(a), s) == a);
  }
  CHECK(to_string(Multivector(s)) == "0");
  CHECK(parse_multivector("3/2*e1e3 - i*e2", s) ==
        Multivector::blade(s, Blade{0b101}, GaussianRational(Rational(3, 2))) -
            Multivector::blade(s, Blade{0b10}, GaussianRational::i()));
  CHECK(parse_multivector("e2e1", s) == -(e(s, 1) * e(s, 2)));
  CHECK(parse_multivector("0.5 + e4", s) == Multivector::scalar(s, GaussianRational(Rational(1, 2))) + e(s, 4));
  CHECK_THROWS_AS(parse_multivector("e9", s), DimensionError);
  CHECK_THROWS_AS(parse_multivector("3 +* e1", s), ParseError);

  const auto f = to_float(parse_multivector("1/4*e1 - 2*e2e3", s));
  CHECK(approx_equal(parse_multivector_float(to_string(f), s), f, 1e-15));
}
