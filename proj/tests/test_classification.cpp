#include "doctest.h"
#include "spingeom/classification.hpp"

using namespace spingeom;

TEST_CASE("real classification examples") {
  CHECK(to_string(classify_real(3, 0)) == "H ⊕ H");
  CHECK(to_string(classify_real(0, 2)) == "M2(R)");
  CHECK(to_string(classify_real(1, 3)) == "M4(R)");
  CHECK(to_string(classify_real(3, 1)) == "M2(H)");
  CHECK(to_string(classify_real(0, 8)) == "M16(R)");
  CHECK(to_string(classify_real(7, 0)) == "M8(R) ⊕ M8(R)");
  CHECK(to_string(classify_real(0, 0)) == "R");
  CHECK(to_string(classify_real(1, 0)) == "C");
  CHECK_THROWS(classify_real(-1, 0));
}

TEST_CASE("real dimension matches 2^(p+q)") {
  for (int p = 0; p <= 16; ++p)
    for (int q = 0; p + q <= 16; ++q) REQUIRE(classify_real(p, q).real_dim() == std::uint64_t{1} << (p + q));
}

TEST_CASE("(1,1) peeling") {
  for (int p = 0; p <= 6; ++p)
    for (int q = 0; q <= 6; ++q) {
      auto a = classify_real(p, q);
      a.size *= 2;
      REQUIRE(classify_real(p + 1, q + 1) == a);
    }
}

TEST_CASE("complex classification") {
  CHECK(to_string(classify_complex(1)) == "C ⊕ C");
  CHECK(to_string(classify_complex(2)) == "M2(C)");
  CHECK(to_string(classify_complex(5)) == "M4(C) ⊕ M4(C)");
  for (int n = 0; n <= 20; ++n) {
    const auto t = classify_complex(n);
    REQUIRE(t.base == Division::C);
    REQUIRE(t.size == std::uint64_t{1} << (n / 2));
    REQUIRE(t.doubled == (n % 2 == 1));
  }
  // complexifying the real algebra gives the same type
  for (int p = 0; p <= 8; ++p)
    for (int q = 0; p + q <= 8; ++q) REQUIRE(tensor(classify_real(p, q), {Division::C, 1, false}) == classify_complex(p + q));
  CHECK_THROWS(classify_complex(-1));
}

TEST_CASE("tensor products of division algebras") {
  const AlgebraType r{Division::R, 1, false}, c{Division::C, 1, false}, h{Division::H, 1, false};
  CHECK(tensor(h, h) == AlgebraType{Division::R, 4, false});
  CHECK(tensor(c, h) == AlgebraType{Division::C, 2, false});
  CHECK(tensor(c, c) == AlgebraType{Division::C, 1, true});
  CHECK(tensor(r, h) == h);
  const AlgebraType rr{Division::R, 1, true};
  CHECK_THROWS(tensor(rr, rr));
}

TEST_CASE("even subalgebras") {
  CHECK(even_subalgebra_type(2, 0) == classify_real(1, 0));
  CHECK(even_subalgebra_type(1, 0) == AlgebraType{Division::R, 1, false});
  CHECK(even_subalgebra_type(0, 3) == classify_real(2, 0));
  for (int p = 0; p <= 6; ++p)
    for (int q = 0; p + q <= 6; ++q) {
      if (p + q == 0) continue;
      REQUIRE(even_subalgebra_type(p, q).real_dim() * 2 == classify_real(p, q).real_dim());
    }
  CHECK_THROWS(even_subalgebra_type(0, 0));

  for (int n = 0; n <= 8; n += 2) {
    const auto emb = even_subalgebra_complex(n + 1);
    CHECK(emb.diagonal);
    CHECK(emb.ambient.doubled);
    CHECK(emb.even == AlgebraType{Division::C, std::uint64_t{1} << (n / 2), false});
    CHECK(emb.ambient.size == emb.even.size);
  }
  const auto emb4 = even_subalgebra_complex(4);
  CHECK_FALSE(emb4.diagonal);
  CHECK(emb4.even == classify_complex(3));
}
