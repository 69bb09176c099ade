#include <random>

#include "doctest.h"
#include "spingeom/cech.hpp"
#include "support/oracles.hpp"

using namespace spingeom;

namespace {

int row(int v) { return v / 3; }
int col(int v) { return v % 3; }

// +1 when a step from index a to index b crosses the seam 2 -> 0 forwards
int crossing(int a, int b) {
  if (a == 2 && b == 0) return 1;
  if (a == 0 && b == 2) return -1;
  return 0;
}

// Lifts of a flat SO(3) bundle on the torus with commuting holonomies
// whose chosen lifts a, b may or may not commute in Spin(3).
LiftData flat_torus_lifts(const Nerve& nerve, const Multivector& a, const Multivector& b) {
  LiftData d;
  d.signature = a.signature();
  const auto one = Multivector::scalar(d.signature, GaussianRational(1));
  for (const auto& e : nerve.simplices(1)) {
    const int x = crossing(row(e[0]), row(e[1])), y = crossing(col(e[0]), col(e[1]));
    Multivector g = one;
    if (x) g = g * (x > 0 ? a : a.inverse());
    if (y) g = g * (y > 0 ? b : b.inverse());
    d.lifts.emplace(e, g);
  }
  return d;
}

}  // namespace

TEST_CASE("built-in nerves") {
  CHECK(circle_nerve().count(0) == 3);
  CHECK(circle_nerve().count(1) == 3);
  CHECK(circle_nerve().count(2) == 0);
  CHECK(sphere_nerve().count(2) == 4);
  const auto t = torus_nerve();
  CHECK(t.count(0) == 9);
  CHECK(t.count(1) == 27);
  CHECK(t.count(2) == 18);
  CHECK(t.contains({0, 1}));
  CHECK_THROWS(t.index_of({0, 1, 2, 3}));
  CHECK_THROWS_AS(Nerve(3, {{0, 1, 2}}), PreconditionError);
  CHECK_THROWS(builtin_nerve("klein"));
}

TEST_CASE("nerve JSON round trip") {
  const auto n = sphere_nerve();
  const auto back = load_nerve(n.to_json());
  for (int k = 0; k <= 2; ++k) CHECK(back.simplices(k) == n.simplices(k));
  CHECK_THROWS_AS(load_nerve("{\"patches\": 2}"), ParseError);
}

TEST_CASE("cohomology of the built-in nerves") {
  CHECK(cohomology_dim(circle_nerve(), 0) == 1);
  CHECK(cohomology_dim(circle_nerve(), 1) == 1);
  CHECK(cohomology_dim(circle_nerve(), 2) == 0);
  CHECK(cohomology_dim(sphere_nerve(), 1) == 0);
  CHECK(cohomology_dim(sphere_nerve(), 2) == 1);
  CHECK(cohomology_dim(torus_nerve(), 1) == 2);
  CHECK(cohomology_dim(torus_nerve(), 2) == 1);
  for (const auto& n : {circle_nerve(), sphere_nerve(), torus_nerve()})
    for (int k = 0; k <= 2; ++k) REQUIRE(cohomology_dim(n, k) == oracle::z2_betti(n, k));
}

TEST_CASE("coboundary") {
  const auto circle = circle_nerve();
  CHECK(coboundary(circle, Cochain::trivial(circle, 0)).is_trivial());
  auto s = Cochain::trivial(circle, 1);
  s.set_sign(circle, {0, 1}, -1);
  CHECK(coboundary(circle, s).bits.empty());

  // on a solid tetrahedron every cochain has trivial second coboundary
  const Nerve tet(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3},
                      {0, 1, 2, 3}});
  for (int k = 0; k <= 1; ++k)
    for (unsigned bits = 0; bits < (1u << tet.count(k)); ++bits) {
      Cochain c = Cochain::trivial(tet, k);
      for (std::size_t i = 0; i < c.bits.size(); ++i) c.bits[i] = (bits >> i) & 1;
      REQUIRE(coboundary(tet, coboundary(tet, c)).is_trivial());
    }
  // a vertex sign flips exactly the edges at that vertex
  auto v = Cochain::trivial(tet, 0);
  v.set_sign(tet, {2}, -1);
  const auto dv = coboundary(tet, v);
  for (const auto& e : tet.simplices(1))
    REQUIRE(dv.sign(tet, e) == ((e[0] == 2 || e[1] == 2) ? -1 : 1));
}

TEST_CASE("first Stiefel-Whitney class") {
  const auto circle = circle_nerve();
  const auto trivial = w1(circle, {{{0, 1}, 1}, {{1, 2}, 1}, {{0, 2}, 1}});
  CHECK(trivial.trivial);
  const auto mobius = w1(circle, {{{0, 1}, 1}, {{1, 2}, 1}, {{0, 2}, -1}});
  CHECK_FALSE(mobius.trivial);
  CHECK_FALSE(mobius.primitive.has_value());

  // a coboundary comes back with an explicit primitive
  const auto torus = torus_nerve();
  auto s = Cochain::trivial(torus, 0);
  s.set_sign(torus, {4}, -1);
  s.set_sign(torus, {7}, -1);
  const auto ds = coboundary(torus, s);
  std::map<Simplex, int> signs;
  for (std::size_t i = 0; i < torus.count(1); ++i) signs[torus.simplices(1)[i]] = ds.sign_at(i);
  const auto r = w1(torus, signs);
  REQUIRE(r.trivial);
  REQUIRE(r.primitive.has_value());
  CHECK(coboundary(torus, *r.primitive) == ds);

  CHECK_THROWS_AS(w1(circle, {{{0, 1}, 1}}), PreconditionError);
  // not a cocycle on the sphere nerve
  const auto sphere = sphere_nerve();
  std::map<Simplex, int> bad;
  for (const auto& e : sphere.simplices(1)) bad[e] = 1;
  bad[{0, 1}] = -1;
  CHECK_THROWS_AS(w1(sphere, bad), ConsistencyError);
}

TEST_CASE("spin structures") {
  struct Case {
    Nerve nerve;
    std::size_t count;
  };
  for (const auto& c : {Case{circle_nerve(), 2}, Case{sphere_nerve(), 1}, Case{torus_nerve(), 4}}) {
    const auto r = w2_and_spin_structures(c.nerve, trivial_lifts(c.nerve));
    REQUIRE(r.w2_vanishes);
    REQUIRE(r.count() == c.count);
    REQUIRE(r.count() == std::size_t{1} << oracle::z2_betti(c.nerve, 1));
    REQUIRE(r.action_free);
    REQUIRE(r.action_transitive);
  }
}

TEST_CASE("obstruction class does not depend on the lift") {
  const auto torus = torus_nerve();
  const Signature s(3, 0);
  const auto e12 = Multivector::generator(s, 1) * Multivector::generator(s, 2);
  const auto base = flat_torus_lifts(torus, e12, e12);
  const auto eps = w2_cocycle(torus, base);
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    LiftData other = base;
    Cochain kappa = Cochain::trivial(torus, 1);
    for (std::size_t i = 0; i < torus.count(1); ++i)
      if (coin(rng)) {
        kappa.bits[i] = 1;
        auto& g = other.lifts.at(torus.simplices(1)[i]);
        g = -g;
      }
    REQUIRE(w2_cocycle(torus, other) == eps * coboundary(torus, kappa));
    REQUIRE(w2_and_spin_structures(torus, other).count() == 4);
  }
}

TEST_CASE("a flat SO(3) bundle on the torus that is not spin") {
  const auto torus = torus_nerve();
  const Signature s(3, 0);
  const auto e = [&](int i) { return Multivector::generator(s, i); };
  // holonomies diag(-1,-1,1) and diag(1,-1,-1) commute, their lifts e1e2 and
  // e2e3 anticommute
  const auto r = w2_and_spin_structures(torus, flat_torus_lifts(torus, e(1) * e(2), e(2) * e(3)));
  CHECK_FALSE(r.w2_vanishes);
  CHECK(r.count() == 0);
  CHECK_FALSE(r.obstruction.is_trivial());
  // same holonomies with commuting lifts are spin
  const auto ok = w2_and_spin_structures(torus, flat_torus_lifts(torus, e(1) * e(2), e(1) * e(2)));
  CHECK(ok.w2_vanishes);
}

TEST_CASE("lift validation") {
  const auto circle = circle_nerve();
  LiftData d = trivial_lifts(circle);
  d.lifts.erase({0, 2});
  CHECK_THROWS_AS(w2_cocycle(circle, d), PreconditionError);

  const auto sphere = sphere_nerve();
  LiftData bad = trivial_lifts(sphere);
  bad.signature = Signature(2, 0);
  for (auto& [k, v] : bad.lifts) v = Multivector::scalar(bad.signature, GaussianRational(1));
  bad.lifts.at({0, 1}) = Multivector::generator(bad.signature, 1) * Multivector::generator(bad.signature, 2);
  CHECK_THROWS_AS(w2_cocycle(sphere, bad), ConsistencyError);

  const auto parsed = load_lifts(R"({"signature": [2, 0], "lifts": [[1, 0, "e1e2"], [1, 2, -1]]})");
  const auto e12 = Multivector::generator(parsed.signature, 1) * Multivector::generator(parsed.signature, 2);
  CHECK(parsed.lifts.at({0, 1}) == -e12);  // inverse of e1e2
  CHECK(parsed.lifts.at({1, 2}) == Multivector::scalar(parsed.signature, GaussianRational(-1)));
  CHECK_THROWS_AS(load_lifts(R"({"lifts": [[0, 1, 2.5]]})"), ParseError);
}
