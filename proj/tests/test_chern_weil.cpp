#include <random>

#include "doctest.h"
#include "spingeom/chern_weil.hpp"
#include "support/oracles.hpp"

using namespace spingeom;

namespace {

ExactForm two(int m, int i, int j, Rational c = Rational(1)) { return ExactForm::two_form(m, i, j, PiLaurent(c)); }

Rational small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

// antisymmetric n x n matrix of random two-forms on an m-dim coframe
ExactFormMatrix random_curvature(int n, int m, std::mt19937_64& rng) {
  ExactFormMatrix f(n, n, ExactForm::zero(m));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      ExactForm x = ExactForm::zero(m);
      for (int a = 1; a <= m; ++a)
        for (int b = a + 1; b <= m; ++b) x += two(m, a, b, small_rational(rng));
      f(i, j) = x;
      f(j, i) = -x;
    }
  return f;
}

ExactFormMatrix block_diag(const ExactFormMatrix& a, const ExactFormMatrix& b) {
  const std::size_t n = a.rows() + b.rows();
  ExactFormMatrix out(n, n);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.rows(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) out(a.rows() + i, a.rows() + j) = b(i, j);
  return out;
}

Matrix<std::complex<double>> adjoint(const Matrix<std::complex<double>>& g) {
  Matrix<std::complex<double>> out(g.cols(), g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) out(j, i) = std::conj(g(i, j));
  return out;
}

}  // namespace

TEST_CASE("Bernoulli numbers") {
  const auto table = oracle::bernoulli_table(40);
  for (int k = 0; k <= 40; ++k) REQUIRE(bernoulli(k) == table[k]);
  CHECK(bernoulli(1) == Rational(-1, 2));
  CHECK(bernoulli(2) == Rational(1, 6));
  CHECK(bernoulli(3) == 0);
  CHECK(bernoulli(12) == Rational(-691, 2730));
  CHECK_THROWS(bernoulli(-1));
}

TEST_CASE("Taylor coefficients of the named series") {
  const int order = 16;
  const auto ahat = taylor_in_x(genus_series(Genus::a_hat, order), order);
  const auto l = taylor_in_x(genus_series(Genus::l_genus, order), order);
  const auto todd = taylor_in_x(genus_series(Genus::todd, order + 1), order);
  CHECK(ahat == oracle::ahat_taylor(order));
  CHECK(l == oracle::l_taylor(order));
  CHECK(todd == oracle::todd_taylor(order));
  CHECK(ahat[2] == Rational(-1, 24));
  CHECK(ahat[4] == Rational(7, 5760));
  CHECK(l[2] == Rational(1, 3));
  CHECK(l[4] == Rational(-1, 45));
  CHECK(todd[1] == Rational(1, 2));
  CHECK_THROWS(genus_series(Genus::euler, 3));
  CHECK_THROWS(taylor_in_x(genus_series(Genus::todd, 3), 5));
}

TEST_CASE("expansion in characteristic classes") {
  const auto ahat = genus_expand(Genus::a_hat, 2).classes;
  CHECK(ahat.variable == "p");
  CHECK(ahat.coeff({0, 0}) == 1);
  CHECK(ahat.coeff({1, 0}) == Rational(-1, 24));
  CHECK(ahat.coeff({2, 0}) == Rational(7, 5760));
  CHECK(ahat.coeff({0, 1}) == Rational(-1, 1440));

  const auto l = genus_expand(Genus::l_genus, 2).classes;
  CHECK(l.coeff({1, 0}) == Rational(1, 3));
  CHECK(l.coeff({0, 1}) == Rational(7, 45));
  CHECK(l.coeff({2, 0}) == Rational(-1, 45));

  const auto todd = genus_expand(Genus::todd, 2).classes;
  CHECK(todd.variable == "c");
  CHECK(todd.coeff({1, 0}) == Rational(1, 2));
  CHECK(todd.coeff({2, 0}) == Rational(1, 12));
  CHECK(todd.coeff({0, 1}) == Rational(1, 12));

  const auto chern = genus_expand(Genus::chern, 3).classes;
  CHECK(chern.coeff({1, 0, 0}) == 1);
  CHECK(chern.coeff({0, 0, 1}) == 1);
  CHECK(chern.coeff({2, 0, 0}) == 0);

  CHECK(ahat.to_string() == "1 - 1/24*p1 + 7/5760*p1^2 - 1/1440*p2");
  CHECK_THROWS(genus_expand(Genus::euler, 2));
}

TEST_CASE("forms commute and truncate") {
  const int m = 4;
  const ExactForm a = two(m, 1, 2), b = two(m, 3, 4, Rational(2));
  CHECK(a * b == b * a);
  CHECK(a * a == ExactForm::zero(m));
  CHECK((a * b).top_coeff() == PiLaurent(2));
  CHECK(two(m, 2, 1) == -a);
  CHECK_THROWS_AS(ExactForm::monomial(m, 0b1, PiLaurent(1)), PreconditionError);
  CHECK_THROWS_AS(two(m, 1, 5), DimensionError);
  CHECK_THROWS_AS(a + two(6, 1, 2), DimensionError);
}

TEST_CASE("determinants and square roots") {
  const int m = 6;
  CHECK(form_det(ExactFormMatrix::identity(3)) == ExactForm(1));

  ExactFormMatrix one_plus_x(1, 1);
  const ExactForm x = two(m, 1, 2, Rational(3));
  one_plus_x(0, 0) = ExactForm(1) + x;
  CHECK(form_det_sqrt(one_plus_x) == ExactForm(1) + x * PiLaurent(Rational(1, 2)));

  std::mt19937_64 rng(41);
  const auto f = random_curvature(4, m, rng);
  CHECK(form_tr(f).is_zero());
  CHECK(form_det(f) == oracle::permutation_determinant(f));

  // det_sqrt(M)^2 = det(M) for M = 1 + F^2
  const ExactFormMatrix m2 = ExactFormMatrix::identity(4) + f * f;
  const ExactForm root = form_det_sqrt(m2);
  CHECK(root * root == form_det(m2));

  ExactFormMatrix bad(1, 1);
  bad(0, 0) = ExactForm(2);
  CHECK_THROWS_AS(form_det_sqrt(bad), PreconditionError);

  // exp of a nilpotent 2x2 matrix against the truncated series
  const ExactFormMatrix e = form_exp(f);
  const ExactFormMatrix series = ExactFormMatrix::identity(4) + f + f * f * ExactForm(PiLaurent(Rational(1, 2))) +
                                 f * f * f * ExactForm(PiLaurent(Rational(1, 6)));
  CHECK(e == series);
}

TEST_CASE("Pfaffian") {
  ExactFormMatrix a(2, 2);
  a(0, 1) = ExactForm(PiLaurent(Rational(5, 3)));
  a(1, 0) = -a(0, 1);
  CHECK(form_pfaffian(a) == ExactForm(PiLaurent(Rational(5, 3))));

  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<Rational>> s(4, std::vector<Rational>(4));
    ExactFormMatrix m(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        s[i][j] = small_rational(rng);
        s[j][i] = -s[i][j];
        m(i, j) = ExactForm(PiLaurent(s[i][j]));
        m(j, i) = -m(i, j);
      }
    const ExactForm pf = form_pfaffian(m);
    REQUIRE(pf == ExactForm(PiLaurent(oracle::pfaffian_via_forms(s))));
    REQUIRE(pf * pf == oracle::permutation_determinant(m));
    const PiLaurent lambda(Rational(-3, 2));
    REQUIRE(form_pfaffian(m * ExactForm(lambda)) == pf * (lambda * lambda));
  }
  for (int n : {2, 4}) {
    const auto f = random_curvature(n, 8, rng);
    const ExactForm pf = form_pfaffian(f);
    CHECK(pf * pf == form_det(f));
  }
  CHECK_THROWS(form_pfaffian(ExactFormMatrix(3, 3)));
  ExactFormMatrix sym(2, 2);
  sym(0, 1) = sym(1, 0) = ExactForm(1);
  CHECK_THROWS(form_pfaffian(sym));
}

TEST_CASE("genus evaluation") {
  const int m = 4;
  const ExactFormMatrix flat(4, 4, ExactForm::zero(m));
  for (Genus g : {Genus::a_hat, Genus::l_genus, Genus::todd, Genus::pontryagin, Genus::chern})
    CHECK(genus_eval(g, flat) == ExactForm(1));
  CHECK(genus_eval(Genus::chern_character, flat) == ExactForm(4));

  // first Chern form is tr((i/2pi) F)
  std::mt19937_64 rng(47);
  ExactFormMatrix f(2, 2, ExactForm::zero(m));
  for (auto i = 0; i < 2; ++i)
    for (auto j = 0; j < 2; ++j)
      for (int a = 1; a <= m; ++a)
        for (int b = a + 1; b <= m; ++b) f(i, j) += two(m, a, b, small_rational(rng));
  const ExactForm c = genus_eval(Genus::chern, f);
  CHECK(c.degree(2) == form_tr(f) * ChernWeilConstants<PiLaurent>::i_over_2pi());
  CHECK_THROWS(genus_eval(Genus::a_hat, f));  // not antisymmetric

  const auto g = random_curvature(4, 8, rng);
  const ExactForm p = genus_eval(Genus::pontryagin, g);
  CHECK(p.degree(4) == form_tr(g * g).degree(4) * PiLaurent(GaussianRational(Rational(-1, 8)), -2));
  // A-hat starts 1 - p1/24
  CHECK(genus_eval(Genus::a_hat, g).degree(4) == p.degree(4) * PiLaurent(Rational(-1, 24)));
}

TEST_CASE("multiplicativity on block sums") {
  std::mt19937_64 rng(53);
  const int m = 6;
  const auto x = random_curvature(2, m, rng), y = random_curvature(2, m, rng);
  const auto xy = block_diag(x, y);
  for (Genus g : {Genus::a_hat, Genus::l_genus, Genus::pontryagin, Genus::todd, Genus::chern})
    REQUIRE(genus_eval(g, xy) == genus_eval(g, x) * genus_eval(g, y));
  CHECK(genus_eval(Genus::chern_character, xy) ==
        genus_eval(Genus::chern_character, x) + genus_eval(Genus::chern_character, y));
  CHECK(genus_eval(Genus::euler, xy) == genus_eval(Genus::euler, x) * genus_eval(Genus::euler, y));
}

TEST_CASE("conjugation invariance") {
  std::mt19937_64 rng(59);
  const auto f = random_curvature(4, 8, rng);
  const auto id = Matrix<PiLaurent>::identity(4);
  CHECK(invariance_check(Genus::a_hat, f, id, id) == 0);

  // exact Cayley rotation
  Matrix<Rational> s(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      s(i, j) = small_rational(rng);
      s(j, i) = -s(i, j);
    }
  const auto o = cayley_orthogonal(s);
  REQUIRE(o * o.transposed() == Matrix<Rational>::identity(4));
  Matrix<PiLaurent> g(4, 4), g_inv(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      g(i, j) = PiLaurent(o(i, j));
      g_inv(j, i) = PiLaurent(o(i, j));
    }
  for (Genus gen : {Genus::a_hat, Genus::l_genus, Genus::euler, Genus::chern_character})
    CHECK(invariance_check(gen, f, g, g_inv) == 0);

  const auto ff = to_float(f);
  const auto rot = random_special_orthogonal(4, rng);
  CHECK(invariance_check(Genus::a_hat, ff, rot, adjoint(rot)) <= 1e-10);

  FloatFormMatrix h(2, 2, FloatForm::zero(4));
  std::normal_distribution<double> gauss;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int a = 1; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b)
          h(i, j) += FloatForm::two_form(4, a, b, std::complex<double>(gauss(rng), gauss(rng)));
  const auto u = random_unitary(2, rng);
  CHECK(invariance_check(Genus::chern_character, h, u, adjoint(u)) <= 1e-10);
  CHECK(invariance_check(Genus::chern, h, u, adjoint(u)) <= 1e-10);
}

TEST_CASE("curvature models and Gauss-Bonnet") {
  auto chi = [](const CurvatureModel& m) { return integrate_top(genus_eval(Genus::euler, m.curvature), m); };
  CHECK(torus2().curvature == ExactFormMatrix(2, 2, ExactForm::zero(2)));
  const auto euler_form = genus_eval(Genus::euler, sphere2(Rational(1)).curvature);
  CHECK(euler_form.top_coeff() == ChernWeilConstants<PiLaurent>::one_over_2pi());
  for (const Rational& r : {Rational(1, 2), Rational(1), Rational(3), Rational(7, 5)}) {
    CHECK(chi(sphere2(r)) == PiLaurent(2));
    CHECK(chi(sphere4(r)) == PiLaurent(2));
  }
  CHECK(chi(torus2()) == PiLaurent(0));
  const auto s2s2 = product(sphere2(Rational(1)), sphere2(Rational(3)));
  CHECK(s2s2.dim == 4);
  CHECK(s2s2.curvature(0, 2).is_zero());
  CHECK(chi(s2s2) == PiLaurent(4));
  CHECK(chi(product(sphere2(Rational(1)), torus2())) == PiLaurent(0));
  CHECK(chi(curvature_model("s2xs2", Rational(2))) == PiLaurent(4));
  CHECK_THROWS(curvature_model("klein", Rational(1)));

  // signature of S2 x S2 vanishes: L-genus degree-4 part integrates to 0
  const auto l = genus_eval(Genus::l_genus, s2s2.curvature);
  CHECK(integrate_top(l, s2s2) == PiLaurent(0));
}

TEST_CASE("curvature model JSON") {
  const std::string text = R"({"name": "round", "n": 2, "volume": {"coeff": "4", "pi_power": 1},
                              "entries": [[1, 2, [[[1, 2], "1"]]]]})";
  const auto m = load_curvature_model(text);
  CHECK(m.curvature == sphere2(Rational(1)).curvature);
  CHECK(m.volume == sphere2(Rational(1)).volume);
  CHECK_THROWS_AS(load_curvature_model("{"), ParseError);
  CHECK_THROWS(load_curvature_model(R"({"name": "x", "n": 2, "volume": "1", "entries": [[2, 1, []]]})"));
}
