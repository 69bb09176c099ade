#include "spingeom/chern_weil.hpp"

#include <Eigen/Dense>
#include <json.hpp>

namespace spingeom {

namespace {

// Akiyama-Tanigawa; produces B_1 = +1/2, flipped by the caller.
std::vector<Rational> bernoulli_list(int n) {
  std::vector<Rational> out;
  std::vector<Rational> a(n + 1);
  for (int m = 0; m <= n; ++m) {
    a[m] = Rational(1, m + 1);
    for (int j = m; j >= 1; --j) a[j - 1] = j * (a[j - 1] - a[j]);
    out.push_back(a[0]);
  }
  if (n >= 1) out[1] = -out[1];
  return out;
}

Rational factorial(int k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return Rational(f);
}

Rational pow2(int k) {
  mpz_class f;
  mpz_ui_pow_ui(f.get_mpz_t(), 2, static_cast<unsigned long>(k));
  return Rational(f);
}

// Polynomials in e_1..e_w (weight of e_i is i), truncated at weight w.
using Exps = std::vector<int>;
using SymPoly = std::map<Exps, Rational>;

int weight_of(const Exps& e) {
  int w = 0;
  for (std::size_t i = 0; i < e.size(); ++i) w += static_cast<int>(i + 1) * e[i];
  return w;
}

void sym_add(SymPoly& p, const Exps& e, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = p.try_emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) p.erase(it);
}

SymPoly sym_mul(const SymPoly& a, const SymPoly& b, int w) {
  SymPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exps e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      if (weight_of(e) <= w) sym_add(out, e, ca * cb);
    }
  return out;
}

SymPoly sym_scale(SymPoly p, const Rational& c) {
  for (auto& [e, x] : p) x *= c;
  if (sgn(c) == 0) p.clear();
  return p;
}

SymPoly sym_plus(SymPoly a, const SymPoly& b) {
  for (const auto& [e, c] : b) sym_add(a, e, c);
  return a;
}

SymPoly sym_elementary(int i, int w) {
  Exps e(w, 0);
  e[i - 1] = 1;
  return SymPoly{{e, Rational(1)}};
}

}  // namespace

Rational bernoulli(int k) {
  if (k < 0) throw PreconditionError("Bernoulli index must be non-negative");
  return bernoulli_list(k).back();
}

std::string to_string(Genus g) {
  switch (g) {
    case Genus::chern:
      return "chern";
    case Genus::todd:
      return "todd";
    case Genus::chern_character:
      return "chern_character";
    case Genus::pontryagin:
      return "pontryagin";
    case Genus::l_genus:
      return "L";
    case Genus::a_hat:
      return "ahat";
    default:
      return "euler";
  }
}

Genus parse_genus(const std::string& name) {
  if (name == "chern" || name == "c") return Genus::chern;
  if (name == "todd") return Genus::todd;
  if (name == "ch" || name == "chern_character") return Genus::chern_character;
  if (name == "pontryagin" || name == "p") return Genus::pontryagin;
  if (name == "L" || name == "l" || name == "l_genus") return Genus::l_genus;
  if (name == "ahat" || name == "a_hat" || name == "Ahat") return Genus::a_hat;
  if (name == "euler" || name == "e") return Genus::euler;
  throw PreconditionError("unknown genus: " + name);
}

GenusSeries genus_series(Genus g, int terms) {
  if (terms < 1) terms = 1;
  GenusSeries s;
  s.name = to_string(g);
  s.coeffs.assign(terms, Rational(0));
  s.coeffs[0] = 1;
  switch (g) {
    case Genus::chern:
      s.kind = SeriesKind::det;
      if (terms > 1) s.coeffs[1] = 1;
      break;
    case Genus::pontryagin:
      s.kind = SeriesKind::det_sqrt;
      if (terms > 1) s.coeffs[1] = 1;
      break;
    case Genus::chern_character:
      s.kind = SeriesKind::trace;
      for (int k = 1; k < terms; ++k) s.coeffs[k] = 1 / factorial(k);
      break;
    case Genus::todd: {
      s.kind = SeriesKind::det;
      auto b = bernoulli_list(terms);
      for (int k = 1; k < terms; ++k) s.coeffs[k] = (k % 2 == 0 ? b[k] : Rational(-b[k])) / factorial(k);
      break;
    }
    case Genus::l_genus: {
      s.kind = SeriesKind::det_sqrt;
      auto b = bernoulli_list(2 * terms);
      for (int k = 1; k < terms; ++k) s.coeffs[k] = pow2(2 * k) * b[2 * k] / factorial(2 * k);
      break;
    }
    case Genus::a_hat: {
      s.kind = SeriesKind::det_sqrt;
      auto b = bernoulli_list(2 * terms);
      for (int k = 1; k < terms; ++k)
        s.coeffs[k] = (2 - pow2(2 * k)) * b[2 * k] / (factorial(2 * k) * pow2(2 * k));
      break;
    }
    case Genus::euler:
      throw PreconditionError("the Euler class is a Pfaffian, not a power series");
  }
  return s;
}

std::vector<Rational> taylor_in_x(const GenusSeries& s, int order) {
  std::vector<Rational> out(order + 1, Rational(0));
  const int stride = s.kind == SeriesKind::det_sqrt ? 2 : 1;
  if ((static_cast<int>(s.coeffs.size()) - 1) * stride < order)
    throw PreconditionError("series has too few terms for x^" + std::to_string(order));
  for (std::size_t k = 0; k < s.coeffs.size(); ++k)
    if (static_cast<int>(k) * stride <= order) out[k * stride] = s.coeffs[k];
  return out;
}

Rational ClassPolynomial::coeff(const std::vector<int>& exps) const {
  std::vector<int> key = exps;
  std::size_t width = terms.empty() ? key.size() : terms.begin()->first.size();
  key.resize(width, 0);
  auto it = terms.find(key);
  return it == terms.end() ? Rational(0) : it->second;
}

std::string ClassPolynomial::to_string() const {
  if (terms.empty()) return "0";
  // order by weight, then lexicographically with higher p1 power first
  std::vector<std::pair<std::vector<int>, Rational>> items(terms.begin(), terms.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    int wa = weight_of(a.first), wb = weight_of(b.first);
    if (wa != wb) return wa < wb;
    return a.first > b.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [e, c] : items) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += variable + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    Rational a = abs(c);
    std::string term = mono.empty() ? a.get_str() : (a == 1 ? mono : a.get_str() + "*" + mono);
    if (first)
      out += sgn(c) < 0 ? "-" + term : term;
    else
      out += (sgn(c) < 0 ? " - " : " + ") + term;
    first = false;
  }
  return out;
}

GenusExpansion genus_expand(Genus g, int weight) {
  if (weight < 0) throw PreconditionError("weight must be non-negative");
  if (g == Genus::euler || g == Genus::chern_character)
    throw PreconditionError("genus_expand needs a multiplicative series");
  const GenusSeries s = genus_series(g, weight + 1);
  GenusExpansion out;
  out.taylor = taylor_in_x(s, s.kind == SeriesKind::det_sqrt ? 2 * weight : weight);
  out.classes.variable = s.kind == SeriesKind::det_sqrt ? "p" : "c";
  const int w = std::max(weight, 1);

  // log f(y) = sum l_k y^k, from k l_k = k a_k - sum_{j<k} j l_j a_{k-j}
  const auto& a = s.coeffs;
  std::vector<Rational> l(weight + 1, Rational(0));
  for (int k = 1; k <= weight; ++k) {
    Rational acc = k * a[k];
    for (int j = 1; j < k; ++j) acc -= j * l[j] * a[k - j];
    l[k] = acc / k;
  }
  // power sums via Newton's identities
  std::vector<SymPoly> power(weight + 1);
  for (int k = 1; k <= weight; ++k) {
    SymPoly pk = sym_scale(sym_elementary(k, w), Rational(k % 2 == 1 ? k : -k));
    for (int i = 1; i < k; ++i) {
      SymPoly t = sym_mul(sym_elementary(i, w), power[k - i], weight);
      pk = sym_plus(pk, sym_scale(t, Rational(i % 2 == 1 ? 1 : -1)));
    }
    power[k] = pk;
  }
  SymPoly log_total;
  for (int k = 1; k <= weight; ++k) log_total = sym_plus(log_total, sym_scale(power[k], l[k]));
  // exp of a polynomial without constant term, truncated by weight
  SymPoly total{{Exps(w, 0), Rational(1)}};
  SymPoly term{{Exps(w, 0), Rational(1)}};
  for (int k = 1; k <= weight; ++k) {
    term = sym_scale(sym_mul(term, log_total, weight), Rational(1, k));
    total = sym_plus(total, term);
  }
  out.classes.terms = std::move(total);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string monomial_text(std::uint64_t mask) {
  std::string out;
  for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
    if (!out.empty()) out += "^";
    out += "e" + std::to_string(std::countr_zero(rest) + 1);
  }
  return out;
}

template <class C, class F>
std::string form_text(const FormPoly<C>& f, F coeff_text) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [mask, c] : f.terms()) {
    if (!out.empty()) out += " + ";
    std::string ct = "(" + coeff_text(c) + ")";
    out += mask == 0 ? ct : ct + "*" + monomial_text(mask);
  }
  return out;
}

std::string complex_text(const std::complex<double>& z) {
  char buf[96];
  if (z.imag() == 0.0)
    std::snprintf(buf, sizeof buf, "%.17g", z.real());
  else
    std::snprintf(buf, sizeof buf, "%.17g%+.17g*i", z.real(), z.imag());
  return buf;
}

}  // namespace

std::string to_string(const ExactForm& f) {
  return form_text(f, [](const PiLaurent& c) { return to_string(c); });
}

std::string to_string(const FloatForm& f) { return form_text(f, complex_text); }

FloatForm to_float(const ExactForm& f) {
  FloatForm out = FloatForm::zero(f.dim());
  for (const auto& [mask, c] : f.terms()) out += FloatForm::monomial(f.dim(), mask, c.to_complex());
  return out;
}

FloatFormMatrix to_float(const ExactFormMatrix& m) {
  FloatFormMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_float(m(i, j));
  return out;
}

Matrix<Rational> cayley_orthogonal(const Matrix<Rational>& s) {
  if (!s.square()) throw DimensionError("Cayley transform needs a square matrix");
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.rows(); ++j)
      if (s(i, j) != -s(j, i)) throw PreconditionError("Cayley transform needs an antisymmetric matrix");
  const auto id = Matrix<Rational>::identity(s.rows());
  return (id - s) * exact_inverse(id + s);
}

namespace {

Matrix<std::complex<double>> from_eigen(const Eigen::MatrixXcd& m) {
  Matrix<std::complex<double>> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

}  // namespace

Matrix<std::complex<double>> random_special_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return from_eigen(q.cast<std::complex<double>>());
}

Matrix<std::complex<double>> random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = {gauss(rng), gauss(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    std::complex<double> d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return from_eigen(q);
}

// ---------------------------------------------------------------------------

CurvatureModel sphere2(const Rational& radius) {
  if (sgn(radius) <= 0) throw PreconditionError("radius must be positive");
  CurvatureModel m;
  m.name = "sphere2(r=" + radius.get_str() + ")";
  m.dim = 2;
  m.curvature = ExactFormMatrix(2, 2, ExactForm::zero(2));
  const Rational k = 1 / (radius * radius);
  m.curvature(0, 1) = ExactForm::two_form(2, 1, 2, PiLaurent(k));
  m.curvature(1, 0) = -m.curvature(0, 1);
  m.volume = PiLaurent(GaussianRational(4 * radius * radius), 1);
  return m;
}

CurvatureModel torus2() {
  CurvatureModel m;
  m.name = "torus2";
  m.dim = 2;
  m.curvature = ExactFormMatrix(2, 2, ExactForm::zero(2));
  m.volume = PiLaurent(1);
  return m;
}

CurvatureModel sphere4(const Rational& radius) {
  if (sgn(radius) <= 0) throw PreconditionError("radius must be positive");
  CurvatureModel m;
  m.name = "sphere4(r=" + radius.get_str() + ")";
  m.dim = 4;
  m.curvature = ExactFormMatrix(4, 4, ExactForm::zero(4));
  const Rational k = 1 / (radius * radius);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (a != b) m.curvature(a, b) = ExactForm::two_form(4, a + 1, b + 1, PiLaurent(k));
  const Rational r4 = radius * radius * radius * radius;
  m.volume = PiLaurent(GaussianRational(Rational(8, 3) * r4), 2);
  return m;
}

CurvatureModel product(const CurvatureModel& a, const CurvatureModel& b) {
  CurvatureModel m;
  m.name = a.name + " x " + b.name;
  m.dim = a.dim + b.dim;
  if (m.dim > 64) throw DimensionError("product coframe exceeds 64");
  const std::size_t na = a.curvature.rows(), nb = b.curvature.rows();
  m.curvature = ExactFormMatrix(na + nb, na + nb, ExactForm::zero(m.dim));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (const auto& [mask, c] : a.curvature(i, j).terms())
        m.curvature(i, j) += ExactForm::monomial(m.dim, mask, c);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (const auto& [mask, c] : b.curvature(i, j).terms())
        m.curvature(na + i, na + j) += ExactForm::monomial(m.dim, mask << a.dim, c);
  m.volume = a.volume * b.volume;
  return m;
}

CurvatureModel curvature_model(const std::string& name, const Rational& radius) {
  if (name == "sphere2") return sphere2(radius);
  if (name == "torus2") return torus2();
  if (name == "sphere4") return sphere4(radius);
  if (name == "s2xs2" || name == "product") return product(sphere2(radius), sphere2(radius));
  if (name == "s2xt2") return product(sphere2(radius), torus2());
  throw PreconditionError("unknown curvature model: " + name);
}

namespace {

Rational json_rational(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number()) return parse_rational(j.dump());
  throw ParseError("expected a rational number");
}

}  // namespace

CurvatureModel load_curvature_model(const std::string& json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    CurvatureModel m;
    m.name = j.value("name", std::string("custom"));
    m.dim = j.at("n").get<int>();
    if (m.dim < 1 || m.dim > 16) throw ParseError("n must lie in [1, 16]");
    m.curvature = ExactFormMatrix(m.dim, m.dim, ExactForm::zero(m.dim));
    for (const auto& e : j.at("entries")) {
      int i = e.at(0).get<int>(), k = e.at(1).get<int>();
      if (i < 1 || k < 1 || i > m.dim || k > m.dim || i >= k) throw ParseError("entry indices must satisfy 1 <= i < j <= n");
      ExactForm f = ExactForm::zero(m.dim);
      for (const auto& mono : e.at(2)) {
        std::uint64_t mask = 0;
        int sign = 1;
        for (const auto& idx : mono.at(0)) {
          int g = idx.get<int>();
          if (g < 1 || g > m.dim) throw ParseError("monomial index out of range");
          std::uint64_t bit = std::uint64_t{1} << (g - 1);
          if (mask & bit) throw ParseError("repeated index in monomial");
          if (std::popcount(mask >> (g - 1)) % 2 == 1) sign = -sign;
          mask |= bit;
        }
        Rational c = json_rational(mono.at(1));
        f += ExactForm::monomial(m.dim, mask, PiLaurent(sign > 0 ? c : Rational(-c)));
      }
      m.curvature(i - 1, k - 1) = f;
      m.curvature(k - 1, i - 1) = -f;
    }
    const auto& v = j.at("volume");
    if (v.is_object())
      m.volume = PiLaurent(GaussianRational(json_rational(v.at("coeff"))), v.value("pi_power", 0));
    else
      m.volume = PiLaurent(json_rational(v));
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("curvature model JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("curvature model JSON: ") + e.what());
  }
}

PiLaurent integrate_top(const ExactForm& form, const CurvatureModel& model) {
  if (form.dim() != 0 && form.dim() != model.dim) throw DimensionError("form and model have different dimensions");
  const std::uint64_t top = model.dim == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << model.dim) - 1;
  return form.coeff(top) * model.volume;
}

}  // namespace spingeom
