#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "spingeom/errors.hpp"
#include "spingeom/matrix.hpp"
#include "spingeom/rational.hpp"

namespace spingeom {

// ---------------------------------------------------------------------------
// Scalar series

/// Bernoulli numbers with B_1 = -1/2.
Rational bernoulli(int k);

enum class Genus { chern, todd, chern_character, pontryagin, l_genus, a_hat, euler };

std::string to_string(Genus g);
/// Accepts "chern", "todd", "ch", "chern_character", "pontryagin", "L", "l",
/// "ahat", "a_hat", "euler". Throws PreconditionError otherwise.
Genus parse_genus(const std::string& name);

/// How a power series is turned into a class:
///   det       det g(X)                 (U(n) family, variable y = x)
///   det_sqrt  det^{1/2} f(X), f even   (O(n) family, variable y = x^2)
///   trace     tr g(X)                  (Chern character)
enum class SeriesKind { det, det_sqrt, trace };

struct GenusSeries {
  std::string name;
  SeriesKind kind = SeriesKind::det;
  /// Coefficients in the variable y (see SeriesKind). coeffs[0] == 1.
  std::vector<Rational> coeffs;
};

/// Series of a named genus with at least `terms` coefficients. Euler has no
/// series and throws.
GenusSeries genus_series(Genus g, int terms);

/// Taylor coefficients of the one-variable function in x: for det_sqrt kinds
/// these are the even coefficients spread out (x^0, x^1, x^2, ...).
std::vector<Rational> taylor_in_x(const GenusSeries& s, int order);

/// Polynomial in the elementary symmetric classes (p_i for the O(n) family,
/// c_i for the U(n) family). Key: exponent vector (e1, e2, ...).
struct ClassPolynomial {
  std::string variable;  // "p" or "c"
  std::map<std::vector<int>, Rational> terms;

  Rational coeff(const std::vector<int>& exps) const;
  std::string to_string() const;
};

struct GenusExpansion {
  std::vector<Rational> taylor;  // in x, up to x^(2*weight) or x^weight
  ClassPolynomial classes;       // up to the given weight
};

/// Expansion of a multiplicative genus in characteristic classes up to the
/// given weight (p_k and c_k have weight k).
GenusExpansion genus_expand(Genus g, int weight);

// ---------------------------------------------------------------------------
// Even forms

/// Element of the even part of the exterior algebra on m generators e^1..e^m
/// with coefficients in C. Even forms commute, so this is a commutative ring;
/// degree above m vanishes automatically. A form with m == 0 is a constant
/// that adapts to the coframe of whatever it is combined with.
template <class C>
class FormPoly {
 public:
  using Terms = std::map<std::uint64_t, C>;

  FormPoly() = default;
  FormPoly(C c) { add(0, c); }
  FormPoly(int c) : FormPoly(C(c)) {}

  /// c * e^{i1} ^ ... ^ e^{ik} for the sorted bits of `mask` (bit 0 = e^1).
  static FormPoly monomial(int m, std::uint64_t mask, C c) {
    check_dim(m);
    if (m < 64 && (mask >> m) != 0) throw DimensionError("monomial uses a generator beyond the coframe");
    if (std::popcount(mask) % 2 != 0) throw PreconditionError("only even-degree forms are supported");
    FormPoly f;
    f.m_ = m;
    f.add(mask, c);
    return f;
  }
  /// c * e^i ^ e^j with 1-based indices in any order.
  static FormPoly two_form(int m, int i, int j, C c = C(1)) {
    if (i == j) return zero(m);
    if (i < 1 || j < 1 || i > m || j > m) throw DimensionError("two-form index out of range");
    std::uint64_t mask = (std::uint64_t{1} << (i - 1)) | (std::uint64_t{1} << (j - 1));
    return monomial(m, mask, i < j ? c : -c);
  }
  static FormPoly zero(int m) {
    check_dim(m);
    FormPoly f;
    f.m_ = m;
    return f;
  }

  int dim() const { return m_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  C coeff(std::uint64_t mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? C{} : it->second;
  }
  C constant_term() const { return coeff(0); }
  /// Coefficient of e^1 ^ ... ^ e^m.
  C top_coeff() const {
    if (m_ == 0) return constant_term();
    return coeff(m_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m_) - 1);
  }
  FormPoly degree(int k) const {
    FormPoly out = zero_like();
    for (const auto& [mask, c] : terms_)
      if (std::popcount(mask) == k) out.terms_.emplace(mask, c);
    return out;
  }

  FormPoly& operator+=(const FormPoly& o) {
    adopt(o);
    for (const auto& [mask, c] : o.terms_) add(mask, c);
    return *this;
  }
  FormPoly& operator-=(const FormPoly& o) {
    adopt(o);
    for (const auto& [mask, c] : o.terms_) add(mask, -c);
    return *this;
  }
  FormPoly& operator*=(const FormPoly& o) {
    adopt(o);
    FormPoly out = zero_like();
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) {
        if (ma & mb) continue;
        int swaps = 0;
        for (std::uint64_t rest = mb; rest; rest &= rest - 1) {
          int j = std::countr_zero(rest);
          swaps += j == 63 ? 0 : std::popcount(ma >> (j + 1));
        }
        C c = ca * cb;
        out.add(ma | mb, swaps % 2 == 0 ? c : -c);
      }
    *this = std::move(out);
    return *this;
  }
  FormPoly& operator*=(const C& s) {
    FormPoly out = zero_like();
    for (const auto& [mask, c] : terms_) out.add(mask, c * s);
    *this = std::move(out);
    return *this;
  }

  friend FormPoly operator+(FormPoly a, const FormPoly& b) { return a += b; }
  friend FormPoly operator-(FormPoly a, const FormPoly& b) { return a -= b; }
  friend FormPoly operator*(FormPoly a, const FormPoly& b) { return a *= b; }
  friend FormPoly operator*(FormPoly a, const C& s) { return a *= s; }
  friend FormPoly operator*(const C& s, FormPoly a) { return a *= s; }
  friend FormPoly operator-(FormPoly a) { return a *= C(-1); }
  friend bool operator==(const FormPoly& a, const FormPoly& b) {
    if (a.terms_ != b.terms_) return false;
    return a.m_ == b.m_ || a.m_ == 0 || b.m_ == 0;
  }

  /// Largest coefficient magnitude.
  double max_abs() const {
    double m = 0;
    for (const auto& [mask, c] : terms_) m = std::max(m, Scalar<C>::magnitude(c));
    return m;
  }

 private:
  static void check_dim(int m) {
    if (m < 0 || m > 64) throw DimensionError("coframe dimension must lie in [0, 64]");
  }
  FormPoly zero_like() const {
    FormPoly f;
    f.m_ = m_;
    return f;
  }
  void adopt(const FormPoly& o) {
    if (o.m_ == 0) return;
    if (m_ == 0) {
      m_ = o.m_;
      return;
    }
    if (m_ != o.m_) throw DimensionError("forms over different coframes");
  }
  void add(std::uint64_t mask, const C& c) {
    if (Scalar<C>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(mask, c);
    if (inserted) return;
    it->second += c;
    if (Scalar<C>::is_zero(it->second)) terms_.erase(it);
  }

  int m_ = 0;
  Terms terms_;
};

template <class C>
using FormMatrix = Matrix<FormPoly<C>>;

using ExactForm = FormPoly<PiLaurent>;
using ExactFormMatrix = FormMatrix<PiLaurent>;
using FloatForm = FormPoly<std::complex<double>>;
using FloatFormMatrix = FormMatrix<std::complex<double>>;

std::string to_string(const ExactForm& f);
std::string to_string(const FloatForm& f);

FloatForm to_float(const ExactForm& f);
FloatFormMatrix to_float(const ExactFormMatrix& m);

/// The factors i/(2 pi) and 1/(2 pi) in each coefficient ring.
template <class C>
struct ChernWeilConstants;

template <>
struct ChernWeilConstants<PiLaurent> {
  static PiLaurent i_over_2pi() { return PiLaurent(GaussianRational(Rational(0), Rational(1, 2)), -1); }
  static PiLaurent one_over_2pi() { return PiLaurent(GaussianRational(Rational(1, 2)), -1); }
};

template <>
struct ChernWeilConstants<std::complex<double>> {
  static std::complex<double> i_over_2pi() { return {0.0, 0.5 / 3.14159265358979323846}; }
  static std::complex<double> one_over_2pi() { return {0.5 / 3.14159265358979323846, 0.0}; }
};

namespace detail {

template <class C>
bool all_nilpotent(const FormMatrix<C>& m) {
  for (const auto& x : m.data())
    if (!Scalar<C>::is_zero(x.constant_term())) return false;
  return true;
}

template <class C>
bool is_zero_matrix(const FormMatrix<C>& m) {
  for (const auto& x : m.data())
    if (!x.is_zero()) return false;
  return true;
}

template <class C>
int coframe_dim(const FormMatrix<C>& m) {
  int d = 0;
  for (const auto& x : m.data()) d = std::max(d, x.dim());
  return d;
}

// sum_k a_k M^k for a matrix with nilpotent entries; stops once M^k = 0.
template <class C>
FormMatrix<C> nilpotent_matrix_series(const FormMatrix<C>& m, const std::vector<Rational>& a) {
  if (!all_nilpotent(m)) throw PreconditionError("matrix series needs entries without constant term");
  const std::size_t n = m.rows();
  FormMatrix<C> out = FormMatrix<C>::identity(n) * FormPoly<C>(Scalar<C>::from_rational(a.at(0)));
  FormMatrix<C> power = FormMatrix<C>::identity(n);
  for (std::size_t k = 1;; ++k) {
    power = power * m;
    if (is_zero_matrix(power)) break;
    if (k >= a.size()) throw PreconditionError("series too short for the nilpotency order");
    out += power * FormPoly<C>(Scalar<C>::from_rational(a[k]));
  }
  return out;
}

}  // namespace detail

template <class C>
FormPoly<C> form_tr(const FormMatrix<C>& m) {
  return m.trace();
}

/// Determinant by the subset expansion of the Leibniz formula; valid over
/// any commutative ring, in particular with nilpotent entries. O(n 2^n).
template <class C>
FormPoly<C> form_det(const FormMatrix<C>& m) {
  if (!m.square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n > 20) throw DimensionError("determinant size limited to 20");
  std::vector<FormPoly<C>> dp(std::size_t{1} << n);
  dp[0] = FormPoly<C>(1);
  for (std::size_t mask = 0; mask < dp.size(); ++mask) {
    if (dp[mask].is_zero()) continue;
    const std::size_t row = std::popcount(mask);
    if (row == n) continue;
    for (std::size_t col = 0; col < n; ++col) {
      if (mask & (std::size_t{1} << col)) continue;
      const auto& a = m(row, col);
      if (a.is_zero()) continue;
      FormPoly<C> t = dp[mask] * a;
      if (std::popcount(mask >> col) % 2 == 1) t = -t;
      dp[mask | (std::size_t{1} << col)] += t;
    }
  }
  return dp.back();
}

/// Square root of a form with constant term 1, by the binomial series.
template <class C>
FormPoly<C> form_sqrt_unipotent(const FormPoly<C>& d) {
  if (!(d.constant_term() == C(1))) throw PreconditionError("square root needs constant term 1");
  const FormPoly<C> nil = d - FormPoly<C>(1);
  FormPoly<C> out(1);
  FormPoly<C> power(1);
  Rational binom(1);
  for (int k = 1;; ++k) {
    power *= nil;
    if (power.is_zero()) break;
    binom *= Rational(1, 2) - Rational(k - 1);
    binom /= k;
    out += power * Scalar<C>::from_rational(binom);
  }
  return out;
}

template <class C>
FormPoly<C> form_det_sqrt(const FormMatrix<C>& m) {
  return form_sqrt_unipotent(form_det(m));
}

/// exp(M) for a matrix with nilpotent entries.
template <class C>
FormMatrix<C> form_exp(const FormMatrix<C>& m) {
  if (!m.square()) throw DimensionError("exponential of a non-square matrix");
  std::vector<Rational> inv_fact{Rational(1)};
  const int cap = detail::coframe_dim(m) / 2 + 2;
  for (int k = 1; k <= cap; ++k) inv_fact.push_back(inv_fact.back() / k);
  return detail::nilpotent_matrix_series(m, inv_fact);
}

/// Exact comparison for exact coefficients; relative 1e-12 for floats.
template <class C>
bool is_antisymmetric(const FormMatrix<C>& a) {
  if (!a.square()) return false;
  double scale = 0;
  if constexpr (!Scalar<C>::exact)
    for (const auto& x : a.data()) scale = std::max(scale, x.max_abs());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.rows(); ++j) {
      if constexpr (Scalar<C>::exact) {
        if (!(a(i, j) == -a(j, i))) return false;
      } else {
        if ((a(i, j) + a(j, i)).max_abs() > 1e-12 * std::max(1.0, scale)) return false;
      }
    }
  return true;
}

template <class C>
FormPoly<C> form_pfaffian(const FormMatrix<C>& a) {
  if (!a.square()) throw DimensionError("Pfaffian of a non-square matrix");
  if (a.rows() % 2 != 0) throw PreconditionError("Pfaffian needs even size");
  if (!is_antisymmetric(a)) throw PreconditionError("Pfaffian needs an antisymmetric matrix");
  return pfaffian_expand(a);
}

/// Evaluates a series on the curvature F. The factor i/(2 pi) is applied
/// here: X = (i/2pi) F.
template <class C>
FormPoly<C> genus_eval(const GenusSeries& s, const FormMatrix<C>& curvature) {
  if (!curvature.square()) throw DimensionError("curvature must be square");
  const FormMatrix<C> x = curvature * FormPoly<C>(ChernWeilConstants<C>::i_over_2pi());
  switch (s.kind) {
    case SeriesKind::det:
      return form_det(detail::nilpotent_matrix_series(x, s.coeffs));
    case SeriesKind::trace:
      return form_tr(detail::nilpotent_matrix_series(x, s.coeffs));
    case SeriesKind::det_sqrt:
      if (!is_antisymmetric(curvature)) throw PreconditionError(s.name + " needs an antisymmetric curvature");
      return form_det_sqrt(detail::nilpotent_matrix_series(x * x, s.coeffs));
  }
  throw PreconditionError("unknown series kind");
}

template <class C>
FormPoly<C> genus_eval(Genus g, const FormMatrix<C>& curvature) {
  if (g == Genus::euler) {
    return form_pfaffian(curvature * FormPoly<C>(ChernWeilConstants<C>::one_over_2pi()));
  }
  const int m = detail::coframe_dim(curvature);
  return genus_eval(genus_series(g, m + 2), curvature);
}

/// G F G^{-1}.
template <class C>
FormMatrix<C> conjugate(const FormMatrix<C>& f, const Matrix<C>& g, const Matrix<C>& g_inv) {
  const std::size_t n = f.rows();
  if (g.rows() != n || g.cols() != n || g_inv.rows() != n || g_inv.cols() != n)
    throw DimensionError("conjugating matrix has the wrong size");
  FormMatrix<C> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      FormPoly<C> acc;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          C c = g(i, k) * g_inv(l, j);
          if (Scalar<C>::is_zero(c) || f(k, l).is_zero()) continue;
          acc += f(k, l) * c;
        }
      out(i, j) = acc;
    }
  return out;
}

/// Max coefficient magnitude of genus(G F G^{-1}) - genus(F).
template <class C>
double invariance_check(Genus g, const FormMatrix<C>& curvature, const Matrix<C>& conj, const Matrix<C>& conj_inv) {
  const auto before = genus_eval(g, curvature);
  const auto after = genus_eval(g, conjugate(curvature, conj, conj_inv));
  return (after - before).max_abs();
}

/// Exact rational rotation (I - S)(I + S)^{-1} from an antisymmetric S.
Matrix<Rational> cayley_orthogonal(const Matrix<Rational>& s);
/// Haar-ish random rotation / unitary via QR of a Gaussian matrix.
Matrix<std::complex<double>> random_special_orthogonal(int n, std::mt19937_64& rng);
Matrix<std::complex<double>> random_unitary(int n, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Curvature models

struct CurvatureModel {
  std::string name;
  int dim = 0;               // coframe dimension = fiber dimension
  ExactFormMatrix curvature;  // in a global orthonormal coframe
  PiLaurent volume;          // total volume
};

CurvatureModel sphere2(const Rational& radius);
CurvatureModel torus2();
CurvatureModel sphere4(const Rational& radius);
CurvatureModel product(const CurvatureModel& a, const CurvatureModel& b);
/// "sphere2", "torus2", "sphere4", "s2xs2" (product of unit-radius-scaled
/// spheres), with radius for the spheres.
CurvatureModel curvature_model(const std::string& name, const Rational& radius);
/// JSON: {"name": ..., "n": 2, "volume": {"coeff": "4", "pi_power": 1},
///        "entries": [[1, 2, [[[1, 2], "1"]]], ...]}
/// Entries list R_ij (1-based) for i < j as (monomial index list, rational
/// coefficient) pairs; R_ji = -R_ij is filled in.
CurvatureModel load_curvature_model(const std::string& json_text);

/// Top-degree coefficient times the model volume.
PiLaurent integrate_top(const ExactForm& form, const CurvatureModel& model);

}  // namespace spingeom
