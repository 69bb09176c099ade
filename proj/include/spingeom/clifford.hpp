#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "spingeom/errors.hpp"
#include "spingeom/rational.hpp"

namespace spingeom {

// Sign convention: e_i * e_i = -1 for the first p generators and +1 for the
// remaining q, i.e. v*v = -g(v,v) with g = diag(+1 x p, -1 x q). Under this
// convention Cl(1,0) is the complex numbers. Many texts use the opposite sign.

struct Signature {
  int p = 0;
  int q = 0;

  Signature() = default;
  Signature(int p_, int q_);

  int dim() const { return p + q; }
  /// e_i^2 for the 1-based generator index i.
  int square(int i) const { return i <= p ? -1 : 1; }
  /// Diagonal entry of the bilinear form g(e_i, e_i).
  int metric(int i) const { return i <= p ? 1 : -1; }

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Canonically sorted product of distinct generators, one bit per generator
/// (bit 0 = e1).
struct Blade {
  std::uint64_t mask = 0;

  int grade() const { return std::popcount(mask); }
  bool contains(int i) const { return (mask >> (i - 1)) & 1u; }
  static Blade generator(int i) { return {std::uint64_t{1} << (i - 1)}; }

  friend bool operator==(Blade, Blade) = default;
};

/// Orders blades by grade, then by mask. Printing and iteration follow it.
struct BladeOrder {
  bool operator()(Blade a, Blade b) const {
    int ga = a.grade(), gb = b.grade();
    return ga != gb ? ga < gb : a.mask < b.mask;
  }
};

struct BladeProduct {
  int sign;
  Blade blade;
};

/// Product of two basis blades. Throws DimensionError if either blade uses a
/// generator beyond the signature.
BladeProduct blade_mul(Blade a, Blade b, const Signature& s);

/// Sign of the reversal e_{i1}...e_{ik} -> e_{ik}...e_{i1}.
inline int reversal_sign(int k) { return (k * (k - 1) / 2) % 2 == 0 ? 1 : -1; }

enum class Parity { even, odd, mixed };

template <class C>
class BasicMultivector {
 public:
  using Coeff = C;
  using Terms = std::map<Blade, C, BladeOrder>;

  BasicMultivector() = default;
  explicit BasicMultivector(Signature s) : sig_(s) {}

  static BasicMultivector scalar(Signature s, C c) { return blade(s, Blade{}, std::move(c)); }
  static BasicMultivector blade(Signature s, Blade b, C c = C(1)) {
    check_blade(s, b);
    BasicMultivector m(s);
    m.add_term(b, c);
    return m;
  }
  static BasicMultivector generator(Signature s, int i) {
    if (i < 1 || i > s.dim()) throw DimensionError("generator index out of range: e" + std::to_string(i));
    return blade(s, Blade::generator(i));
  }
  static BasicMultivector vector(Signature s, const std::vector<C>& coeffs) {
    if (static_cast<int>(coeffs.size()) != s.dim()) throw DimensionError("vector length differs from dimension");
    BasicMultivector m(s);
    for (int i = 1; i <= s.dim(); ++i) m.add_term(Blade::generator(i), coeffs[i - 1]);
    return m;
  }

  const Signature& signature() const { return sig_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  C coeff(Blade b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? C{} : it->second;
  }
  C scalar_part() const { return coeff(Blade{}); }
  bool is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.mask == 0); }

  /// Coefficients of the degree-1 part, indexed from 0.
  std::vector<C> vector_part() const {
    std::vector<C> out(sig_.dim());
    for (int i = 1; i <= sig_.dim(); ++i) out[i - 1] = coeff(Blade::generator(i));
    return out;
  }

  BasicMultivector grade(int k) const {
    BasicMultivector out(sig_);
    for (const auto& [b, c] : terms_)
      if (b.grade() == k) out.terms_.emplace(b, c);
    return out;
  }
  BasicMultivector even_part() const { return filter_parity(0); }
  BasicMultivector odd_part() const { return filter_parity(1); }

  Parity parity() const {
    bool has_even = false, has_odd = false;
    for (const auto& [b, c] : terms_) (b.grade() % 2 == 0 ? has_even : has_odd) = true;
    if (has_even && has_odd) return Parity::mixed;
    return has_odd ? Parity::odd : Parity::even;
  }

  BasicMultivector& operator+=(const BasicMultivector& o) {
    check_sig(o);
    for (const auto& [b, c] : o.terms_) add_term(b, c);
    return *this;
  }
  BasicMultivector& operator-=(const BasicMultivector& o) {
    check_sig(o);
    for (const auto& [b, c] : o.terms_) add_term(b, -c);
    return *this;
  }
  BasicMultivector& operator*=(const C& s) {
    if (Scalar<C>::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= s;
      if (Scalar<C>::is_zero(it->second))
        it = terms_.erase(it);
      else
        ++it;
    }
    return *this;
  }

  friend BasicMultivector operator+(BasicMultivector a, const BasicMultivector& b) { return a += b; }
  friend BasicMultivector operator-(BasicMultivector a, const BasicMultivector& b) { return a -= b; }
  friend BasicMultivector operator-(BasicMultivector a) { return a *= C(-1); }
  friend BasicMultivector operator*(BasicMultivector a, const C& s) { return a *= s; }
  friend BasicMultivector operator*(const C& s, BasicMultivector a) { return a *= s; }

  friend BasicMultivector operator*(const BasicMultivector& a, const BasicMultivector& b) {
    a.check_sig(b);
    BasicMultivector out(a.sig_);
    for (const auto& [ba, ca] : a.terms_)
      for (const auto& [bb, cb] : b.terms_) {
        auto [sign, blade] = blade_mul(ba, bb, a.sig_);
        C c = ca * cb;
        out.add_term(blade, sign > 0 ? c : -c);
      }
    return out;
  }

  friend bool operator==(const BasicMultivector& a, const BasicMultivector& b) {
    return a.sig_ == b.sig_ && a.terms_ == b.terms_;
  }

  /// The parity automorphism: negates odd blades.
  BasicMultivector grade_involution() const {
    BasicMultivector out = *this;
    for (auto& [b, c] : out.terms_)
      if (b.grade() % 2 == 1) c = -c;
    return out;
  }

  /// Reverses the factor order of every blade.
  BasicMultivector transpose() const {
    BasicMultivector out = *this;
    for (auto& [b, c] : out.terms_)
      if (reversal_sign(b.grade()) < 0) c = -c;
    return out;
  }

  /// N(x) = x * grade_involution(transpose(x)).
  BasicMultivector norm() const { return *this * transpose().grade_involution(); }

  /// Complex conjugation of coefficients.
  BasicMultivector conj() const {
    BasicMultivector out(sig_);
    for (const auto& [b, c] : terms_) out.add_term(b, Scalar<C>::conj(c));
    return out;
  }

  BasicMultivector inverse() const;

  /// Largest coefficient magnitude.
  double max_abs() const {
    double m = 0;
    for (const auto& [b, c] : terms_) m = std::max(m, Scalar<C>::magnitude(c));
    return m;
  }

  void add_term(Blade b, const C& c) {
    if (Scalar<C>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(b, c);
    if (inserted) return;
    it->second += c;
    if (Scalar<C>::is_zero(it->second)) terms_.erase(it);
  }

 private:
  static void check_blade(const Signature& s, Blade b) {
    if (s.dim() < 64 && (b.mask >> s.dim()) != 0) throw DimensionError("blade uses a generator beyond the signature");
  }
  void check_sig(const BasicMultivector& o) const {
    if (!(sig_ == o.sig_)) throw SignatureMismatch("multivectors have different signatures");
  }
  BasicMultivector filter_parity(int par) const {
    BasicMultivector out(sig_);
    for (const auto& [b, c] : terms_)
      if (b.grade() % 2 == par) out.terms_.emplace(b, c);
    return out;
  }

  Signature sig_;
  Terms terms_;
};

using Multivector = BasicMultivector<GaussianRational>;
using MultivectorF = BasicMultivector<std::complex<double>>;

MultivectorF to_float(const Multivector& m);

/// ab - ba.
template <class C>
BasicMultivector<C> commutator(const BasicMultivector<C>& a, const BasicMultivector<C>& b) {
  return a * b - b * a;
}

/// ab - (-1)^{|a||b|} ba, extended bilinearly over the parity-homogeneous parts.
template <class C>
BasicMultivector<C> supercommutator(const BasicMultivector<C>& a, const BasicMultivector<C>& b) {
  const auto a0 = a.even_part(), a1 = a.odd_part();
  const auto b0 = b.even_part(), b1 = b.odd_part();
  return commutator(a0, b0) + commutator(a0, b1) + commutator(a1, b0) + (a1 * b1 + b1 * a1);
}

/// g(v, w) for degree-1 coefficient vectors.
template <class C>
C bilinear(const Signature& s, const std::vector<C>& v, const std::vector<C>& w) {
  C acc{};
  for (int i = 1; i <= s.dim(); ++i) {
    C t = v[i - 1] * w[i - 1];
    acc += s.metric(i) > 0 ? t : -t;
  }
  return acc;
}

/// Complex volume element i^{floor((n+1)/2)} e1...en of Cl(n,0) (complexified).
template <class C>
BasicMultivector<C> volume_element(int n) {
  if (n <= 0) throw DimensionError("volume element needs n >= 1");
  Signature s(n, 0);
  C phase(1);
  for (int k = 0; k < (n + 1) / 2; ++k) phase *= Scalar<C>::imag_unit();
  std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return BasicMultivector<C>::blade(s, Blade{mask}, phase);
}

/// Left-multiplication matrix of a on the 2^n-dimensional algebra, columns
/// indexed by blade mask.
template <class C>
std::vector<std::vector<C>> left_regular(const BasicMultivector<C>& a) {
  const int n = a.signature().dim();
  if (n > 12) throw DimensionError("regular representation limited to n <= 12");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::vector<C>> m(dim, std::vector<C>(dim));
  for (std::size_t col = 0; col < dim; ++col)
    for (const auto& [b, c] : a.terms()) {
      auto [sign, blade] = blade_mul(b, Blade{col}, a.signature());
      m[blade.mask][col] += sign > 0 ? c : -c;
    }
  return m;
}

template <class C>
BasicMultivector<C> BasicMultivector<C>::inverse() const {
  if (is_zero()) throw NotInvertible("zero multivector");
  // Versor path: x * eps(x^T) is a nonzero scalar for Clifford-group elements.
  const BasicMultivector conj_t = transpose().grade_involution();
  const BasicMultivector nrm = *this * conj_t;
  if (nrm.is_scalar() && !nrm.is_zero()) {
    BasicMultivector cand = conj_t * Scalar<C>::inverse(nrm.scalar_part());
    const BasicMultivector check = cand * *this;
    if constexpr (Scalar<C>::exact) {
      if (check == scalar(sig_, C(1))) return cand;
    } else {
      if ((check - scalar(sig_, C(1))).max_abs() <= 1e-12 * std::max(1.0, max_abs() * cand.max_abs())) return cand;
    }
  }
  // General path: solve a * x = 1 in the regular representation.
  auto m = left_regular(*this);
  const std::size_t dim = m.size();
  std::vector<C> rhs(dim);
  rhs[0] = C(1);
  double scale = 0;
  for (const auto& row : m)
    for (const auto& x : row) scale = std::max(scale, Scalar<C>::magnitude(x));
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t pivot = col;
    double best = Scalar<C>::magnitude(m[col][col]);
    for (std::size_t r = col + 1; r < dim; ++r) {
      double mag = Scalar<C>::magnitude(m[r][col]);
      if (mag > best) best = mag, pivot = r;
    }
    const bool singular = Scalar<C>::exact ? best == 0.0 : best <= 1e-13 * scale;
    if (singular) throw NotInvertible("multivector is not invertible");
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    const C inv = Scalar<C>::inverse(m[col][col]);
    for (std::size_t r = 0; r < dim; ++r) {
      if (r == col || Scalar<C>::is_zero(m[r][col])) continue;
      const C f = m[r][col] * inv;
      for (std::size_t c = col; c < dim; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  BasicMultivector out(sig_);
  for (std::size_t k = 0; k < dim; ++k) out.add_term(Blade{k}, rhs[k] * Scalar<C>::inverse(m[k][k]));
  return out;
}

/// True when every coefficient of a - b is within tol.
bool approx_equal(const MultivectorF& a, const MultivectorF& b, double tol);

// Text form: terms joined by " + " / " - ", each term coefficient "*" blade,
// e.g. "3/2*e1e3 - i*e2". Complex coefficients print as "(a+b*i)". Blade
// factors may be given in any order on input ("e2e1" parses as -e1e2).
std::string to_string(const Multivector& m);
std::string to_string(const MultivectorF& m);
Multivector parse_multivector(std::string_view text, const Signature& s);
MultivectorF parse_multivector_float(std::string_view text, const Signature& s);

std::string to_string(Parity p);

}  // namespace spingeom
