#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace spingeom {

/// Arbitrary-precision rational number.
using Rational = mpq_class;

/// Parse "3", "-3/2" or a finite decimal such as "0.125" / "-1.5e-3" into an
/// exact rational. Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

/// a + b*i with a, b rational. Exact coefficient field of complexified
/// Clifford algebras.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long v) : re(v) {}
  GaussianRational(int v) : re(v) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  GaussianRational conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }
  GaussianRational inverse() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

std::string to_string(const GaussianRational& z);

/// Finite Laurent polynomial in pi with Gaussian-rational coefficients,
/// sum_k c_k pi^k. Characteristic forms carry powers of 1/(2 pi) and model
/// volumes carry powers of pi; this ring keeps both exact. Equality is
/// structural (pi is transcendental).
class PiLaurent {
 public:
  PiLaurent() = default;
  PiLaurent(GaussianRational c, int pi_power = 0);
  PiLaurent(Rational c) : PiLaurent(GaussianRational(std::move(c))) {}
  PiLaurent(long c) : PiLaurent(GaussianRational(c)) {}
  PiLaurent(int c) : PiLaurent(GaussianRational(c)) {}

  static PiLaurent pi_power(int k) { return PiLaurent(GaussianRational(1), k); }
  static PiLaurent i() { return PiLaurent(GaussianRational::i()); }

  const std::map<int, GaussianRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of pi^k (zero when absent).
  GaussianRational coeff(int k) const;
  /// True when the value is c * pi^k for a single k.
  bool is_monomial() const { return terms_.size() == 1; }

  PiLaurent& operator+=(const PiLaurent& o);
  PiLaurent& operator-=(const PiLaurent& o);
  PiLaurent& operator*=(const PiLaurent& o);
  /// Only monomial divisors are invertible in this ring.
  PiLaurent& operator/=(const PiLaurent& o);

  friend PiLaurent operator+(PiLaurent a, const PiLaurent& b) { return a += b; }
  friend PiLaurent operator-(PiLaurent a, const PiLaurent& b) { return a -= b; }
  friend PiLaurent operator*(PiLaurent a, const PiLaurent& b) { return a *= b; }
  friend PiLaurent operator/(PiLaurent a, const PiLaurent& b) { return a /= b; }
  friend PiLaurent operator-(const PiLaurent& a);
  friend bool operator==(const PiLaurent& a, const PiLaurent& b) { return a.terms_ == b.terms_; }

  std::complex<double> to_complex() const;

 private:
  void add_term(int k, const GaussianRational& c);
  std::map<int, GaussianRational> terms_;
};

std::string to_string(const PiLaurent& x);

/// Coefficient-ring traits shared by the exact and floating-point modes.
template <class T>
struct Scalar;

template <>
struct Scalar<GaussianRational> {
  static constexpr bool exact = true;
  static GaussianRational from_rational(const Rational& r) { return GaussianRational(r); }
  static GaussianRational imag_unit() { return GaussianRational::i(); }
  static bool is_zero(const GaussianRational& x) { return x.is_zero(); }
  static GaussianRational inverse(const GaussianRational& x) { return x.inverse(); }
  static GaussianRational conj(const GaussianRational& x) { return x.conj(); }
  static std::complex<double> to_complex(const GaussianRational& x) { return x.to_complex(); }
  static double magnitude(const GaussianRational& x) { return std::abs(x.to_complex()); }
};

template <>
struct Scalar<std::complex<double>> {
  static constexpr bool exact = false;
  static std::complex<double> from_rational(const Rational& r) { return {r.get_d(), 0.0}; }
  static std::complex<double> imag_unit() { return {0.0, 1.0}; }
  static bool is_zero(const std::complex<double>& x) { return x == std::complex<double>{}; }
  static std::complex<double> inverse(const std::complex<double>& x) { return 1.0 / x; }
  static std::complex<double> conj(const std::complex<double>& x) { return std::conj(x); }
  static std::complex<double> to_complex(const std::complex<double>& x) { return x; }
  static double magnitude(const std::complex<double>& x) { return std::abs(x); }
};

template <>
struct Scalar<PiLaurent> {
  static constexpr bool exact = true;
  static PiLaurent from_rational(const Rational& r) { return PiLaurent(r); }
  static PiLaurent imag_unit() { return PiLaurent::i(); }
  static bool is_zero(const PiLaurent& x) { return x.is_zero(); }
  static PiLaurent inverse(const PiLaurent& x) { return PiLaurent(1) / x; }
  static std::complex<double> to_complex(const PiLaurent& x) { return x.to_complex(); }
  static double magnitude(const PiLaurent& x) { return std::abs(x.to_complex()); }
};

template <class T>
concept ExactScalar = Scalar<T>::exact;

}  // namespace spingeom
