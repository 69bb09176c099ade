#include "spingeom/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace spingeom {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational out;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed rational literal: " + std::string(text));
    out = Rational(mpz_class(std::string(num), 10), mpz_class(std::string(den), 10));
    if (sgn(out.get_den()) == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    out.canonicalize();
  } else {
    // decimal with optional fraction and exponent
    std::string_view mant = s;
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      mant = s.substr(0, e);
      auto ex = s.substr(e + 1);
      bool eneg = false;
      if (!ex.empty() && (ex.front() == '+' || ex.front() == '-')) {
        eneg = ex.front() == '-';
        ex.remove_prefix(1);
      }
      if (!all_digits(ex)) throw std::invalid_argument("malformed exponent: " + std::string(text));
      exponent = std::stol(std::string(ex));
      if (eneg) exponent = -exponent;
    }
    std::string digits;
    if (auto dot = mant.find('.'); dot != std::string_view::npos) {
      auto ip = mant.substr(0, dot);
      auto fp = mant.substr(dot + 1);
      if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
        throw std::invalid_argument("malformed decimal literal: " + std::string(text));
      digits = std::string(ip) + std::string(fp);
      exponent -= static_cast<long>(fp.size());
    } else {
      if (!all_digits(mant)) throw std::invalid_argument("malformed number: " + std::string(text));
      digits = std::string(mant);
    }
    mpz_class num(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    out = exponent < 0 ? Rational(num, scale) : Rational(num * scale);
    out.canonicalize();
  }
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& r) { return r.get_str(); }

GaussianRational GaussianRational::inverse() const {
  Rational n = norm2();
  if (sgn(n) == 0) throw std::domain_error("division by zero Gaussian rational");
  return {re / n, -im / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

std::string to_string(const GaussianRational& z) {
  if (z.is_real()) return z.re.get_str();
  std::string im_part;
  if (z.im == 1)
    im_part = "i";
  else if (z.im == -1)
    im_part = "-i";
  else
    im_part = z.im.get_str() + "*i";
  if (sgn(z.re) == 0) return im_part;
  std::string out = "(" + z.re.get_str();
  out += sgn(z.im) < 0 ? im_part : "+" + im_part;
  return out + ")";
}

PiLaurent::PiLaurent(GaussianRational c, int pi_power) { add_term(pi_power, c); }

void PiLaurent::add_term(int k, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

GaussianRational PiLaurent::coeff(int k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? GaussianRational{} : it->second;
}

PiLaurent& PiLaurent::operator+=(const PiLaurent& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

PiLaurent& PiLaurent::operator-=(const PiLaurent& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

PiLaurent& PiLaurent::operator*=(const PiLaurent& o) {
  PiLaurent out;
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) out.add_term(k1 + k2, c1 * c2);
  *this = std::move(out);
  return *this;
}

PiLaurent& PiLaurent::operator/=(const PiLaurent& o) {
  if (!o.is_monomial()) throw std::domain_error("PiLaurent division requires a monomial divisor");
  const auto& [k, c] = *o.terms_.begin();
  PiLaurent inv(c.inverse(), -k);
  return *this *= inv;
}

PiLaurent operator-(const PiLaurent& a) {
  PiLaurent out;
  for (const auto& [k, c] : a.terms_) out.terms_.emplace(k, -c);
  return out;
}

std::complex<double> PiLaurent::to_complex() const {
  std::complex<double> acc{};
  for (const auto& [k, c] : terms_) acc += c.to_complex() * std::pow(3.14159265358979323846, k);
  return acc;
}

std::string to_string(const PiLaurent& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : x.terms()) {
    if (!first) out += " + ";
    first = false;
    std::string cs = to_string(c);
    if (k == 0)
      out += cs;
    else
      out += cs + "*pi^" + std::to_string(k);
  }
  return out;
}

}  // namespace spingeom
