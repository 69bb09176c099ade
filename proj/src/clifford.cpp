#include "spingeom/clifford.hpp"

#include <charconv>
#include <cmath>
#include <vector>

namespace spingeom {

Signature::Signature(int p_, int q_) : p(p_), q(q_) {
  if (p < 0 || q < 0) throw DimensionError("signature counts must be non-negative");
  if (p + q > 64) throw DimensionError("signature dimension exceeds 64 generators");
}

BladeProduct blade_mul(Blade a, Blade b, const Signature& s) {
  const int n = s.dim();
  if (n < 64 && ((a.mask | b.mask) >> n) != 0) throw DimensionError("blade index exceeds p+q");
  // Move each factor of b leftwards past the factors of a with larger index.
  int swaps = 0;
  for (std::uint64_t rest = b.mask; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    swaps += j == 63 ? 0 : std::popcount(a.mask >> (j + 1));
  }
  int sign = swaps % 2 == 0 ? 1 : -1;
  const std::uint64_t common = a.mask & b.mask;
  const std::uint64_t neg_squares = s.p >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << s.p) - 1;
  if (std::popcount(common & neg_squares) % 2 == 1) sign = -sign;
  return {sign, Blade{a.mask ^ b.mask}};
}

MultivectorF to_float(const Multivector& m) {
  MultivectorF out(m.signature());
  for (const auto& [b, c] : m.terms()) out.add_term(b, c.to_complex());
  return out;
}

bool approx_equal(const MultivectorF& a, const MultivectorF& b, double tol) { return (a - b).max_abs() <= tol; }

std::string to_string(Parity p) {
  switch (p) {
    case Parity::even:
      return "even";
    case Parity::odd:
      return "odd";
    default:
      return "mixed";
  }
}

namespace {

std::string blade_text(Blade b) {
  std::string out;
  for (std::uint64_t rest = b.mask; rest; rest &= rest - 1) out += "e" + std::to_string(std::countr_zero(rest) + 1);
  return out;
}

std::string real_text(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// Coefficient text without a leading sign; `negative` reports the sign that
// was stripped so the caller can join terms with " - ".
struct CoeffText {
  bool negative = false;
  std::string text;
};

CoeffText coeff_text(const GaussianRational& z) {
  if (z.is_real()) {
    Rational a = abs(z.re);
    return {sgn(z.re) < 0, a.get_str()};
  }
  if (sgn(z.re) == 0) {
    Rational a = abs(z.im);
    return {sgn(z.im) < 0, a == 1 ? std::string("i") : a.get_str() + "*i"};
  }
  return {false, to_string(z)};
}

CoeffText coeff_text(const std::complex<double>& z) {
  if (z.imag() == 0.0) return {std::signbit(z.real()), real_text(std::abs(z.real()))};
  if (z.real() == 0.0) {
    double a = std::abs(z.imag());
    return {std::signbit(z.imag()), a == 1.0 ? std::string("i") : real_text(a) + "*i"};
  }
  std::string im = z.imag() < 0 ? "-" + real_text(-z.imag()) : "+" + real_text(z.imag());
  return {false, "(" + real_text(z.real()) + im + "*i)"};
}

template <class C>
std::string print(const BasicMultivector<C>& m) {
  if (m.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [b, c] : m.terms()) {
    CoeffText ct = coeff_text(c);
    std::string term;
    if (b.mask == 0)
      term = ct.text;
    else if (ct.text == "1")
      term = blade_text(b);
    else
      term = ct.text + "*" + blade_text(b);
    if (first)
      out += ct.negative ? "-" + term : term;
    else
      out += (ct.negative ? " - " : " + ") + term;
    first = false;
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

// Splits at top-level '+'/'-' that are not part of a decimal exponent.
// Each returned piece keeps its leading sign character.
std::vector<std::string> split_terms(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    char ch = s[k];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) throw ParseError("unbalanced parenthesis");
    if (depth == 0 && (ch == '+' || ch == '-') && k > 0) {
      std::size_t prev = k;
      while (prev > 0 && std::isspace(static_cast<unsigned char>(s[prev - 1]))) --prev;
      bool exponent = prev == k && prev >= 2 && (s[prev - 1] == 'e' || s[prev - 1] == 'E') &&
                      (std::isdigit(static_cast<unsigned char>(s[prev - 2])) || s[prev - 2] == '.');
      bool after_operator = prev > 0 && (s[prev - 1] == '*' || s[prev - 1] == '(');
      if (!exponent && !after_operator && prev > 0) {
        out.push_back(std::string(s.substr(start, k - start)));
        start = k;
      }
    }
  }
  if (depth != 0) throw ParseError("unbalanced parenthesis");
  out.push_back(std::string(s.substr(start)));
  return out;
}

std::vector<std::string> split_factors(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '(') ++depth;
    if (s[k] == ')') --depth;
    if (depth == 0 && s[k] == '*') {
      out.push_back(trim(s.substr(start, k - start)));
      start = k + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

template <class C>
C parse_real(const std::string& text) {
  if constexpr (Scalar<C>::exact) {
    try {
      return C(parse_rational(text));
    } catch (const std::invalid_argument&) {
      throw ParseError("bad number: " + text);
    }
  } else {
    double v = 0;
    const char* begin = text.data();
    if (!text.empty() && text.front() == '+') ++begin;
    auto res = std::from_chars(begin, text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) throw ParseError("bad number: " + text);
    return C(v);
  }
}

template <class C>
BasicMultivector<C> parse(std::string_view text, const Signature& s);

template <class C>
BasicMultivector<C> parse_blade_word(const std::string& f, const Signature& s) {
  BasicMultivector<C> acc = BasicMultivector<C>::scalar(s, C(1));
  std::size_t k = 0;
  while (k < f.size()) {
    if (f[k] != 'e') throw ParseError("bad blade: " + f);
    std::size_t j = k + 1;
    while (j < f.size() && std::isdigit(static_cast<unsigned char>(f[j]))) ++j;
    if (j == k + 1) throw ParseError("bad blade: " + f);
    int idx = std::stoi(f.substr(k + 1, j - k - 1));
    if (idx < 1 || idx > s.dim()) throw DimensionError("generator e" + std::to_string(idx) + " outside signature");
    acc = acc * BasicMultivector<C>::generator(s, idx);
    k = j;
  }
  return acc;
}

template <class C>
BasicMultivector<C> parse_term(std::string term, const Signature& s) {
  term = trim(term);
  bool negative = false;
  while (!term.empty() && (term.front() == '+' || term.front() == '-')) {
    if (term.front() == '-') negative = !negative;
    term = trim(term.substr(1));
  }
  if (term.empty()) throw ParseError("empty term");
  BasicMultivector<C> acc = BasicMultivector<C>::scalar(s, C(negative ? -1 : 1));
  for (const auto& f : split_factors(term)) {
    if (f.empty()) throw ParseError("empty factor in: " + term);
    if (f == "i") {
      acc *= Scalar<C>::imag_unit();
    } else if (f.front() == '(') {
      if (f.back() != ')') throw ParseError("bad parenthesised factor: " + f);
      acc = acc * parse<C>(std::string_view(f).substr(1, f.size() - 2), s);
    } else if (f.front() == 'e' && f.size() > 1 && std::isdigit(static_cast<unsigned char>(f[1]))) {
      acc = acc * parse_blade_word<C>(f, s);
    } else {
      acc *= parse_real<C>(f);
    }
  }
  return acc;
}

template <class C>
BasicMultivector<C> parse(std::string_view text, const Signature& s) {
  std::string t = trim(text);
  if (t.empty()) throw ParseError("empty multivector text");
  BasicMultivector<C> out(s);
  for (const auto& term : split_terms(t)) out += parse_term<C>(term, s);
  return out;
}

}  // namespace

std::string to_string(const Multivector& m) { return print(m); }
std::string to_string(const MultivectorF& m) { return print(m); }

Multivector parse_multivector(std::string_view text, const Signature& s) { return parse<GaussianRational>(text, s); }
MultivectorF parse_multivector_float(std::string_view text, const Signature& s) {
  return parse<std::complex<double>>(text, s);
}

}  // namespace spingeom
