#include "spingeom/classification.hpp"

#include "spingeom/errors.hpp"

namespace spingeom {

namespace {

constexpr AlgebraType R{Division::R, 1, false};
constexpr AlgebraType C{Division::C, 1, false};
constexpr AlgebraType H{Division::H, 1, false};
constexpr AlgebraType M2R{Division::R, 2, false};

std::uint64_t base_dim(Division d) {
  switch (d) {
    case Division::R:
      return 1;
    case Division::C:
      return 2;
    default:
      return 4;
  }
}

}  // namespace

std::uint64_t AlgebraType::real_dim() const { return base_dim(base) * size * size * (doubled ? 2 : 1); }

std::string to_string(Division d) {
  switch (d) {
    case Division::R:
      return "R";
    case Division::C:
      return "C";
    default:
      return "H";
  }
}

std::string to_string(const AlgebraType& t) {
  std::string one = t.size == 1 ? to_string(t.base) : "M" + std::to_string(t.size) + "(" + to_string(t.base) + ")";
  return t.doubled ? one + " ⊕ " + one : one;
}

AlgebraType tensor(const AlgebraType& a, const AlgebraType& b) {
  AlgebraType out;
  out.size = a.size * b.size;
  int copies = (a.doubled ? 2 : 1) * (b.doubled ? 2 : 1);
  Division x = a.base, y = b.base;
  if (x > y) std::swap(x, y);
  if (x == Division::R) {
    out.base = y;
  } else if (x == Division::C && y == Division::C) {
    out.base = Division::C;
    copies *= 2;
  } else if (x == Division::H && y == Division::H) {
    out.base = Division::R;
    out.size *= 4;
  } else {  // C tensor H
    out.base = Division::C;
    out.size *= 2;
  }
  if (copies > 2) throw PreconditionError("tensor product has more than two simple summands");
  out.doubled = copies == 2;
  return out;
}

AlgebraType classify_real(int p, int q) {
  if (p < 0 || q < 0) throw DimensionError("signature counts must be non-negative");
  if (p >= 1 && q >= 1) return tensor(classify_real(p - 1, q - 1), M2R);
  if (p == 0 && q == 0) return R;
  if (q == 0) {
    if (p == 1) return C;
    if (p == 2) return H;
    return tensor(classify_real(0, p - 2), H);
  }
  if (q == 1) return AlgebraType{Division::R, 1, true};
  if (q == 2) return M2R;
  return tensor(classify_real(q - 2, 0), M2R);
}

AlgebraType classify_complex(int n) {
  if (n < 0) throw DimensionError("negative dimension");
  if (n > 126) throw DimensionError("dimension too large");
  return AlgebraType{Division::C, std::uint64_t{1} << (n / 2), n % 2 == 1};
}

AlgebraType even_subalgebra_type(int p, int q) {
  if (p < 0 || q < 0) throw DimensionError("signature counts must be non-negative");
  if (p + q == 0) throw DimensionError("even subalgebra needs p + q >= 1");
  if (p >= 1) return classify_real(p - 1, q);
  // The even subalgebra does not see the overall sign of the form.
  return classify_real(q - 1, 0);
}

EvenEmbedding even_subalgebra_complex(int n) {
  if (n < 1) throw DimensionError("even subalgebra needs n >= 1");
  EvenEmbedding e;
  e.even = classify_complex(n - 1);
  e.ambient = classify_complex(n);
  e.diagonal = e.ambient.doubled;
  return e;
}

}  // namespace spingeom
