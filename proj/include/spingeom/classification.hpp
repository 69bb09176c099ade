#pragma once

#include <cstdint>
#include <string>

namespace spingeom {

enum class Division { R, C, H };

/// Isomorphism type M_size(base), or M_size(base) + M_size(base) when doubled.
struct AlgebraType {
  Division base = Division::R;
  std::uint64_t size = 1;
  bool doubled = false;

  /// Dimension over the reals.
  std::uint64_t real_dim() const;

  friend bool operator==(const AlgebraType&, const AlgebraType&) = default;
};

std::string to_string(Division d);
/// "M2(H)", "C", "M8(R) ⊕ M8(R)".
std::string to_string(const AlgebraType& t);

/// Tensor product over R of two types. Throws when the result would have
/// more than two simple summands.
AlgebraType tensor(const AlgebraType& a, const AlgebraType& b);

/// Type of the real Clifford algebra Cl(p,q) (e_i^2 = -1 for the first p).
AlgebraType classify_real(int p, int q);

/// Type of the complexified algebra Cl(n) tensor C.
AlgebraType classify_complex(int n);

/// Type of the even subalgebra of Cl(p,q). Throws for p + q == 0.
AlgebraType even_subalgebra_type(int p, int q);

/// Even subalgebra of the complex Clifford algebra on n generators, with its
/// ambient type. For odd n the ambient algebra is doubled and the even part
/// sits inside it diagonally.
struct EvenEmbedding {
  AlgebraType even;
  AlgebraType ambient;
  bool diagonal = false;
};
EvenEmbedding even_subalgebra_complex(int n);

}  // namespace spingeom
