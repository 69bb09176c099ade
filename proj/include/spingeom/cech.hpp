#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spingeom/clifford.hpp"

namespace spingeom {

/// Sorted list of patch indices (0-based).
using Simplex = std::vector<int>;

/// Nerve of a finite good cover: every nonempty intersection is listed as a
/// sorted simplex. Downward closed; vertices 0..patches-1 are implicit.
class Nerve {
 public:
  Nerve(int patches, std::vector<Simplex> simplices);

  int patches() const { return patches_; }
  int top_dim() const { return static_cast<int>(by_dim_.size()) - 1; }
  /// k-simplices in a fixed order (empty beyond the top dimension).
  const std::vector<Simplex>& simplices(int k) const;
  std::size_t count(int k) const { return simplices(k).size(); }
  /// Position of a simplex in simplices(k); throws if absent.
  std::size_t index_of(const Simplex& s) const;
  bool contains(const Simplex& s) const;

  std::string to_json() const;

 private:
  int patches_;
  std::vector<std::vector<Simplex>> by_dim_;
  std::map<Simplex, std::size_t> index_;
};

Nerve circle_nerve();  // three arcs
Nerve sphere_nerve();  // boundary of a tetrahedron
Nerve torus_nerve();   // 3x3 triangulated grid, 9 patches
/// {"patches": N, "simplices": [[a,b], [a,b,c], ...]} with 0-based indices.
Nerve load_nerve(const std::string& json_text);
Nerve builtin_nerve(const std::string& name);

/// Z2-valued k-cochain on a nerve, stored additively over simplices(k):
/// bit 1 means the sign -1. Plain value; operations take the nerve.
struct Cochain {
  int degree = 0;
  std::vector<std::uint8_t> bits;

  static Cochain trivial(const Nerve& nerve, int k) { return {k, std::vector<std::uint8_t>(nerve.count(k), 0)}; }

  int sign_at(std::size_t i) const { return bits.at(i) ? -1 : 1; }
  int sign(const Nerve& nerve, const Simplex& s) const;
  void set_sign(const Nerve& nerve, const Simplex& s, int sign);
  bool is_trivial() const;

  friend Cochain operator*(const Cochain& a, const Cochain& b);  // pointwise product
  friend bool operator==(const Cochain&, const Cochain&) = default;
};

/// (delta s)(a_0..a_{k+1}) = prod_i s(a_0..^a_i..a_{k+1}).
Cochain coboundary(const Nerve& nerve, const Cochain& s);

int cohomology_dim(const Nerve& nerve, int k);

struct W1Result {
  Cochain representative;
  bool trivial = false;
  /// When trivial: a 0-cochain s with representative = delta s.
  std::optional<Cochain> primitive;
};

/// First Stiefel-Whitney class from determinant signs on pairs. Throws
/// ConsistencyError if the signs do not form a cocycle.
W1Result w1(const Nerve& nerve, const std::map<Simplex, int>& pair_signs);

/// Spin lifts of the transition functions: one Clifford-algebra element per
/// ordered pair a < b (the lift for b > a is its inverse).
struct LiftData {
  Signature signature;
  std::map<Simplex, Multivector> lifts;
};

/// All +1 lifts on every edge of the nerve.
LiftData trivial_lifts(const Nerve& nerve);
/// {"signature": [p, q], "lifts": [[a, b, "multivector"], ...]}; a bare
/// number stands for a scalar lift.
LiftData load_lifts(const std::string& json_text);

struct SpinStructures {
  Cochain obstruction;  // epsilon on triples
  bool w2_vanishes = false;
  /// Sign corrections kappa (1-cochains) giving pairwise non-isomorphic spin
  /// structures; empty when w2 does not vanish.
  std::vector<Cochain> structures;
  int h1_dim = 0;
  bool action_free = false;
  bool action_transitive = false;
  std::size_t count() const { return structures.size(); }
};

/// Obstruction cocycle, its class, and the spin structures up to
/// isomorphism with a brute-force check that H^1 acts freely and
/// transitively. Throws ConsistencyError if a triple product is not +-1 or
/// epsilon is not closed.
SpinStructures w2_and_spin_structures(const Nerve& nerve, const LiftData& lifts);

/// epsilon alone.
Cochain w2_cocycle(const Nerve& nerve, const LiftData& lifts);

}  // namespace spingeom
