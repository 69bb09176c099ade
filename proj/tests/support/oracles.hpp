#pragma once

// Reference computations written independently of the library, used to
// cross-check it. They favour obviousness over speed.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "spingeom/cech.hpp"
#include "spingeom/chern_weil.hpp"
#include "spingeom/clifford.hpp"
#include "spingeom/rational.hpp"

namespace oracle {

using spingeom::Rational;

struct SortedProduct {
  int sign = 1;
  std::uint64_t mask = 0;
};

/// e_{i1} e_{i2} ... e_{ik} (1-based, any order, repeats allowed) brought to
/// sorted form by adjacent swaps, cancelling equal neighbours with e_i^2.
SortedProduct bubble_sort_product(std::vector<int> factors, const spingeom::Signature& s);

/// Power series quotient num/den truncated at x^order (den[0] != 0).
std::vector<Rational> series_divide(const std::vector<Rational>& num, const std::vector<Rational>& den, int order);

/// Taylor coefficients in x of (x/2)/sinh(x/2), x/tanh(x) and x/(1-e^{-x}).
std::vector<Rational> ahat_taylor(int order);
std::vector<Rational> l_taylor(int order);
std::vector<Rational> todd_taylor(int order);

/// Bernoulli numbers from sum_{j<=k} C(k+1, j) B_j = 0, B_0 = 1.
std::vector<Rational> bernoulli_table(int max_k);

/// sum_{k<terms} exp(-t a (2k+1)) psi_k(x) psi_k(y) for H = -d^2 + a^2 x^2.
double hermite_heat_kernel(double t, double x, double y, double a, int terms);

/// Pfaffian as the top coefficient of omega^k / k!, omega = sum_{i<j} a_ij e^i e^j.
Rational pfaffian_via_forms(const std::vector<std::vector<Rational>>& a);

/// Leibniz sum over all permutations.
template <class T>
T permutation_determinant(const spingeom::Matrix<T>& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  T acc{};
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    T term(1);
    for (std::size_t i = 0; i < n; ++i) term = term * m(i, perm[i]);
    if (inversions % 2) term = -term;
    acc = acc + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

/// Rank over GF(2) of a list of 0/1 rows, plain elimination.
int gf2_rank(std::vector<std::vector<int>> rows);

/// Z2 cohomology dimension of a nerve from the incidence matrices.
int z2_betti(const spingeom::Nerve& nerve, int k);

/// Exact rational unit vector in R^n via inverse stereographic projection of
/// a random rational point.
std::vector<Rational> rational_unit_vector(int n, std::mt19937_64& rng);

/// Random multivector with small rational coefficients on a few blades.
spingeom::Multivector random_multivector(const spingeom::Signature& s, int terms, std::mt19937_64& rng);

}  // namespace oracle
