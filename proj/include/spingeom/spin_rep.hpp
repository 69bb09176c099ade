#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spingeom/clifford.hpp"
#include "spingeom/matrix.hpp"

namespace spingeom {

using ExactMatrix = Matrix<GaussianRational>;
using ComplexMatrix = Eigen::MatrixXcd;

ComplexMatrix to_eigen(const ExactMatrix& m);

// ---------------------------------------------------------------------------
// Clifford group action

/// eps(x) w x^{-1} for a degree-1 w. Throws NotInvertible if x is not.
template <class C>
BasicMultivector<C> twisted_adjoint(const BasicMultivector<C>& x, const BasicMultivector<C>& w) {
  if (!(w.grade(1) == w)) throw PreconditionError("twisted adjoint acts on degree-1 elements");
  return x.grade_involution() * w * x.inverse();
}

/// Reflection w - 2 g(v,w)/g(v,v) v. Throws NotInvertible when g(v,v) = 0.
Multivector reflection_formula(const Multivector& v, const Multivector& w);

/// Matrix of w -> eps(x) w x^{-1} on the degree-1 subspace; column k is the
/// image of e_{k+1}. Throws if the image leaves the degree-1 subspace.
ExactMatrix twisted_adjoint_matrix(const Multivector& x);
Eigen::MatrixXd twisted_adjoint_matrix(const MultivectorF& x, double tol = 1e-12);

/// An element of Spin(n) in Cl(n,0), kept together with the unit vectors it
/// is the product of.
class SpinElement {
 public:
  /// Product of an even number of unit vectors (|v| = 1 within tol).
  static SpinElement from_unit_vectors(int n, const std::vector<std::vector<double>>& factors, double tol = 1e-12);

  const MultivectorF& value() const { return value_; }
  const std::vector<std::vector<double>>& factors() const { return factors_; }
  int dim() const { return value_.signature().dim(); }
  /// Image in SO(n) under the twisted adjoint action.
  Eigen::MatrixXd rotation() const { return twisted_adjoint_matrix(value_); }

 private:
  SpinElement(MultivectorF v, std::vector<std::vector<double>> f) : value_(std::move(v)), factors_(std::move(f)) {}
  MultivectorF value_;
  std::vector<std::vector<double>> factors_;
};

/// cos t + sin t e_i e_j, which acts as rotation by 2t in the (i,j)-plane.
SpinElement spin_rotation(int n, int i, int j, double t);

/// Matrix of w -> [x, w] on the degree-1 subspace for x of degree 2.
ExactMatrix bivector_action(const Multivector& x);
/// Image of e_i e_j in so(n): 2 (E_ji - E_ij).
ExactMatrix lie_iso(int n, int i, int j);
/// Matrix of v ^ w acting by x -> w g(v,x) - v g(w,x).
ExactMatrix wedge_matrix(const Multivector& v, const Multivector& w);
/// (1/4)[v, w].
Multivector lie_iso_inv(const Multivector& v, const Multivector& w);
/// Inverse of lie_iso on an antisymmetric matrix.
Multivector lie_iso_inv(const ExactMatrix& antisymmetric, int n);

// ---------------------------------------------------------------------------
// Spinors

/// Complex spinor module of Cl(n) for even n = 2k, realised on the exterior
/// algebra of C^k with basis the subsets of {1..k} (bit j-1 = eps_j).
/// Generators: e_{2j-1} -> a_j^+ - a_j and e_{2j} -> i (a_j^+ + a_j), with
/// the usual sign (-1)^{#occupied below j}.
class SpinorSpace {
 public:
  explicit SpinorSpace(int n);

  int n() const { return n_; }
  int dim() const { return 1 << (n_ / 2); }
  /// Image of e_i, 1-based.
  const ExactMatrix& generator(int i) const;
  /// Image of an arbitrary element of the complexified Cl(n,0).
  ExactMatrix represent(const Multivector& x) const;
  /// Image of the complex volume element.
  const ExactMatrix& omega() const { return omega_; }
  std::string basis_label(int index) const;

 private:
  int n_;
  std::vector<ExactMatrix> gens_;
  ExactMatrix omega_;
};

SpinorSpace spinor_generators(int n);

struct ChiralitySplit {
  ExactMatrix plus;   // (1 + c(omega)) / 2
  ExactMatrix minus;  // (1 - c(omega)) / 2
  int dim_plus = 0;
  int dim_minus = 0;
};

/// Throws ConsistencyError if c(omega) is not an involution.
ChiralitySplit chirality_split(const SpinorSpace& s);

/// Dimension of the span of all products of generator matrices.
std::size_t monomial_span_dim(const SpinorSpace& s);

/// Lambda(R^n) tensor C with c(e_j) = ext_j - int_j, c~(e_j) = ext_j + int_j
/// and grading (-1)^degree.
class ExteriorModule {
 public:
  explicit ExteriorModule(int n);

  int n() const { return n_; }
  int dim() const { return 1 << n_; }
  const ExactMatrix& c(int j) const;
  const ExactMatrix& c_tilde(int j) const;
  const ExactMatrix& grading() const { return grading_; }
  /// c(omega) and c~(omega) with omega = i^{floor((n+1)/2)} e_1...e_n.
  ExactMatrix c_omega() const;
  ExactMatrix c_tilde_omega() const;
  /// c~(e^I) for a blade I.
  ExactMatrix c_tilde_monomial(Blade b) const;

 private:
  int n_;
  std::vector<ExactMatrix> c_;
  std::vector<ExactMatrix> ct_;
  ExactMatrix grading_;
  ExactMatrix grading_omega_;  // gamma c(omega), cached for supertraces

  friend GaussianRational relative_supertrace(const ExteriorModule&, const ExactMatrix&);
  friend std::complex<double> relative_supertrace(const ExteriorModule&, const ComplexMatrix&);
};

/// 2^{-n/2} tr(gamma c(omega) F) on the exterior module.
GaussianRational relative_supertrace(const ExteriorModule& e, const ExactMatrix& f);
std::complex<double> relative_supertrace(const ExteriorModule& e, const ComplexMatrix& f);
/// On the spinor module itself the grading is c(omega): 2^{-n/2} tr F.
GaussianRational relative_supertrace(const SpinorSpace& s, const ExactMatrix& f);

struct BerezinComparison {
  std::complex<double> supertrace;   // str exp(1/2 A_ij c~_i c~_j), dense
  std::complex<double> closed_form;  // Pf(-2iA) / det^{1/2} ahat(-2A)
  double residual() const { return std::abs(supertrace - closed_form); }
};

/// Both sides of the Berezin/Pfaffian identity. Needs n even, A antisymmetric
/// and spectral radius of 2A below 2 pi (where the power series converges).
BerezinComparison berezin_supertrace_exp(const Eigen::MatrixXd& a);

/// det^{1/2} of (x/2)/sinh(x/2) applied to a real antisymmetric matrix.
double ahat_det_sqrt(const Eigen::MatrixXd& m);

}  // namespace spingeom
