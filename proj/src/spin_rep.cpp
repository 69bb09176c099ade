#include "spingeom/spin_rep.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "spingeom/chern_weil.hpp"

namespace spingeom {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

Multivector unit_gen(int n, int i) { return Multivector::generator(Signature(n, 0), i); }

// Creation/annihilation on subsets of {1..k}, sign (-1)^{#occupied below j}.
ExactMatrix ladder(int k, int j, bool create) {
  const int dim = 1 << k;
  ExactMatrix m(dim, dim);
  const unsigned bit = 1u << (j - 1);
  for (int s = 0; s < dim; ++s) {
    const bool occupied = s & bit;
    if (occupied == create) continue;
    const int below = std::popcount(static_cast<unsigned>(s) & (bit - 1));
    m(s ^ bit, s) = below % 2 == 0 ? 1 : -1;
  }
  return m;
}

ExactMatrix product_of(const std::vector<ExactMatrix>& gens, Blade b, std::size_t dim) {
  ExactMatrix acc = ExactMatrix::identity(dim);
  for (std::uint64_t rest = b.mask; rest; rest &= rest - 1) acc = acc * gens[std::countr_zero(rest)];
  return acc;
}

GaussianRational phase_i(int power) {
  switch (((power % 4) + 4) % 4) {
    case 0:
      return 1;
    case 1:
      return GaussianRational::i();
    case 2:
      return -1;
    default:
      return -GaussianRational::i();
  }
}

Rational two_pow_neg_half(int n) {
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), 2, static_cast<unsigned long>(n / 2));
  return Rational(mpz_class(1), d);
}

}  // namespace

ComplexMatrix to_eigen(const ExactMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_complex();
  return out;
}

Multivector reflection_formula(const Multivector& v, const Multivector& w) {
  const Signature& s = v.signature();
  if (!(s == w.signature())) throw SignatureMismatch("reflection: signatures differ");
  const auto vv = v.vector_part(), ww = w.vector_part();
  const GaussianRational gvv = bilinear(s, vv, vv);
  if (gvv.is_zero()) throw NotInvertible("reflection in a null vector");
  const GaussianRational gvw = bilinear(s, vv, ww);
  return w - v * (GaussianRational(2) * gvw / gvv);
}

ExactMatrix twisted_adjoint_matrix(const Multivector& x) {
  const int n = x.signature().dim();
  const Multivector eps = x.grade_involution();
  const Multivector inv = x.inverse();
  ExactMatrix out(n, n);
  for (int k = 1; k <= n; ++k) {
    const Multivector y = eps * Multivector::generator(x.signature(), k) * inv;
    if (!(y.grade(1) == y)) throw ConsistencyError("twisted adjoint image leaves the vectors");
    const auto col = y.vector_part();
    for (int i = 0; i < n; ++i) out(i, k - 1) = col[i];
  }
  return out;
}

Eigen::MatrixXd twisted_adjoint_matrix(const MultivectorF& x, double tol) {
  const int n = x.signature().dim();
  const MultivectorF eps = x.grade_involution();
  const MultivectorF inv = x.inverse();
  Eigen::MatrixXd out(n, n);
  for (int k = 1; k <= n; ++k) {
    const MultivectorF y = eps * MultivectorF::generator(x.signature(), k) * inv;
    if ((y - y.grade(1)).max_abs() > tol * std::max(1.0, y.max_abs()))
      throw ConsistencyError("twisted adjoint image leaves the vectors");
    const auto col = y.vector_part();
    for (int i = 0; i < n; ++i) {
      if (std::abs(col[i].imag()) > tol) throw ConsistencyError("twisted adjoint image is not real");
      out(i, k - 1) = col[i].real();
    }
  }
  return out;
}

SpinElement SpinElement::from_unit_vectors(int n, const std::vector<std::vector<double>>& factors, double tol) {
  if (factors.size() % 2 != 0) throw PreconditionError("a spin element is an even product of unit vectors");
  const Signature s(n, 0);
  MultivectorF acc = MultivectorF::scalar(s, 1.0);
  for (const auto& f : factors) {
    if (static_cast<int>(f.size()) != n) throw DimensionError("unit vector has the wrong length");
    double len2 = 0;
    for (double c : f) len2 += c * c;
    if (std::abs(len2 - 1.0) > tol) throw PreconditionError("factor is not a unit vector");
    std::vector<std::complex<double>> cf(f.begin(), f.end());
    acc = acc * MultivectorF::vector(s, cf);
  }
  return SpinElement(std::move(acc), factors);
}

SpinElement spin_rotation(int n, int i, int j, double t) {
  if (i == j) throw PreconditionError("spin_rotation needs distinct indices");
  if (i < 1 || j < 1 || i > n || j > n) throw DimensionError("spin_rotation index out of range");
  // e_i (-cos t e_i + sin t e_j) = cos t + sin t e_i e_j
  std::vector<double> a(n, 0.0), b(n, 0.0);
  a[i - 1] = 1.0;
  b[i - 1] = -std::cos(t);
  b[j - 1] = std::sin(t);
  return SpinElement::from_unit_vectors(n, {a, b});
}

ExactMatrix bivector_action(const Multivector& x) {
  if (!(x.grade(2) == x)) throw PreconditionError("bivector_action needs a degree-2 element");
  const int n = x.signature().dim();
  ExactMatrix out(n, n);
  for (int k = 1; k <= n; ++k) {
    const auto col = commutator(x, Multivector::generator(x.signature(), k)).vector_part();
    for (int i = 0; i < n; ++i) out(i, k - 1) = col[i];
  }
  return out;
}

ExactMatrix lie_iso(int n, int i, int j) {
  if (i == j) throw PreconditionError("lie_iso needs distinct indices");
  if (i < 1 || j < 1 || i > n || j > n) throw DimensionError("lie_iso index out of range");
  return bivector_action(unit_gen(n, i) * unit_gen(n, j));
}

ExactMatrix wedge_matrix(const Multivector& v, const Multivector& w) {
  const Signature& s = v.signature();
  if (!(s == w.signature())) throw SignatureMismatch("wedge: signatures differ");
  const int n = s.dim();
  const auto vv = v.vector_part(), ww = w.vector_part();
  ExactMatrix out(n, n);
  for (int k = 0; k < n; ++k) {
    // g(v, e_k) and g(w, e_k)
    GaussianRational gv = s.metric(k + 1) > 0 ? vv[k] : -vv[k];
    GaussianRational gw = s.metric(k + 1) > 0 ? ww[k] : -ww[k];
    for (int i = 0; i < n; ++i) out(i, k) = ww[i] * gv - vv[i] * gw;
  }
  return out;
}

Multivector lie_iso_inv(const Multivector& v, const Multivector& w) {
  if (!(v.grade(1) == v) || !(w.grade(1) == w)) throw PreconditionError("lie_iso_inv takes two vectors");
  return commutator(v, w) * GaussianRational(Rational(1, 4));
}

Multivector lie_iso_inv(const ExactMatrix& m, int n) {
  if (m.rows() != static_cast<std::size_t>(n) || !m.square()) throw DimensionError("matrix size differs from n");
  const Signature s(n, 0);
  Multivector out(s);
  for (int i = 0; i < n; ++i) {
    if (!m(i, i).is_zero()) throw PreconditionError("lie_iso_inv needs an antisymmetric matrix");
    for (int j = i + 1; j < n; ++j) {
      if (!(m(i, j) == -m(j, i))) throw PreconditionError("lie_iso_inv needs an antisymmetric matrix");
      // e_i ^ e_j has entry +1 at (j, i)
      out += lie_iso_inv(unit_gen(n, i + 1), unit_gen(n, j + 1)) * m(j, i);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

SpinorSpace::SpinorSpace(int n) : n_(n) {
  if (n < 2 || n % 2 != 0) throw PreconditionError("spinor module needs even n >= 2");
  if (n > 16) throw DimensionError("spinor module limited to n <= 16");
  const int k = n / 2;
  for (int j = 1; j <= k; ++j) {
    const ExactMatrix up = ladder(k, j, true), down = ladder(k, j, false);
    gens_.push_back(up - down);
    gens_.push_back((up + down) * GaussianRational::i());
  }
  omega_ = represent(volume_element<GaussianRational>(n));
}

const ExactMatrix& SpinorSpace::generator(int i) const {
  if (i < 1 || i > n_) throw DimensionError("spinor generator index out of range");
  return gens_[i - 1];
}

ExactMatrix SpinorSpace::represent(const Multivector& x) const {
  if (x.signature().dim() != n_ || x.signature().q != 0) throw SignatureMismatch("element is not in Cl(n,0)");
  ExactMatrix out(dim(), dim());
  for (const auto& [b, c] : x.terms()) out += product_of(gens_, b, dim()) * c;
  return out;
}

std::string SpinorSpace::basis_label(int index) const {
  if (index == 0) return "1";
  std::string out;
  for (int j = 0; j < n_ / 2; ++j)
    if (index & (1 << j)) out += (out.empty() ? "eps" : "^eps") + std::to_string(j + 1);
  return out;
}

SpinorSpace spinor_generators(int n) { return SpinorSpace(n); }

ChiralitySplit chirality_split(const SpinorSpace& s) {
  const ExactMatrix id = ExactMatrix::identity(s.dim());
  if (!(s.omega() * s.omega() == id)) throw ConsistencyError("c(omega) is not an involution");
  ChiralitySplit out;
  const GaussianRational half(Rational(1, 2));
  out.plus = (id + s.omega()) * half;
  out.minus = (id - s.omega()) * half;
  // rank of a projector equals its trace
  out.dim_plus = static_cast<int>(out.plus.trace().re.get_d() + 0.5);
  out.dim_minus = static_cast<int>(out.minus.trace().re.get_d() + 0.5);
  return out;
}

std::size_t monomial_span_dim(const SpinorSpace& s) {
  std::vector<std::vector<GaussianRational>> rows;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s.n()); ++mask) {
    const ExactMatrix m = s.represent(Multivector::blade(Signature(s.n(), 0), Blade{mask}));
    rows.push_back(m.data());
  }
  return exact_rank(std::move(rows));
}

// ---------------------------------------------------------------------------

ExteriorModule::ExteriorModule(int n) : n_(n) {
  if (n < 1 || n > 10) throw DimensionError("exterior module limited to 1 <= n <= 10");
  const int dim = 1 << n;
  grading_ = ExactMatrix(dim, dim);
  for (int s = 0; s < dim; ++s) grading_(s, s) = std::popcount(static_cast<unsigned>(s)) % 2 == 0 ? 1 : -1;
  for (int j = 1; j <= n; ++j) {
    const ExactMatrix ext = ladder(n, j, true), in = ladder(n, j, false);
    c_.push_back(ext - in);
    ct_.push_back(ext + in);
  }
  grading_omega_ = grading_ * c_omega();
}

const ExactMatrix& ExteriorModule::c(int j) const {
  if (j < 1 || j > n_) throw DimensionError("exterior generator index out of range");
  return c_[j - 1];
}

const ExactMatrix& ExteriorModule::c_tilde(int j) const {
  if (j < 1 || j > n_) throw DimensionError("exterior generator index out of range");
  return ct_[j - 1];
}

ExactMatrix ExteriorModule::c_omega() const {
  const std::uint64_t all = (std::uint64_t{1} << n_) - 1;
  return product_of(c_, Blade{all}, dim()) * phase_i((n_ + 1) / 2);
}

ExactMatrix ExteriorModule::c_tilde_omega() const {
  const std::uint64_t all = (std::uint64_t{1} << n_) - 1;
  return product_of(ct_, Blade{all}, dim()) * phase_i((n_ + 1) / 2);
}

ExactMatrix ExteriorModule::c_tilde_monomial(Blade b) const {
  if ((b.mask >> n_) != 0) throw DimensionError("monomial beyond the module dimension");
  return product_of(ct_, b, dim());
}

GaussianRational relative_supertrace(const ExteriorModule& e, const ExactMatrix& f) {
  if (e.n() % 2 != 0) throw PreconditionError("relative supertrace needs even n");
  if (f.rows() != static_cast<std::size_t>(e.dim()) || !f.square()) throw DimensionError("operator size differs from the module");
  return (e.grading_omega_ * f).trace() * GaussianRational(two_pow_neg_half(e.n()));
}

std::complex<double> relative_supertrace(const ExteriorModule& e, const ComplexMatrix& f) {
  if (e.n() % 2 != 0) throw PreconditionError("relative supertrace needs even n");
  if (f.rows() != e.dim() || f.cols() != e.dim()) throw DimensionError("operator size differs from the module");
  return (to_eigen(e.grading_omega_) * f).trace() * std::ldexp(1.0, -e.n() / 2);
}

GaussianRational relative_supertrace(const SpinorSpace& s, const ExactMatrix& f) {
  if (f.rows() != static_cast<std::size_t>(s.dim()) || !f.square()) throw DimensionError("operator size differs from the module");
  return f.trace() * GaussianRational(two_pow_neg_half(s.n()));
}

// ---------------------------------------------------------------------------

namespace {

constexpr int kAhatTerms = 160;

const std::vector<double>& ahat_coefficients() {
  static const std::vector<double> coeffs = [] {
    const auto s = genus_series(Genus::a_hat, kAhatTerms);
    std::vector<double> out;
    for (const auto& c : s.coeffs) out.push_back(c.get_d());
    return out;
  }();
  return coeffs;
}

double spectral_radius(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);  // m is normal
}

void check_antisymmetric(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw DimensionError("matrix must be square");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a + a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw PreconditionError("matrix is not antisymmetric");
}

}  // namespace

double ahat_det_sqrt(const Eigen::MatrixXd& m) {
  check_antisymmetric(m);
  const double rho = spectral_radius(m);
  if (rho >= kTwoPi) throw PreconditionError("spectral radius must be below 2 pi");
  const auto& b = ahat_coefficients();
  const Eigen::MatrixXd m2 = m * m;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  Eigen::MatrixXd power = sum;
  bool converged = false;
  for (int k = 1; k < kAhatTerms; ++k) {
    power = power * m2;
    const Eigen::MatrixXd term = b[k] * power;
    sum += term;
    if (term.cwiseAbs().maxCoeff() <= 1e-18 * sum.cwiseAbs().maxCoeff()) {
      converged = true;
      break;
    }
  }
  if (!converged) throw PreconditionError("power series did not converge; spectral radius too close to 2 pi");
  const double det = sum.determinant();
  if (!(det > 0)) throw ConsistencyError("determinant of the series is not positive");
  return std::sqrt(det);
}

BerezinComparison berezin_supertrace_exp(const Eigen::MatrixXd& a) {
  check_antisymmetric(a);
  const int n = static_cast<int>(a.rows());
  if (n < 2 || n % 2 != 0) throw PreconditionError("Berezin identity needs even n >= 2");
  if (n > 8) throw DimensionError("Berezin identity limited to n <= 8");

  const ExteriorModule e(n);
  std::vector<ComplexMatrix> ct;
  for (int j = 1; j <= n; ++j) ct.push_back(to_eigen(e.c_tilde(j)));
  ComplexMatrix gen = ComplexMatrix::Zero(e.dim(), e.dim());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (a(i, j) != 0.0) gen += 0.5 * a(i, j) * (ct[i] * ct[j]);
  const ComplexMatrix expo = gen.exp();

  BerezinComparison out;
  out.supertrace = relative_supertrace(e, expo);

  Matrix<std::complex<double>> pf_arg(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pf_arg(i, j) = std::complex<double>(0.0, -2.0) * a(i, j);
  out.closed_form = pfaffian_expand(pf_arg) / ahat_det_sqrt(-2.0 * a);
  return out;
}

}  // namespace spingeom
