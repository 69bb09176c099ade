#pragma once

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace spingeom {

/// One eigenspace of D^2 restricted to a chirality.
struct Mode {
  double eigenvalue = 0;  // of D^2, >= 0
  long multiplicity = 1;
  int chirality = 1;  // +1 or -1
};

/// Operator given by closed-form eigendata, truncated at a declared cutoff.
class SpectralModel {
 public:
  SpectralModel(std::string name, std::map<std::string, std::string> params, std::vector<Mode> modes,
                std::function<double(double)> truncation_tail);

  const std::string& name() const { return name_; }
  const std::map<std::string, std::string>& params() const { return params_; }
  const std::vector<Mode>& modes() const { return modes_; }

  /// sum over modes of the given chirality of mult * exp(-t lambda),
  /// compensated summation in a fixed order.
  double heat_trace(double t, int chirality) const;
  /// str exp(-t D^2).
  double supertrace(double t) const;
  /// Bound on |supertrace(t) - index|: truncation tail plus float rounding.
  double error_bound(double t) const;
  long kernel_dim(int chirality, double tol = 1e-12) const;
  long index(double tol = 1e-12) const { return kernel_dim(1, tol) - kernel_dim(-1, tol); }
  /// Nonzero spectrum of D^-D^+ equals that of D^+D^-, with multiplicity.
  bool spectral_pairing_holds(double rel_tol = 1e-12) const;

 private:
  std::string name_;
  std::map<std::string, std::string> params_;
  std::vector<Mode> modes_;
  std::function<double(double)> tail_;
};

struct DLambdaResult {
  long kernel_dim = 0;
  long cokernel_dim = 0;
  long index = 0;
};

/// D = d/dx - 2 pi i lambda on the circle of length 1, on Fourier modes
/// |n| <= cutoff. Needs cutoff >= |lambda| + 1.
DLambdaResult dlambda_index(double lambda, int cutoff);
/// D*D on + and DD* on - for the same operator.
SpectralModel dlambda_model(double lambda, int cutoff);

/// Spin Dirac operator on the flat square torus for the spin structure with
/// twists (half1, half2): modes n + 1/2 when the flag is set.
SpectralModel torus_dirac_model(bool half1, bool half2, int cutoff);

/// d + d* on forms, even forms positive.
SpectralModel sphere2_hodge_model(int l_max);
SpectralModel torus2_hodge_model(int cutoff);
/// "sphere2" (l_max) or "torus2" (cutoff = l_max).
double hodge_supertrace(const std::string& model, double t, int l_max);

struct McKeanSingerReport {
  std::vector<double> t;
  std::vector<double> supertrace;
  std::vector<double> bound;
  long inferred_index = 0;
  double max_deviation = 0;
  bool within_bounds = false;
};

/// Graded heat trace on a t grid; the index is the nearest integer.
McKeanSingerReport mckean_singer_check(const SpectralModel& model, const std::vector<double>& t_grid);

using HeatKernel = std::function<double(double t, double x, double y)>;

/// (4 pi t)^{-1/2} exp(-(x-y)^2 / 4t).
double line_heat_kernel(double t, double x, double y);
/// Kernel of exp(-tH) for H = -d^2/dx^2 + a^2 x^2; a = 0 gives the line kernel.
double mehler_kernel(double t, double x, double y, double a);

/// Composite 20-point Gauss-Legendre rule on [lo, hi] with a fixed number
/// of panels.
double integrate(const std::function<double(double)>& f, double lo, double hi, int panels);

/// max over grid pairs of |int k(t1,x,z) k(t2,z,y) dz - k(t1+t2,x,y)| with
/// the integral over [-L, L], L = max(8 sqrt(t1 + t2), 8).
double semigroup_property_check(const HeatKernel& k, double t1, double t2, const std::vector<double>& grid,
                                int panels = 200);

/// max over points of |int k(t,x,y) f(y) dy - f(x)| for f supported in [lo, hi].
double delta_limit_check(const HeatKernel& k, double t, const std::function<double(double)>& f, double lo, double hi,
                         const std::vector<double>& points, int panels = 4000);

/// D = sum c(e_i) d_i over the spinor generators (n even), squared as a
/// polynomial in commuting d_i with matrix coefficients, compared with
/// -sum d_i^2 times the identity. Exact.
bool flat_dirac_square_check(int n);

struct SymbolReport {
  double max_square_residual = 0;  // |(i c(xi))^2 - |xi|^2 I|
  double min_singular_ratio = 0;   // smallest singular value / |xi|
};

/// Principal symbol i c(xi) of the Dirac operator at random nonzero xi.
SymbolReport symbol_check(int n, int trials, std::mt19937_64& rng);

}  // namespace spingeom
