#include "spingeom/index_lab.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include "spingeom/errors.hpp"
#include "spingeom/spin_rep.hpp"

namespace spingeom {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Neumaier's compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

SpectralModel::SpectralModel(std::string name, std::map<std::string, std::string> params, std::vector<Mode> modes,
                             std::function<double(double)> truncation_tail)
    : name_(std::move(name)), params_(std::move(params)), modes_(std::move(modes)), tail_(std::move(truncation_tail)) {
  for (const auto& m : modes_) {
    if (!(m.eigenvalue >= 0)) throw PreconditionError("eigenvalues of D^2 must be non-negative");
    if (m.multiplicity < 1) throw PreconditionError("multiplicities must be positive");
    if (m.chirality != 1 && m.chirality != -1) throw PreconditionError("chirality must be +1 or -1");
  }
  std::stable_sort(modes_.begin(), modes_.end(), [](const Mode& a, const Mode& b) {
    if (a.eigenvalue != b.eigenvalue) return a.eigenvalue < b.eigenvalue;
    return a.chirality > b.chirality;
  });
}

double SpectralModel::heat_trace(double t, int chirality) const {
  if (!(t > 0)) throw PreconditionError("heat trace needs t > 0");
  CompensatedSum s;
  for (const auto& m : modes_)
    if (m.chirality == chirality) s.add(static_cast<double>(m.multiplicity) * std::exp(-t * m.eigenvalue));
  return s.value();
}

double SpectralModel::supertrace(double t) const { return heat_trace(t, 1) - heat_trace(t, -1); }

double SpectralModel::error_bound(double t) const {
  const double rounding = 4 * DBL_EPSILON * (heat_trace(t, 1) + heat_trace(t, -1));
  return (tail_ ? tail_(t) : 0.0) + rounding;
}

long SpectralModel::kernel_dim(int chirality, double tol) const {
  long k = 0;
  for (const auto& m : modes_)
    if (m.chirality == chirality && m.eigenvalue <= tol) k += m.multiplicity;
  return k;
}

bool SpectralModel::spectral_pairing_holds(double rel_tol) const {
  // modes are sorted by eigenvalue; walk clusters of nearly equal values
  std::size_t i = 0;
  while (i < modes_.size()) {
    const double base = modes_[i].eigenvalue;
    long balance = 0;
    std::size_t j = i;
    while (j < modes_.size() && modes_[j].eigenvalue - base <= rel_tol * std::max(1.0, base)) {
      balance += modes_[j].chirality * modes_[j].multiplicity;
      ++j;
    }
    if (base > rel_tol && balance != 0) return false;
    i = j;
  }
  return true;
}

// ---------------------------------------------------------------------------

DLambdaResult dlambda_index(double lambda, int cutoff) {
  if (!(cutoff >= std::abs(lambda) + 1)) throw PreconditionError("cutoff must be at least |lambda| + 1");
  const double tol = 1e-12 * std::max(1.0, std::abs(lambda));
  DLambdaResult r;
  for (int n = -cutoff; n <= cutoff; ++n) {
    // D e_n = 2 pi i (n - lambda) e_n; the adjoint has the conjugate eigenvalue
    const std::complex<double> d(0.0, 2 * kPi * (n - lambda));
    const std::complex<double> d_adj = std::conj(d);
    if (std::abs(d) <= 2 * kPi * tol) ++r.kernel_dim;
    if (std::abs(d_adj) <= 2 * kPi * tol) ++r.cokernel_dim;
  }
  r.index = r.kernel_dim - r.cokernel_dim;
  return r;
}

SpectralModel dlambda_model(double lambda, int cutoff) {
  if (!(cutoff >= std::abs(lambda) + 1)) throw PreconditionError("cutoff must be at least |lambda| + 1");
  std::vector<Mode> modes;
  for (int n = -cutoff; n <= cutoff; ++n) {
    const double ev = 4 * kPi * kPi * (n - lambda) * (n - lambda);
    modes.push_back({ev, 1, 1});
    modes.push_back({ev, 1, -1});
  }
  return SpectralModel("dlambda", {{"lambda", fmt(lambda)}, {"cutoff", std::to_string(cutoff)}}, std::move(modes),
                       nullptr);
}

SpectralModel torus_dirac_model(bool half1, bool half2, int cutoff) {
  if (cutoff < 1) throw PreconditionError("cutoff must be at least 1");
  std::vector<Mode> modes;
  for (int n = -cutoff; n <= cutoff; ++n)
    for (int m = -cutoff; m <= cutoff; ++m) {
      const double k1 = n + (half1 ? 0.5 : 0.0), k2 = m + (half2 ? 0.5 : 0.0);
      const double ev = 4 * kPi * kPi * (k1 * k1 + k2 * k2);
      modes.push_back({ev, 1, 1});
      modes.push_back({ev, 1, -1});
    }
  std::string delta = std::string(half1 ? "1/2" : "0") + "," + (half2 ? "1/2" : "0");
  return SpectralModel("torus_dirac", {{"delta", delta}, {"cutoff", std::to_string(cutoff)}}, std::move(modes),
                       nullptr);
}

SpectralModel sphere2_hodge_model(int l_max) {
  if (l_max < 1) throw PreconditionError("l_max must be at least 1");
  std::vector<Mode> modes;
  for (int l = 0; l <= l_max; ++l) {
    const double ev = static_cast<double>(l) * (l + 1);
    modes.push_back({ev, 2L * (2 * l + 1), 1});  // functions and 2-forms
    if (l >= 1) modes.push_back({ev, 2L * (2 * l + 1), -1});  // 1-forms
  }
  auto tail = [l_max](double t) {
    const double l = l_max;
    return 4 * (l + 1) * (l + 1) * std::exp(-t * l * (l + 1));
  };
  return SpectralModel("sphere2", {{"l_max", std::to_string(l_max)}}, std::move(modes), tail);
}

SpectralModel torus2_hodge_model(int cutoff) {
  if (cutoff < 1) throw PreconditionError("cutoff must be at least 1");
  std::vector<Mode> modes;
  for (int n = -cutoff; n <= cutoff; ++n)
    for (int m = -cutoff; m <= cutoff; ++m) {
      const double ev = 4 * kPi * kPi * (double(n) * n + double(m) * m);
      modes.push_back({ev, 2, 1});   // functions and 2-forms
      modes.push_back({ev, 2, -1});  // 1-forms
    }
  return SpectralModel("torus2", {{"cutoff", std::to_string(cutoff)}}, std::move(modes), nullptr);
}

double hodge_supertrace(const std::string& model, double t, int l_max) {
  if (model == "sphere2") return sphere2_hodge_model(l_max).supertrace(t);
  if (model == "torus2") return torus2_hodge_model(l_max).supertrace(t);
  throw PreconditionError("unknown Hodge model: " + model);
}

McKeanSingerReport mckean_singer_check(const SpectralModel& model, const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw PreconditionError("empty t grid");
  McKeanSingerReport r;
  for (double t : t_grid) {
    r.t.push_back(t);
    r.supertrace.push_back(model.supertrace(t));
    r.bound.push_back(model.error_bound(t));
  }
  r.inferred_index = std::lround(r.supertrace.front());
  r.within_bounds = true;
  for (std::size_t i = 0; i < r.t.size(); ++i) {
    const double dev = std::abs(r.supertrace[i] - static_cast<double>(r.inferred_index));
    r.max_deviation = std::max(r.max_deviation, dev);
    if (dev > r.bound[i]) r.within_bounds = false;
  }
  return r;
}

// ---------------------------------------------------------------------------

double line_heat_kernel(double t, double x, double y) {
  if (!(t > 0)) throw PreconditionError("heat kernel needs t > 0");
  return std::exp(-(x - y) * (x - y) / (4 * t)) / std::sqrt(4 * kPi * t);
}

double mehler_kernel(double t, double x, double y, double a) {
  if (!(t > 0)) throw PreconditionError("heat kernel needs t > 0");
  if (a < 0) throw PreconditionError("oscillator frequency must be non-negative");
  if (a == 0) return line_heat_kernel(t, x, y);
  const double s = std::sinh(2 * a * t);
  // (x^2+y^2) cosh 2at - 2xy = (x-y)^2 + (x^2+y^2)(cosh 2at - 1), cosh 2at - 1 = 2 sinh^2 at
  const double sh = std::sinh(a * t);
  const double q = (x - y) * (x - y) + (x * x + y * y) * 2 * sh * sh;
  return std::sqrt(a / (2 * kPi * s)) * std::exp(-a * q / (2 * s));
}

double integrate(const std::function<double(double)>& f, double lo, double hi, int panels) {
  if (panels < 1) throw PreconditionError("need at least one panel");
  CompensatedSum acc;
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * h;
    const double b = p + 1 == panels ? hi : a + h;
    acc.add(boost::math::quadrature::gauss<double, 20>::integrate(f, a, b));
  }
  return acc.value();
}

double semigroup_property_check(const HeatKernel& k, double t1, double t2, const std::vector<double>& grid,
                                int panels) {
  if (!(t1 > 0 && t2 > 0)) throw PreconditionError("semigroup check needs t1, t2 > 0");
  const double l = std::max(8 * std::sqrt(t1 + t2), 8.0);
  double worst = 0;
  for (double x : grid)
    for (double y : grid) {
      const double lhs = integrate([&](double z) { return k(t1, x, z) * k(t2, z, y); }, -l, l, panels);
      worst = std::max(worst, std::abs(lhs - k(t1 + t2, x, y)));
    }
  return worst;
}

double delta_limit_check(const HeatKernel& k, double t, const std::function<double(double)>& f, double lo, double hi,
                         const std::vector<double>& points, int panels) {
  if (!(t > 0)) throw PreconditionError("delta limit needs t > 0");
  double worst = 0;
  for (double x : points) {
    const double v = integrate([&](double y) { return k(t, x, y) * f(y); }, lo, hi, panels);
    worst = std::max(worst, std::abs(v - f(x)));
  }
  return worst;
}

// ---------------------------------------------------------------------------

namespace {

using DiffPoly = std::map<std::vector<int>, ExactMatrix>;

DiffPoly multiply(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly out;
  for (const auto& [ea, ma] : a)
    for (const auto& [eb, mb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      ExactMatrix prod = ma * mb;
      auto it = out.find(e);
      if (it == out.end())
        out.emplace(e, std::move(prod));
      else
        it->second += prod;
    }
  // drop vanishing coefficients
  for (auto it = out.begin(); it != out.end();) {
    const auto& d = it->second.data();
    if (std::all_of(d.begin(), d.end(), [](const GaussianRational& z) { return z.is_zero(); }))
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

}  // namespace

bool flat_dirac_square_check(int n) {
  const SpinorSpace s(n);
  DiffPoly d;
  for (int i = 1; i <= n; ++i) {
    std::vector<int> e(n, 0);
    e[i - 1] = 1;
    d.emplace(e, s.generator(i));
  }
  const DiffPoly square = multiply(d, d);
  DiffPoly expected;
  for (int i = 1; i <= n; ++i) {
    std::vector<int> e(n, 0);
    e[i - 1] = 2;
    expected.emplace(e, ExactMatrix::identity(s.dim()) * GaussianRational(-1));
  }
  return square == expected;
}

SymbolReport symbol_check(int n, int trials, std::mt19937_64& rng) {
  const SpinorSpace s(n);
  std::vector<ComplexMatrix> gens;
  for (int i = 1; i <= n; ++i) gens.push_back(to_eigen(s.generator(i)));
  std::normal_distribution<double> gauss;
  SymbolReport r;
  r.min_singular_ratio = std::numeric_limits<double>::infinity();
  for (int k = 0; k < trials; ++k) {
    std::vector<double> xi(n);
    double len2 = 0;
    for (auto& x : xi) {
      x = gauss(rng);
      len2 += x * x;
    }
    if (len2 == 0) continue;
    ComplexMatrix sym = ComplexMatrix::Zero(s.dim(), s.dim());
    for (int i = 0; i < n; ++i) sym += std::complex<double>(0.0, xi[i]) * gens[i];
    const ComplexMatrix sq = sym * sym - len2 * ComplexMatrix::Identity(s.dim(), s.dim());
    r.max_square_residual = std::max(r.max_square_residual, sq.cwiseAbs().maxCoeff() / len2);
    Eigen::JacobiSVD<ComplexMatrix> svd(sym);
    r.min_singular_ratio =
        std::min(r.min_singular_ratio, svd.singularValues()(svd.singularValues().size() - 1) / std::sqrt(len2));
  }
  return r;
}

}  // namespace spingeom
