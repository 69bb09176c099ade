#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "acceptance/criteria.hpp"
#include "spingeom/cech.hpp"
#include "spingeom/chern_weil.hpp"
#include "spingeom/classification.hpp"
#include "spingeom/index_lab.hpp"
#include "spingeom/spin_rep.hpp"

namespace spingeom::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSchema = "spingeom.report/1";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Everything a subcommand produces before it is rendered.
struct Report {
  std::string command;
  Json provenance = Json::object();
  Json result = Json::object();
  std::vector<std::string> human;
  // optional table for csv output; falls back to flattened result
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  bool passed = true;

  void line(std::string s) { human.push_back(std::move(s)); }
};

void flatten(const Json& j, const std::string& prefix, std::vector<std::vector<std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.push_back({prefix, j.is_string() ? j.get<std::string>() : j.dump()});
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void render(const Report& r, const std::string& format, std::ostream& out) {
  if (format == "json") {
    Json j;
    j["schema"] = kSchema;
    j["command"] = r.command;
    j["status"] = r.passed ? "ok" : "failed";
    j["provenance"] = r.provenance;
    j["result"] = r.result;
    out << j.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    auto header = r.csv_header;
    auto rows = r.csv_rows;
    if (header.empty()) {
      header = {"key", "value"};
      flatten(r.result, "", rows);
    }
    auto emit = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
      out << "\n";
    };
    emit(header);
    for (const auto& row : rows) emit(row);
    return;
  }
  for (const auto& l : r.human) out << l << "\n";
  std::string prov;
  for (const auto& [k, v] : r.provenance.items()) prov += (prov.empty() ? "" : ", ") + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
  if (!prov.empty()) out << "[" << prov << "]\n";
  out << "status: " << (r.passed ? "ok" : "FAILED") << "\n";
}

// ---------------------------------------------------------------------------

Json type_json(const AlgebraType& t) {
  return Json{{"base", to_string(t.base)}, {"size", t.size}, {"doubled", t.doubled}, {"text", to_string(t)}};
}

struct ClassifyArgs {
  std::optional<int> p, q, complex_n, table;
};

Report cmd_classify(const ClassifyArgs& a) {
  Report r;
  r.command = "classify";
  if (a.p || a.q) {
    if (!a.p || !a.q) throw UsageError("classify needs both p and q");
    const auto t = classify_real(*a.p, *a.q);
    r.result["real"] = Json{{"p", *a.p}, {"q", *a.q}, {"type", type_json(t)}};
    r.line("Cl(" + std::to_string(*a.p) + "," + std::to_string(*a.q) + ") = " + to_string(t));
    if (*a.p + *a.q > 0) {
      const auto even = even_subalgebra_type(*a.p, *a.q);
      r.result["real"]["even"] = type_json(even);
      r.line("  even part = " + to_string(even));
    }
  }
  if (a.complex_n) {
    const auto t = classify_complex(*a.complex_n);
    r.result["complex"] = Json{{"n", *a.complex_n}, {"type", type_json(t)}};
    r.line("Cl^c(" + std::to_string(*a.complex_n) + ") = " + to_string(t));
    if (*a.complex_n > 0) {
      const auto emb = even_subalgebra_complex(*a.complex_n);
      r.result["complex"]["even"] = type_json(emb.even);
      r.result["complex"]["even_diagonal"] = emb.diagonal;
      r.line("  even part = " + to_string(emb.even) + (emb.diagonal ? " (diagonal)" : ""));
    }
  }
  if (a.table) {
    Json rows = Json::array();
    r.line("n  Cl(n,0)  Cl(0,n)");
    r.csv_header = {"n", "Cl(n,0)", "Cl(0,n)"};
    for (int n = 1; n <= *a.table; ++n) {
      const auto pos = classify_real(n, 0), neg = classify_real(0, n);
      rows.push_back(Json{{"n", n}, {"positive", type_json(pos)}, {"negative", type_json(neg)}});
      r.line(std::to_string(n) + "  " + to_string(pos) + "  " + to_string(neg));
      r.csv_rows.push_back({std::to_string(n), to_string(pos), to_string(neg)});
    }
    r.result["table"] = rows;
  }
  if (r.human.empty()) throw UsageError("classify needs p q, --complex or --table");
  r.provenance["convention"] = "e_i^2 = -1 for i <= p";
  r.provenance["tolerance"] = "exact";
  return r;
}

// ---------------------------------------------------------------------------

struct SpinrepArgs {
  int n = 4;
  std::string check = "all";
  int trials = 20;
};

Report cmd_spinrep(const SpinrepArgs& a, std::uint64_t seed, double tol) {
  Report r;
  r.command = "spinrep";
  r.provenance = Json{{"n", a.n}, {"tolerance", tol}, {"seed", seed}};
  const bool all = a.check == "all";
  if (all || a.check == "relations" || a.check == "chirality") {
    const SpinorSpace s(a.n);
    if (all || a.check == "relations") {
      bool exact = true;
      double float_err = 0;
      const auto id = ExactMatrix::identity(s.dim());
      for (int i = 1; i <= a.n; ++i)
        for (int j = 1; j <= a.n; ++j) {
          const auto lhs = s.generator(i) * s.generator(j) + s.generator(j) * s.generator(i);
          const auto rhs = id * GaussianRational(i == j ? -2 : 0);
          exact = exact && lhs == rhs;
          float_err = std::max(float_err, (to_eigen(lhs) - to_eigen(rhs)).cwiseAbs().maxCoeff());
        }
      const std::size_t span = monomial_span_dim(s);
      const bool ok = exact && float_err <= tol && span == (std::size_t{1} << a.n);
      r.passed = r.passed && ok;
      r.result["relations"] = Json{{"exact", exact}, {"float_residual", float_err}, {"monomial_span", span},
                                   {"expected_span", std::size_t{1} << a.n}, {"passed", ok}};
      r.line("spinor module of dimension " + std::to_string(s.dim()) + ": relations " + (exact ? "exact" : "BROKEN") +
             ", float residual " + num(float_err) + ", monomial span " + std::to_string(span));
    }
    if (all || a.check == "chirality") {
      const auto split = chirality_split(s);
      const ExactMatrix zero(s.dim(), s.dim());
      const bool ok = split.plus * split.plus == split.plus && split.minus * split.minus == split.minus &&
                      split.plus + split.minus == ExactMatrix::identity(s.dim()) && split.plus * split.minus == zero;
      r.passed = r.passed && ok;
      r.result["chirality"] = Json{{"dim_plus", split.dim_plus}, {"dim_minus", split.dim_minus}, {"passed", ok}};
      r.line("chirality: dim S+ = " + std::to_string(split.dim_plus) + ", dim S- = " + std::to_string(split.dim_minus) +
             (ok ? ", projectors complementary" : ", projectors BROKEN"));
    }
  }
  if (all || a.check == "berezin") {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> entry(-0.5, 0.5);
    double worst = 0;
    for (int t = 0; t < a.trials; ++t) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(a.n, a.n);
      for (int i = 0; i < a.n; ++i)
        for (int j = i + 1; j < a.n; ++j) m(j, i) = -(m(i, j) = entry(rng));
      worst = std::max(worst, berezin_supertrace_exp(m).residual());
    }
    const bool ok = worst <= std::max(tol, 1e-10);
    r.passed = r.passed && ok;
    r.result["berezin"] = Json{{"trials", a.trials}, {"max_residual", worst}, {"passed", ok}};
    r.line("Berezin/Pfaffian identity on " + std::to_string(a.trials) + " random matrices: max residual " + num(worst));
  }
  if (r.result.empty()) throw UsageError("unknown spinrep check: " + a.check);
  return r;
}

// ---------------------------------------------------------------------------

struct GenusArgs {
  std::string name = "euler";
  std::string model = "sphere2";
  std::string model_file;
  std::string radius = "1";
  std::optional<int> expand;
};

Report cmd_genus(const GenusArgs& a) {
  Report r;
  r.command = "genus";
  const Genus g = parse_genus(a.name);
  r.provenance = Json{{"genus", to_string(g)}, {"tolerance", "exact"}};
  if (a.expand) {
    const auto e = genus_expand(g, *a.expand);
    Json taylor = Json::array();
    for (const auto& c : e.taylor) taylor.push_back(to_string(c));
    r.result["taylor"] = taylor;
    r.result["classes"] = e.classes.to_string();
    r.provenance["weight"] = *a.expand;
    r.line(to_string(g) + " = " + e.classes.to_string());
    return r;
  }
  const CurvatureModel m = a.model_file.empty() ? curvature_model(a.model, parse_rational(a.radius))
                                                 : load_curvature_model(read_file(a.model_file));
  r.provenance["model"] = m.name;
  if (a.model_file.empty()) r.provenance["radius"] = a.radius;
  r.provenance["volume"] = to_string(m.volume);
  const ExactForm form = genus_eval(g, m.curvature);
  const PiLaurent integral = integrate_top(form, m);
  r.result["form"] = to_string(form);
  r.result["integral"] = to_string(integral);
  r.result["integral_float"] = integral.to_complex().real();
  r.line(to_string(g) + " form on " + m.name + ": " + to_string(form));
  r.line("integral over " + m.name + ": " + to_string(integral));
  return r;
}

// ---------------------------------------------------------------------------

struct CechArgs {
  std::string nerve = "circle";
  std::string w1_file;
  std::string w2_file;
};

Nerve nerve_from(const std::string& spec) {
  if (spec == "circle" || spec == "sphere" || spec == "sphere2" || spec == "torus" || spec == "torus2")
    return builtin_nerve(spec);
  return load_nerve(read_file(spec));
}

Report cmd_cech(const CechArgs& a) {
  Report r;
  r.command = "cech";
  const Nerve nerve = nerve_from(a.nerve);
  r.provenance = Json{{"nerve", a.nerve}, {"patches", nerve.patches()}, {"tolerance", "exact"}};
  Json dims = Json::array();
  std::string dim_text;
  for (int k = 0; k <= std::max(nerve.top_dim(), 1); ++k) {
    const int d = cohomology_dim(nerve, k);
    dims.push_back(d);
    dim_text += (k ? ", " : "") + std::string("H") + std::to_string(k) + " = " + std::to_string(d);
  }
  r.result["cohomology"] = dims;
  r.line("Z2 cohomology: " + dim_text);

  if (!a.w1_file.empty()) {
    const auto j = Json::parse(read_file(a.w1_file));
    std::map<Simplex, int> signs;
    for (const auto& e : j.at("signs")) signs[{e.at(0).get<int>(), e.at(1).get<int>()}] = e.at(2).get<int>();
    const auto res = w1(nerve, signs);
    r.result["w1"] = Json{{"trivial", res.trivial}};
    r.line(std::string("w1 ") + (res.trivial ? "vanishes (orientable)" : "is nonzero (not orientable)"));
  }

  const LiftData lifts = a.w2_file.empty() ? trivial_lifts(nerve) : load_lifts(read_file(a.w2_file));
  r.provenance["lifts"] = a.w2_file.empty() ? "trivial" : a.w2_file;
  const auto s = w2_and_spin_structures(nerve, lifts);
  Json structures = Json::array();
  for (const auto& c : s.structures) {
    Json flips = Json::array();
    for (std::size_t i = 0; i < c.bits.size(); ++i)
      if (c.bits[i]) flips.push_back(nerve.simplices(1)[i]);
    structures.push_back(flips);
  }
  r.result["w2"] = Json{{"vanishes", s.w2_vanishes},
                        {"spin_structures", s.count()},
                        {"h1_dim", s.h1_dim},
                        {"action_free", s.action_free},
                        {"action_transitive", s.action_transitive},
                        {"sign_flips", structures}};
  if (s.w2_vanishes) {
    r.line("w2 vanishes: " + std::to_string(s.count()) + " spin structures, H1 action " +
           (s.action_free && s.action_transitive ? "free and transitive" : "NOT a torsor"));
    r.passed = s.action_free && s.action_transitive;
  } else {
    r.line("w2 is nonzero: no spin structure");
  }
  return r;
}

// ---------------------------------------------------------------------------

struct IndexArgs {
  std::string model = "sphere2";
  std::string t = "0.1,0.5,1,2";
  int lmax = 40;
  int cutoff = 20;
  double lambda = 0.5;
  std::string delta = "0,0";
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad number in list: " + item);
    }
  }
  if (out.empty()) throw UsageError("empty t list");
  return out;
}

Report cmd_index(const IndexArgs& a) {
  Report r;
  r.command = "index";
  std::optional<SpectralModel> model;
  Json prov{{"model", a.model}};
  if (a.model == "sphere2") {
    model = sphere2_hodge_model(a.lmax);
    prov["l_max"] = a.lmax;
  } else if (a.model == "torus2") {
    model = torus2_hodge_model(a.cutoff);
    prov["cutoff"] = a.cutoff;
  } else if (a.model == "torus_dirac") {
    const auto d = parse_list(a.delta);
    if (d.size() != 2 || (d[0] != 0 && d[0] != 0.5) || (d[1] != 0 && d[1] != 0.5))
      throw UsageError("--delta takes two values from {0, 0.5}");
    model = torus_dirac_model(d[0] == 0.5, d[1] == 0.5, a.cutoff);
    prov["cutoff"] = a.cutoff;
    prov["delta"] = a.delta;
  } else if (a.model == "dlambda") {
    const auto d = dlambda_index(a.lambda, a.cutoff);
    model = dlambda_model(a.lambda, a.cutoff);
    prov["lambda"] = a.lambda;
    prov["cutoff"] = a.cutoff;
    r.result["dlambda"] = Json{{"kernel_dim", d.kernel_dim}, {"cokernel_dim", d.cokernel_dim}, {"index", d.index}};
    r.line("D_lambda: dim ker = " + std::to_string(d.kernel_dim) + ", dim coker = " + std::to_string(d.cokernel_dim) +
           ", index " + std::to_string(d.index));
  } else {
    throw UsageError("unknown index model: " + a.model);
  }
  const auto grid = parse_list(a.t);
  const auto ms = mckean_singer_check(*model, grid);
  prov["tolerance"] = "declared tail bound + 4 eps (S+ + S-)";
  r.provenance = prov;
  Json rows = Json::array();
  r.csv_header = {"t", "supertrace", "bound"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    rows.push_back(Json{{"t", ms.t[i]}, {"supertrace", ms.supertrace[i]}, {"bound", ms.bound[i]}});
    r.csv_rows.push_back({num(ms.t[i]), num(ms.supertrace[i]), num(ms.bound[i])});
    r.line("t = " + num(ms.t[i]) + "  str = " + num(ms.supertrace[i]) + "  bound = " + num(ms.bound[i]));
  }
  const bool paired = model->spectral_pairing_holds();
  r.result["heat_supertrace"] = rows;
  r.result["index"] = ms.inferred_index;
  r.result["kernel_index"] = model->index();
  r.result["max_deviation"] = ms.max_deviation;
  r.result["within_bounds"] = ms.within_bounds;
  r.result["spectral_pairing"] = paired;
  r.passed = ms.within_bounds && paired && model->index() == ms.inferred_index;
  r.line("index " + std::to_string(ms.inferred_index) + " (kernel count " + std::to_string(model->index()) +
         "), max deviation " + num(ms.max_deviation) + (ms.within_bounds ? " within" : " OUTSIDE") + " bounds");
  return r;
}

// ---------------------------------------------------------------------------

Report cmd_selftest(std::uint64_t seed, bool timings) {
  Report r;
  r.command = "selftest";
  r.provenance = Json{{"seed", seed}};
  Json items = Json::array();
  r.csv_header = {"criterion", "title", "passed", "detail"};
  for (const auto& c : acceptance::run_all(seed)) {
    Json item{{"criterion", c.id}, {"title", c.title}, {"passed", c.passed}, {"detail", c.detail}};
    if (timings) item["seconds"] = c.seconds;
    items.push_back(item);
    r.passed = r.passed && c.passed;
    r.csv_rows.push_back({std::to_string(c.id), c.title, c.passed ? "true" : "false", c.detail});
    if (timings) {
      r.line(acceptance::format(c));
    } else {
      char head[96];
      std::snprintf(head, sizeof head, "%s %2d %s", c.passed ? "PASS" : "FAIL", c.id, c.title.c_str());
      r.line(std::string(head) + (c.detail.empty() ? "" : "  " + c.detail));
    }
  }
  r.result["criteria"] = items;
  return r;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clifford algebras, spin geometry and index theory at desk scale"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a TOML/INI file");

  std::string format = "human";
  std::uint64_t seed = 20240601;
  std::optional<double> tol;
  bool allow_loose = false;
  app.add_option("--format", format, "human, json or csv")->check(CLI::IsMember({"human", "json", "csv"}));
  app.add_option("--seed", seed, "seed for randomized checks");
  app.add_option("--tol", tol, "tolerance for floating-point checks");
  app.add_flag("--allow-loose-tolerance", allow_loose, "permit --tol above the default");

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "isomorphism type of Cl(p,q)");
  classify->add_option("p", ca.p, "generators squaring to -1");
  classify->add_option("q", ca.q, "generators squaring to +1");
  classify->add_option("--complex", ca.complex_n, "type of the complex algebra on n generators");
  classify->add_option("--table", ca.table, "print Cl(n,0) and Cl(0,n) for n up to N");

  SpinrepArgs sa;
  auto* spinrep = app.add_subcommand("spinrep", "spinor module checks");
  spinrep->add_option("n", sa.n, "even dimension")->required();
  spinrep->add_option("--check", sa.check, "relations, chirality, berezin or all")
      ->check(CLI::IsMember({"relations", "chirality", "berezin", "all"}));
  spinrep->add_option("--trials", sa.trials, "random matrices for the Berezin check");

  GenusArgs ga;
  auto* genus = app.add_subcommand("genus", "characteristic forms on curvature models");
  genus->add_option("--name", ga.name, "chern, todd, ch, pontryagin, L, ahat or euler");
  genus->add_option("--model", ga.model, "sphere2, torus2, sphere4, s2xs2, s2xt2");
  genus->add_option("--model-file", ga.model_file, "curvature model JSON");
  genus->add_option("--radius", ga.radius, "sphere radius (rational)");
  genus->add_option("--expand", ga.expand, "expand in characteristic classes up to this weight");

  CechArgs cha;
  auto* cech = app.add_subcommand("cech", "Z2 Cech cohomology and spin structures");
  cech->add_option("--nerve", cha.nerve, "circle, sphere, torus or a nerve JSON file");
  cech->add_option("--w1", cha.w1_file, "pair signs JSON for w1");
  cech->add_option("--w2", cha.w2_file, "lift JSON for w2 (default: trivial lifts)");

  IndexArgs ia;
  auto* index = app.add_subcommand("index", "heat supertraces and indices of spectral models");
  index->add_option("--model", ia.model, "sphere2, torus2, torus_dirac or dlambda");
  index->add_option("--t", ia.t, "comma-separated times");
  index->add_option("--lmax", ia.lmax, "sphere2 truncation");
  index->add_option("--cutoff", ia.cutoff, "Fourier cutoff");
  index->add_option("--lambda", ia.lambda, "D_lambda parameter");
  index->add_option("--delta", ia.delta, "torus spin structure, e.g. 0.5,0");

  bool timings = false;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_flag("--timings", timings, "include run times (output is then not reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return usage_error;
  }

  const double default_tol = 1e-12;
  if (tol && *tol > default_tol && !allow_loose) {
    err << "error: --tol " << *tol << " is looser than the default " << default_tol
        << "; pass --allow-loose-tolerance to accept it\n";
    return usage_error;
  }
  if (tol && !(*tol > 0)) {
    err << "error: --tol must be positive\n";
    return usage_error;
  }

  try {
    Report r;
    if (*classify)
      r = cmd_classify(ca);
    else if (*spinrep)
      r = cmd_spinrep(sa, seed, tol.value_or(default_tol));
    else if (*genus)
      r = cmd_genus(ga);
    else if (*cech)
      r = cmd_cech(cha);
    else if (*index)
      r = cmd_index(ia);
    else
      r = cmd_selftest(seed, timings);
    render(r, format, out);
    return r.passed ? ok : check_failed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "error: malformed input: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    // DimensionError, PreconditionError and parse failures all land here
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return check_failed;
  }
  return usage_error;
}

}  // namespace spingeom::cli
