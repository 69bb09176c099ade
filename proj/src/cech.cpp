#include "spingeom/cech.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace spingeom {

namespace {

using Bits = std::vector<std::uint8_t>;

// Row-reduced basis of a subspace of GF(2)^width, used to test membership,
// to reduce vectors to a canonical coset representative and to solve.
class Gf2Basis {
 public:
  explicit Gf2Basis(std::size_t width) : width_(width) {}

  std::size_t rank() const { return rows_.size(); }

  /// Reduces v against the basis; returns the residue and, through `combo`,
  /// which inserted vectors were used.
  Bits reduce(Bits v, Bits* combo = nullptr) const {
    if (combo) combo->assign(tags_.empty() ? 0 : tags_.front().size(), 0);
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (v[pivots_[r]]) {
        xor_into(v, rows_[r]);
        if (combo) xor_into(*combo, tags_[r]);
      }
    return v;
  }

  /// Inserts v (tagged by the unit vector of its insertion slot); returns
  /// false if v is already in the span.
  bool insert(Bits v, std::size_t slot, std::size_t slots) {
    Bits tag(slots, 0);
    tag[slot] = 1;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (v[pivots_[r]]) {
        xor_into(v, rows_[r]);
        xor_into(tag, tags_[r]);
      }
    auto it = std::find(v.begin(), v.end(), 1);
    if (it == v.end()) return false;
    const std::size_t p = static_cast<std::size_t>(it - v.begin());
    // keep the basis fully reduced so residues are canonical
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (rows_[r][p]) {
        xor_into(rows_[r], v);
        xor_into(tags_[r], tag);
      }
    rows_.push_back(std::move(v));
    tags_.push_back(std::move(tag));
    pivots_.push_back(p);
    return true;
  }

  static void xor_into(Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
  }

 private:
  std::size_t width_;
  std::vector<Bits> rows_;
  std::vector<Bits> tags_;
  std::vector<std::size_t> pivots_;
};

bool all_zero(const Bits& b) {
  return std::all_of(b.begin(), b.end(), [](std::uint8_t x) { return x == 0; });
}

// Image of the unit cochain on each k-simplex under delta_k.
std::vector<Bits> coboundary_columns(const Nerve& nerve, int k) {
  std::vector<Bits> cols;
  for (std::size_t i = 0; i < nerve.count(k); ++i) {
    Cochain unit = Cochain::trivial(nerve, k);
    unit.bits[i] = 1;
    cols.push_back(coboundary(nerve, unit).bits);
  }
  return cols;
}

std::size_t coboundary_rank(const Nerve& nerve, int k) {
  if (k < 0) return 0;
  const auto cols = coboundary_columns(nerve, k);
  Gf2Basis basis(nerve.count(k + 1));
  std::size_t r = 0;
  for (std::size_t i = 0; i < cols.size(); ++i) r += basis.insert(cols[i], i, cols.size());
  return r;
}

// Solves delta_k x = target; nullopt when target is not a coboundary.
std::optional<Cochain> solve_coboundary(const Nerve& nerve, int k, const Cochain& target) {
  const auto cols = coboundary_columns(nerve, k);
  Gf2Basis basis(nerve.count(k + 1));
  for (std::size_t i = 0; i < cols.size(); ++i) basis.insert(cols[i], i, cols.size());
  Bits combo;
  const Bits residue = basis.reduce(target.bits, &combo);
  if (!all_zero(residue)) return std::nullopt;
  Cochain x = Cochain::trivial(nerve, k);
  if (!combo.empty()) x.bits = combo;
  return x;
}

// Basis of the k-cocycles: kernel of delta_k.
std::vector<Bits> cocycle_basis(const Nerve& nerve, int k) {
  const auto cols = coboundary_columns(nerve, k);
  Gf2Basis basis(nerve.count(k + 1));
  std::vector<Bits> kernel;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (basis.insert(cols[i], i, cols.size())) continue;
    // cols[i] is a combination of earlier columns: that combination plus e_i is in the kernel
    Bits combo;
    basis.reduce(cols[i], &combo);
    Bits v(cols.size(), 0);
    for (std::size_t j = 0; j < combo.size(); ++j) v[j] = combo[j];
    v[i] ^= 1;
    kernel.push_back(std::move(v));
  }
  return kernel;
}

}  // namespace

// ---------------------------------------------------------------------------

Nerve::Nerve(int patches, std::vector<Simplex> simplices) : patches_(patches) {
  if (patches < 1) throw PreconditionError("a nerve needs at least one patch");
  std::set<Simplex> all;
  for (int v = 0; v < patches; ++v) all.insert({v});
  for (auto s : simplices) {
    if (s.empty()) throw PreconditionError("empty simplex");
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw PreconditionError("simplex repeats a patch");
    if (s.front() < 0 || s.back() >= patches) throw PreconditionError("simplex index outside the patch range");
    all.insert(s);
  }
  for (const auto& s : all) {
    if (s.size() < 2) continue;
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      Simplex face = s;
      face.erase(face.begin() + static_cast<long>(drop));
      if (!all.count(face)) throw PreconditionError("nerve is not downward closed");
    }
  }
  for (const auto& s : all) {
    const std::size_t k = s.size() - 1;
    if (by_dim_.size() <= k) by_dim_.resize(k + 1);
    index_.emplace(s, by_dim_[k].size());
    by_dim_[k].push_back(s);
  }
}

const std::vector<Simplex>& Nerve::simplices(int k) const {
  static const std::vector<Simplex> none;
  if (k < 0 || k >= static_cast<int>(by_dim_.size())) return none;
  return by_dim_[k];
}

std::size_t Nerve::index_of(const Simplex& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) throw PreconditionError("simplex is not in the nerve");
  return it->second;
}

bool Nerve::contains(const Simplex& s) const { return index_.count(s) > 0; }

std::string Nerve::to_json() const {
  nlohmann::json j;
  j["patches"] = patches_;
  nlohmann::json list = nlohmann::json::array();
  for (std::size_t k = 1; k < by_dim_.size(); ++k)
    for (const auto& s : by_dim_[k]) list.push_back(s);
  j["simplices"] = list;
  return j.dump();
}

Nerve circle_nerve() { return Nerve(3, {{0, 1}, {1, 2}, {0, 2}}); }

Nerve sphere_nerve() {
  return Nerve(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

Nerve torus_nerve() {
  auto id = [](int i, int j) { return 3 * ((i + 3) % 3) + (j + 3) % 3; };
  std::vector<Simplex> tri;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      tri.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tri.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
    }
  std::vector<Simplex> all = tri;
  for (const auto& t : tri) {
    all.push_back({t[0], t[1]});
    all.push_back({t[0], t[2]});
    all.push_back({t[1], t[2]});
  }
  return Nerve(9, all);
}

Nerve load_nerve(const std::string& json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    return Nerve(j.at("patches").get<int>(), j.at("simplices").get<std::vector<Simplex>>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("nerve JSON: ") + e.what());
  }
}

Nerve builtin_nerve(const std::string& name) {
  if (name == "circle") return circle_nerve();
  if (name == "sphere" || name == "sphere2") return sphere_nerve();
  if (name == "torus" || name == "torus2") return torus_nerve();
  throw PreconditionError("unknown built-in nerve: " + name);
}

// ---------------------------------------------------------------------------

int Cochain::sign(const Nerve& nerve, const Simplex& s) const {
  if (static_cast<int>(s.size()) != degree + 1) throw DimensionError("simplex has the wrong dimension");
  return sign_at(nerve.index_of(s));
}

void Cochain::set_sign(const Nerve& nerve, const Simplex& s, int sgn) {
  if (sgn != 1 && sgn != -1) throw PreconditionError("Z2 signs are +1 or -1");
  if (static_cast<int>(s.size()) != degree + 1) throw DimensionError("simplex has the wrong dimension");
  bits.at(nerve.index_of(s)) = sgn < 0 ? 1 : 0;
}

bool Cochain::is_trivial() const { return all_zero(bits); }

Cochain operator*(const Cochain& a, const Cochain& b) {
  if (a.degree != b.degree || a.bits.size() != b.bits.size()) throw DimensionError("cochains of different degree");
  Cochain out = a;
  for (std::size_t i = 0; i < out.bits.size(); ++i) out.bits[i] ^= b.bits[i];
  return out;
}

Cochain coboundary(const Nerve& nerve, const Cochain& s) {
  if (s.bits.size() != nerve.count(s.degree)) throw DimensionError("cochain does not match the nerve");
  Cochain out = Cochain::trivial(nerve, s.degree + 1);
  const auto& higher = nerve.simplices(s.degree + 1);
  for (std::size_t i = 0; i < higher.size(); ++i) {
    std::uint8_t acc = 0;
    for (std::size_t drop = 0; drop < higher[i].size(); ++drop) {
      Simplex face = higher[i];
      face.erase(face.begin() + static_cast<long>(drop));
      acc ^= s.bits[nerve.index_of(face)];
    }
    out.bits[i] = acc;
  }
  return out;
}

int cohomology_dim(const Nerve& nerve, int k) {
  if (k < 0) throw PreconditionError("cohomology degree must be non-negative");
  const std::size_t cochains = nerve.count(k);
  const std::size_t kernel = cochains - coboundary_rank(nerve, k);
  return static_cast<int>(kernel - coboundary_rank(nerve, k - 1));
}

W1Result w1(const Nerve& nerve, const std::map<Simplex, int>& pair_signs) {
  Cochain c = Cochain::trivial(nerve, 1);
  for (const auto& [pair, sign] : pair_signs) {
    Simplex s = pair;
    std::sort(s.begin(), s.end());
    c.set_sign(nerve, s, sign);
  }
  if (pair_signs.size() != nerve.count(1)) throw PreconditionError("w1 needs a sign on every pair");
  if (!coboundary(nerve, c).is_trivial()) throw ConsistencyError("pair signs do not form a cocycle");
  W1Result out{c, false, std::nullopt};
  out.primitive = solve_coboundary(nerve, 0, c);
  out.trivial = out.primitive.has_value();
  return out;
}

// ---------------------------------------------------------------------------

LiftData trivial_lifts(const Nerve& nerve) {
  LiftData d;
  d.signature = Signature(0, 0);
  for (const auto& e : nerve.simplices(1)) d.lifts.emplace(e, Multivector::scalar(d.signature, 1));
  return d;
}

LiftData load_lifts(const std::string& json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    LiftData d;
    if (j.contains("signature")) d.signature = Signature(j["signature"].at(0).get<int>(), j["signature"].at(1).get<int>());
    for (const auto& e : j.at("lifts")) {
      Simplex s{e.at(0).get<int>(), e.at(1).get<int>()};
      Multivector x(d.signature);
      const auto& v = e.at(2);
      if (v.is_string())
        x = parse_multivector(v.get<std::string>(), d.signature);
      else if (v.is_number_integer())
        x = Multivector::scalar(d.signature, GaussianRational(v.get<long>()));
      else
        throw ParseError("lift must be a multivector string or an integer");
      if (s[0] > s[1]) {
        std::swap(s[0], s[1]);
        x = x.inverse();
      }
      if (s[0] == s[1]) throw ParseError("lift on a degenerate pair");
      d.lifts.insert_or_assign(s, x);
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("lift JSON: ") + e.what());
  }
}

namespace {

const Multivector& lift_of(const LiftData& d, int a, int b) {
  auto it = d.lifts.find(Simplex{a, b});
  if (it == d.lifts.end())
    throw PreconditionError("missing lift on pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
  return it->second;
}

}  // namespace

Cochain w2_cocycle(const Nerve& nerve, const LiftData& lifts) {
  for (const auto& e : nerve.simplices(1)) lift_of(lifts, e[0], e[1]);
  Cochain eps = Cochain::trivial(nerve, 2);
  const auto& triples = nerve.simplices(2);
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const int a = triples[i][0], b = triples[i][1], c = triples[i][2];
    // g_ca g_bc g_ab with g_ca the inverse of g_ac
    const Multivector prod = lift_of(lifts, a, c).inverse() * lift_of(lifts, b, c) * lift_of(lifts, a, b);
    const auto one = Multivector::scalar(lifts.signature, 1);
    if (prod == one)
      eps.bits[i] = 0;
    else if (prod == -one)
      eps.bits[i] = 1;
    else
      throw ConsistencyError("lift product on a triple is not +1 or -1: " + to_string(prod));
  }
  if (!coboundary(nerve, eps).is_trivial()) throw ConsistencyError("obstruction cochain is not closed");
  return eps;
}

SpinStructures w2_and_spin_structures(const Nerve& nerve, const LiftData& lifts) {
  SpinStructures out;
  out.obstruction = w2_cocycle(nerve, lifts);
  out.h1_dim = cohomology_dim(nerve, 1);
  const auto particular = solve_coboundary(nerve, 1, out.obstruction);
  out.w2_vanishes = particular.has_value();
  if (!out.w2_vanishes) return out;
  if (out.h1_dim > 10) throw DimensionError("spin structure enumeration limited to dim H^1 <= 10");

  const std::size_t width = nerve.count(1);
  // coboundaries B^1 = image of delta_0
  Gf2Basis boundaries(width);
  const auto b_cols = coboundary_columns(nerve, 0);
  for (std::size_t i = 0; i < b_cols.size(); ++i) boundaries.insert(b_cols[i], i, b_cols.size());
  // complement of B^1 inside Z^1
  Gf2Basis span = boundaries;
  std::vector<Bits> classes;
  for (const auto& z : cocycle_basis(nerve, 1))
    if (span.insert(z, 0, b_cols.size())) classes.push_back(z);
  if (static_cast<int>(classes.size()) != out.h1_dim) throw ConsistencyError("H^1 complement has the wrong size");

  auto canonical = [&](const Bits& v) { return boundaries.reduce(v); };
  const std::size_t count = std::size_t{1} << classes.size();
  std::vector<Bits> group(count, Bits(width, 0));
  for (std::size_t m = 0; m < count; ++m)
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (m & (std::size_t{1} << i)) Gf2Basis::xor_into(group[m], classes[i]);

  std::map<Bits, std::size_t> position;
  for (std::size_t m = 0; m < count; ++m) {
    Bits kappa = particular->bits;
    Gf2Basis::xor_into(kappa, group[m]);
    Bits key = canonical(kappa);
    if (!position.emplace(key, m).second) throw ConsistencyError("two enumerated spin structures coincide");
    out.structures.push_back(Cochain{1, key});
  }
  // brute-force action table: s + a for every structure s and class a
  out.action_free = true;
  out.action_transitive = true;
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<bool> hit(count, false);
    for (std::size_t a = 0; a < count; ++a) {
      Bits moved = out.structures[s].bits;
      Gf2Basis::xor_into(moved, group[a]);
      auto it = position.find(canonical(moved));
      if (it == position.end()) {
        out.action_transitive = false;
        continue;
      }
      if (a != 0 && it->second == s) out.action_free = false;
      hit[it->second] = true;
    }
    if (!std::all_of(hit.begin(), hit.end(), [](bool h) { return h; })) out.action_transitive = false;
  }
  return out;
}

}  // namespace spingeom
