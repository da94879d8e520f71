#include "bumpless/monomial.hpp"

#include <algorithm>

namespace bumpless {

int zmono_degree(const ZMono& m) {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}

bool zmono_divides(const ZMono& a, const ZMono& b) {
  for (std::size_t v = 0; v < a.size(); ++v)
    if (a[v] > b[v]) return false;
  return true;
}

ZMono zmono_lcm(const ZMono& a, const ZMono& b) {
  ZMono r;
  for (std::size_t v = 0; v < a.size(); ++v) r[v] = std::max(a[v], b[v]);
  return r;
}

bool zmono_squarefree(const ZMono& m) {
  return std::all_of(m.begin(), m.end(), [](auto e) { return e <= 1; });
}

std::string zmono_to_string(int n, const ZMono& m) {
  std::string out;
  for (int v = 0; v < kMaxZVars; ++v) {
    const int e = m[static_cast<std::size_t>(v)];
    if (!e) continue;
    if (!out.empty()) out += "*";
    if (v == n * n) {
      out += "t";
    } else {
      const Cell c = zcell(n, v);
      out += "z[" + std::to_string(c.row) + "," + std::to_string(c.col) + "]";
    }
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

}  // namespace bumpless

namespace bumpless {

namespace {

std::vector<ZMono> minimalize(std::vector<ZMono> gens) {
  std::sort(gens.begin(), gens.end(), [](const ZMono& a, const ZMono& b) {
    const int da = zmono_degree(a), db = zmono_degree(b);
    return da != db ? da < db : a < b;
  });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<ZMono> out;
  for (const auto& g : gens) {
    bool redundant = false;
    for (const auto& h : out)
      if (zmono_divides(h, g)) {
        redundant = true;
        break;
      }
    if (!redundant) out.push_back(g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int pure_power_var(const ZMono& m) {
  int var = -1;
  for (int v = 0; v < kMaxZVars; ++v)
    if (m[static_cast<std::size_t>(v)]) {
      if (var >= 0) return -1;
      var = v;
    }
  return var;
}

}  // namespace

MonomialIdeal::MonomialIdeal(int n, std::vector<ZMono> gens) : n_(n), gens_(minimalize(std::move(gens))) {}

MonomialIdeal MonomialIdeal::of_cells(int n, const Diagram& cells) {
  std::vector<ZMono> g;
  for (const auto& c : cells) {
    if (c.row < 1 || c.row > n || c.col < 1 || c.col > n) throw InputError("cell " + bumpless::to_string(c) + " outside the grid");
    ZMono m{};
    m[static_cast<std::size_t>(zindex(n, c.row, c.col))] = 1;
    g.push_back(m);
  }
  return MonomialIdeal(n, std::move(g));
}

bool MonomialIdeal::is_unit() const { return gens_.size() == 1 && gens_.front() == ZMono{}; }

bool MonomialIdeal::contains(const ZMono& m) const {
  for (const auto& g : gens_)
    if (zmono_divides(g, m)) return true;
  return false;
}

std::string MonomialIdeal::to_string() const {
  std::string out = "(";
  // print by degree then diagonal lex, greatest first
  std::vector<ZMono> gs(gens_.rbegin(), gens_.rend());
  std::stable_sort(gs.begin(), gs.end(), [](const ZMono& a, const ZMono& b) { return zmono_degree(a) < zmono_degree(b); });
  for (std::size_t k = 0; k < gs.size(); ++k) out += (k ? ", " : "") + zmono_to_string(n_, gs[k]);
  return out + ")";
}

nlohmann::json MonomialIdeal::to_json() const {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : gens_) {
    nlohmann::json m = nlohmann::json::object();
    for (int v = 0; v < kMaxZVars; ++v)
      if (g[static_cast<std::size_t>(v)]) {
        std::string key;
        if (v == n_ * n_) {
          key = "t";
        } else {
          const Cell c = zcell(n_, v);
          key = std::to_string(c.row) + "," + std::to_string(c.col);
        }
        m[key] = g[static_cast<std::size_t>(v)];
      }
    gens.push_back(std::move(m));
  }
  return {{"n", n_}, {"generators", gens}};
}

MonomialIdeal MonomialIdeal::from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    if (n < 1 || n > kMaxGrid) throw InputError("grid size out of range");
    std::vector<ZMono> gens;
    for (const auto& g : j.at("generators")) {
      ZMono m{};
      for (const auto& [key, e] : g.items()) {
        int idx;
        if (key == "t") {
          idx = n * n;
        } else {
          const auto comma = key.find(',');
          if (comma == std::string::npos) throw InputError("bad variable key '" + key + "'");
          const int r = std::stoi(key.substr(0, comma)), c = std::stoi(key.substr(comma + 1));
          if (r < 1 || r > n || c < 1 || c > n) throw InputError("variable '" + key + "' outside the grid");
          idx = zindex(n, r, c);
        }
        const int ev = e.get<int>();
        if (ev < 0 || ev > 255) throw InputError("exponent out of range");
        m[static_cast<std::size_t>(idx)] = static_cast<std::uint8_t>(ev);
      }
      gens.push_back(m);
    }
    return MonomialIdeal(n, std::move(gens));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("monomial ideal JSON: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw InputError("monomial ideal JSON: bad variable key");
  }
}

MonomialIdeal operator+(const MonomialIdeal& a, const MonomialIdeal& b) {
  std::vector<ZMono> g = a.generators();
  g.insert(g.end(), b.generators().begin(), b.generators().end());
  return MonomialIdeal(std::max(a.grid(), b.grid()), std::move(g));
}

MonomialIdeal intersect(const MonomialIdeal& a, const MonomialIdeal& b) {
  std::vector<ZMono> g;
  for (const auto& x : a.generators())
    for (const auto& y : b.generators()) g.push_back(zmono_lcm(x, y));
  return MonomialIdeal(std::max(a.grid(), b.grid()), std::move(g));
}

MonomialIdeal colon(const MonomialIdeal& i, const ZMono& m) {
  std::vector<ZMono> g;
  for (const auto& x : i.generators()) {
    ZMono q;
    for (std::size_t v = 0; v < q.size(); ++v) q[v] = x[v] > m[v] ? static_cast<std::uint8_t>(x[v] - m[v]) : 0;
    g.push_back(q);
  }
  return MonomialIdeal(i.grid(), std::move(g));
}

MonomialIdeal radical(const MonomialIdeal& i) {
  std::vector<ZMono> g;
  for (auto x : i.generators()) {
    for (auto& e : x) e = e ? 1 : 0;
    g.push_back(x);
  }
  return MonomialIdeal(i.grid(), std::move(g));
}

std::string prime_to_string(const MonomialPrime& p) {
  std::string out = "(";
  bool first = true;
  for (const auto& c : p) {
    out += (first ? "" : ", ") + std::string("z[") + std::to_string(c.row) + "," + std::to_string(c.col) + "]";
    first = false;
  }
  return out + ")";
}

namespace {

using VarSet = std::uint64_t;

VarSet support(const ZMono& m) {
  VarSet s = 0;
  for (int v = 0; v < kMaxZVars; ++v)
    if (m[static_cast<std::size_t>(v)]) s |= VarSet{1} << v;
  return s;
}

// Minimal vertex covers of the hypergraph with the given edges.
void covers(const std::vector<VarSet>& edges, VarSet chosen, std::vector<VarSet>& found) {
  for (VarSet f : found)
    if ((f & chosen) == f) return;
  const VarSet* open = nullptr;
  for (const auto& e : edges)
    if (!(e & chosen)) {
      // branch on the smallest uncovered edge
      if (!open || __builtin_popcountll(e) < __builtin_popcountll(*open)) open = &e;
    }
  if (!open) {
    // drop covers that contain this one
    found.erase(std::remove_if(found.begin(), found.end(), [&](VarSet f) { return (chosen & f) == chosen; }),
                found.end());
    found.push_back(chosen);
    return;
  }
  for (int v = 0; v < kMaxZVars; ++v)
    if (*open & (VarSet{1} << v)) covers(edges, chosen | (VarSet{1} << v), found);
}

MonomialPrime to_prime(int n, VarSet s) {
  MonomialPrime p;
  for (int v = 0; v < kMaxZVars; ++v)
    if (s & (VarSet{1} << v)) {
      if (v >= n * n) throw InputError("prime involves the auxiliary variable");
      p.insert(zcell(n, v));
    }
  return p;
}

VarSet from_prime(int n, const MonomialPrime& p) {
  VarSet s = 0;
  for (const auto& c : p) s |= VarSet{1} << zindex(n, c.row, c.col);
  return s;
}

}  // namespace

std::set<MonomialPrime> minimal_primes(const MonomialIdeal& i) {
  if (i.is_unit()) return {};
  std::vector<VarSet> edges;
  const MonomialIdeal rad = radical(i);
  for (const auto& g : rad.generators()) edges.push_back(support(g));
  std::vector<VarSet> found;
  covers(edges, 0, found);
  std::set<MonomialPrime> out;
  for (VarSet f : found) out.insert(to_prime(i.grid(), f));
  return out;
}

namespace {

// Monomials in the variables of `vars` (ascending indices) not in `gens`.
long count_standard(const std::vector<int>& vars, std::size_t k, ZMono& cur, const std::vector<ZMono>& gens) {
  for (const auto& g : gens)
    if (zmono_divides(g, cur)) return 0;
  if (k == vars.size()) return 1;
  long total = 0;
  const auto v = static_cast<std::size_t>(vars[k]);
  const auto saved = cur[v];
  while (true) {
    bool inside = false;
    for (const auto& g : gens)
      if (zmono_divides(g, cur)) {
        inside = true;
        break;
      }
    if (inside) break;
    total += count_standard(vars, k + 1, cur, gens);
    cur[v] = static_cast<std::uint8_t>(cur[v] + 1);
  }
  cur[v] = saved;
  return total;
}

}  // namespace

long multiplicity_at(const MonomialIdeal& i, const MonomialPrime& p) {
  if (!minimal_primes(i).count(p))
    throw InputError(prime_to_string(p) + " is not a minimal prime of " + i.to_string() + "; the length is not finite");
  const VarSet ps = from_prime(i.grid(), p);
  std::vector<ZMono> loc;
  for (auto g : i.generators()) {
    for (int v = 0; v < kMaxZVars; ++v)
      if (!(ps & (VarSet{1} << v))) g[static_cast<std::size_t>(v)] = 0;
    loc.push_back(g);
  }
  loc = MonomialIdeal(i.grid(), std::move(loc)).generators();
  std::vector<int> vars;
  for (int v = 0; v < kMaxZVars; ++v)
    if (ps & (VarSet{1} << v)) vars.push_back(v);
  ZMono cur{};
  return count_standard(vars, 0, cur, loc);
}

namespace {

struct IrrMemo {
  std::map<std::vector<ZMono>, std::vector<std::vector<ZMono>>> memo;

  // Components as generator lists of pure powers; possibly redundant.
  const std::vector<std::vector<ZMono>>& run(int n, const std::vector<ZMono>& gens) {
    auto it = memo.find(gens);
    if (it != memo.end()) return it->second;
    std::vector<std::vector<ZMono>> out;
    const ZMono* split = nullptr;
    for (const auto& g : gens)
      if (pure_power_var(g) < 0 && !(g == ZMono{})) {
        split = &g;
        break;
      }
    if (!split) {
      out.push_back(gens);
    } else {
      const ZMono m = *split;
      int v = 0;
      while (!m[static_cast<std::size_t>(v)]) ++v;
      ZMono power{}, rest = m;
      power[static_cast<std::size_t>(v)] = m[static_cast<std::size_t>(v)];
      rest[static_cast<std::size_t>(v)] = 0;
      for (const ZMono& piece : {power, rest}) {
        std::vector<ZMono> g = gens;
        g.push_back(piece);
        const auto sub = MonomialIdeal(n, std::move(g)).generators();
        const auto& comps = run(n, sub);
        out.insert(out.end(), comps.begin(), comps.end());
      }
    }
    return memo.emplace(gens, std::move(out)).first->second;
  }
};

// J contains K iff every generator of K lies in J; for irreducible ideals
// given by pure powers that is a coordinatewise comparison.
bool contains_all(const std::vector<ZMono>& big, const std::vector<ZMono>& small) {
  for (const auto& s : small) {
    bool in = false;
    for (const auto& b : big)
      if (zmono_divides(b, s)) {
        in = true;
        break;
      }
    if (!in) return false;
  }
  return true;
}

}  // namespace

std::vector<MonomialIdeal> irreducible_components(const MonomialIdeal& i) {
  if (i.is_unit()) return {};
  if (i.is_zero()) return {i};
  IrrMemo memo;
  auto comps = memo.run(i.grid(), i.generators());
  std::sort(comps.begin(), comps.end());
  comps.erase(std::unique(comps.begin(), comps.end()), comps.end());
  std::vector<MonomialIdeal> out;
  for (std::size_t a = 0; a < comps.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < comps.size() && !redundant; ++b)
      if (a != b && contains_all(comps[a], comps[b])) redundant = true;
    if (!redundant) out.emplace_back(i.grid(), comps[a]);
  }
  return out;
}

std::set<MonomialPrime> associated_primes(const MonomialIdeal& i) {
  std::set<MonomialPrime> out;
  for (const auto& c : irreducible_components(i)) {
    VarSet s = 0;
    for (const auto& g : c.generators()) s |= support(g);
    out.insert(to_prime(i.grid(), s));
  }
  return out;
}

bool is_radical(const MonomialIdeal& i) {
  return std::all_of(i.generators().begin(), i.generators().end(), zmono_squarefree);
}

std::set<Diagram> facets(const MonomialIdeal& i) {
  if (!is_radical(i)) throw InputError("facets need a squarefree monomial ideal, got " + i.to_string());
  std::set<Diagram> out;
  const int n = i.grid();
  for (const auto& p : minimal_primes(i)) {
    Diagram f;
    for (int r = 1; r <= n; ++r)
      for (int c = 1; c <= n; ++c)
        if (!p.count(Cell{r, c})) f.insert(Cell{r, c});
    out.insert(std::move(f));
  }
  return out;
}

UniversePtr grading_universe(Grading g, int n) {
  switch (g) {
    case Grading::Standard:
      return Universe::standard();
    case Grading::Zn:
      return Universe::xs(n);
    case Grading::Z2n:
      return Universe::schubert(n);
  }
  return Universe::standard();
}

namespace {

Exponent grading_degree(Grading g, int n, const ZMono& m) {
  Exponent e{};
  for (int v = 0; v < n * n; ++v) {
    const int k = m[static_cast<std::size_t>(v)];
    if (!k) continue;
    const Cell c = zcell(n, v);
    switch (g) {
      case Grading::Standard:
        e[0] = static_cast<std::uint8_t>(e[0] + k);
        break;
      case Grading::Zn:
        e[static_cast<std::size_t>(c.row - 1)] = static_cast<std::uint8_t>(e[static_cast<std::size_t>(c.row - 1)] + k);
        break;
      case Grading::Z2n:
        e[static_cast<std::size_t>(c.row - 1)] = static_cast<std::uint8_t>(e[static_cast<std::size_t>(c.row - 1)] + k);
        e[static_cast<std::size_t>(n + c.col - 1)] =
            static_cast<std::uint8_t>(e[static_cast<std::size_t>(n + c.col - 1)] + k);
        break;
    }
  }
  return e;
}

struct KMemo {
  Grading g;
  int n;
  UniversePtr u;
  std::map<std::vector<ZMono>, SparsePoly> memo;

  // K(R/I) = K(R/I') - t^deg(m) K(R/(I' : m)) with m the last generator
  SparsePoly run(const std::vector<ZMono>& gens) {
    if (gens.empty()) return SparsePoly::constant(u, 1);
    if (gens.size() == 1 && gens.front() == ZMono{}) return SparsePoly(u);
    auto it = memo.find(gens);
    if (it != memo.end()) return it->second;
    const ZMono m = gens.back();
    std::vector<ZMono> rest(gens.begin(), gens.end() - 1);
    SparsePoly tm(u);
    tm.add_term(grading_degree(g, n, m), 1);
    SparsePoly k = run(rest);
    if (gens.size() == 1) {
      k -= tm;
    } else {
      const auto q = colon(MonomialIdeal(n, rest), m).generators();
      k -= tm * run(q);
    }
    return memo.emplace(gens, std::move(k)).first->second;
  }
};

}  // namespace

SparsePoly k_polynomial(const MonomialIdeal& i, Grading g) {
  KMemo memo{g, i.grid(), grading_universe(g, i.grid()), {}};
  for (const auto& m : i.generators())
    if (m[static_cast<std::size_t>(i.grid() * i.grid())]) throw InputError("K-polynomial of an ideal involving t");
  return memo.run(i.generators());
}

SparsePoly multidegree(const MonomialIdeal& i, Grading g) {
  SparsePoly k = k_polynomial(i, g);
  const auto& u = k.universe();
  const int nvars = g == Grading::Z2n ? 2 * i.grid() : u->size();
  std::vector<int> used;
  for (int v = 0; v < nvars; ++v)
    if (k.degree_in(v) > 0) used.push_back(v);
  // substitute t -> 1 - t all at once so the result stays exact
  SparsePoly out(u);
  for (const auto& [e, c] : k.terms()) {
    SparsePoly term = SparsePoly::constant(u, c);
    for (int v : used) {
      const int d = e[static_cast<std::size_t>(v)];
      if (d) term = term * (SparsePoly::constant(u, 1) - SparsePoly::var(u, v)).pow(static_cast<unsigned>(d));
    }
    out += term;
  }
  const int low = out.low_degree();
  return low < 0 ? out : out.homogeneous_part(low);
}

long degree(const MonomialIdeal& i) {
  SparsePoly m = multidegree(i, Grading::Standard);
  if (m.is_zero()) return 0;
  return m.terms().begin()->second.get_si();
}

}  // namespace bumpless
