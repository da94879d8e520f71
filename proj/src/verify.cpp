#include "bumpless/verify.hpp"

#include <algorithm>
#include <map>

#include "bumpless/bpd.hpp"
#include "bumpless/poly.hpp"

namespace bumpless {

using nlohmann::json;

void Report::check(const std::string& name, bool ok, json detail) {
  json entry = {{"check", name}, {"ok", ok}};
  if (!detail.is_null()) entry["detail"] = std::move(detail);
  witness["checks"].push_back(std::move(entry));
  if (!ok) pass = false;
}

json Report::to_json() const {
  return {{"case", case_id}, {"statement", statement}, {"status", pass ? "pass" : "fail"}, {"witness", witness}};
}

namespace {

json gb_json(const std::vector<QPoly>& gb) {
  json out = json::array();
  for (const auto& g : gb) out.push_back(g.to_string());
  return out;
}

json cells_json(const Diagram& d) {
  json out = json::array();
  for (const auto& c : d) out.push_back({c.row, c.col});
  return out;
}

json perms_json(const std::set<Permutation>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

std::string join_names(const std::vector<Permutation>& ws) {
  std::string s;
  for (const auto& w : ws) s += (s.empty() ? "" : ",") + w.to_string();
  return s;
}

int common_size(const std::vector<Permutation>& ws) {
  if (ws.empty()) throw InputError("need at least one permutation");
  const int n = ws.front().size();
  for (const auto& w : ws)
    if (w.size() != n) throw InputError("permutations of different sizes");
  return n;
}

// Equality check with both reduced GBs in the witness on failure.
void check_equal(Report& r, const std::string& name, const Ideal& a, const Ideal& b) {
  const auto o = TermOrder::deg_diagonal(a.grid());
  const bool ok = ideal_equal(a, b, o);
  r.check(name, ok, ok ? json(nullptr) : json{{"lhs", gb_json(a.gb(o))}, {"rhs", gb_json(b.gb(o))}});
}

SparsePoly z2n_k(const Permutation& u) {
  return k_polynomial(initial_ideal(Ideal::schubert(u), TermOrder::antidiagonal_lex(u.size())), Grading::Z2n);
}

}  // namespace

Ideal intersect_schubert(const std::vector<Permutation>& ws) {
  common_size(ws);
  Ideal j = Ideal::schubert(ws.front());
  for (std::size_t k = 1; k < ws.size(); ++k) j = intersect_ideals(j, Ideal::schubert(ws[k]));
  return j;
}

Diagram maximally_southeast_cells(const std::vector<Permutation>& ws) {
  Diagram all;
  for (const auto& w : ws) {
    const auto d = rothe_diagram(w);
    all.insert(d.begin(), d.end());
  }
  Diagram out;
  for (const auto& c : all) {
    bool dominated = false;
    for (const auto& o : all)
      if (o != c && o.row >= c.row && o.col >= c.col) {
        dominated = true;
        break;
      }
    if (!dominated) out.insert(c);
  }
  return out;
}

Report verify_link_decomposition(const Permutation& w, const Cell& corner) {
  Report r;
  r.case_id = "linkdecomp:" + w.to_string() + "@" + to_string(corner);
  r.statement = "C_{y,I_w} = intersection of I_u over Phi(w,y) and N_{y,I_w} = I_v";
  const auto td = transition_data(w, corner);
  const int n = w.size();
  const ZVar y{corner.row, corner.col};
  const auto split = gvd_split(Ideal::schubert(w), y, TermOrder::tau(n, y));
  r.witness["v"] = td.v.to_string();
  r.witness["Phi"] = perms_json(td.Phi);
  r.witness["C"] = gb_json(split.C.gb(TermOrder::deg_diagonal(n)));
  r.witness["N"] = gb_json(split.N.gb(TermOrder::deg_diagonal(n)));
  check_equal(r, "N = I_v", split.N, Ideal::schubert(td.v));
  const int rank = w.rank(corner.row, corner.col);
  if (td.Phi.empty()) {
    r.check("C is the unit ideal", split.C.is_unit());
    r.check("rank zero at the corner", rank == 0, json{{"rank", rank}});
    return r;
  }
  std::vector<Permutation> phi(td.Phi.begin(), td.Phi.end());
  check_equal(r, "C = intersection over Phi", split.C, intersect_schubert(phi));
  if (rank >= 1) {
    const Permutation pi = bigrassmannian(n, corner.row - 1, corner.col - 1, rank - 1);
    const Asm vp = join(std::vector<Permutation>{td.v, pi});
    r.witness["pi"] = pi.to_string();
    check_equal(r, "C = I_v + I_pi", split.C, sum_ideals(Ideal::schubert(td.v), Ideal::schubert(pi)));
    check_equal(r, "C = I_{v join pi}", split.C, Ideal::of_asm(vp));
    const auto perm = perm_set(vp);
    r.check("Perm(v join pi) = Phi", perm == td.Phi, json{{"perm", perms_json(perm)}});
    r.check("deg(v join pi) = l(w)", degree_of(vp) == w.length(), json{{"deg", degree_of(vp)}, {"length", w.length()}});
  }
  return r;
}

Report verify_main_theorem(const std::vector<Permutation>& input, const TermOrder& order) {
  std::set<Permutation> distinct(input.begin(), input.end());
  const std::vector<Permutation> ws(distinct.begin(), distinct.end());
  const int n = common_size(ws);
  if (order.grid() != n) throw InputError("term order grid does not match the permutations");
  const int len = ws.front().length();
  for (const auto& w : ws)
    if (w.length() != len) throw InputError("permutations must share a Coxeter length");
  Report r;
  r.case_id = "main:" + join_names(ws) + ":" + order.name();
  r.statement = "minimal primes of in(J), with multiplicity, are the I_{D(B)} over the BPDs of the w_i";

  std::map<Diagram, long> diagrams;
  for (const auto& w : ws)
    for (const auto& b : enumerate_bpds(w)) ++diagrams[diagram(b)];

  const auto in = initial_ideal(intersect_schubert(ws), order);
  r.witness["initial_ideal"] = in.to_string();
  std::map<Diagram, long> mults;
  for (const auto& p : minimal_primes(in)) mults[p] = multiplicity_at(in, p);

  json table = json::array();
  std::set<Diagram> keys;
  for (const auto& [d, c] : diagrams) keys.insert(d);
  for (const auto& [d, c] : mults) keys.insert(d);
  bool ok = true;
  for (const auto& d : keys) {
    const long m = mults.count(d) ? mults[d] : 0;
    const long b = diagrams.count(d) ? diagrams[d] : 0;
    if (m != b) ok = false;
    table.push_back({{"prime", prime_to_string(d)}, {"multiplicity", m}, {"bpds", b}});
  }
  r.witness["primes"] = table;
  r.check("multiplicities match BPD diagram counts", ok);
  return r;
}

Report verify_hilbert_transition(const Permutation& w, const Cell& corner) {
  Report r;
  r.case_id = "hilbert:" + w.to_string() + "@" + to_string(corner);
  r.statement = "K(R/I_w) = (1 - x_a y_b) K(R/I_v) + x_a y_b sum (-1)^{#U-1} K(R/I_{w_U})";
  const auto td = transition_data(w, corner);
  const int n = w.size();
  const auto u = Universe::schubert(n);
  const SparsePoly xy = SparsePoly::var(u, "x" + std::to_string(corner.row)) * SparsePoly::var(u, "y" + std::to_string(corner.col));
  const SparsePoly lhs = z2n_k(w);
  SparsePoly sum(u);
  for (const auto& U : nonempty_subsets(td.phi)) {
    const SparsePoly k = z2n_k(w_U(td, U));
    if (U.size() % 2)
      sum += k;
    else
      sum -= k;
  }
  const SparsePoly rhs = (SparsePoly::constant(u, 1) - xy) * z2n_k(td.v) + xy * sum;
  const SparsePoly diff = lhs - rhs;
  r.check("identity holds", diff.is_zero(), diff.is_zero() ? json(nullptr) : json{{"difference", diff.to_string()}});
  return r;
}

Report verify_intersect_ns(const std::vector<Permutation>& ws, const Cell& y) {
  const int n = common_size(ws);
  Report r;
  r.case_id = "intersectNs:" + join_names(ws) + "@" + to_string(y);
  r.statement = "N_{y,J} = intersection of the N_{y,I_{w_i}}";
  const ZVar z{y.row, y.col};
  const auto o = TermOrder::y_refined(TermOrder::diagonal_lex(n), z);
  const Ideal j = intersect_schubert(ws);
  const bool linear = is_linear_in_y(j, z, o);
  r.check("J is linear in y", linear);
  if (!linear) return r;
  const auto nj = gvd_split(j, z, o).N;
  Ideal cap = gvd_split(Ideal::schubert(ws.front()), z, o).N;
  for (std::size_t k = 1; k < ws.size(); ++k) cap = intersect_ideals(cap, gvd_split(Ideal::schubert(ws[k]), z, o).N);
  check_equal(r, "N_J = intersection of N_i", nj, cap);
  return r;
}

Report verify_ycompat(const std::vector<Permutation>& ws, const Cell& y, const TermOrder& order) {
  common_size(ws);
  Report r;
  r.case_id = "ycompat:" + join_names(ws) + "@" + to_string(y) + ":" + order.name();
  r.statement = "in_sigma(J) = in_sigma'(J) for the y-refined order sigma'";
  const Ideal j = intersect_schubert(ws);
  const auto a = initial_ideal(j, order);
  const auto b = initial_ideal(j, TermOrder::y_refined(order, {y.row, y.col}));
  r.witness["initial_ideal"] = a.to_string();
  r.check("initial ideals agree", a == b, a == b ? json(nullptr) : json{{"sigma", a.to_string()}, {"refined", b.to_string()}});
  return r;
}

Report verify_theorem_b(const Permutation& w, bool with_multidegree) {
  const int n = w.size();
  Report r;
  r.case_id = "theoremB:" + w.to_string();
  r.statement = "Fulton generators are an antidiagonal GB; the initial ideal is the intersection of I_{C(D)} over pipe dreams";
  const auto o = TermOrder::antidiagonal_lex(n);
  const auto gens = fulton_generators(w);
  r.check("Fulton generators are Groebner", is_groebner_basis(gens, o));
  const auto in = initial_ideal(Ideal::schubert(w), o);
  r.witness["initial_ideal"] = in.to_string();
  r.check("squarefree", is_radical(in));
  const auto primes = minimal_primes(in);
  MonomialIdeal cap(n, {ZMono{}});
  for (const auto& p : primes) cap = intersect(cap, MonomialIdeal::of_cells(n, p));
  r.check("equals intersection of minimal primes", cap == in);
  json pipes = json::array();
  for (const auto& p : primes) pipes.push_back(cells_json(p));
  r.witness["pipe_dreams"] = pipes;
  const long bpds = static_cast<long>(enumerate_bpds(w).size());
  const long nf = is_radical(in) ? static_cast<long>(facets(in).size()) : -1;
  r.check("facet count = #BPD(w)", nf == bpds, json{{"facets", nf}, {"bpds", bpds}});
  if (with_multidegree) {
    // multidegree weights are x_i + y_j; the BPD sum uses x_i - y_j
    SparsePoly s = double_schubert_bpd(w);
    const auto& u = s.universe();
    for (int j = 1; j <= n; ++j) {
      const int k = u->index("y" + std::to_string(j));
      s = s.substitute(k, -SparsePoly::var(u, k));
    }
    const SparsePoly md = multidegree(in, Grading::Z2n);
    r.check("multidegree = S_w(x, -y)", md == s, md == s ? json(nullptr) : json{{"multidegree", md.to_string()}, {"schubert", s.to_string()}});
  }
  return r;
}

Report verify_asm(const Asm& a) {
  const int n = a.size();
  Report r;
  r.case_id = "asm:" + a.to_string();
  r.statement = "I_A = sum of bigrassmannian ideals = intersection over Perm(A), also after antidiagonal degeneration";
  const auto perm = perm_set(a);
  const auto bigr = bigrassmannian_join_decomposition(a);
  r.witness["perm"] = perms_json(perm);
  r.witness["bigrassmannians"] = perms_json(bigr);
  r.witness["degree"] = degree_of(a);
  r.witness["equidimensional"] = is_equidimensional(a);
  const Ideal ia = Ideal::of_asm(a);
  Ideal sum(n, {});
  for (const auto& b : bigr) sum = sum_ideals(sum, Ideal::schubert(b));
  check_equal(r, "I_A = sum of I_b", ia, sum);
  check_equal(r, "I_A = intersection over Perm(A)", ia, intersect_schubert({perm.begin(), perm.end()}));

  const auto o = TermOrder::antidiagonal_lex(n);
  MonomialIdeal in_sum(n, {});
  for (const auto& b : bigr) in_sum = in_sum + initial_ideal(Ideal::schubert(b), o);
  MonomialIdeal in_cap(n, {ZMono{}});
  for (const auto& u : perm) in_cap = intersect(in_cap, initial_ideal(Ideal::schubert(u), o));
  const auto in_a = initial_ideal(ia, o);
  r.witness["initial_ideal"] = in_a.to_string();
  r.check("sum of in(I_b) = in(I_A)", in_sum == in_a, json{{"sum", in_sum.to_string()}});
  r.check("in(I_A) = intersection of in(I_u)", in_cap == in_a, json{{"cap", in_cap.to_string()}});
  return r;
}

Report verify_partition(const std::vector<int>& mu) {
  if (mu.empty()) throw InputError("empty partition");
  for (std::size_t k = 0; k < mu.size(); ++k) {
    if (mu[k] < 1) throw InputError("partition parts must be positive");
    if (k && mu[k] >= mu[k - 1]) throw InputError("partition parts must be distinct and decreasing");
  }
  const int n = mu.front() + 1;
  Report r;
  std::string name;
  for (int m : mu) name += (name.empty() ? "" : ",") + std::to_string(m);
  r.case_id = "partition:" + name;
  r.statement = "w_i = s_{mu_i} gives multiplicity lambda_i at (z_ii), lambda conjugate to mu";
  std::vector<Permutation> ws;
  for (int m : mu) ws.push_back(Permutation::identity(n).times_transposition(m, m + 1));
  std::vector<long> lambda;
  for (int i = 1; i <= mu.front(); ++i)
    lambda.push_back(std::count_if(mu.begin(), mu.end(), [i](int m) { return m >= i; }));
  const auto in = initial_ideal(intersect_schubert(ws), TermOrder::diagonal_lex(n));
  const auto primes = minimal_primes(in);
  std::vector<long> got;
  for (int i = 1; i <= mu.front(); ++i) {
    const MonomialPrime p{{i, i}};
    got.push_back(primes.count(p) ? multiplicity_at(in, p) : 0);
  }
  r.witness["initial_ideal"] = in.to_string();
  r.witness["lambda"] = lambda;
  r.witness["multiplicities"] = got;
  r.check("multiplicities = conjugate partition", got == lambda);
  r.check("no other minimal primes", primes.size() == lambda.size());
  return r;
}

Report verify_poly_transition(const Permutation& w, const Cell& corner, bool grothendieck) {
  Report r;
  r.case_id = std::string(grothendieck ? "groth-transition:" : "transition:") + w.to_string() + "@" + to_string(corner);
  r.statement = grothendieck ? "G_w = (x_a + y_b + b x_a y_b) G_v + (1 + b(x_a + y_b + b x_a y_b)) sum b^{#U-1} G_{w_U}"
                             : "S_w = (x_a - y_b) S_v + sum over Phi of S_u";
  const auto rep = grothendieck ? transition_grothendieck(w, corner) : transition_schubert(w, corner);
  r.check("identity holds", rep.holds(), rep.holds() ? json(nullptr) : json{{"difference", rep.difference.to_string()}});
  return r;
}

}  // namespace bumpless
