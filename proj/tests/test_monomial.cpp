#include "doctest.h"

#include <random>

#include "bumpless/groebner.hpp"
#include "bumpless/monomial.hpp"

using namespace bumpless;

namespace {

ZMono mono(int n, std::initializer_list<std::tuple<int, int, int>> fs) {
  ZMono m{};
  for (auto [r, c, e] : fs) m[static_cast<std::size_t>(zindex(n, r, c))] = static_cast<std::uint8_t>(e);
  return m;
}

MonomialIdeal random_ideal(std::mt19937& rng, int n, int vars, int gens, int maxexp) {
  std::vector<ZMono> g;
  for (int k = 0; k < gens; ++k) {
    ZMono m{};
    for (int v = 0; v < vars; ++v)
      if (rng() % 3 == 0) m[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(1 + rng() % maxexp);
    if (m == ZMono{}) m[static_cast<std::size_t>(rng() % vars)] = 1;
    g.push_back(m);
  }
  return MonomialIdeal(n, g);
}

// Monomials of total degree d in the first `vars` variables.
void each_monomial(int vars, int d, ZMono& cur, int v, const std::function<void(const ZMono&)>& f) {
  if (v == vars - 1) {
    cur[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(d);
    f(cur);
    cur[static_cast<std::size_t>(v)] = 0;
    return;
  }
  for (int e = 0; e <= d; ++e) {
    cur[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(e);
    each_monomial(vars, d - e, cur, v + 1, f);
  }
  cur[static_cast<std::size_t>(v)] = 0;
}

// Oracle: primes of the form (I : m) found by scanning a box of monomials.
std::set<MonomialPrime> brute_associated(const MonomialIdeal& i, int vars, int box) {
  std::set<MonomialPrime> out;
  for (int d = 0; d <= box * vars; ++d) {
    ZMono cur{};
    each_monomial(vars, d, cur, 0, [&](const ZMono& m) {
      for (int v = 0; v < vars; ++v)
        if (m[static_cast<std::size_t>(v)] > box) return;
      if (i.contains(m)) return;
      const auto q = colon(i, m);
      MonomialPrime p;
      for (const auto& g : q.generators()) {
        int nz = 0, var = -1;
        for (int v = 0; v < kMaxZVars; ++v)
          if (g[static_cast<std::size_t>(v)]) {
            ++nz;
            var = v;
          }
        if (nz != 1 || g[static_cast<std::size_t>(var)] != 1) return;
        p.insert(zcell(i.grid(), var));
      }
      out.insert(p);
    });
  }
  return out;
}

// Oracle: Hilbert function of R/I in degree d, n^2 variables, standard grading.
long hilbert(const MonomialIdeal& i, int vars, int d) {
  long c = 0;
  ZMono cur{};
  each_monomial(vars, d, cur, 0, [&](const ZMono& m) {
    if (!i.contains(m)) ++c;
  });
  return c;
}

}  // namespace

TEST_CASE("minimalization, membership, operations") {
  const int n = 2;
  MonomialIdeal i(n, {mono(n, {{1, 1, 2}}), mono(n, {{1, 1, 3}, {2, 2, 1}}), mono(n, {{1, 1, 2}})});
  CHECK(i.generators().size() == 1);
  CHECK(i.contains(mono(n, {{1, 1, 2}, {1, 2, 1}})));
  CHECK_FALSE(i.contains(mono(n, {{1, 1, 1}})));
  CHECK(i.to_string() == "(z[1,1]^2)");
  const MonomialIdeal j = MonomialIdeal::of_cells(n, {{1, 2}, {2, 1}});
  CHECK((i + j).generators().size() == 3);
  CHECK(intersect(i, j).to_string() == "(z[1,1]^2*z[1,2], z[1,1]^2*z[2,1])");
  CHECK(colon(i, mono(n, {{1, 1, 1}})).to_string() == "(z[1,1])");
  CHECK(MonomialIdeal::from_json(intersect(i, j).to_json()) == intersect(i, j));
  CHECK_THROWS_AS(MonomialIdeal::from_json(nlohmann::json{{"n", 2}, {"generators", {{{"3,1", 1}}}}}), InputError);
}

TEST_CASE("primes and multiplicities of the two-permutation example") {
  const int n = 2;
  const MonomialIdeal i(n, {mono(n, {{1, 1, 2}, {2, 2, 1}})});
  const MonomialPrime p11{{1, 1}}, p22{{2, 2}};
  CHECK(minimal_primes(i) == std::set<MonomialPrime>{p11, p22});
  CHECK(multiplicity_at(i, p11) == 2);
  CHECK(multiplicity_at(i, p22) == 1);
  CHECK(associated_primes(i) == std::set<MonomialPrime>{p11, p22});
  CHECK_THROWS_AS(multiplicity_at(i, MonomialPrime{{1, 1}, {2, 2}}), InputError);
  CHECK_FALSE(is_radical(i));
  CHECK(is_radical(radical(i)));
  CHECK_THROWS_AS(facets(i), InputError);
  CHECK(degree(i) == 3);
  // prime ideal is its own associated prime
  const auto pr = MonomialIdeal::of_cells(3, {{1, 2}, {3, 1}});
  CHECK(associated_primes(pr) == std::set<MonomialPrime>{{{1, 2}, {3, 1}}});
  CHECK(facets(pr).size() == 1);
  CHECK(facets(pr).begin()->size() == 7);
}

TEST_CASE("associated primes agree with the colon-ideal oracle") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const auto i = random_ideal(rng, 2, 4, 1 + static_cast<int>(rng() % 4), 3);
    CHECK(associated_primes(i) == brute_associated(i, 4, 4));
    // minimal primes are the minimal associated primes
    std::set<MonomialPrime> mins;
    const auto ass = associated_primes(i);
    for (const auto& p : ass) {
      bool minimal = true;
      for (const auto& q : ass)
        if (q != p && std::includes(p.begin(), p.end(), q.begin(), q.end())) minimal = false;
      if (minimal) mins.insert(p);
    }
    CHECK(minimal_primes(i) == mins);
    // intersection of irreducible components gives I back
    const auto comps = irreducible_components(i);
    MonomialIdeal back = comps.front();
    for (std::size_t k = 1; k < comps.size(); ++k) back = intersect(back, comps[k]);
    CHECK(back == i);
  }
}

TEST_CASE("K-polynomial matches the Hilbert function") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto i = random_ideal(rng, 2, 4, 1 + static_cast<int>(rng() % 4), 2);
    // H(R/I; t) = K(t) / (1-t)^4, so K(t) = (1-t)^4 sum_d h(d) t^d up to degree D
    const SparsePoly k = k_polynomial(i, Grading::Standard);
    const auto u = k.universe();
    const SparsePoly t = SparsePoly::var(u, 0);
    const SparsePoly one = SparsePoly::constant(u, 1);
    SparsePoly series(u);
    const int D = 12;
    for (int d = 0; d <= D; ++d) series += SparsePoly::constant(u, hilbert(i, 4, d)) * t.pow(static_cast<unsigned>(d));
    SparsePoly prod = (one - t).pow(4) * series;
    for (int d = 0; d <= D; ++d) CHECK(prod.homogeneous_part(d) == k.homogeneous_part(d));
  }
}

TEST_CASE("Hilbert inclusion-exclusion and the fresh-variable factor") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 25; ++trial) {
    const int r = 2 + static_cast<int>(rng() % 2);
    std::vector<MonomialIdeal> is;
    for (int k = 0; k < r; ++k) is.push_back(random_ideal(rng, 3, 6, 1 + static_cast<int>(rng() % 3), 2));
    MonomialIdeal cap = is.front();
    for (int k = 1; k < r; ++k) cap = intersect(cap, is[static_cast<std::size_t>(k)]);
    for (Grading g : {Grading::Standard, Grading::Z2n}) {
      SparsePoly rhs(grading_universe(g, 3));
      for (unsigned mask = 1; mask < (1u << r); ++mask) {
        MonomialIdeal s(3, {});
        int cnt = 0;
        for (int k = 0; k < r; ++k)
          if (mask & (1u << k)) {
            s = s + is[static_cast<std::size_t>(k)];
            ++cnt;
          }
        const SparsePoly ks = k_polynomial(s, g);
        if (cnt % 2)
          rhs += ks;
        else
          rhs -= ks;
      }
      CHECK(k_polynomial(cap, g) == rhs);
    }
    // I uses only the first six variables; adjoin z[3,3]
    const auto& base = is.front();
    const MonomialIdeal ext = base + MonomialIdeal::of_cells(3, {{3, 3}});
    const auto u = grading_universe(Grading::Z2n, 3);
    const SparsePoly factor = SparsePoly::constant(u, 1) - SparsePoly::var(u, "x3") * SparsePoly::var(u, "y3");
    CHECK(k_polynomial(ext, Grading::Z2n) == factor * k_polynomial(base, Grading::Z2n));
  }
}

TEST_CASE("multidegree normalization and degree") {
  const int n = 3;
  const Diagram d{{1, 1}, {1, 2}, {3, 2}};
  const auto i = MonomialIdeal::of_cells(n, d);
  const auto u = grading_universe(Grading::Z2n, n);
  SparsePoly expect = SparsePoly::constant(u, 1);
  for (const auto& c : d)
    expect = expect * (SparsePoly::var(u, "x" + std::to_string(c.row)) + SparsePoly::var(u, "y" + std::to_string(c.col)));
  CHECK(multidegree(i, Grading::Z2n) == expect);
  const auto ux = grading_universe(Grading::Zn, n);
  CHECK(multidegree(i, Grading::Zn).to_string() ==
        (SparsePoly::var(ux, "x1").pow(2) * SparsePoly::var(ux, "x3")).to_string());
  CHECK(degree(i) == 1);
  CHECK(k_polynomial(MonomialIdeal(n, {}), Grading::Standard) == SparsePoly::constant(Universe::standard(), 1));

  // degree = sum of multiplicities for equidimensional ideals
  std::mt19937 rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    const auto i2 = random_ideal(rng, 2, 4, 1 + static_cast<int>(rng() % 3), 3);
    const auto mins = minimal_primes(i2);
    std::size_t h = mins.begin()->size();
    bool equi = true;
    for (const auto& p : mins) equi = equi && p.size() == h;
    if (!equi) continue;
    long total = 0;
    for (const auto& p : mins) total += multiplicity_at(i2, p);
    CHECK(degree(i2) == total);
  }
}

TEST_CASE("degeneration preserves the K-polynomial") {
  for (const char* ws : {"2143", "1432", "3412", "21543", "13524"}) {
    const auto w = Permutation::parse(ws);
    const Ideal i = Ideal::schubert(w);
    const int n = w.size();
    const auto a = initial_ideal(i, TermOrder::antidiagonal_lex(n));
    const auto d = initial_ideal(i, TermOrder::diagonal_lex(n));
    CHECK(k_polynomial(a, Grading::Z2n) == k_polynomial(d, Grading::Z2n));
    CHECK(is_radical(a));
  }
}
