#include "doctest.h"

#include <algorithm>

#include "bumpless/asm.hpp"

using namespace bumpless;

namespace {

Permutation P(const char* s) { return Permutation::parse(s); }

bool is_asm_line(const std::vector<int>& v) {
  int partial = 0;
  for (int x : v) {
    if (x < -1 || x > 1) return false;
    partial += x;
    if (partial < 0 || partial > 1) return false;
  }
  return partial == 1;
}

// ASM(n) by filtering products of valid rows on the column condition.
std::vector<Asm> brute_asms(int n) {
  std::vector<std::vector<int>> rows;
  std::vector<int> v(static_cast<std::size_t>(n), -1);
  while (true) {
    if (is_asm_line(v)) rows.push_back(v);
    int k = 0;
    while (k < n && v[static_cast<std::size_t>(k)] == 1) v[static_cast<std::size_t>(k++)] = -1;
    if (k == n) break;
    ++v[static_cast<std::size_t>(k)];
  }
  std::vector<Asm> out;
  std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
  while (true) {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) {
      std::vector<int> col;
      for (int i = 0; i < n; ++i) col.push_back(rows[pick[static_cast<std::size_t>(i)]][static_cast<std::size_t>(j)]);
      ok = is_asm_line(col);
    }
    if (ok) {
      std::vector<int> e;
      for (int i = 0; i < n; ++i) e.insert(e.end(), rows[pick[static_cast<std::size_t>(i)]].begin(), rows[pick[static_cast<std::size_t>(i)]].end());
      out.emplace_back(n, e);
    }
    int k = 0;
    while (k < n && pick[static_cast<std::size_t>(k)] + 1 == rows.size()) pick[static_cast<std::size_t>(k++)] = 0;
    if (k == n) break;
    ++pick[static_cast<std::size_t>(k)];
  }
  std::sort(out.begin(), out.end());
  return out;
}

const Asm kSmallAsm(3, {0, 1, 0, 1, -1, 1, 0, 1, 0});

}  // namespace

TEST_CASE("validation") {
  CHECK_THROWS_AS(Asm(2, {1, 1, 0, 0}), InputError);
  CHECK_THROWS_AS(Asm(3, {-1, 1, 1, 1, 0, 0, 1, 0, 0}), InputError);
  CHECK_THROWS_AS(Asm(2, {1, 0, 0}), InputError);
  CHECK_THROWS_AS(Asm::parse("1 0\n0"), InputError);
  CHECK_THROWS_AS(Asm::parse("1 x\n0 1"), InputError);
  CHECK(Asm::parse("0 1 0\n1 -1 1\n0 1 0\n") == kSmallAsm);
  CHECK(Asm::parse(kSmallAsm.to_string()) == kSmallAsm);
  CHECK_THROWS_AS(CornerSumMatrix(1, {0, 0, 0, 2}), InputError);
}

TEST_CASE("corner sums of the 3x3 example") {
  auto rk = corner_sums(kSmallAsm);
  const int expect[3][3] = {{0, 1, 1}, {1, 1, 2}, {1, 2, 3}};
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) CHECK(rk(i, j) == expect[i - 1][j - 1]);
  CHECK(asm_from_corner_sums(rk) == kSmallAsm);
  auto id = corner_sums(Asm::from_permutation(Permutation::identity(4)));
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 4; ++j) CHECK(id(i, j) == std::min(i, j));
}

TEST_CASE("enumeration matches brute force") {
  CHECK(all_asms(1).size() == 1);
  CHECK(all_asms(3) == brute_asms(3));
  auto a4 = all_asms(4);
  CHECK(a4.size() == 42);
  CHECK(a4 == brute_asms(4));
  CHECK(all_asms(5).size() == 429);
  for (const auto& a : a4) CHECK(asm_from_corner_sums(corner_sums(a)) == a);
}

TEST_CASE("permutation round trip and order on S_3") {
  for (const auto& w : SymmetricGroup(4)) {
    auto a = Asm::from_permutation(w);
    CHECK(a.is_permutation());
    CHECK(a.to_permutation() == w);
  }
  CHECK_THROWS_AS(kSmallAsm.to_permutation(), InputError);
  for (const auto& u : SymmetricGroup(3))
    for (const auto& w : SymmetricGroup(3))
      CHECK(asm_leq(Asm::from_permutation(u), Asm::from_permutation(w)) == bruhat_leq(u, w));
}

TEST_CASE("join of v and a bigrassmannian") {
  auto j = join(std::vector<Permutation>{P("4721563"), P("1256347")});
  Asm expect(7, {0, 0, 0, 1, 0, 0, 0,  //
                 0, 0, 0, 0, 0, 0, 1,  //
                 0, 1, 0, 0, 0, 0, 0,  //
                 1, 0, 0, -1, 1, 0, 0, //
                 0, 0, 0, 1, 0, 0, 0,  //
                 0, 0, 0, 0, 0, 1, 0,  //
                 0, 0, 1, 0, 0, 0, 0});
  CHECK(j == expect);
  CHECK(perm_set(j) == std::set<Permutation>{P("5721463"), P("4751263"), P("4725163")});
  CHECK(join(std::vector<Permutation>{P("213"), P("132")}) == kSmallAsm);
  CHECK(meet(std::vector<Asm>{Asm::from_permutation(P("231")), Asm::from_permutation(P("312"))}) == kSmallAsm);
  CHECK(join(std::vector<Permutation>{P("231"), P("231")}) == Asm::from_permutation(P("231")));
  CHECK_THROWS_AS(join(std::vector<Asm>{}), InputError);
  CHECK_THROWS_AS(meet(std::vector<Asm>{}), InputError);
}

TEST_CASE("lattice axioms on ASM(3) and ASM(4)") {
  for (int n : {3, 4}) {
    auto all = all_asms(n);
    for (const auto& a : all)
      for (const auto& b : all) {
        auto j = join(std::vector<Asm>{a, b});
        auto m = meet(std::vector<Asm>{a, b});
        CHECK(j == join(std::vector<Asm>{b, a}));
        CHECK(m == meet(std::vector<Asm>{b, a}));
        CHECK(asm_leq(a, j));
        CHECK(asm_leq(b, j));
        CHECK(asm_leq(m, a));
        CHECK(asm_leq(m, b));
        CHECK(join(std::vector<Asm>{a, a}) == a);
        if (n == 3) {
          for (const auto& c : all) {
            if (asm_leq(a, c) && asm_leq(b, c)) CHECK(asm_leq(j, c));
            if (asm_leq(c, a) && asm_leq(c, b)) CHECK(asm_leq(c, m));
            CHECK(join(std::vector<Asm>{join(std::vector<Asm>{a, b}), c}) ==
                  join(std::vector<Asm>{a, join(std::vector<Asm>{b, c})}));
          }
        }
      }
  }
}

TEST_CASE("Perm(A), degree and equidimensionality") {
  CHECK(perm_set(kSmallAsm) == std::set<Permutation>{P("231"), P("312")});
  CHECK(degree_of(kSmallAsm) == 2);
  CHECK(is_equidimensional(kSmallAsm));
  auto nonequi = Asm::parse("0 0 1 0\n1 0 -1 1\n0 1 0 0\n0 0 1 0");
  CHECK(perm_set(nonequi) == std::set<Permutation>{P("4123"), P("3412")});
  CHECK(P("4123").length() == 3);
  CHECK(P("3412").length() == 4);
  CHECK(degree_of(nonequi) == 3);
  CHECK_FALSE(is_equidimensional(nonequi));
  for (const auto& w : SymmetricGroup(4)) {
    auto a = Asm::from_permutation(w);
    CHECK(perm_set(a) == std::set<Permutation>{w});
    CHECK(degree_of(a) == w.length());
  }
  for (const auto& a : all_asms(4)) {
    auto ps = perm_set(a);
    CHECK_FALSE(ps.empty());
    for (const auto& w : ps) {
      CHECK(asm_leq(a, Asm::from_permutation(w)));
      for (const auto& u : ps)
        if (u != w) CHECK_FALSE(bruhat_leq(u, w));
    }
  }
}

TEST_CASE("bigrassmannian comparison") {
  for (const auto& a : all_asms(4)) {
    auto rka = corner_sums(a);
    for (const auto& pi : SymmetricGroup(4)) {
      auto ess = essential_set(pi);
      if (ess.size() != 1) continue;
      auto c = *ess.begin();
      CHECK(asm_leq(Asm::from_permutation(pi), a) == (rka(c.row, c.col) <= pi.rank(c.row, c.col)));
    }
  }
}

TEST_CASE("essential rank conditions and bigrassmannian decomposition") {
  for (int n = 1; n <= 6; ++n)
    for (const auto& w : SymmetricGroup(n)) {
      Diagram cells;
      for (const auto& rc : essential_rank_conditions(Asm::from_permutation(w))) {
        cells.insert(rc.cell);
        CHECK(rc.rank == w.rank(rc.cell.row, rc.cell.col));
      }
      CHECK(cells == essential_set(w));
    }
  auto dec = bigrassmannian_join_decomposition(kSmallAsm);
  CHECK(join(std::vector<Permutation>(dec.begin(), dec.end())) == kSmallAsm);
  for (int n : {4, 5})
    for (const auto& a : all_asms(n)) {
      auto d = bigrassmannian_join_decomposition(a);
      if (d.empty()) {
        CHECK(a == Asm::from_permutation(Permutation::identity(n)));
        continue;
      }
      for (const auto& pi : d) {
        CHECK(essential_set(pi).size() == 1);
        CHECK(asm_leq(Asm::from_permutation(pi), a));
      }
      CHECK(join(std::vector<Permutation>(d.begin(), d.end())) == a);
    }
  auto pi = P("1256347");
  CHECK(bigrassmannian_join_decomposition(Asm::from_permutation(pi)) == std::set<Permutation>{pi});
}
