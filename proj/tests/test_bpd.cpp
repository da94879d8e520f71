#include "doctest.h"

#include <map>
#include <random>

#include "bumpless/bpd.hpp"

using namespace bumpless;

namespace {

Permutation P(const char* s) { return Permutation::parse(s); }

std::set<Permutation> phi_set(const Permutation& w, const Cell& corner) {
  const int a = corner.row;
  const auto v = w.times_transposition(a, w.inverse()(corner.col));
  std::set<Permutation> out;
  for (int i = 1; i < a; ++i) {
    auto u = v.times_transposition(i, a);
    if (u.length() == v.length() + 1) out.insert(u);
  }
  return out;
}

}  // namespace

TEST_CASE("tiles and glyphs") {
  for (int k = 0; k < 6; ++k) {
    auto t = static_cast<Tile>(k);
    CHECK(tile_from_edges(tile_edges(t)) == t);
  }
  CHECK_THROWS_AS(tile_from_edges(kTop | kRight), InputError);
  CHECK_THROWS_AS(tile_from_edges(kBottom | kLeft), InputError);
}

TEST_CASE("rothe bpd") {
  auto id = rothe_bpd(Permutation::identity(3));
  CHECK(id.to_ascii() == "r--\n|r-\n||r\n");
  CHECK(diagram(id).empty());
  auto w = P("4721653");
  auto b = rothe_bpd(w);
  CHECK(b.to_ascii() ==
        "...r---\n"
        "...|..r\n"
        ".r-+--+\n"
        "r+-+--+\n"
        "||.|.r+\n"
        "||.|r++\n"
        "||r+++"
        "+\n");
  CHECK(diagram(b) == rothe_diagram(w));
  for (int n = 1; n <= 5; ++n)
    for (const auto& u : SymmetricGroup(n)) {
      auto r = rothe_bpd(u);
      CHECK(permutation_of(r) == u);
      CHECK(diagram(r) == rothe_diagram(u));
    }
}

TEST_CASE("validation rejects broken grids") {
  // The bump tile (top+left with bottom+right) is not representable, and a
  // grid with a bump drawn as two half tiles fails edge matching.
  CHECK_THROWS_AS(Bpd::parse_ascii("r-\nr-"), InputError);
  CHECK_THROWS_AS(Bpd::parse_ascii("-r\n|r"), InputError);
  CHECK_THROWS_AS(Bpd::parse_ascii("..\n.."), InputError);
  CHECK_THROWS_AS(Bpd::parse_ascii("r-\n|"), InputError);
  CHECK_THROWS_AS(Bpd::parse_ascii("r?\n|r"), InputError);
  // Two pipes crossing twice.
  CHECK_THROWS_AS(Bpd::parse_ascii(".r--\nr+--\n|+r-\n++++"), InputError);
  CHECK(Bpd::parse_ascii("r-\n|r").permutation() == Permutation::identity(2));
}

TEST_CASE("ascii and json round trips") {
  for (const auto& w : SymmetricGroup(4))
    for (const auto& b : enumerate_bpds(w)) {
      CHECK(Bpd::parse_ascii(b.to_ascii()) == b);
      CHECK(Bpd::from_json(b.to_json()) == b);
      CHECK(Bpd::from_json(nlohmann::json::parse(b.to_json().dump())) == b);
    }
}

TEST_CASE("small BPD sets") {
  CHECK(enumerate_bpds(P("213")).size() == 1);
  auto b132 = enumerate_bpds(P("132"));
  CHECK(b132.size() == 2);
  std::set<Diagram> ds;
  for (const auto& b : b132) {
    CHECK(permutation_of(b) == P("132"));
    ds.insert(diagram(b));
  }
  CHECK(ds == std::set<Diagram>{{{1, 1}}, {{2, 2}}});
  CHECK(enumerate_bpds(Permutation::identity(4)).size() == 1);
}

TEST_CASE("droops preserve the permutation") {
  for (const auto& w : SymmetricGroup(4))
    for (const auto& b : enumerate_bpds(w)) {
      CHECK(permutation_of(b) == w);
      CHECK(diagram(b).size() == static_cast<std::size_t>(w.length()));
      for (const auto& m : legal_droops(b)) CHECK(permutation_of(apply_droop(b, m)) == w);
    }
  auto r = rothe_bpd(P("4721653"));
  CHECK(legal_droops(r).count(DroopMove{{1, 4}, {5, 5}}) == 1);
  CHECK_THROWS_AS(apply_droop(r, DroopMove{{1, 4}, {3, 5}}), InputError);  // target not blank
  int rejected = 0;
  for (const auto& b : enumerate_bpds(P("4721653")))
    for (int i = 1; i <= 7; ++i)
      for (int j = 1; j <= 7; ++j)
        for (int a = i + 1; a <= 7; ++a)
          for (int c = j + 1; c <= 7; ++c)
            if (b(i, j) == Tile::DownElbow && b(a, c) == Tile::Blank && !legal_droops(b).count(DroopMove{{i, j}, {a, c}})) {
              CHECK_THROWS_AS(apply_droop(b, DroopMove{{i, j}, {a, c}}), InputError);
              ++rejected;
            }
  CHECK(rejected > 0);
  CHECK_THROWS_AS(apply_droop(r, DroopMove{{1, 1}, {2, 2}}), InputError);  // source blank
}

TEST_CASE("droop closure does not depend on traversal order") {
  std::mt19937 rng(7);
  for (const auto& w : SymmetricGroup(5)) {
    auto bfs = enumerate_bpds(w);
    std::set<Bpd> seen{rothe_bpd(w)};
    std::vector<Bpd> stack{rothe_bpd(w)};
    while (!stack.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, stack.size() - 1);
      const auto k = pick(rng);
      auto b = stack[k];
      stack.erase(stack.begin() + static_cast<std::ptrdiff_t>(k));
      for (const auto& m : legal_droops(b)) {
        auto nb = apply_droop(b, m);
        if (seen.insert(nb).second) stack.push_back(nb);
      }
    }
    CHECK(seen == bfs);
  }
}

TEST_CASE("droops into the corner of 4721653") {
  auto w = P("4721653");
  auto r = rothe_bpd(w);
  std::vector<Bpd> drooped;
  for (const auto& m : legal_droops(r))
    if (m.target == Cell{5, 5}) drooped.push_back(apply_droop(r, m));
  REQUIRE(drooped.size() == 3);
  std::set<Bpd> images;
  for (const auto& b : drooped) {
    CHECK(b(5, 5) == Tile::UpElbow);
    images.insert(transition_bijection(b, {5, 5}));
  }
  std::set<Bpd> expect{rothe_bpd(P("5721463")), rothe_bpd(P("4751263")), rothe_bpd(P("4725163"))};
  CHECK(images == expect);
  CHECK(transition_bijection(r, {5, 5}) == rothe_bpd(P("4721563")));
  CHECK(corner_tile_check(w, {5, 5}));
  CHECK_THROWS_AS(corner_tile_check(w, {2, 3}), InputError);
  CHECK_THROWS_AS(transition_bijection(r, {1, 1}), InputError);
}

TEST_CASE("transition bijection on S_5") {
  for (int n = 2; n <= 5; ++n)
    for (const auto& w : SymmetricGroup(n)) {
      const auto bpds = enumerate_bpds(w);
      for (const auto& corner : lower_outside_corners(w)) {
        CHECK(corner_tile_check(w, corner));
        const auto v = w.times_transposition(corner.row, w.inverse()(corner.col));
        const auto phi = phi_set(w, corner);
        std::set<Bpd> target = enumerate_bpds(v);
        std::size_t expected = target.size();
        for (const auto& u : phi) {
          auto bu = enumerate_bpds(u);
          expected += bu.size();
          target.insert(bu.begin(), bu.end());
        }
        CHECK(bpds.size() == expected);
        std::set<Bpd> image;
        for (const auto& b : bpds) {
          auto img = transition_bijection(b, corner);
          auto d = diagram(b);
          if (permutation_of(img) == v) {
            CHECK(b(corner.row, corner.col) == Tile::Blank);
            auto di = diagram(img);
            di.insert(corner);
            CHECK(di == d);
          } else {
            CHECK(phi.count(permutation_of(img)) == 1);
            CHECK(diagram(img) == d);
          }
          image.insert(img);
        }
        CHECK(image == target);
      }
    }
}
