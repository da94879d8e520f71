#include "bumpless/bpd.hpp"

#include <deque>
#include <map>
#include <sstream>

namespace bumpless {

unsigned tile_edges(Tile t) {
  switch (t) {
    case Tile::Blank: return 0;
    case Tile::DownElbow: return kBottom | kRight;
    case Tile::UpElbow: return kTop | kLeft;
    case Tile::Crossing: return kTop | kBottom | kLeft | kRight;
    case Tile::Horizontal: return kLeft | kRight;
    case Tile::Vertical: return kTop | kBottom;
  }
  return 0;
}

Tile tile_from_edges(unsigned edges) {
  switch (edges) {
    case 0: return Tile::Blank;
    case kBottom | kRight: return Tile::DownElbow;
    case kTop | kLeft: return Tile::UpElbow;
    case kTop | kBottom | kLeft | kRight: return Tile::Crossing;
    case kLeft | kRight: return Tile::Horizontal;
    case kTop | kBottom: return Tile::Vertical;
    default: throw InputError("edge set " + std::to_string(edges) + " is not a BPD tile");
  }
}

namespace {

constexpr const char* kGlyphs = ".rj+-|";
const char* const kNames[] = {"blank", "down_elbow", "up_elbow", "crossing", "horizontal", "vertical"};

Tile tile_from_glyph(char c) {
  for (int k = 0; k < 6; ++k)
    if (kGlyphs[k] == c) return static_cast<Tile>(k);
  throw InputError(std::string("unknown tile glyph '") + c + "'");
}

Tile tile_from_name(const std::string& s) {
  for (int k = 0; k < 6; ++k)
    if (s == kNames[k]) return static_cast<Tile>(k);
  throw InputError("unknown tile kind '" + s + "'");
}

std::string where(int i, int j) { return "cell " + to_string(Cell{i, j}); }

// XOR the closed path around the rectangle with corners (r1,c1), (r2,c2),
// r1 < r2 and c1 < c2, passing through cell centres.
void toggle_rectangle(std::vector<unsigned>& e, int n, int r1, int c1, int r2, int c2) {
  auto at = [&](int i, int j) -> unsigned& { return e[static_cast<std::size_t>((i - 1) * n + (j - 1))]; };
  at(r1, c1) ^= kBottom | kRight;
  at(r1, c2) ^= kBottom | kLeft;
  at(r2, c1) ^= kTop | kRight;
  at(r2, c2) ^= kTop | kLeft;
  for (int c = c1 + 1; c < c2; ++c) {
    at(r1, c) ^= kLeft | kRight;
    at(r2, c) ^= kLeft | kRight;
  }
  for (int r = r1 + 1; r < r2; ++r) {
    at(r, c1) ^= kTop | kBottom;
    at(r, c2) ^= kTop | kBottom;
  }
}

std::vector<unsigned> edges_of(const Bpd& b) {
  std::vector<unsigned> e;
  for (Tile t : b.tiles()) e.push_back(tile_edges(t));
  return e;
}

std::vector<Tile> tiles_of(const std::vector<unsigned>& e) {
  std::vector<Tile> t;
  for (unsigned x : e) t.push_back(tile_from_edges(x));
  return t;
}

}  // namespace

char tile_glyph(Tile t) { return kGlyphs[static_cast<int>(t)]; }
std::string tile_name(Tile t) { return kNames[static_cast<int>(t)]; }

Bpd::Bpd(int n, std::vector<Tile> tiles) : n_(n), tiles_(std::move(tiles)) {
  if (n < 1 || tiles_.size() != static_cast<std::size_t>(n * n)) throw InputError("BPD grid has the wrong shape");
  auto& self = *this;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const unsigned e = tile_edges(self(i, j));
      if (i == 1 && (e & kTop)) throw InputError(where(i, j) + ": pipe leaves through the top boundary");
      if (j == 1 && (e & kLeft)) throw InputError(where(i, j) + ": pipe enters from the left boundary");
      if (i == n && !(e & kBottom)) throw InputError(where(i, j) + ": no pipe enters from the bottom");
      if (j == n && !(e & kRight)) throw InputError(where(i, j) + ": no pipe exits on the right");
      if (j < n && bool(e & kRight) != bool(tile_edges(self(i, j + 1)) & kLeft))
        throw InputError(where(i, j) + ": right edge does not match its neighbour");
      if (i < n && bool(e & kBottom) != bool(tile_edges(self(i + 1, j)) & kTop))
        throw InputError(where(i, j) + ": bottom edge does not match its neighbour");
    }
  // Pipes only move up or right, so tracing from the bottom visits every
  // segment and cannot loop.
  std::vector<int> exit_row_label(static_cast<std::size_t>(n), 0);
  std::map<std::pair<int, int>, int> crossings;
  std::vector<int> first_at(static_cast<std::size_t>(n * n), 0);
  for (int label = 1; label <= n; ++label) {
    int i = n, j = label;
    bool from_bottom = true;
    while (true) {
      const Tile t = self(i, j);
      bool go_up;
      switch (t) {
        case Tile::Crossing: {
          go_up = from_bottom;
          int& other = first_at[static_cast<std::size_t>((i - 1) * n + (j - 1))];
          if (other == 0) {
            other = label;
          } else if (++crossings[{other, label}] > 1) {
            throw InputError("pipes " + std::to_string(other) + " and " + std::to_string(label) + " cross twice");
          }
          break;
        }
        case Tile::Vertical: go_up = true; break;
        case Tile::Horizontal: go_up = false; break;
        case Tile::DownElbow: go_up = false; break;
        case Tile::UpElbow: go_up = true; break;
        default: throw InvariantViolation("pipe trace reached a blank tile");
      }
      if (go_up) {
        --i;
        from_bottom = true;
      } else if (j == n) {
        exit_row_label[static_cast<std::size_t>(i - 1)] = label;
        break;
      } else {
        ++j;
        from_bottom = false;
      }
    }
  }
  perm_ = Permutation(exit_row_label);
}

std::string Bpd::to_ascii() const {
  std::string out;
  for (int i = 1; i <= n_; ++i) {
    for (int j = 1; j <= n_; ++j) out += tile_glyph((*this)(i, j));
    out += '\n';
  }
  return out;
}

Bpd Bpd::parse_ascii(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<Tile> tiles;
  int rows = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    if (rows > 0 && line.size() != width)
      throw InputError("line " + std::to_string(rows + 1) + ": ragged BPD row");
    width = line.size();
    for (std::size_t c = 0; c < line.size(); ++c) {
      try {
        tiles.push_back(tile_from_glyph(line[c]));
      } catch (const InputError& e) {
        throw InputError("line " + std::to_string(rows + 1) + ", column " + std::to_string(c + 1) + ": " + e.what());
      }
    }
    ++rows;
  }
  if (static_cast<std::size_t>(rows) != width) throw InputError("BPD grid must be square");
  return Bpd(rows, std::move(tiles));
}

nlohmann::json Bpd::to_json() const {
  nlohmann::json grid = nlohmann::json::array();
  for (int i = 1; i <= n_; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 1; j <= n_; ++j) row.push_back(tile_name((*this)(i, j)));
    grid.push_back(row);
  }
  return {{"permutation", perm_.to_string()}, {"grid", grid}};
}

Bpd Bpd::from_json(const nlohmann::json& j) {
  const auto& grid = j.contains("grid") ? j.at("grid") : j;
  if (!grid.is_array()) throw InputError("BPD JSON must be an array of rows");
  const int n = static_cast<int>(grid.size());
  std::vector<Tile> tiles;
  for (const auto& row : grid) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw InputError("BPD JSON grid must be square");
    for (const auto& cell : row) {
      if (!cell.is_string()) throw InputError("BPD JSON tiles must be strings");
      tiles.push_back(tile_from_name(cell.get<std::string>()));
    }
  }
  return Bpd(n, std::move(tiles));
}

Bpd rothe_bpd(const Permutation& w) {
  const int n = w.size();
  const auto inv = w.inverse();
  std::vector<Tile> tiles;
  for (int r = 1; r <= n; ++r)
    for (int c = 1; c <= n; ++c) {
      const bool vert = r > inv(c);
      const bool horiz = c > w(r);
      if (w(r) == c)
        tiles.push_back(Tile::DownElbow);
      else if (vert && horiz)
        tiles.push_back(Tile::Crossing);
      else if (vert)
        tiles.push_back(Tile::Vertical);
      else if (horiz)
        tiles.push_back(Tile::Horizontal);
      else
        tiles.push_back(Tile::Blank);
    }
  return Bpd(n, std::move(tiles));
}

Permutation permutation_of(const Bpd& b) { return b.permutation(); }

Diagram diagram(const Bpd& b) {
  Diagram d;
  for (int i = 1; i <= b.size(); ++i)
    for (int j = 1; j <= b.size(); ++j)
      if (b(i, j) == Tile::Blank) d.insert({i, j});
  return d;
}

namespace {

// Empty string when legal, otherwise the violated clause.
std::string droop_violation(const Bpd& b, const DroopMove& m) {
  const int n = b.size();
  const auto [i, j] = m.source;
  const auto [a, c] = m.target;
  if (i < 1 || j < 1 || a > n || c > n || i > n || j > n || a < 1 || c < 1) return "cells out of range";
  if (b(i, j) != Tile::DownElbow) return "source is not a down elbow";
  if (b(a, c) != Tile::Blank) return "target is not blank";
  if (!(i < a && j < c)) return "target is not strictly southeast of the source";
  for (int r = i; r <= a; ++r)
    for (int s = j; s <= c; ++s) {
      if (r == i && s == j) continue;
      const Tile t = b(r, s);
      if (t == Tile::DownElbow || t == Tile::UpElbow)
        return "rectangle contains another elbow at " + to_string(Cell{r, s});
    }
  return {};
}

}  // namespace

std::set<DroopMove> legal_droops(const Bpd& b) {
  std::set<DroopMove> out;
  const int n = b.size();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (b(i, j) != Tile::DownElbow) continue;
      for (int a = i + 1; a <= n; ++a)
        for (int c = j + 1; c <= n; ++c) {
          if (b(a, c) != Tile::Blank) continue;
          DroopMove m{{i, j}, {a, c}};
          if (droop_violation(b, m).empty()) out.insert(m);
        }
    }
  return out;
}

Bpd apply_droop(const Bpd& b, const DroopMove& m) {
  if (auto why = droop_violation(b, m); !why.empty()) throw InputError("illegal droop: " + why);
  auto e = edges_of(b);
  toggle_rectangle(e, b.size(), m.source.row, m.source.col, m.target.row, m.target.col);
  Bpd out(b.size(), tiles_of(e));
  if (out.permutation() != b.permutation()) throw InvariantViolation("droop changed the permutation");
  return out;
}

std::set<Bpd> enumerate_bpds(const Permutation& w) {
  std::set<Bpd> seen{rothe_bpd(w)};
  std::deque<Bpd> frontier{*seen.begin()};
  while (!frontier.empty()) {
    Bpd b = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& m : legal_droops(b)) {
      auto next = apply_droop(b, m);
      if (seen.insert(next).second) frontier.push_back(std::move(next));
    }
  }
  return seen;
}

namespace {

void require_corner(const Permutation& w, const Cell& corner) {
  if (!lower_outside_corners(w).count(corner))
    throw InputError(to_string(corner) + " is not a lower outside corner of D(" + w.to_string() + ")");
}

}  // namespace

bool corner_tile_check(const Permutation& w, const Cell& corner) {
  require_corner(w, corner);
  for (const auto& b : enumerate_bpds(w)) {
    const Tile t = b(corner.row, corner.col);
    if (t != Tile::Blank && t != Tile::UpElbow) return false;
  }
  return true;
}

Bpd transition_bijection(const Bpd& b, const Cell& corner) {
  const auto& w = b.permutation();
  require_corner(w, corner);
  const auto [a, col] = corner;
  const Tile t = b(a, col);
  if (t != Tile::Blank && t != Tile::UpElbow)
    throw InvariantViolation("tile at lower outside corner " + to_string(corner) + " is neither blank nor an up elbow");
  const int c = w.inverse()(col);
  const int p = w(a);
  auto e = edges_of(b);
  toggle_rectangle(e, b.size(), a, col, c, p);
  try {
    return Bpd(b.size(), tiles_of(e));
  } catch (const InputError& err) {
    throw InvariantViolation(std::string("transition bijection produced an invalid grid: ") + err.what());
  }
}

}  // namespace bumpless
