#ifndef BUMPLESS_BPD_HPP
#define BUMPLESS_BPD_HPP

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "bumpless/perm.hpp"

namespace bumpless {

enum class Tile : std::uint8_t { Blank, DownElbow, UpElbow, Crossing, Horizontal, Vertical };

// Edge bits of a tile.
inline constexpr unsigned kTop = 1, kBottom = 2, kLeft = 4, kRight = 8;

unsigned tile_edges(Tile t);
/// Inverse of tile_edges; four edges read as a crossing. Throws InputError
/// for edge sets that are not one of the six tiles (e.g. top+right).
Tile tile_from_edges(unsigned edges);

char tile_glyph(Tile t);
std::string tile_name(Tile t);

/// Bumpless pipe dream. The constructor traces pipes from the bottom edge
/// and rejects anything that is not a valid BPD.
class Bpd {
public:
  Bpd() = default;
  Bpd(int n, std::vector<Tile> tiles);

  int size() const { return n_; }
  Tile operator()(int i, int j) const { return tiles_[static_cast<std::size_t>((i - 1) * n_ + (j - 1))]; }
  const std::vector<Tile>& tiles() const { return tiles_; }
  const Permutation& permutation() const { return perm_; }

  /// One line per row using r j + . - |
  std::string to_ascii() const;
  static Bpd parse_ascii(std::string_view text);
  nlohmann::json to_json() const;
  static Bpd from_json(const nlohmann::json& j);

  bool operator==(const Bpd& o) const { return n_ == o.n_ && tiles_ == o.tiles_; }
  auto operator<=>(const Bpd& o) const {
    if (auto c = n_ <=> o.n_; c != 0) return c;
    return tiles_ <=> o.tiles_;
  }

private:
  int n_ = 0;
  std::vector<Tile> tiles_;
  Permutation perm_;
};

struct DroopMove {
  Cell source;
  Cell target;

  auto operator<=>(const DroopMove&) const = default;
};

Bpd rothe_bpd(const Permutation& w);
Permutation permutation_of(const Bpd& b);
/// Cells holding a blank tile.
Diagram diagram(const Bpd& b);

std::set<DroopMove> legal_droops(const Bpd& b);
/// Throws InputError naming the violated clause when m is not legal.
Bpd apply_droop(const Bpd& b, const DroopMove& m);

/// Closure of the Rothe BPD under droops.
std::set<Bpd> enumerate_bpds(const Permutation& w);

/// True iff every BPD of w has a blank or an up elbow at the corner.
bool corner_tile_check(const Permutation& w, const Cell& corner);

/// Exchanges the exit rows of pipes b and w(a) at the lower outside corner
/// (a, b); a bump created at (a, b) becomes a crossing.
Bpd transition_bijection(const Bpd& b, const Cell& corner);

}  // namespace bumpless

#endif
