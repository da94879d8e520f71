#ifndef BUMPLESS_MONOMIAL_HPP
#define BUMPLESS_MONOMIAL_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "bumpless/perm.hpp"
#include "bumpless/poly.hpp"

namespace bumpless {

/// Variables of the coordinate ring: z_{i,j} sits at (i-1)n + (j-1). One slot
/// past the grid (index n^2) is reserved for an auxiliary variable t.
inline constexpr int kMaxZVars = 64;
inline constexpr int kMaxGrid = 7;
using ZMono = std::array<std::uint8_t, kMaxZVars>;

inline int zindex(int n, int row, int col) { return (row - 1) * n + (col - 1); }
inline Cell zcell(int n, int idx) { return Cell{idx / n + 1, idx % n + 1}; }

int zmono_degree(const ZMono& m);
bool zmono_divides(const ZMono& a, const ZMono& b);
ZMono zmono_lcm(const ZMono& a, const ZMono& b);
bool zmono_squarefree(const ZMono& m);
/// "z[1,1]^2*z[2,2]", or "1". Index n^2 prints as "t".
std::string zmono_to_string(int n, const ZMono& m);

/// Monomial ideal of k[z_{1,1}..z_{n,n}] held by its minimal generators.
class MonomialIdeal {
public:
  MonomialIdeal() = default;
  /// Minimalizes the generator list; a zero exponent vector means the unit ideal.
  MonomialIdeal(int n, std::vector<ZMono> gens);
  /// (z_{i,j} : (i,j) in cells)
  static MonomialIdeal of_cells(int n, const Diagram& cells);

  int grid() const { return n_; }
  /// Sorted ascending by exponent vector.
  const std::vector<ZMono>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const;
  bool contains(const ZMono& m) const;

  bool operator==(const MonomialIdeal& o) const { return n_ == o.n_ && gens_ == o.gens_; }
  bool operator<(const MonomialIdeal& o) const { return gens_ < o.gens_; }

  std::string to_string() const;
  nlohmann::json to_json() const;
  static MonomialIdeal from_json(const nlohmann::json& j);

private:
  int n_ = 0;
  std::vector<ZMono> gens_;
};

MonomialIdeal operator+(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal intersect(const MonomialIdeal& a, const MonomialIdeal& b);
/// I : m
MonomialIdeal colon(const MonomialIdeal& i, const ZMono& m);
/// Exponents clipped to 1.
MonomialIdeal radical(const MonomialIdeal& i);

/// Monomial prime, stored as the set of its variables.
using MonomialPrime = Diagram;

std::string prime_to_string(const MonomialPrime& p);

std::set<MonomialPrime> minimal_primes(const MonomialIdeal& i);
/// Length of the localization at P. Throws InputError if P is not a
/// minimal prime of I (the length is infinite or zero there).
long multiplicity_at(const MonomialIdeal& i, const MonomialPrime& p);
/// Irredundant irreducible decomposition: each component is generated by
/// pure powers.
std::vector<MonomialIdeal> irreducible_components(const MonomialIdeal& i);
std::set<MonomialPrime> associated_primes(const MonomialIdeal& i);
bool is_radical(const MonomialIdeal& i);
/// Complements (within the n x n grid) of the minimal primes. Throws
/// InputError unless I is squarefree.
std::set<Diagram> facets(const MonomialIdeal& i);

enum class Grading { Standard, Zn, Z2n };

/// Universe of the grading: t for Standard, x1..xn for Zn, Schubert universe
/// (x, y and b, with b unused) for Z2n.
UniversePtr grading_universe(Grading g, int n);

/// Numerator of the Hilbert series of R / I.
SparsePoly k_polynomial(const MonomialIdeal& i, Grading g);
/// Lowest degree part of K(1 - t).
SparsePoly multidegree(const MonomialIdeal& i, Grading g);
/// e(R / I) under the standard grading.
long degree(const MonomialIdeal& i);

}  // namespace bumpless

#endif
