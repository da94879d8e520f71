#ifndef BUMPLESS_TRANSITION_HPP
#define BUMPLESS_TRANSITION_HPP

#include <optional>
#include <set>
#include <vector>

#include "bumpless/perm.hpp"

namespace bumpless {

/// Data attached to a lower outside corner (a, b) of D(w).
struct TransitionData {
  Permutation w;
  Cell corner;
  /// w * t_{a, w^-1(b)}
  Permutation v;
  /// Rows i < a with l(v t_{i,a}) = l(v) + 1.
  std::set<int> phi;
  std::set<Permutation> Phi;
};

/// Throws InputError if `corner` is not a lower outside corner of D(w).
TransitionData transition_data(const Permutation& w, const Cell& corner);

/// v composed with the cycle (a i_k ... i_1), where i_1 < ... < i_k lists U.
/// w_U(empty) = v. Throws InputError unless U is a subset of phi.
Permutation w_U(const TransitionData& td, const std::set<int>& U);

/// All nonempty subsets of phi, in increasing bitmask order.
std::vector<std::set<int>> nonempty_subsets(const std::set<int>& phi);

/// Lower outside corners (a, b) with rk_w(a, b) >= 1.
Diagram accessible_cells(const Permutation& w);

/// Maximal accessible cell of a set of permutations: the largest row among
/// all accessible cells, then the largest column among accessible cells
/// in that row. None when no permutation has an accessible cell.
std::optional<Cell> maximal_accessible_cell(const std::set<Permutation>& ws);

}  // namespace bumpless

#endif
