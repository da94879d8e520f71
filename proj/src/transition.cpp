#include "bumpless/transition.hpp"

namespace bumpless {

TransitionData transition_data(const Permutation& w, const Cell& corner) {
  if (!lower_outside_corners(w).count(corner))
    throw InputError(to_string(corner) + " is not a lower outside corner of D(" + w.to_string() + ")");
  TransitionData td;
  td.w = w;
  td.corner = corner;
  const int a = corner.row;
  td.v = w.times_transposition(a, w.inverse()(corner.col));
  const int len = td.v.length();
  for (int i = 1; i < a; ++i) {
    auto u = td.v.times_transposition(i, a);
    if (u.length() == len + 1) {
      td.phi.insert(i);
      td.Phi.insert(std::move(u));
    }
  }
  return td;
}

Permutation w_U(const TransitionData& td, const std::set<int>& U) {
  for (int i : U)
    if (!td.phi.count(i)) throw InputError("row " + std::to_string(i) + " is not in phi");
  const int n = td.v.size();
  const int a = td.corner.row;
  // cycle: a -> i_k -> i_{k-1} -> ... -> i_1 -> a
  std::vector<int> cyc(static_cast<std::size_t>(n));
  for (int x = 1; x <= n; ++x) cyc[static_cast<std::size_t>(x - 1)] = x;
  if (!U.empty()) {
    std::vector<int> is(U.begin(), U.end());
    cyc[static_cast<std::size_t>(a - 1)] = is.back();
    for (std::size_t k = is.size() - 1; k > 0; --k) cyc[static_cast<std::size_t>(is[k] - 1)] = is[k - 1];
    cyc[static_cast<std::size_t>(is.front() - 1)] = a;
  }
  return td.v.compose(Permutation(std::move(cyc)));
}

std::vector<std::set<int>> nonempty_subsets(const std::set<int>& phi) {
  std::vector<int> elems(phi.begin(), phi.end());
  std::vector<std::set<int>> out;
  const unsigned m = static_cast<unsigned>(elems.size());
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::set<int> s;
    for (unsigned k = 0; k < m; ++k)
      if (mask & (1u << k)) s.insert(elems[k]);
    out.push_back(std::move(s));
  }
  return out;
}

Diagram accessible_cells(const Permutation& w) {
  Diagram out;
  for (const auto& c : lower_outside_corners(w))
    if (w.rank(c.row, c.col) >= 1) out.insert(c);
  return out;
}

std::optional<Cell> maximal_accessible_cell(const std::set<Permutation>& ws) {
  std::optional<Cell> best;
  for (const auto& w : ws)
    for (const auto& c : accessible_cells(w))
      if (!best || c.row > best->row || (c.row == best->row && c.col > best->col)) best = c;
  return best;
}

}  // namespace bumpless
