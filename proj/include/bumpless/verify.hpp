#ifndef BUMPLESS_VERIFY_HPP
#define BUMPLESS_VERIFY_HPP

#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "bumpless/asm.hpp"
#include "bumpless/groebner.hpp"
#include "bumpless/transition.hpp"

namespace bumpless {

/// Outcome of one verification case. `witness` carries the computed data on
/// success and a side-by-side diff on failure.
struct Report {
  std::string case_id;
  std::string statement;
  bool pass = true;
  nlohmann::json witness = nlohmann::json::object();

  /// Records a named sub-check; the report fails if any check fails.
  void check(const std::string& name, bool ok, nlohmann::json detail = nullptr);
  nlohmann::json to_json() const;
};

/// J = intersection of the I_{w_i}, taken left to right.
Ideal intersect_schubert(const std::vector<Permutation>& ws);

/// Cells of the union of the D(w_i) with no other union cell weakly south and
/// weakly east of them.
Diagram maximally_southeast_cells(const std::vector<Permutation>& ws);

/// C and N of I_w at a lower outside corner against the intersection over
/// Phi and I_v; for accessible corners also against I_{v join pi}.
Report verify_link_decomposition(const Permutation& w, const Cell& corner);

/// Minimal primes of in(J), with multiplicity, against the diagrams of the
/// BPDs of the w_i. Throws InputError unless all lengths agree.
Report verify_main_theorem(const std::vector<Permutation>& ws, const TermOrder& order);

/// K-polynomial transition at a lower outside corner (Z^{2n} grading).
Report verify_hilbert_transition(const Permutation& w, const Cell& corner);

/// N_{y,J} equals the intersection of the N_{y,I_{w_i}}, and J is linear in y.
Report verify_intersect_ns(const std::vector<Permutation>& ws, const Cell& y);

/// in_order(J) equals in_{y_refined(order, y)}(J).
Report verify_ycompat(const std::vector<Permutation>& ws, const Cell& y, const TermOrder& order);

/// Antidiagonal degeneration of I_w: Fulton generators are Groebner, the
/// initial ideal is squarefree with #BPD(w) facets, and (optionally) its
/// multidegree is the double Schubert polynomial.
Report verify_theorem_b(const Permutation& w, bool with_multidegree = true);

/// I_A against its bigrassmannian sum and its Perm(A) intersection, both as
/// ideals and after antidiagonal degeneration.
Report verify_asm(const Asm& a);

/// For mu with distinct parts, w_i = s_{mu_i}: multiplicity of (z_{i,i})
/// in in_diag(J) is the conjugate partition.
Report verify_partition(const std::vector<int>& mu);

/// Schubert and Grothendieck transition identities at a corner.
Report verify_poly_transition(const Permutation& w, const Cell& corner, bool grothendieck);

}  // namespace bumpless

#endif
