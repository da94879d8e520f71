#ifndef BUMPLESS_ASM_HPP
#define BUMPLESS_ASM_HPP

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bumpless/perm.hpp"

namespace bumpless {

/// Corner-sum matrix rk_A stored as an (n+1) x (n+1) grid; row and column 0
/// are identically zero.
class CornerSumMatrix {
public:
  CornerSumMatrix() = default;
  /// `values` is row-major (n+1)^2. Validates the unit-step monotonicity
  /// invariants and rk(n, n) = n; throws InputError otherwise.
  CornerSumMatrix(int n, std::vector<int> values);

  int size() const { return n_; }
  int operator()(int a, int b) const { return values_[static_cast<std::size_t>(a * (n_ + 1) + b)]; }
  const std::vector<int>& values() const { return values_; }

  bool operator==(const CornerSumMatrix&) const = default;

private:
  int n_ = 0;
  std::vector<int> values_;
};

/// Alternating sign matrix, entries in {-1, 0, 1}, 1-based access.
class Asm {
public:
  Asm() = default;
  /// Row-major entries; throws InputError unless the ASM axioms hold.
  Asm(int n, std::vector<int> entries);

  static Asm from_permutation(const Permutation& w);
  /// Whitespace separated rows, one row per line.
  static Asm parse(std::string_view text);

  int size() const { return n_; }
  int operator()(int i, int j) const { return entries_[static_cast<std::size_t>((i - 1) * n_ + (j - 1))]; }
  const std::vector<int>& entries() const { return entries_; }

  bool is_permutation() const;
  /// Throws InputError if the matrix has a -1.
  Permutation to_permutation() const;

  std::string to_string() const;

  auto operator<=>(const Asm&) const = default;

private:
  int n_ = 0;
  std::vector<int> entries_;
};

CornerSumMatrix corner_sums(const Asm& a);
Asm asm_from_corner_sums(const CornerSumMatrix& m);

/// A <= B in the ASM lattice, i.e. rk_A >= rk_B entrywise.
bool asm_leq(const Asm& a, const Asm& b);
/// Least upper bound: entrywise minimum of corner sums. Empty input throws.
Asm join(const std::vector<Asm>& as);
/// Greatest lower bound: entrywise maximum of corner sums.
Asm meet(const std::vector<Asm>& as);
Asm join(const std::vector<Permutation>& ws);

/// Bruhat-minimal permutations lying above A.
std::set<Permutation> perm_set(const Asm& a);
int degree_of(const Asm& a);
bool is_equidimensional(const Asm& a);

/// A rank condition rk(Z_[row],[col]) <= rank that is not implied by the
/// conditions at neighbouring cells.
struct RankCondition {
  Cell cell;
  int rank = 0;

  auto operator<=>(const RankCondition&) const = default;
};

/// Non-vacuous conditions of A that are not implied by a neighbour. For a
/// permutation these are exactly its essential cells.
std::vector<RankCondition> essential_rank_conditions(const Asm& a);

/// One bigrassmannian per essential rank condition; their join is A.
std::set<Permutation> bigrassmannian_join_decomposition(const Asm& a);

/// Every n x n ASM (recursive row extension). Intended for n <= 5.
std::vector<Asm> all_asms(int n);

}  // namespace bumpless

#endif
