#ifndef BUMPLESS_PERM_HPP
#define BUMPLESS_PERM_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bumpless {

/// Raised for malformed user input (bad permutation words, grids, specs...).
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an internal consistency check fails (a bug or a
/// counterexample, never bad input).
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// A cell (row, col) of the n x n grid. Both indices are 1-based.
struct Cell {
  int row = 0;
  int col = 0;

  auto operator<=>(const Cell&) const = default;
};

std::string to_string(const Cell& c);

/// Finite set of cells, ordered row-major.
using Diagram = std::set<Cell>;

std::string to_string(const Diagram& d);

/// Permutation in one-line notation. Values and positions are 1-based:
/// w(i) for i in [1, n]. Immutable once constructed.
class Permutation {
public:
  Permutation() = default;
  /// Throws InputError unless `word` is a bijection on [n].
  explicit Permutation(std::vector<int> word);

  static Permutation identity(int n);
  static Permutation longest(int n);
  /// "4721653" for n <= 9, "10,2,3,..." comma-separated otherwise.
  static Permutation parse(std::string_view text);

  int size() const { return static_cast<int>(word_.size()); }
  int operator()(int i) const { return word_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& word() const { return word_; }

  Permutation inverse() const;
  /// Function composition (*this)(other(i)).
  Permutation compose(const Permutation& other) const;
  /// w * t_{i,j}: swaps the entries at positions i and j.
  Permutation times_transposition(int i, int j) const;
  /// Embeds into S_m (m >= n) by fixing n+1..m.
  Permutation extended(int m) const;

  int length() const;
  /// rk_w(a, b) = #{i <= a : w(i) <= b}; zero when a or b is zero.
  int rank(int a, int b) const;
  /// (n+1) x (n+1) table of rank(a, b), row-major.
  std::vector<int> rank_table() const;

  std::string to_string() const;

  auto operator<=>(const Permutation&) const = default;

private:
  std::vector<int> word_;
};

int coxeter_length(const Permutation& w);
int rank_function(const Permutation& w, int a, int b);

Diagram rothe_diagram(const Permutation& w);
Diagram essential_set(const Permutation& w);
/// Maximally southeast cells of D(w).
Diagram lower_outside_corners(const Permutation& w);

/// Bruhat order through rank comparison: u <= w iff rk_u >= rk_w everywhere.
bool bruhat_leq(const Permutation& u, const Permutation& w);

/// The bigrassmannian permutation with Ess = {(a, b)} and rank r there.
Permutation bigrassmannian(int n, int a, int b, int r);

Permutation apply_transposition(const Permutation& w, int i, int j);
/// All w * t_{i,j} with length exactly length(w) + 1.
std::set<Permutation> bruhat_covers(const Permutation& w);

/// Lexicographic stream over S_n; does not materialize the group.
class SymmetricGroup {
public:
  explicit SymmetricGroup(int n) : n_(n) {}

  class iterator {
  public:
    using value_type = Permutation;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(int n, bool end);
    const Permutation& operator*() const { return current_; }
    const Permutation* operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const iterator& o) const { return done_ == o.done_ && (done_ || current_ == o.current_); }

  private:
    Permutation current_;
    bool done_ = true;
  };

  iterator begin() const { return iterator(n_, false); }
  iterator end() const { return iterator(n_, true); }

private:
  int n_;
};

std::vector<Permutation> all_permutations(int n);

}  // namespace bumpless

#endif
