#ifndef BUMPLESS_GROEBNER_HPP
#define BUMPLESS_GROEBNER_HPP

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "bumpless/asm.hpp"
#include "bumpless/monomial.hpp"
#include "bumpless/perm.hpp"

namespace bumpless {

struct ZVar {
  int row = 0;
  int col = 0;
  auto operator<=>(const ZVar&) const = default;
};

/// Monomial order on k[z_{1,1}..z_{n,n}, t]: a list of weight vectors
/// compared in turn, then lex along a ranking of the variables.
class TermOrder {
public:
  static TermOrder diagonal_lex(int n);
  static TermOrder antidiagonal_lex(int n);
  /// y greatest, then right-to-left reading order.
  static TermOrder tau(int n, ZVar y);
  /// y-degree first, then base.
  static TermOrder y_refined(const TermOrder& base, ZVar y);
  /// Total degree in `block` first, then inner. Block variables are given as
  /// indices, so the auxiliary t (index n^2) can be eliminated.
  static TermOrder elimination(const std::vector<int>& block, const TermOrder& inner);
  /// Lex on z11 > z21 > ... > zn1 > z12 > ...
  static TermOrder col_lex(int n);
  /// Total degree, then diagonal lex. Used as the inner order of eliminations.
  static TermOrder deg_diagonal(int n);
  /// "diag", "antidiag", "col-lex", "tau:a,b", "yref:a,b:<spec>".
  static TermOrder parse(std::string_view spec, int n);

  int grid() const { return n_; }
  int nvars() const { return n_ * n_ + 1; }
  const std::string& name() const { return name_; }
  /// Canonical text of the weights and ranking; equal orders share a key.
  std::string key() const;
  const std::vector<std::vector<int>>& weights() const { return weights_; }
  /// rank()[v] = position of variable v in the lex tie-break (0 = greatest).
  const std::vector<int>& rank() const { return rank_; }

  /// a > b
  bool greater(const ZMono& a, const ZMono& b) const;
  bool operator==(const TermOrder& o) const { return n_ == o.n_ && weights_ == o.weights_ && rank_ == o.rank_; }

private:
  void normalize();

  int n_ = 0;
  std::string name_;
  std::vector<std::vector<int>> weights_;
  std::vector<int> rank_;
};

/// Polynomial in the z_{i,j} (and possibly t) with integer coefficients. Ideal
/// work happens over the rationals; elements are kept primitive.
class QPoly {
public:
  using Terms = std::map<ZMono, mpz_class>;

  QPoly() = default;
  explicit QPoly(int n) : n_(n) {}

  static QPoly constant(int n, const mpz_class& c);
  static QPoly var(int n, int idx);
  static QPoly z(int n, int row, int col) { return var(n, zindex(n, row, col)); }

  int grid() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int total_degree() const;
  int degree_in(int idx) const;
  bool involves(int idx) const { return degree_in(idx) > 0; }

  void add_term(const ZMono& m, const mpz_class& c);
  QPoly operator-() const;
  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  bool operator==(const QPoly& o) const { return n_ == o.n_ && terms_ == o.terms_; }

  /// Divides by the content and makes the leading coefficient under `order`
  /// positive.
  QPoly primitive(const TermOrder& order) const;
  ZMono leading_monomial(const TermOrder& order) const;
  const mpz_class& leading_coefficient(const TermOrder& order) const;

  /// Terms listed greatest first under diagonal lex after grouping by degree:
  /// "z[1,1]*z[2,2] - z[1,2]*z[2,1]".
  std::string to_string() const;
  /// Inverse of to_string; also accepts "t" and integer coefficients
  /// "3*z[1,2]". Throws InputError with the column of the offending token.
  static QPoly parse(std::string_view text, int n);

private:
  int n_ = 0;
  Terms terms_;
};

QPoly minor(int n, const std::vector<int>& rows, const std::vector<int>& cols);
/// (rk_w(i,j)+1)-minors of Z_{[i],[j]} over Ess(w), without repeats.
std::vector<QPoly> fulton_generators(const Permutation& w);
/// Same construction over the essential rank conditions of A.
std::vector<QPoly> asm_ideal_generators(const Asm& a);

/// Hook consulted for every reduced GB computation. It receives the inputs and
/// a callback doing the actual work, and returns the reduced GB.
using GbProvider = std::function<std::vector<QPoly>(const std::vector<QPoly>& gens, const TermOrder& order,
                                                    const std::function<std::vector<QPoly>()>& compute)>;
void set_gb_provider(GbProvider p);

struct GbStats {
  std::size_t pairs_considered = 0;
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
};

/// Reduced Groebner basis: primitive elements with positive leading
/// coefficient, sorted by leading monomial, greatest first. The zero ideal
/// gives an empty list; the unit ideal gives {1}.
std::vector<QPoly> buchberger(const std::vector<QPoly>& gens, const TermOrder& order, GbStats* stats = nullptr);
/// Remainder of total division, made primitive (so zero iff f is in the ideal
/// when `gb` is a Groebner basis).
QPoly reduce(const QPoly& f, const std::vector<QPoly>& gb, const TermOrder& order);
/// True when every S-pair of `gens` reduces to zero modulo gens.
bool is_groebner_basis(const std::vector<QPoly>& gens, const TermOrder& order);

/// Generators plus a memo of reduced GBs keyed by order name.
class Ideal {
public:
  Ideal() = default;
  Ideal(int n, std::vector<QPoly> gens);

  static Ideal schubert(const Permutation& w);
  static Ideal of_asm(const Asm& a);
  static Ideal unit(int n);

  int grid() const { return n_; }
  const std::vector<QPoly>& generators() const { return gens_; }
  const std::vector<QPoly>& gb(const TermOrder& order) const;
  bool is_unit() const;

private:
  int n_ = 0;
  std::vector<QPoly> gens_;
  mutable std::map<std::string, std::vector<QPoly>> gb_cache_;
};

MonomialIdeal initial_ideal(const Ideal& i, const TermOrder& order);
MonomialIdeal initial_ideal(const std::vector<QPoly>& gb, const TermOrder& order);
bool ideal_equal(const Ideal& a, const Ideal& b, const TermOrder& order);
/// Generators of I cap J, read from an elimination GB of tI + (1-t)J. They
/// form a Groebner basis of the intersection under deg_diagonal.
Ideal intersect_ideals(const Ideal& a, const Ideal& b);
Ideal sum_ideals(const Ideal& a, const Ideal& b);

/// No element of the reduced GB has y-degree >= 2.
bool is_linear_in_y(const Ideal& i, ZVar y, const TermOrder& order);

struct GvdSplit {
  Ideal C;
  Ideal N;
  /// Reduced GB the split was read from.
  std::vector<QPoly> gb;
};

/// Splits each GB element as y q + r. Requires an order that ranks y first
/// (tau or y_refined); throws InputError otherwise and InvariantViolation if
/// the GB is not linear in y.
GvdSplit gvd_split(const Ideal& i, ZVar y, const TermOrder& order);

}  // namespace bumpless

#endif
