#ifndef BUMPLESS_POLY_HPP
#define BUMPLESS_POLY_HPP

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

#include "bumpless/perm.hpp"

namespace bumpless {

inline constexpr int kMaxPolyVars = 32;

/// Ordered list of variable names a polynomial lives over.
class Universe {
public:
  explicit Universe(std::vector<std::string> names);

  /// x1..xn, y1..yn, b (b plays the role of beta).
  static std::shared_ptr<const Universe> schubert(int n);
  /// Single variable t.
  static std::shared_ptr<const Universe> standard();
  /// x1..xn.
  static std::shared_ptr<const Universe> xs(int n);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int k) const { return names_[static_cast<std::size_t>(k)]; }
  /// Throws InputError for unknown names.
  int index(const std::string& name) const;
  bool operator==(const Universe& o) const { return names_ == o.names_; }

private:
  std::vector<std::string> names_;
};

using UniversePtr = std::shared_ptr<const Universe>;
using Exponent = std::array<std::uint8_t, kMaxPolyVars>;

/// Sparse polynomial with arbitrary precision integer coefficients.
class SparsePoly {
public:
  using Terms = std::map<Exponent, mpz_class>;

  SparsePoly() = default;
  explicit SparsePoly(UniversePtr u) : u_(std::move(u)) {}

  static SparsePoly constant(UniversePtr u, const mpz_class& c);
  static SparsePoly var(UniversePtr u, int k);
  static SparsePoly var(UniversePtr u, const std::string& name);

  const UniversePtr& universe() const { return u_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  int total_degree() const;
  int degree_in(int k) const;

  /// Adds c * monomial(e), dropping zero coefficients.
  void add_term(const Exponent& e, const mpz_class& c);

  SparsePoly operator-() const;
  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(const mpz_class& c, const SparsePoly& a);
  SparsePoly pow(unsigned k) const;

  bool operator==(const SparsePoly& o) const;

  /// Replaces variable k by the polynomial g.
  SparsePoly substitute(int k, const SparsePoly& g) const;
  /// Exchanges variables i and j.
  SparsePoly swap_vars(int i, int j) const;
  /// Homogeneous part of the given total degree.
  SparsePoly homogeneous_part(int degree) const;
  /// Lowest total degree present; -1 for the zero polynomial.
  int low_degree() const;

  /// Deterministic text: terms by decreasing total degree, then decreasing
  /// exponent vector. "0" for the zero polynomial.
  std::string to_string() const;
  /// {"vars": [...], "terms": [[{"x1":2}, "3"], ...]}
  nlohmann::json to_json() const;
  static SparsePoly from_json(const nlohmann::json& j);

private:
  void check_same(const SparsePoly& o) const;

  UniversePtr u_;
  Terms terms_;
};

/// Substitutes integer values for some variables.
SparsePoly specialize(const SparsePoly& f, const std::map<int, mpz_class>& values);
/// f(1, 1, ..., 1).
mpz_class principal_specialization(const SparsePoly& f);

/// sum over BPD(w) of prod over D(B) of (x_i - y_j).
SparsePoly double_schubert_bpd(const Permutation& w);
SparsePoly single_schubert_bpd(const Permutation& w);

/// Isobaric operator with beta read from the universe variable "b". Throws
/// InvariantViolation if the numerator is not divisible by x_i - x_{i+1}.
SparsePoly pi_operator(const SparsePoly& f, int i);
/// Divided difference (f - s_i f) / (x_i - x_{i+1}).
SparsePoly ddiff_operator(const SparsePoly& f, int i);

enum class DescentPath { FirstAscent, LastAscent };

/// Climbs from w along ascents to a permutation u whose polynomial is the
/// product over D(u) of (x_i + y_j + b x_i y_j), then applies one isobaric
/// operator per step on the way back down. u is w0 unless stop_at_dominant,
/// in which case the climb ends at the first dominant permutation.
SparsePoly grothendieck_divdiff(const Permutation& w, DescentPath path = DescentPath::FirstAscent,
                                bool stop_at_dominant = true);
/// Same descent with ordinary divided differences on prod (x_i - y_j).
SparsePoly schubert_divdiff(const Permutation& w, DescentPath path = DescentPath::FirstAscent,
                            bool stop_at_dominant = true);

/// Sets b = 0 and y_j -> -y_j; turns a Grothendieck polynomial into the
/// matching double Schubert polynomial.
SparsePoly grothendieck_to_schubert(const SparsePoly& g);

/// x_i + y_j + b x_i y_j over Universe::schubert(n).
SparsePoly oplus(int n, int i, int j);

struct TransitionReport {
  SparsePoly lhs;
  SparsePoly rhs;
  SparsePoly difference;
  bool holds() const { return difference.is_zero(); }
};

TransitionReport transition_schubert(const Permutation& w, const Cell& corner);
TransitionReport transition_grothendieck(const Permutation& w, const Cell& corner);

}  // namespace bumpless

#endif
