#include "bumpless/poly.hpp"

#include <algorithm>
#include <mutex>

#include "bumpless/bpd.hpp"
#include "bumpless/transition.hpp"

namespace bumpless {

Universe::Universe(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > static_cast<std::size_t>(kMaxPolyVars))
    throw InputError("too many polynomial variables (max " + std::to_string(kMaxPolyVars) + ")");
}

std::shared_ptr<const Universe> Universe::schubert(int n) {
  // Shared instances keep universe comparisons pointer-cheap.
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const Universe>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    for (int i = 1; i <= n; ++i) names.push_back("y" + std::to_string(i));
    names.push_back("b");
    slot = std::make_shared<const Universe>(std::move(names));
  }
  return slot;
}

std::shared_ptr<const Universe> Universe::standard() {
  static const auto u = std::make_shared<const Universe>(std::vector<std::string>{"t"});
  return u;
}

std::shared_ptr<const Universe> Universe::xs(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return std::make_shared<const Universe>(std::move(names));
}

int Universe::index(const std::string& name) const {
  for (int k = 0; k < size(); ++k)
    if (names_[static_cast<std::size_t>(k)] == name) return k;
  throw InputError("unknown variable '" + name + "'");
}

SparsePoly SparsePoly::constant(UniversePtr u, const mpz_class& c) {
  SparsePoly p(std::move(u));
  p.add_term(Exponent{}, c);
  return p;
}

SparsePoly SparsePoly::var(UniversePtr u, int k) {
  if (k < 0 || k >= u->size()) throw InputError("variable index out of range");
  SparsePoly p(std::move(u));
  Exponent e{};
  e[static_cast<std::size_t>(k)] = 1;
  p.add_term(e, 1);
  return p;
}

SparsePoly SparsePoly::var(UniversePtr u, const std::string& name) {
  const int k = u->index(name);
  return var(std::move(u), k);
}

int SparsePoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

int SparsePoly::degree_in(int k) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[static_cast<std::size_t>(k)]));
  return d;
}

int SparsePoly::low_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto x : e) s += x;
    if (d < 0 || s < d) d = s;
  }
  return d;
}

void SparsePoly::add_term(const Exponent& e, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void SparsePoly::check_same(const SparsePoly& o) const {
  if (u_ && o.u_ && u_ != o.u_ && !(*u_ == *o.u_)) throw InputError("polynomials over different variable sets");
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  check_same(o);
  if (!u_) u_ = o.u_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  check_same(o);
  if (!u_) u_ = o.u_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  a.check_same(b);
  SparsePoly r(a.u_ ? a.u_ : b.u_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponent e;
      for (int k = 0; k < kMaxPolyVars; ++k) {
        const int s = ea[static_cast<std::size_t>(k)] + eb[static_cast<std::size_t>(k)];
        if (s > 255) throw InputError("exponent overflow");
        e[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(s);
      }
      r.add_term(e, ca * cb);
    }
  return r;
}

SparsePoly operator*(const mpz_class& c, const SparsePoly& a) {
  SparsePoly r(a.u_);
  if (c == 0) return r;
  for (const auto& [e, x] : a.terms_) r.terms_.emplace(e, c * x);
  return r;
}

SparsePoly SparsePoly::pow(unsigned k) const {
  SparsePoly r = constant(u_, 1);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

bool SparsePoly::operator==(const SparsePoly& o) const {
  if (terms_ != o.terms_) return false;
  if (terms_.empty()) return true;
  return u_ == o.u_ || (u_ && o.u_ && *u_ == *o.u_);
}

SparsePoly SparsePoly::substitute(int k, const SparsePoly& g) const {
  check_same(g);
  const int d = degree_in(k);
  std::vector<SparsePoly> powers;
  powers.push_back(constant(u_, 1));
  for (int i = 1; i <= d; ++i) powers.push_back(powers.back() * g);
  SparsePoly r(u_);
  for (const auto& [e, c] : terms_) {
    Exponent rest = e;
    const int p = rest[static_cast<std::size_t>(k)];
    rest[static_cast<std::size_t>(k)] = 0;
    SparsePoly mono(u_);
    mono.add_term(rest, c);
    r += mono * powers[static_cast<std::size_t>(p)];
  }
  return r;
}

SparsePoly SparsePoly::swap_vars(int i, int j) const {
  SparsePoly r(u_);
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    std::swap(f[static_cast<std::size_t>(i)], f[static_cast<std::size_t>(j)]);
    r.terms_.emplace(f, c);
  }
  return r;
}

SparsePoly SparsePoly::homogeneous_part(int degree) const {
  SparsePoly r(u_);
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto x : e) s += x;
    if (s == degree) r.terms_.emplace(e, c);
  }
  return r;
}

namespace {

int exp_sum(const Exponent& e) {
  int s = 0;
  for (auto x : e) s += x;
  return s;
}

std::vector<std::pair<Exponent, mpz_class>> display_order(const SparsePoly::Terms& terms) {
  std::vector<std::pair<Exponent, mpz_class>> v(terms.begin(), terms.end());
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    const int da = exp_sum(a.first), db = exp_sum(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  return v;
}

}  // namespace

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : display_order(terms_)) {
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (int k = 0; k < kMaxPolyVars; ++k) {
      const int p = e[static_cast<std::size_t>(k)];
      if (p == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += u_->name(k);
      if (p > 1) mono += "^" + std::to_string(p);
    }
    if (mono.empty())
      out += mag.get_str();
    else if (mag == 1)
      out += mono;
    else
      out += mag.get_str() + "*" + mono;
  }
  return out;
}

nlohmann::json SparsePoly::to_json() const {
  nlohmann::json vars = nlohmann::json::array();
  if (u_)
    for (int k = 0; k < u_->size(); ++k) vars.push_back(u_->name(k));
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : display_order(terms_)) {
    nlohmann::json mono = nlohmann::json::object();
    for (int k = 0; k < kMaxPolyVars; ++k)
      if (e[static_cast<std::size_t>(k)]) mono[u_->name(k)] = e[static_cast<std::size_t>(k)];
    terms.push_back({mono, c.get_str()});
  }
  return {{"vars", vars}, {"terms", terms}};
}

SparsePoly SparsePoly::from_json(const nlohmann::json& j) {
  try {
    auto u = std::make_shared<const Universe>(j.at("vars").get<std::vector<std::string>>());
    SparsePoly p(u);
    for (const auto& t : j.at("terms")) {
      Exponent e{};
      for (const auto& [name, pw] : t.at(0).items()) e[static_cast<std::size_t>(u->index(name))] = pw.get<std::uint8_t>();
      p.add_term(e, mpz_class(t.at(1).get<std::string>()));
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed polynomial JSON: ") + e.what());
  }
}

SparsePoly specialize(const SparsePoly& f, const std::map<int, mpz_class>& values) {
  SparsePoly r(f.universe());
  for (const auto& [e, c] : f.terms()) {
    Exponent rest = e;
    mpz_class coeff = c;
    for (const auto& [k, val] : values) {
      mpz_class p;
      mpz_pow_ui(p.get_mpz_t(), val.get_mpz_t(), rest[static_cast<std::size_t>(k)]);
      coeff *= p;
      rest[static_cast<std::size_t>(k)] = 0;
    }
    r.add_term(rest, coeff);
  }
  return r;
}

mpz_class principal_specialization(const SparsePoly& f) {
  mpz_class s = 0;
  for (const auto& [e, c] : f.terms()) s += c;
  return s;
}

namespace {

int xi(int i) { return i - 1; }
int yj(int n, int j) { return n + j - 1; }
int beta(int n) { return 2 * n; }

SparsePoly x_minus_y(int n, int i, int j) {
  auto u = Universe::schubert(n);
  return SparsePoly::var(u, xi(i)) - SparsePoly::var(u, yj(n, j));
}

int schubert_n(const SparsePoly& f) {
  const int m = f.universe()->size();
  if (m % 2 != 1 || f.universe()->name(m - 1) != "b") throw InputError("operator needs the x, y, b universe");
  return (m - 1) / 2;
}

// Exact quotient of g by (x_i - x_{i+1}) via synthetic division in x_i.
SparsePoly divide_by_difference(const SparsePoly& g, int i) {
  const auto& u = g.universe();
  const std::size_t ki = static_cast<std::size_t>(xi(i)), kj = static_cast<std::size_t>(xi(i + 1));
  const int d = g.degree_in(xi(i));
  SparsePoly q(u);
  if (d < 0) return q;
  std::vector<SparsePoly> coeff(static_cast<std::size_t>(d + 1), SparsePoly(u));
  for (const auto& [e, c] : g.terms()) {
    Exponent rest = e;
    const int p = rest[ki];
    rest[ki] = 0;
    coeff[static_cast<std::size_t>(p)].add_term(rest, c);
  }
  auto times_next = [&](const SparsePoly& f) {
    SparsePoly r(u);
    for (const auto& [e, c] : f.terms()) {
      Exponent s = e;
      ++s[kj];
      r.add_term(s, c);
    }
    return r;
  };
  // q_{k-1} = c_k + x_{i+1} q_k, remainder c_0 + x_{i+1} q_0.
  SparsePoly carry(u);
  for (int k = d; k >= 1; --k) {
    carry = coeff[static_cast<std::size_t>(k)] + times_next(carry);
    for (const auto& [e, c] : carry.terms()) {
      Exponent s = e;
      s[ki] = static_cast<std::uint8_t>(k - 1);
      q.add_term(s, c);
    }
  }
  if (!(coeff[0] + times_next(carry)).is_zero())
    throw InvariantViolation("numerator not divisible by x" + std::to_string(i) + " - x" + std::to_string(i + 1));
  return q;
}

}  // namespace

SparsePoly oplus(int n, int i, int j) {
  auto u = Universe::schubert(n);
  auto x = SparsePoly::var(u, xi(i));
  auto y = SparsePoly::var(u, yj(n, j));
  return x + y + SparsePoly::var(u, beta(n)) * x * y;
}

SparsePoly double_schubert_bpd(const Permutation& w) {
  const int n = w.size();
  auto u = Universe::schubert(n);
  SparsePoly sum(u);
  for (const auto& b : enumerate_bpds(w)) {
    SparsePoly wt = SparsePoly::constant(u, 1);
    for (const auto& c : diagram(b)) wt = wt * x_minus_y(n, c.row, c.col);
    sum += wt;
  }
  return sum;
}

SparsePoly single_schubert_bpd(const Permutation& w) {
  const int n = w.size();
  std::map<int, mpz_class> zero_y;
  for (int j = 1; j <= n; ++j) zero_y[yj(n, j)] = 0;
  return specialize(double_schubert_bpd(w), zero_y);
}

SparsePoly pi_operator(const SparsePoly& f, int i) {
  const int n = schubert_n(f);
  if (i < 1 || i >= n) throw InputError("operator index out of range");
  const auto& u = f.universe();
  auto one = SparsePoly::constant(u, 1);
  auto b = SparsePoly::var(u, beta(n));
  auto num = (one + b * SparsePoly::var(u, xi(i + 1))) * f - (one + b * SparsePoly::var(u, xi(i))) * f.swap_vars(xi(i), xi(i + 1));
  return divide_by_difference(num, i);
}

SparsePoly ddiff_operator(const SparsePoly& f, int i) {
  const int n = schubert_n(f);
  if (i < 1 || i >= n) throw InputError("operator index out of range");
  return divide_by_difference(f - f.swap_vars(xi(i), xi(i + 1)), i);
}

namespace {

bool is_dominant(const Permutation& w) {
  const auto d = rothe_diagram(w);
  for (const auto& c : d) {
    if (c.row > 1 && !d.count({c.row - 1, c.col})) return false;
    if (c.col > 1 && !d.count({c.row, c.col - 1})) return false;
  }
  return true;
}

// Climbs from w along ascents until a dominant permutation (or w0); returns
// the top permutation and the ascent positions used.
std::pair<Permutation, std::vector<int>> climb(Permutation w, DescentPath path, bool stop_at_dominant) {
  std::vector<int> steps;
  const int n = w.size();
  while (!(stop_at_dominant && is_dominant(w))) {
    int pick = 0;
    for (int i = 1; i < n; ++i)
      if (w(i) < w(i + 1)) {
        pick = i;
        if (path == DescentPath::FirstAscent) break;
      }
    if (pick == 0) break;
    steps.push_back(pick);
    w = w.times_transposition(pick, pick + 1);
  }
  return {w, steps};
}

}  // namespace

SparsePoly grothendieck_divdiff(const Permutation& w, DescentPath path, bool stop_at_dominant) {
  const int n = w.size();
  const auto [top, steps] = climb(w, path, stop_at_dominant);
  auto g = SparsePoly::constant(Universe::schubert(n), 1);
  for (const auto& c : rothe_diagram(top)) g = g * oplus(n, c.row, c.col);
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) g = pi_operator(g, *it);
  return g;
}

SparsePoly schubert_divdiff(const Permutation& w, DescentPath path, bool stop_at_dominant) {
  const int n = w.size();
  const auto [top, steps] = climb(w, path, stop_at_dominant);
  auto s = SparsePoly::constant(Universe::schubert(n), 1);
  for (const auto& c : rothe_diagram(top)) s = s * x_minus_y(n, c.row, c.col);
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) s = ddiff_operator(s, *it);
  return s;
}

SparsePoly grothendieck_to_schubert(const SparsePoly& g) {
  const int n = schubert_n(g);
  SparsePoly r(g.universe());
  for (const auto& [e, c] : g.terms()) {
    if (e[static_cast<std::size_t>(beta(n))] != 0) continue;
    int ydeg = 0;
    for (int j = 1; j <= n; ++j) ydeg += e[static_cast<std::size_t>(yj(n, j))];
    r.add_term(e, ydeg % 2 ? mpz_class(-c) : c);
  }
  return r;
}

TransitionReport transition_schubert(const Permutation& w, const Cell& corner) {
  const auto td = transition_data(w, corner);
  const int n = w.size();
  TransitionReport rep;
  rep.lhs = schubert_divdiff(w);
  rep.rhs = x_minus_y(n, corner.row, corner.col) * schubert_divdiff(td.v);
  for (const auto& u : td.Phi) rep.rhs += schubert_divdiff(u);
  rep.difference = rep.lhs - rep.rhs;
  return rep;
}

TransitionReport transition_grothendieck(const Permutation& w, const Cell& corner) {
  const auto td = transition_data(w, corner);
  const int n = w.size();
  auto u = Universe::schubert(n);
  const auto s = oplus(n, corner.row, corner.col);
  const auto b = SparsePoly::var(u, beta(n));
  TransitionReport rep;
  rep.lhs = grothendieck_divdiff(w);
  SparsePoly tail(u);
  for (const auto& U : nonempty_subsets(td.phi))
    tail += b.pow(static_cast<unsigned>(U.size() - 1)) * grothendieck_divdiff(w_U(td, U));
  rep.rhs = s * grothendieck_divdiff(td.v) + (SparsePoly::constant(u, 1) + b * s) * tail;
  rep.difference = rep.lhs - rep.rhs;
  return rep;
}

}  // namespace bumpless
