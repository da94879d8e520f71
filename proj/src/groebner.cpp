#include "bumpless/groebner.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <mutex>
#include <numeric>
#include <sstream>

namespace bumpless {

// ---------------------------------------------------------------------------
// Term orders

namespace {

std::vector<int> identity_rank(int n) {
  std::vector<int> r(static_cast<std::size_t>(n * n + 1));
  std::iota(r.begin(), r.end(), 0);
  return r;
}

void check_grid(int n) {
  if (n < 1 || n > kMaxGrid) throw InputError("grid size must be in [1, " + std::to_string(kMaxGrid) + "]");
}

void check_var(int n, ZVar y) {
  if (y.row < 1 || y.row > n || y.col < 1 || y.col > n)
    throw InputError("variable z[" + std::to_string(y.row) + "," + std::to_string(y.col) + "] outside the grid");
}

// Ranking with `first` moved to the front, everything else keeping its order.
std::vector<int> promote(const std::vector<int>& rank, int first) {
  std::vector<int> out(rank);
  const int old = rank[static_cast<std::size_t>(first)];
  for (auto& r : out)
    if (r < old) ++r;
  out[static_cast<std::size_t>(first)] = 0;
  return out;
}

}  // namespace

TermOrder TermOrder::diagonal_lex(int n) {
  check_grid(n);
  TermOrder o;
  o.n_ = n;
  o.name_ = "diag";
  o.rank_ = identity_rank(n);
  return o;
}

TermOrder TermOrder::antidiagonal_lex(int n) {
  check_grid(n);
  TermOrder o;
  o.n_ = n;
  o.name_ = "antidiag";
  o.rank_ = identity_rank(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) o.rank_[static_cast<std::size_t>(zindex(n, i, j))] = (i - 1) * n + (n - j);
  return o;
}

TermOrder TermOrder::col_lex(int n) {
  check_grid(n);
  TermOrder o;
  o.n_ = n;
  o.name_ = "col-lex";
  o.rank_ = identity_rank(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) o.rank_[static_cast<std::size_t>(zindex(n, i, j))] = (j - 1) * n + (i - 1);
  return o;
}

TermOrder TermOrder::deg_diagonal(int n) {
  TermOrder o = diagonal_lex(n);
  o.name_ = "deglex";
  o.weights_.push_back(std::vector<int>(static_cast<std::size_t>(n * n + 1), 1));
  return o;
}

TermOrder TermOrder::tau(int n, ZVar y) {
  check_var(n, y);
  TermOrder o = antidiagonal_lex(n);
  o.rank_ = promote(o.rank_, zindex(n, y.row, y.col));
  o.name_ = "tau:" + std::to_string(y.row) + "," + std::to_string(y.col);
  return o;
}

TermOrder TermOrder::y_refined(const TermOrder& base, ZVar y) {
  check_var(base.n_, y);
  TermOrder o = base;
  std::vector<int> w(static_cast<std::size_t>(base.nvars()), 0);
  w[static_cast<std::size_t>(zindex(base.n_, y.row, y.col))] = 1;
  o.weights_.insert(o.weights_.begin(), std::move(w));
  o.name_ = "yref:" + std::to_string(y.row) + "," + std::to_string(y.col) + ":" + base.name_;
  o.normalize();
  return o;
}

TermOrder TermOrder::elimination(const std::vector<int>& block, const TermOrder& inner) {
  TermOrder o = inner;
  std::vector<int> w(static_cast<std::size_t>(inner.nvars()), 0);
  std::string blk;
  for (int v : block) {
    if (v < 0 || v >= inner.nvars()) throw InputError("elimination block variable out of range");
    w[static_cast<std::size_t>(v)] = 1;
    blk += (blk.empty() ? "" : ",") + std::to_string(v);
  }
  o.weights_.insert(o.weights_.begin(), std::move(w));
  o.name_ = "elim:" + blk + ":" + inner.name_;
  o.normalize();
  return o;
}

// A trailing weight vector supported on one variable is the same as putting
// that variable first in the lex tie-break.
void TermOrder::normalize() {
  while (!weights_.empty()) {
    const auto& w = weights_.back();
    int support = -1, count = 0;
    for (std::size_t v = 0; v < w.size(); ++v) {
      if (w[v] < 0) return;
      if (w[v] > 0) {
        ++count;
        support = static_cast<int>(v);
      }
    }
    if (count != 1) return;
    rank_ = promote(rank_, support);
    weights_.pop_back();
  }
}

std::string TermOrder::key() const {
  std::ostringstream os;
  os << n_ << "|";
  for (const auto& w : weights_) {
    for (int x : w) os << x << ",";
    os << "|";
  }
  for (int r : rank_) os << r << ",";
  return os.str();
}

TermOrder TermOrder::parse(std::string_view spec, int n) {
  const std::string s(spec);
  if (s == "diag") return diagonal_lex(n);
  if (s == "antidiag") return antidiagonal_lex(n);
  if (s == "col-lex") return col_lex(n);
  if (s == "deglex") return deg_diagonal(n);
  auto read_var = [&](const std::string& txt) {
    int a = 0, b = 0;
    char comma = 0;
    std::istringstream is(txt);
    if (!(is >> a >> comma >> b) || comma != ',' || !is.eof())
      throw InputError("bad variable '" + txt + "' in order spec '" + s + "' (expected row,col)");
    return ZVar{a, b};
  };
  if (s.rfind("tau:", 0) == 0) return tau(n, read_var(s.substr(4)));
  if (s.rfind("yref:", 0) == 0) {
    const auto colon = s.find(':', 5);
    if (colon == std::string::npos) throw InputError("order spec '" + s + "' needs yref:a,b:<base>");
    return y_refined(parse(s.substr(colon + 1), n), read_var(s.substr(5, colon - 5)));
  }
  throw InputError("unknown order spec '" + s + "' (diag, antidiag, col-lex, deglex, tau:a,b, yref:a,b:<base>)");
}

bool TermOrder::greater(const ZMono& a, const ZMono& b) const {
  for (const auto& w : weights_) {
    long wa = 0, wb = 0;
    for (std::size_t v = 0; v < w.size(); ++v) {
      wa += static_cast<long>(w[v]) * a[v];
      wb += static_cast<long>(w[v]) * b[v];
    }
    if (wa != wb) return wa > wb;
  }
  ZMono ra{}, rb{};
  for (std::size_t v = 0; v < rank_.size(); ++v) {
    ra[static_cast<std::size_t>(rank_[v])] = a[v];
    rb[static_cast<std::size_t>(rank_[v])] = b[v];
  }
  return std::memcmp(ra.data(), rb.data(), ra.size()) > 0;
}

// ---------------------------------------------------------------------------
// QPoly

QPoly QPoly::constant(int n, const mpz_class& c) {
  QPoly p(n);
  p.add_term(ZMono{}, c);
  return p;
}

QPoly QPoly::var(int n, int idx) {
  if (idx < 0 || idx > n * n) throw InputError("variable index out of range");
  QPoly p(n);
  ZMono m{};
  m[static_cast<std::size_t>(idx)] = 1;
  p.add_term(m, 1);
  return p;
}

bool QPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == ZMono{}); }

int QPoly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, zmono_degree(m));
  return d;
}

int QPoly::degree_in(int idx) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[static_cast<std::size_t>(idx)]));
  return d;
}

void QPoly::add_term(const ZMono& m, const mpz_class& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

QPoly QPoly::operator-() const {
  QPoly r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (n_ == 0) n_ = o.n_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (n_ == 0) n_ = o.n_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  QPoly r(a.n_ ? a.n_ : b.n_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      ZMono m;
      for (std::size_t v = 0; v < m.size(); ++v) m[v] = static_cast<std::uint8_t>(ma[v] + mb[v]);
      r.add_term(m, ca * cb);
    }
  return r;
}

ZMono QPoly::leading_monomial(const TermOrder& order) const {
  if (terms_.empty()) throw InputError("zero polynomial has no leading term");
  const ZMono* best = nullptr;
  for (const auto& [m, c] : terms_)
    if (!best || order.greater(m, *best)) best = &m;
  return *best;
}

const mpz_class& QPoly::leading_coefficient(const TermOrder& order) const {
  return terms_.at(leading_monomial(order));
}

QPoly QPoly::primitive(const TermOrder& order) const {
  if (terms_.empty()) return *this;
  mpz_class g = 0;
  for (const auto& [m, c] : terms_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (leading_coefficient(order) < 0) g = -g;
  QPoly r(*this);
  for (auto& [m, c] : r.terms_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return r;
}

std::string QPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<ZMono, mpz_class>> ts(terms_.rbegin(), terms_.rend());
  std::stable_sort(ts.begin(), ts.end(),
                   [](const auto& a, const auto& b) { return zmono_degree(a.first) > zmono_degree(b.first); });
  std::string out;
  bool first = true;
  for (const auto& [m, c] : ts) {
    const bool neg = c < 0;
    mpz_class a = abs(c);
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    const bool unit = m == ZMono{};
    if (unit)
      out += a.get_str();
    else {
      if (a != 1) out += a.get_str() + "*";
      out += zmono_to_string(n_, m);
    }
  }
  return out;
}

namespace {

struct PolyParser {
  std::string_view s;
  int n;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("polynomial parse error at column " + std::to_string(pos + 1) + ": " + what);
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char ch) {
    skip();
    if (pos < s.size() && s[pos] == ch) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char ch) {
    if (!eat(ch)) fail(std::string("expected '") + ch + "'");
  }
  std::string digits() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected a number");
    return std::string(s.substr(start, pos - start));
  }
  int small_int() {
    auto d = digits();
    if (d.size() > 3) fail("index too large");
    return std::stoi(d);
  }

  // factor ('*' factor)*
  std::pair<ZMono, mpz_class> term() {
    ZMono m{};
    mpz_class c = 1;
    do {
      skip();
      if (pos >= s.size()) fail("unexpected end of input");
      const char ch = s[pos];
      int idx = -1;
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        c *= mpz_class(digits());
        continue;
      }
      if (ch == 'z') {
        ++pos;
        expect('[');
        const int i = small_int();
        expect(',');
        const int j = small_int();
        expect(']');
        if (i < 1 || i > n || j < 1 || j > n) fail("z[" + std::to_string(i) + "," + std::to_string(j) + "] outside the grid");
        idx = zindex(n, i, j);
      } else if (ch == 't') {
        ++pos;
        idx = n * n;
      } else {
        fail(std::string("unexpected '") + ch + "'");
      }
      int e = 1;
      if (eat('^')) e = small_int();
      if (m[static_cast<std::size_t>(idx)] + e > 255) fail("exponent too large");
      m[static_cast<std::size_t>(idx)] = static_cast<std::uint8_t>(m[static_cast<std::size_t>(idx)] + e);
    } while (eat('*'));
    return {m, c};
  }

  QPoly parse() {
    QPoly p(n);
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    while (true) {
      auto [m, c] = term();
      p.add_term(m, neg ? mpz_class(-c) : c);
      skip();
      if (pos == s.size()) break;
      if (eat('+'))
        neg = false;
      else if (eat('-'))
        neg = true;
      else
        fail("expected '+' or '-'");
    }
    return p;
  }
};

}  // namespace

QPoly QPoly::parse(std::string_view text, int n) {
  check_grid(n);
  PolyParser pp{text, n};
  return pp.parse();
}

// ---------------------------------------------------------------------------
// Determinantal generators

namespace {

struct MinorMemo {
  int n;
  std::map<std::pair<unsigned, unsigned>, QPoly> memo;

  const QPoly& det(unsigned rows, unsigned cols) {
    auto key = std::make_pair(rows, cols);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    QPoly r(n);
    if (rows == 0) {
      r = QPoly::constant(n, 1);
    } else {
      const int r0 = __builtin_ctz(rows);
      int sign = 1;
      for (int c = 0; c < n; ++c) {
        if (!(cols & (1u << c))) continue;
        QPoly sub = QPoly::z(n, r0 + 1, c + 1) * det(rows & ~(1u << r0), cols & ~(1u << c));
        if (sign > 0)
          r += sub;
        else
          r -= sub;
        sign = -sign;
      }
    }
    return memo.emplace(key, std::move(r)).first->second;
  }
};

void subsets(int m, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int x = start; x <= m; ++x) {
    cur.push_back(x);
    subsets(m, k, x + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> subsets(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  subsets(m, k, 1, cur, out);
  return out;
}

unsigned mask_of(const std::vector<int>& xs) {
  unsigned m = 0;
  for (int x : xs) m |= 1u << (x - 1);
  return m;
}

std::vector<QPoly> rank_generators(int n, const std::vector<RankCondition>& conds) {
  check_grid(n);
  MinorMemo memo{n, {}};
  std::vector<QPoly> out;
  std::set<std::string> seen;
  const auto diag = TermOrder::diagonal_lex(n);
  for (const auto& rc : conds) {
    const int k = rc.rank + 1;
    if (k > std::min(rc.cell.row, rc.cell.col)) continue;
    for (const auto& rows : subsets(rc.cell.row, k))
      for (const auto& cols : subsets(rc.cell.col, k)) {
        const QPoly& d = memo.det(mask_of(rows), mask_of(cols));
        if (seen.insert(d.primitive(diag).to_string()).second) out.push_back(d);
      }
  }
  return out;
}

}  // namespace

QPoly minor(int n, const std::vector<int>& rows, const std::vector<int>& cols) {
  check_grid(n);
  if (rows.size() != cols.size()) throw InputError("minor needs as many rows as columns");
  for (int x : rows)
    if (x < 1 || x > n) throw InputError("minor row out of range");
  for (int x : cols)
    if (x < 1 || x > n) throw InputError("minor column out of range");
  const unsigned rm = mask_of(rows), cm = mask_of(cols);
  if (static_cast<std::size_t>(__builtin_popcount(rm)) != rows.size() ||
      static_cast<std::size_t>(__builtin_popcount(cm)) != cols.size())
    return QPoly(n);
  MinorMemo memo{n, {}};
  QPoly d = memo.det(rm, cm);
  // the memo expands in increasing index order; account for the caller's order
  auto parity = [](const std::vector<int>& xs) {
    int inv = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = i + 1; j < xs.size(); ++j)
        if (xs[i] > xs[j]) ++inv;
    return inv % 2;
  };
  if ((parity(rows) + parity(cols)) % 2) d = -d;
  return d;
}

std::vector<QPoly> fulton_generators(const Permutation& w) {
  std::vector<RankCondition> conds;
  for (const auto& c : essential_set(w)) conds.push_back({c, w.rank(c.row, c.col)});
  return rank_generators(w.size(), conds);
}

std::vector<QPoly> asm_ideal_generators(const Asm& a) { return rank_generators(a.size(), essential_rank_conditions(a)); }

// ---------------------------------------------------------------------------
// Buchberger engine. Monomials are stored in rank space, so the lex
// tie-break is a byte comparison.

namespace {

constexpr int kMaxWeights = 3;

struct IMono {
  ZMono e{};
  std::uint64_t mask = 0;
  std::array<std::int32_t, kMaxWeights> w{};
  std::int32_t deg = 0;
};

struct Term {
  IMono m;
  mpz_class c;
};

using Poly = std::vector<Term>;

struct Engine {
  int n;
  int nv;
  int nw;
  std::vector<int> rank;
  std::vector<std::vector<int>> wr;  // weights indexed by rank position

  explicit Engine(const TermOrder& o) : n(o.grid()), nv(o.nvars()), rank(o.rank()) {
    nw = static_cast<int>(o.weights().size());
    if (nw > kMaxWeights) throw InputError("term order has too many weight vectors");
    for (const auto& w : o.weights()) {
      std::vector<int> v(static_cast<std::size_t>(nv), 0);
      for (int x = 0; x < nv; ++x) v[static_cast<std::size_t>(rank[static_cast<std::size_t>(x)])] = w[static_cast<std::size_t>(x)];
      wr.push_back(std::move(v));
    }
  }

  void finish(IMono& m) const {
    m.mask = 0;
    m.deg = 0;
    for (int v = 0; v < nv; ++v)
      if (m.e[static_cast<std::size_t>(v)]) {
        m.mask |= std::uint64_t{1} << v;
        m.deg += m.e[static_cast<std::size_t>(v)];
      }
    for (int k = 0; k < nw; ++k) {
      std::int32_t s = 0;
      for (int v = 0; v < nv; ++v) s += wr[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)] * m.e[static_cast<std::size_t>(v)];
      m.w[static_cast<std::size_t>(k)] = s;
    }
  }

  int cmp(const IMono& a, const IMono& b) const {
    for (int k = 0; k < nw; ++k)
      if (a.w[static_cast<std::size_t>(k)] != b.w[static_cast<std::size_t>(k)])
        return a.w[static_cast<std::size_t>(k)] > b.w[static_cast<std::size_t>(k)] ? 1 : -1;
    return std::memcmp(a.e.data(), b.e.data(), static_cast<std::size_t>(nv));
  }

  static bool divides(const IMono& a, const IMono& b) {
    if (a.mask & ~b.mask) return false;
    for (std::size_t v = 0; v < a.e.size(); ++v)
      if (a.e[v] > b.e[v]) return false;
    return true;
  }

  IMono mul(const IMono& a, const IMono& b) const {
    IMono r;
    for (int v = 0; v < nv; ++v)
      r.e[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(a.e[static_cast<std::size_t>(v)] + b.e[static_cast<std::size_t>(v)]);
    r.mask = a.mask | b.mask;
    for (int k = 0; k < nw; ++k) r.w[static_cast<std::size_t>(k)] = a.w[static_cast<std::size_t>(k)] + b.w[static_cast<std::size_t>(k)];
    r.deg = a.deg + b.deg;
    return r;
  }

  IMono quot(const IMono& a, const IMono& b) const {
    IMono r;
    for (int v = 0; v < nv; ++v)
      r.e[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(a.e[static_cast<std::size_t>(v)] - b.e[static_cast<std::size_t>(v)]);
    finish(r);
    return r;
  }

  IMono lcm(const IMono& a, const IMono& b) const {
    IMono r;
    for (int v = 0; v < nv; ++v)
      r.e[static_cast<std::size_t>(v)] = std::max(a.e[static_cast<std::size_t>(v)], b.e[static_cast<std::size_t>(v)]);
    finish(r);
    return r;
  }

  Poly in(const QPoly& f) const {
    Poly p;
    p.reserve(f.terms().size());
    for (const auto& [m, c] : f.terms()) {
      Term t;
      for (int v = 0; v < nv; ++v) t.m.e[static_cast<std::size_t>(rank[static_cast<std::size_t>(v)])] = m[static_cast<std::size_t>(v)];
      for (int v = nv; v < kMaxZVars; ++v)
        if (m[static_cast<std::size_t>(v)]) throw InputError("polynomial uses a variable outside the ring");
      finish(t.m);
      t.c = c;
      p.push_back(std::move(t));
    }
    std::sort(p.begin(), p.end(), [this](const Term& a, const Term& b) { return cmp(a.m, b.m) > 0; });
    return p;
  }

  QPoly out(const Poly& p) const {
    QPoly f(n);
    for (const auto& t : p) {
      ZMono m{};
      for (int v = 0; v < nv; ++v) m[static_cast<std::size_t>(v)] = t.m.e[static_cast<std::size_t>(rank[static_cast<std::size_t>(v)])];
      f.add_term(m, t.c);
    }
    return f;
  }

  // a*p - c*m*g, where the leading terms cancel
  Poly combine(const mpz_class& a, const Poly& p, const mpz_class& c, const IMono& m, const Poly& g,
               std::size_t from = 0) const {
    Poly r;
    r.reserve(p.size() - from + g.size());
    std::size_t i = from, j = 0;
    const bool scale = a != 1;
    while (i < p.size() || j < g.size()) {
      if (j == g.size()) {
        r.push_back(p[i]);
        if (scale) r.back().c *= a;
        ++i;
        continue;
      }
      IMono gm = mul(m, g[j].m);
      const int s = i == p.size() ? -1 : cmp(p[i].m, gm);
      if (s > 0) {
        r.push_back(p[i]);
        if (scale) r.back().c *= a;
        ++i;
      } else if (s < 0) {
        r.push_back(Term{gm, -c * g[j].c});
        ++j;
      } else {
        mpz_class v = scale ? mpz_class(a * p[i].c) : p[i].c;
        v -= c * g[j].c;
        if (v != 0) r.push_back(Term{gm, std::move(v)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  static void make_primitive(Poly& p) {
    if (p.empty()) return;
    mpz_class g = 0;
    for (const auto& t : p) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
      if (g == 1) break;
    }
    if (p.front().c < 0) g = -g;
    if (g == 1) return;
    for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
  }

  // Normal form of p modulo the polys listed in `basis`. With full = false only
  // the leading term is reduced.
  Poly nf(Poly p, const std::vector<const Poly*>& basis, bool full) const {
    Poly r;
    std::size_t s = 0, steps = 0;
    while (s < p.size()) {
      const IMono& lead = p[s].m;
      const Poly* div = nullptr;
      for (const Poly* g : basis)
        if (divides(g->front().m, lead)) {
          div = g;
          break;
        }
      if (!div) {
        if (!full) return Poly(p.begin() + static_cast<std::ptrdiff_t>(s), p.end());
        r.push_back(std::move(p[s]));
        ++s;
        continue;
      }
      mpz_class d;
      mpz_gcd(d.get_mpz_t(), div->front().c.get_mpz_t(), p[s].c.get_mpz_t());
      mpz_class a = div->front().c / d, c = p[s].c / d;
      if (a < 0) {
        a = -a;
        c = -c;
      }
      IMono m = quot(lead, div->front().m);
      p = combine(a, p, c, m, *div, s);
      s = 0;
      if (a != 1)
        for (auto& t : r) t.c *= a;
      if (++steps % 16 == 0) {
        // keep coefficients small: divide p and r by their common content
        mpz_class g = 0;
        for (const auto& t : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
        for (const auto& t : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
        if (g > 1) {
          for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
          for (auto& t : r) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
        }
      }
    }
    if (!full) return {};
    make_primitive(r);
    return r;
  }

  Poly spoly(const Poly& f, const Poly& g) const {
    IMono l = lcm(f.front().m, g.front().m);
    mpz_class d;
    mpz_gcd(d.get_mpz_t(), f.front().c.get_mpz_t(), g.front().c.get_mpz_t());
    mpz_class a = g.front().c / d, c = f.front().c / d;
    // a * (l/lf) f - c * (l/lg) g
    IMono uf = quot(l, f.front().m);
    Poly fs;
    fs.reserve(f.size());
    for (const auto& t : f) fs.push_back(Term{mul(uf, t.m), t.c});
    if (a < 0) {
      a = -a;
      c = -c;
    }
    return combine(a, fs, c, quot(l, g.front().m), g);
  }
};

struct Pair {
  int i, j;
  IMono lcm;
  int sugar;
};

class Buchberger {
public:
  Buchberger(const Engine& e, GbStats* stats) : e_(e), stats_(stats) {}

  std::vector<Poly> run(std::vector<Poly> inputs) {
    std::sort(inputs.begin(), inputs.end(), [this](const Poly& a, const Poly& b) {
      return e_.cmp(a.front().m, b.front().m) < 0;
    });
    for (auto& f : inputs) {
      Poly h = e_.nf(std::move(f), active(), true);
      if (h.empty()) continue;
      if (h.front().m.deg == 0) return unit();
      const int s = sugar_of(h);
      add(std::move(h), s);
    }
    while (!pairs_.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k) {
        const auto& p = pairs_[k];
        const auto& b = pairs_[best];
        if (p.sugar < b.sugar || (p.sugar == b.sugar && e_.cmp(p.lcm, b.lcm) < 0)) best = k;
      }
      Pair pr = pairs_[best];
      pairs_[best] = pairs_.back();
      pairs_.pop_back();
      if (stats_) ++stats_->pairs_reduced;
      Poly h = e_.nf(e_.spoly(polys_[static_cast<std::size_t>(pr.i)], polys_[static_cast<std::size_t>(pr.j)]), active(), true);
      if (h.empty()) {
        if (stats_) ++stats_->zero_reductions;
        continue;
      }
      if (h.front().m.deg == 0) return unit();
      add(std::move(h), std::max(pr.sugar, sugar_of(h)));
    }
    // interreduce the minimal basis
    std::vector<int> ids(in_g_.begin(), in_g_.end());
    std::vector<Poly> out;
    for (int id : ids) {
      std::vector<const Poly*> others;
      for (int o : ids)
        if (o != id) others.push_back(&polys_[static_cast<std::size_t>(o)]);
      out.push_back(reduce_tail(polys_[static_cast<std::size_t>(id)], others));
    }
    std::sort(out.begin(), out.end(), [this](const Poly& a, const Poly& b) { return e_.cmp(a.front().m, b.front().m) > 0; });
    return out;
  }

private:
  // The lead of a minimal basis element is not divisible by any other lead,
  // so full reduction only touches the tail.
  Poly reduce_tail(const Poly& g, const std::vector<const Poly*>& others) const { return e_.nf(g, others, true); }

  std::vector<Poly> unit() const {
    Poly one{Term{IMono{}, 1}};
    return {one};
  }

  int sugar_of(const Poly& p) const {
    int s = 0;
    for (const auto& t : p) s = std::max(s, static_cast<int>(t.m.deg));
    return s;
  }

  std::vector<const Poly*> active() const {
    std::vector<const Poly*> a;
    a.reserve(in_g_.size());
    for (int id : in_g_) a.push_back(&polys_[static_cast<std::size_t>(id)]);
    return a;
  }

  static bool coprime(const IMono& a, const IMono& b) {
    if (!(a.mask & b.mask)) return true;
    return false;
  }

  bool lcm_eq(const IMono& a, const IMono& b) const { return a.e == b.e; }

  // Gebauer-Moeller update with the new element h.
  void add(Poly h, int sugar) {
    const int hid = static_cast<int>(polys_.size());
    const IMono lh = h.front().m;
    polys_.push_back(std::move(h));
    sugars_.push_back(sugar);

    auto make_pair = [&](int g) {
      const IMono& lg = polys_[static_cast<std::size_t>(g)].front().m;
      IMono l = e_.lcm(lh, lg);
      const int s = std::max(sugar + (l.deg - lh.deg), sugars_[static_cast<std::size_t>(g)] + (l.deg - lg.deg));
      return Pair{g, hid, l, s};
    };
    std::vector<Pair> C;
    for (int g : in_g_) C.push_back(make_pair(g));
    if (stats_) stats_->pairs_considered += C.size();

    // chain criterion among the new pairs
    std::vector<Pair> D;
    for (std::size_t k = 0; k < C.size(); ++k) {
      const Pair& p = C[k];
      const IMono& lg = polys_[static_cast<std::size_t>(p.i)].front().m;
      bool keep = coprime(lh, lg);
      if (!keep) {
        keep = true;
        for (std::size_t q = k + 1; q < C.size() && keep; ++q)
          if (Engine::divides(C[q].lcm, p.lcm)) keep = false;
        for (const auto& dp : D)
          if (keep && Engine::divides(dp.lcm, p.lcm)) keep = false;
      }
      if (keep) D.push_back(p);
    }
    // product criterion
    std::vector<Pair> E;
    for (auto& p : D)
      if (!coprime(lh, polys_[static_cast<std::size_t>(p.i)].front().m)) E.push_back(p);

    // old pairs made redundant by h
    std::vector<Pair> B;
    for (auto& p : pairs_) {
      const IMono& li = polys_[static_cast<std::size_t>(p.i)].front().m;
      const IMono& lj = polys_[static_cast<std::size_t>(p.j)].front().m;
      const bool drop = Engine::divides(lh, p.lcm) && !lcm_eq(e_.lcm(li, lh), p.lcm) && !lcm_eq(e_.lcm(lh, lj), p.lcm);
      if (!drop) B.push_back(p);
    }
    for (auto& p : E) B.push_back(p);
    pairs_ = std::move(B);

    std::vector<int> G;
    for (int g : in_g_)
      if (!Engine::divides(lh, polys_[static_cast<std::size_t>(g)].front().m)) G.push_back(g);
    G.push_back(hid);
    in_g_ = std::move(G);
  }

  const Engine& e_;
  GbStats* stats_;
  std::vector<Poly> polys_;
  std::vector<int> sugars_;
  std::vector<int> in_g_;
  std::vector<Pair> pairs_;
};

std::mutex g_provider_mu;
GbProvider g_provider;

std::vector<QPoly> compute_gb(const std::vector<QPoly>& gens, const TermOrder& order, GbStats* stats) {
  Engine e(order);
  std::vector<Poly> in;
  for (const auto& f : gens)
    if (!f.is_zero()) in.push_back(e.in(f));
  if (in.empty()) return {};
  Buchberger bb(e, stats);
  std::vector<QPoly> out;
  for (const auto& p : bb.run(std::move(in))) out.push_back(e.out(p));
  return out;
}

}  // namespace

void set_gb_provider(GbProvider p) {
  std::lock_guard<std::mutex> lk(g_provider_mu);
  g_provider = std::move(p);
}

std::vector<QPoly> buchberger(const std::vector<QPoly>& gens, const TermOrder& order, GbStats* stats) {
  GbProvider p;
  {
    std::lock_guard<std::mutex> lk(g_provider_mu);
    p = g_provider;
  }
  if (!p || stats) return compute_gb(gens, order, stats);
  return p(gens, order, [&] { return compute_gb(gens, order, nullptr); });
}

QPoly reduce(const QPoly& f, const std::vector<QPoly>& gb, const TermOrder& order) {
  Engine e(order);
  std::vector<Poly> basis;
  for (const auto& g : gb)
    if (!g.is_zero()) basis.push_back(e.in(g));
  std::vector<const Poly*> ptrs;
  for (const auto& b : basis) ptrs.push_back(&b);
  return e.out(e.nf(e.in(f), ptrs, true));
}

bool is_groebner_basis(const std::vector<QPoly>& gens, const TermOrder& order) {
  Engine e(order);
  std::vector<Poly> basis;
  for (const auto& g : gens)
    if (!g.is_zero()) basis.push_back(e.in(g));
  std::vector<const Poly*> ptrs;
  for (const auto& b : basis) ptrs.push_back(&b);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!e.nf(e.spoly(basis[i], basis[j]), ptrs, false).empty()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Ideals

Ideal::Ideal(int n, std::vector<QPoly> gens) : n_(n) {
  check_grid(n);
  for (auto& g : gens)
    if (!g.is_zero()) gens_.push_back(std::move(g));
}

Ideal Ideal::schubert(const Permutation& w) { return Ideal(w.size(), fulton_generators(w)); }
Ideal Ideal::of_asm(const Asm& a) { return Ideal(a.size(), asm_ideal_generators(a)); }
Ideal Ideal::unit(int n) { return Ideal(n, {QPoly::constant(n, 1)}); }

const std::vector<QPoly>& Ideal::gb(const TermOrder& order) const {
  if (order.grid() != n_) throw InputError("term order and ideal live on different grids");
  const std::string k = order.key();
  auto it = gb_cache_.find(k);
  if (it != gb_cache_.end()) return it->second;
  return gb_cache_.emplace(k, buchberger(gens_, order)).first->second;
}

bool Ideal::is_unit() const {
  const auto& g = gb(TermOrder::deg_diagonal(n_));
  return g.size() == 1 && g.front().is_constant();
}

MonomialIdeal initial_ideal(const std::vector<QPoly>& gb, const TermOrder& order) {
  std::vector<ZMono> lead;
  for (const auto& g : gb) lead.push_back(g.leading_monomial(order));
  return MonomialIdeal(order.grid(), std::move(lead));
}

MonomialIdeal initial_ideal(const Ideal& i, const TermOrder& order) { return initial_ideal(i.gb(order), order); }

bool ideal_equal(const Ideal& a, const Ideal& b, const TermOrder& order) { return a.gb(order) == b.gb(order); }

Ideal sum_ideals(const Ideal& a, const Ideal& b) {
  if (a.grid() != b.grid()) throw InputError("ideals live on different grids");
  std::vector<QPoly> g = a.generators();
  g.insert(g.end(), b.generators().begin(), b.generators().end());
  return Ideal(a.grid(), std::move(g));
}

Ideal intersect_ideals(const Ideal& a, const Ideal& b) {
  if (a.grid() != b.grid()) throw InputError("ideals live on different grids");
  const int n = a.grid();
  if (a.generators().empty() || b.generators().empty()) return Ideal(n, {});
  const int t = n * n;
  const QPoly tv = QPoly::var(n, t);
  const QPoly one_minus_t = QPoly::constant(n, 1) - tv;
  std::vector<QPoly> gens;
  for (const auto& f : a.generators()) gens.push_back(tv * f);
  for (const auto& g : b.generators()) gens.push_back(one_minus_t * g);
  const auto inner = TermOrder::deg_diagonal(n);
  std::vector<QPoly> kept;
  for (auto& g : buchberger(gens, TermOrder::elimination({t}, inner)))
    if (!g.involves(t)) kept.push_back(std::move(g));
  return Ideal(n, std::move(kept));
}

namespace {

void require_y_first(const TermOrder& order, ZVar y) {
  const int idx = zindex(order.grid(), y.row, y.col);
  bool ok;
  if (order.weights().empty()) {
    ok = order.rank()[static_cast<std::size_t>(idx)] == 0;
  } else {
    const auto& w = order.weights().front();
    ok = w[static_cast<std::size_t>(idx)] > 0;
    for (std::size_t v = 0; v < w.size() && ok; ++v)
      if (static_cast<int>(v) != idx && w[v] != 0) ok = false;
  }
  if (!ok) throw InputError("order '" + order.name() + "' is not compatible with y-degree");
}

}  // namespace

bool is_linear_in_y(const Ideal& i, ZVar y, const TermOrder& order) {
  check_var(i.grid(), y);
  const int idx = zindex(i.grid(), y.row, y.col);
  for (const auto& g : i.gb(order))
    if (g.degree_in(idx) >= 2) return false;
  return true;
}

GvdSplit gvd_split(const Ideal& i, ZVar y, const TermOrder& order) {
  check_var(i.grid(), y);
  require_y_first(order, y);
  const int n = i.grid();
  const std::size_t idx = static_cast<std::size_t>(zindex(n, y.row, y.col));
  GvdSplit out;
  out.gb = i.gb(order);
  std::vector<QPoly> cg, ng;
  for (const auto& g : out.gb) {
    const int d = g.degree_in(static_cast<int>(idx));
    if (d >= 2) throw InvariantViolation("Groebner basis is not linear in y: " + g.to_string());
    if (d == 0) {
      cg.push_back(g);
      ng.push_back(g);
      continue;
    }
    QPoly q(n);
    for (const auto& [m, c] : g.terms())
      if (m[idx] == 1) {
        ZMono mm = m;
        mm[idx] = 0;
        q.add_term(mm, c);
      }
    cg.push_back(std::move(q));
  }
  out.C = Ideal(n, std::move(cg));
  out.N = Ideal(n, std::move(ng));
  return out;
}

}  // namespace bumpless
