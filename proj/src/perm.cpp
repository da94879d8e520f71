#include "bumpless/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bumpless {

std::string to_string(const Cell& c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

std::string to_string(const Diagram& d) {
  std::string out = "{";
  bool first = true;
  for (const auto& c : d) {
    if (!first) out += ",";
    out += to_string(c);
    first = false;
  }
  return out + "}";
}

Permutation::Permutation(std::vector<int> word) : word_(std::move(word)) {
  const int n = size();
  std::vector<bool> seen(word_.size(), false);
  for (int v : word_) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
      throw InputError("not a permutation of [" + std::to_string(n) + "]");
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> w(static_cast<std::size_t>(n));
  std::iota(w.begin(), w.end(), 1);
  return Permutation(std::move(w));
}

Permutation Permutation::longest(int n) {
  std::vector<int> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = n - i;
  return Permutation(std::move(w));
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<int> word;
  if (text.find(',') != std::string_view::npos) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto next = text.find(',', pos);
      if (next == std::string_view::npos) next = text.size();
      auto tok = text.substr(pos, next - pos);
      if (tok.empty()) throw InputError("empty entry in permutation '" + std::string(text) + "'");
      int v = 0;
      for (char ch : tok) {
        if (ch < '0' || ch > '9')
          throw InputError("bad character '" + std::string(1, ch) + "' in permutation '" + std::string(text) + "'");
        v = v * 10 + (ch - '0');
      }
      word.push_back(v);
      pos = next + 1;
    }
  } else {
    for (char ch : text) {
      if (ch < '1' || ch > '9')
        throw InputError("bad character '" + std::string(1, ch) + "' in permutation '" + std::string(text) + "'");
      word.push_back(ch - '0');
    }
  }
  if (word.empty()) throw InputError("empty permutation");
  return Permutation(std::move(word));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(word_.size());
  for (int i = 1; i <= size(); ++i) inv[static_cast<std::size_t>((*this)(i) - 1)] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw InputError("composing permutations of different sizes");
  std::vector<int> out(word_.size());
  for (int i = 1; i <= size(); ++i) out[static_cast<std::size_t>(i - 1)] = (*this)(other(i));
  return Permutation(std::move(out));
}

Permutation Permutation::times_transposition(int i, int j) const {
  if (i < 1 || j < 1 || i > size() || j > size()) throw InputError("transposition index out of range");
  auto w = word_;
  std::swap(w[static_cast<std::size_t>(i - 1)], w[static_cast<std::size_t>(j - 1)]);
  return Permutation(std::move(w));
}

Permutation Permutation::extended(int m) const {
  auto w = word_;
  for (int v = size() + 1; v <= m; ++v) w.push_back(v);
  return Permutation(std::move(w));
}

int Permutation::length() const {
  int inv = 0;
  for (std::size_t i = 0; i < word_.size(); ++i)
    for (std::size_t j = i + 1; j < word_.size(); ++j)
      if (word_[i] > word_[j]) ++inv;
  return inv;
}

int Permutation::rank(int a, int b) const {
  if (a < 0 || b < 0 || a > size() || b > size()) throw InputError("rank index out of range");
  int r = 0;
  for (int i = 1; i <= a; ++i)
    if ((*this)(i) <= b) ++r;
  return r;
}

std::vector<int> Permutation::rank_table() const {
  const int n = size();
  std::vector<int> rk(static_cast<std::size_t>((n + 1) * (n + 1)), 0);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      const int here = ((*this)(a) == b) ? 1 : 0;
      rk[static_cast<std::size_t>(a * (n + 1) + b)] = rk[static_cast<std::size_t>((a - 1) * (n + 1) + b)] +
                                                        rk[static_cast<std::size_t>(a * (n + 1) + b - 1)] -
                                                        rk[static_cast<std::size_t>((a - 1) * (n + 1) + b - 1)] + here;
    }
  return rk;
}

std::string Permutation::to_string() const {
  std::string out;
  const bool commas = size() >= 10;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (commas && i > 0) out += ',';
    out += std::to_string(word_[i]);
  }
  return out;
}

int coxeter_length(const Permutation& w) { return w.length(); }

int rank_function(const Permutation& w, int a, int b) { return w.rank(a, b); }

Diagram rothe_diagram(const Permutation& w) {
  const auto inv = w.inverse();
  Diagram d;
  for (int i = 1; i <= w.size(); ++i)
    for (int j = 1; j <= w.size(); ++j)
      if (w(i) > j && inv(j) > i) d.insert({i, j});
  return d;
}

Diagram essential_set(const Permutation& w) {
  const auto d = rothe_diagram(w);
  Diagram ess;
  for (const auto& c : d)
    if (!d.count({c.row + 1, c.col}) && !d.count({c.row, c.col + 1})) ess.insert(c);
  return ess;
}

Diagram lower_outside_corners(const Permutation& w) {
  const auto d = rothe_diagram(w);
  Diagram out;
  for (const auto& c : d) {
    bool maximal = true;
    for (const auto& o : d)
      if (o != c && o.row >= c.row && o.col >= c.col) {
        maximal = false;
        break;
      }
    if (maximal) out.insert(c);
  }
  return out;
}

bool bruhat_leq(const Permutation& u, const Permutation& w) {
  if (u.size() != w.size()) throw InputError("Bruhat comparison across different n");
  const auto ru = u.rank_table();
  const auto rw = w.rank_table();
  for (std::size_t k = 0; k < ru.size(); ++k)
    if (ru[k] < rw[k]) return false;
  return true;
}

Permutation bigrassmannian(int n, int a, int b, int r) {
  if (a < 1 || b < 1 || a > n || b > n || r < 0 || r >= std::min(a, b) || a + b - r > n)
    throw InputError("bigrassmannian parameters out of range: n=" + std::to_string(n) + " a=" + std::to_string(a) +
                     " b=" + std::to_string(b) + " r=" + std::to_string(r));
  // Block rows: identity r, then a-r rows into columns b+1.., then b-r rows
  // into columns r+1..b, then the remaining identity block.
  std::vector<int> w;
  for (int i = 1; i <= r; ++i) w.push_back(i);
  for (int i = 1; i <= a - r; ++i) w.push_back(b + i);
  for (int i = 1; i <= b - r; ++i) w.push_back(r + i);
  for (int v = a + b - r + 1; v <= n; ++v) w.push_back(v);
  return Permutation(std::move(w));
}

Permutation apply_transposition(const Permutation& w, int i, int j) {
  if (!(1 <= i && i < j && j <= w.size())) throw InputError("transposition requires 1 <= i < j <= n");
  return w.times_transposition(i, j);
}

std::set<Permutation> bruhat_covers(const Permutation& w) {
  std::set<Permutation> out;
  const int len = w.length();
  for (int i = 1; i <= w.size(); ++i)
    for (int j = i + 1; j <= w.size(); ++j) {
      auto v = w.times_transposition(i, j);
      if (v.length() == len + 1) out.insert(std::move(v));
    }
  return out;
}

SymmetricGroup::iterator::iterator(int n, bool end) : current_(Permutation::identity(n)), done_(end) {}

SymmetricGroup::iterator& SymmetricGroup::iterator::operator++() {
  auto w = current_.word();
  if (std::next_permutation(w.begin(), w.end()))
    current_ = Permutation(std::move(w));
  else
    done_ = true;
  return *this;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<Permutation> out;
  for (const auto& w : SymmetricGroup(n)) out.push_back(w);
  return out;
}

}  // namespace bumpless
