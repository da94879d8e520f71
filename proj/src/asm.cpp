#include "bumpless/asm.hpp"

#include <algorithm>
#include <sstream>

namespace bumpless {

namespace {

std::size_t at(int n, int a, int b) { return static_cast<std::size_t>(a * (n + 1) + b); }

bool alternates(const std::vector<int>& line) {
  int expect = 1;
  int sum = 0;
  for (int v : line) {
    if (v == 0) continue;
    if (v != expect) return false;
    sum += v;
    expect = -expect;
  }
  return sum == 1;
}

CornerSumMatrix combine(const std::vector<CornerSumMatrix>& ms, bool take_min) {
  if (ms.empty()) throw InputError("lattice operation on an empty set");
  const int n = ms.front().size();
  std::vector<int> vals = ms.front().values();
  for (const auto& m : ms) {
    if (m.size() != n) throw InputError("lattice operation across different n");
    for (std::size_t k = 0; k < vals.size(); ++k)
      vals[k] = take_min ? std::min(vals[k], m.values()[k]) : std::max(vals[k], m.values()[k]);
  }
  return CornerSumMatrix(n, std::move(vals));
}

}  // namespace

CornerSumMatrix::CornerSumMatrix(int n, std::vector<int> values) : n_(n), values_(std::move(values)) {
  if (n < 1 || values_.size() != static_cast<std::size_t>((n + 1) * (n + 1)))
    throw InputError("corner-sum grid has the wrong shape");
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      const int v = values_[at(n, a, b)];
      if ((a == 0 || b == 0) && v != 0) throw InputError("corner-sum grid must vanish on row/column 0");
      if (a > 0) {
        const int d = v - values_[at(n, a - 1, b)];
        if (d != 0 && d != 1) throw InputError("corner sums must increase by 0 or 1 down each column");
      }
      if (b > 0) {
        const int d = v - values_[at(n, a, b - 1)];
        if (d != 0 && d != 1) throw InputError("corner sums must increase by 0 or 1 along each row");
      }
    }
  if (values_[at(n, n, n)] != n) throw InputError("corner sum at (n,n) must equal n");
}

Asm::Asm(int n, std::vector<int> entries) : n_(n), entries_(std::move(entries)) {
  if (n < 1 || entries_.size() != static_cast<std::size_t>(n * n)) throw InputError("ASM has the wrong shape");
  for (int i = 1; i <= n; ++i) {
    std::vector<int> row, col;
    for (int j = 1; j <= n; ++j) {
      row.push_back((*this)(i, j));
      col.push_back((*this)(j, i));
    }
    if (!alternates(row)) throw InputError("row " + std::to_string(i) + " violates the ASM axioms");
    if (!alternates(col)) throw InputError("column " + std::to_string(i) + " violates the ASM axioms");
  }
}

Asm Asm::from_permutation(const Permutation& w) {
  const int n = w.size();
  std::vector<int> e(static_cast<std::size_t>(n * n), 0);
  for (int i = 1; i <= n; ++i) e[static_cast<std::size_t>((i - 1) * n + w(i) - 1)] = 1;
  return Asm(n, std::move(e));
}

Asm Asm::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<int> entries;
  int rows = 0;
  int width = -1;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<int> row;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        row.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw InputError("");
      } catch (const std::exception&) {
        throw InputError("line " + std::to_string(rows + 1) + ": bad ASM entry '" + tok + "'");
      }
    }
    if (row.empty()) continue;
    if (width >= 0 && static_cast<int>(row.size()) != width)
      throw InputError("line " + std::to_string(rows + 1) + ": ragged ASM row");
    width = static_cast<int>(row.size());
    entries.insert(entries.end(), row.begin(), row.end());
    ++rows;
  }
  if (rows != width) throw InputError("ASM must be square");
  return Asm(rows, std::move(entries));
}

bool Asm::is_permutation() const {
  return std::none_of(entries_.begin(), entries_.end(), [](int v) { return v < 0; });
}

Permutation Asm::to_permutation() const {
  if (!is_permutation()) throw InputError("ASM has a -1 entry; not a permutation matrix");
  std::vector<int> w(static_cast<std::size_t>(n_));
  for (int i = 1; i <= n_; ++i)
    for (int j = 1; j <= n_; ++j)
      if ((*this)(i, j) == 1) w[static_cast<std::size_t>(i - 1)] = j;
  return Permutation(std::move(w));
}

std::string Asm::to_string() const {
  std::string out;
  for (int i = 1; i <= n_; ++i) {
    for (int j = 1; j <= n_; ++j) {
      if (j > 1) out += ' ';
      out += std::to_string((*this)(i, j));
    }
    out += '\n';
  }
  return out;
}

CornerSumMatrix corner_sums(const Asm& a) {
  const int n = a.size();
  std::vector<int> v(static_cast<std::size_t>((n + 1) * (n + 1)), 0);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      v[at(n, i, j)] = v[at(n, i - 1, j)] + v[at(n, i, j - 1)] - v[at(n, i - 1, j - 1)] + a(i, j);
  return CornerSumMatrix(n, std::move(v));
}

Asm asm_from_corner_sums(const CornerSumMatrix& m) {
  const int n = m.size();
  std::vector<int> e(static_cast<std::size_t>(n * n));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      e[static_cast<std::size_t>((i - 1) * n + j - 1)] = m(i, j) - m(i - 1, j) - m(i, j - 1) + m(i - 1, j - 1);
  return Asm(n, std::move(e));
}

bool asm_leq(const Asm& a, const Asm& b) {
  if (a.size() != b.size()) throw InputError("ASM comparison across different n");
  const auto ra = corner_sums(a);
  const auto rb = corner_sums(b);
  for (std::size_t k = 0; k < ra.values().size(); ++k)
    if (ra.values()[k] < rb.values()[k]) return false;
  return true;
}

Asm join(const std::vector<Asm>& as) {
  std::vector<CornerSumMatrix> ms;
  for (const auto& a : as) ms.push_back(corner_sums(a));
  return asm_from_corner_sums(combine(ms, true));
}

Asm meet(const std::vector<Asm>& as) {
  std::vector<CornerSumMatrix> ms;
  for (const auto& a : as) ms.push_back(corner_sums(a));
  return asm_from_corner_sums(combine(ms, false));
}

Asm join(const std::vector<Permutation>& ws) {
  std::vector<Asm> as;
  for (const auto& w : ws) as.push_back(Asm::from_permutation(w));
  return join(as);
}

std::set<Permutation> perm_set(const Asm& a) {
  const auto ra = corner_sums(a);
  std::vector<Permutation> above;
  for (const auto& w : SymmetricGroup(a.size())) {
    const auto rw = w.rank_table();
    bool ok = true;
    for (std::size_t k = 0; k < rw.size() && ok; ++k) ok = rw[k] <= ra.values()[k];
    if (ok) above.push_back(w);
  }
  std::set<Permutation> minimal;
  for (const auto& w : above) {
    bool is_min = true;
    for (const auto& v : above)
      if (v != w && bruhat_leq(v, w)) {
        is_min = false;
        break;
      }
    if (is_min) minimal.insert(w);
  }
  return minimal;
}

int degree_of(const Asm& a) {
  int best = -1;
  for (const auto& w : perm_set(a))
    if (best < 0 || w.length() < best) best = w.length();
  return best;
}

bool is_equidimensional(const Asm& a) {
  const auto ps = perm_set(a);
  const int d = degree_of(a);
  return std::all_of(ps.begin(), ps.end(), [d](const Permutation& w) { return w.length() == d; });
}

std::vector<RankCondition> essential_rank_conditions(const Asm& a) {
  const int n = a.size();
  const auto rk = corner_sums(a);
  std::vector<RankCondition> out;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const int r = rk(i, j);
      if (r >= std::min(i, j)) continue;
      if (i < n && rk(i + 1, j) == r) continue;
      if (j < n && rk(i, j + 1) == r) continue;
      if (rk(i - 1, j) + 1 == r) continue;
      if (rk(i, j - 1) + 1 == r) continue;
      out.push_back({{i, j}, r});
    }
  return out;
}

std::set<Permutation> bigrassmannian_join_decomposition(const Asm& a) {
  std::set<Permutation> out;
  for (const auto& c : essential_rank_conditions(a))
    out.insert(bigrassmannian(a.size(), c.cell.row, c.cell.col, c.rank));
  return out;
}

namespace {

// colsum[j] in {0,1}: partial column sums so far.
void extend_rows(int n, int row, std::vector<int>& colsum, std::vector<int>& entries, std::vector<Asm>& out) {
  if (row == n) {
    if (std::all_of(colsum.begin(), colsum.end(), [](int s) { return s == 1; })) out.emplace_back(n, entries);
    return;
  }
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  // Depth-first over the row, tracking the row partial sum.
  auto fill = [&](auto&& self, int col, int rowsum) -> void {
    if (col == n) {
      if (rowsum != 1) return;
      std::vector<int> saved = colsum;
      for (int j = 0; j < n; ++j) colsum[static_cast<std::size_t>(j)] += cur[static_cast<std::size_t>(j)];
      entries.insert(entries.end(), cur.begin(), cur.end());
      extend_rows(n, row + 1, colsum, entries, out);
      entries.resize(entries.size() - static_cast<std::size_t>(n));
      colsum = std::move(saved);
      return;
    }
    const int cs = colsum[static_cast<std::size_t>(col)];
    for (int v : {0, 1, -1}) {
      const int nr = rowsum + v;
      const int nc = cs + v;
      if (nr < 0 || nr > 1 || nc < 0 || nc > 1) continue;
      cur[static_cast<std::size_t>(col)] = v;
      self(self, col + 1, nr);
    }
    cur[static_cast<std::size_t>(col)] = 0;
  };
  fill(fill, 0, 0);
}

}  // namespace

std::vector<Asm> all_asms(int n) {
  std::vector<int> colsum(static_cast<std::size_t>(n), 0);
  std::vector<int> entries;
  std::vector<Asm> out;
  extend_rows(n, 0, colsum, entries, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bumpless
