#include "permgrid/gridding.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>

#include "permgrid/error.hpp"

namespace permgrid {

// ---------------------------------------------------------------- GridMatrix

GridMatrix::GridMatrix(std::size_t cols, std::size_t rows) : t_(cols), u_(rows), cells_(cols * rows, 0) {
  if (cols == 0 || rows == 0) throw PreconditionError("grid matrix must be at least 1x1");
}

std::size_t GridMatrix::index(std::size_t k, std::size_t l) const {
  if (k < 1 || k > t_ || l < 1 || l > u_) throw PreconditionError("grid matrix index out of range");
  return (k - 1) * u_ + (l - 1);
}

void GridMatrix::set(std::size_t k, std::size_t l, int value) {
  if (value < -1 || value > 1) throw PreconditionError("grid matrix entries must be -1, 0 or 1");
  cells_[index(k, l)] = value;
}

std::size_t GridMatrix::sole_row(std::size_t k) const {
  std::size_t found = 0;
  for (std::size_t l = 1; l <= u_; ++l) {
    if (at(k, l) != 0) {
      if (found) return 0;
      found = l;
    }
  }
  return found;
}

GridMatrix GridMatrix::from_rows_top_first(const std::vector<std::vector<int>>& rows_top_first) {
  if (rows_top_first.empty() || rows_top_first.front().empty()) throw PreconditionError("empty grid matrix");
  const std::size_t u = rows_top_first.size();
  const std::size_t t = rows_top_first.front().size();
  GridMatrix m(t, u);
  for (std::size_t r = 0; r < u; ++r) {
    if (rows_top_first[r].size() != t) throw PreconditionError("ragged grid matrix");
    for (std::size_t c = 0; c < t; ++c) m.set(c + 1, u - r, rows_top_first[r][c]);
  }
  return m;
}

GridMatrix GridMatrix::parse(std::string_view text) {
  std::vector<std::vector<int>> rows;
  std::string s(text);
  std::stringstream all(s);
  std::string line;
  while (std::getline(all, line, ';')) {
    std::stringstream ls(line);
    std::vector<int> row;
    std::string tok;
    while (ls >> tok) {
      if (tok != "1" && tok != "-1" && tok != "0" && tok != "+1")
        throw ParseError("invalid matrix entry '" + tok + "' (expected -1, 0 or 1)");
      row.push_back(std::stoi(tok));
    }
    if (row.empty()) throw ParseError("empty row in matrix '" + s + "'");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty matrix");
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw ParseError("matrix rows have different lengths: '" + s + "'");
  return from_rows_top_first(rows);
}

std::vector<std::vector<int>> GridMatrix::rows_top_first() const {
  std::vector<std::vector<int>> out(u_, std::vector<int>(t_));
  for (std::size_t r = 0; r < u_; ++r)
    for (std::size_t c = 0; c < t_; ++c) out[r][c] = at(c + 1, u_ - r);
  return out;
}

std::string GridMatrix::to_string() const {
  std::ostringstream os;
  auto rows = rows_top_first();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r) os << "; ";
    for (std::size_t c = 0; c < rows[r].size(); ++c) os << (c ? " " : "") << rows[r][c];
  }
  return os.str();
}

GridMatrix GridMatrix::column_reversed() const {
  GridMatrix out(t_, u_);
  for (std::size_t k = 1; k <= t_; ++k)
    for (std::size_t l = 1; l <= u_; ++l) out.set(t_ + 1 - k, l, -at(k, l));
  return out;
}

// ----------------------------------------------------------------- RectCover

RectCover RectCover::parse(std::string_view text) {
  static const std::regex rect_re(R"(\s*\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*[xX*]\s*\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*)");
  RectCover cover;
  std::string s(text);
  std::stringstream all(s);
  std::string part;
  while (std::getline(all, part, ';')) {
    if (std::all_of(part.begin(), part.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }))
      continue;
    std::smatch mt;
    if (!std::regex_match(part, mt, rect_re)) throw ParseError("invalid rectangle '" + part + "' (expected [w,x]x[y,z])");
    Rect r{{std::stoi(mt[1]), std::stoi(mt[2])}, {std::stoi(mt[3]), std::stoi(mt[4])}};
    if (r.columns.empty() || r.values.empty()) throw ParseError("degenerate rectangle '" + part + "'");
    cover.rects.push_back(r);
  }
  if (cover.rects.empty()) throw ParseError("no rectangles given");
  return cover;
}

std::string RectCover::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    const auto& r = rects[i];
    os << (i ? "; " : "") << '[' << r.columns.lo << ',' << r.columns.hi << "]x[" << r.values.lo << ','
       << r.values.hi << ']';
  }
  return os.str();
}

// ----------------------------------------------------------------- CellGraph

std::string to_string(GraphKind kind) {
  switch (kind) {
  case GraphKind::matching: return "matching";
  case GraphKind::star_plus_isolated: return "star_plus_isolated";
  case GraphKind::forest: return "forest";
  case GraphKind::other: return "other";
  }
  return "other";
}

CellGraph graph_of(const GridMatrix& m) {
  CellGraph g{m.cols(), m.rows(), {}};
  for (std::size_t k = 1; k <= m.cols(); ++k)
    for (std::size_t l = 1; l <= m.rows(); ++l)
      if (m.at(k, l) != 0) g.edges.emplace_back(k, l);
  return g;
}

bool CellGraph::is_matching() const {
  std::vector<int> dx(cols + 1, 0), dy(rows + 1, 0);
  for (auto [k, l] : edges)
    if (++dx[k] > 1 || ++dy[l] > 1) return false;
  return true;
}

bool CellGraph::is_star_plus_isolated() const {
  if (edges.empty()) return true;
  auto [k0, l0] = edges.front();
  bool share_col = true, share_row = true;
  for (auto [k, l] : edges) {
    share_col = share_col && k == k0;
    share_row = share_row && l == l0;
  }
  return share_col || share_row;
}

bool CellGraph::is_forest() const {
  // Union-find over columns 1..t and rows t+1..t+u; a repeated component means a cycle.
  std::vector<std::size_t> parent(cols + rows + 1);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = root(parent[x]);
  };
  for (auto [k, l] : edges) {
    auto a = root(k), b = root(cols + l);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

GraphKind classify_graph(const CellGraph& g) {
  if (g.is_matching()) return GraphKind::matching;
  if (g.is_star_plus_isolated()) return GraphKind::star_plus_isolated;
  if (g.is_forest()) return GraphKind::forest;
  return GraphKind::other;
}

// ------------------------------------------------------------ verification

namespace {

void check_divisions(const std::vector<int>& d, std::size_t parts, std::size_t n, const char* what) {
  if (d.size() != parts + 1)
    throw PreconditionError(std::string("gridding has wrong number of ") + what + " divisions");
  if (d.front() != 1 || d.back() != static_cast<int>(n) + 1)
    throw PreconditionError(std::string("gridding ") + what + " divisions must run from 1 to n+1");
  if (!std::is_sorted(d.begin(), d.end()))
    throw PreconditionError(std::string("gridding ") + what + " divisions must be nondecreasing");
}

// part_of[x] = 1-based part whose half-open range [d_j, d_{j+1}) holds x.
std::vector<std::size_t> part_lookup(const std::vector<int>& d, std::size_t n) {
  std::vector<std::size_t> part(n + 1, 0);
  for (std::size_t j = 0; j + 1 < d.size(); ++j)
    for (int x = d[j]; x < d[j + 1]; ++x) part[x] = j + 1;
  return part;
}

} // namespace

bool verify_gridding(const Permutation& pi, const GridMatrix& m, const Gridding& g) {
  const std::size_t n = pi.size();
  check_divisions(g.cols, m.cols(), n, "column");
  check_divisions(g.rows, m.rows(), n, "row");
  auto col = part_lookup(g.cols, n);
  auto row = part_lookup(g.rows, n);
  std::vector<int> last(m.cols() * m.rows(), 0);
  for (std::size_t i = 1; i <= n; ++i) {
    const int v = pi.at(i);
    const std::size_t k = col[i], l = row[v];
    const int entry = m.at(k, l);
    if (entry == 0) return false;
    int& prev = last[(k - 1) * m.rows() + (l - 1)];
    if (prev != 0 && (entry == 1 ? v < prev : v > prev)) return false;
    prev = v;
  }
  return true;
}

// -------------------------------------------------------------- the search

namespace {

enum class CellRule { per_matrix, any_monotone };

// For fixed row divisions, reach[k][s] is the exclusive end of the longest
// valid column k starting at s. Every end in [s, reach] is also valid.
class ColumnTable {
public:
  ColumnTable(const Permutation& pi, const GridMatrix& m, const std::vector<std::size_t>& row_of, CellRule rule)
      : n_(pi.size()), t_(m.cols()), reach_(t_, std::vector<int>(n_ + 2, 0)), ok_(t_ + 1, std::vector<char>(n_ + 2, 0)) {
    const std::size_t u = m.rows();
    std::vector<int> last(u + 1), dir(u + 1);
    for (std::size_t k = 0; k < t_; ++k) {
      for (std::size_t s = 1; s <= n_ + 1; ++s) {
        std::fill(last.begin(), last.end(), 0);
        std::fill(dir.begin(), dir.end(), 0);
        std::size_t i = s;
        for (; i <= n_; ++i) {
          const int v = pi.at(i);
          const std::size_t l = row_of[v];
          if (rule == CellRule::per_matrix) {
            const int e = m.at(k + 1, l);
            if (e == 0) break;
            if (last[l] != 0 && (e == 1 ? v < last[l] : v > last[l])) break;
          } else if (last[l] != 0) {
            const int d = v > last[l] ? 1 : -1;
            if (dir[l] != 0 && dir[l] != d) break;
            dir[l] = d;
          }
          last[l] = v;
        }
        reach_[k][s] = static_cast<int>(i);
      }
    }
    ok_[t_][n_ + 1] = 1;
    for (std::size_t k = t_; k-- > 0;) {
      for (std::size_t s = 1; s <= n_ + 1; ++s) {
        for (int e = static_cast<int>(s); e <= reach_[k][s]; ++e) {
          if (ok_[k + 1][e]) {
            ok_[k][s] = 1;
            break;
          }
        }
      }
    }
  }

  bool feasible() const { return ok_[0][1] != 0; }

  // Lexicographically greatest feasible column divisions.
  std::vector<int> greatest() const {
    std::vector<int> c{1};
    for (std::size_t k = 0; k < t_; ++k) {
      const int s = c.back();
      int pick = -1;
      for (int e = reach_[k][s]; e >= s; --e) {
        if (ok_[k + 1][e]) {
          pick = e;
          break;
        }
      }
      c.push_back(pick);
    }
    return c;
  }

private:
  std::size_t n_, t_;
  std::vector<std::vector<int>> reach_;
  std::vector<std::vector<char>> ok_;
};

// Calls visit(rows) for every row division (returning true stops the walk).
// Bands of all-zero matrix rows are forced empty under the per-matrix rule.
template <class Visit>
bool for_each_row_division(std::size_t n, const GridMatrix& m, CellRule rule, Visit&& visit) {
  const std::size_t u = m.rows();
  std::vector<char> zero_row(u + 1, 1);
  for (std::size_t l = 1; l <= u; ++l)
    for (std::size_t k = 1; k <= m.cols(); ++k)
      if (m.at(k, l) != 0) zero_row[l] = 0;

  std::vector<int> r(u + 1);
  r[0] = 1;
  r[u] = static_cast<int>(n) + 1;
  std::function<bool(std::size_t)> rec = [&](std::size_t j) -> bool {
    // choosing r[j] (0-based), i.e. the top of band j
    if (j == u) {
      if (rule == CellRule::per_matrix && zero_row[u] && r[u - 1] != r[u]) return false;
      return visit(r);
    }
    const int lo = r[j - 1];
    const int hi = (rule == CellRule::per_matrix && zero_row[j]) ? lo : static_cast<int>(n) + 1;
    for (int x = lo; x <= hi; ++x) {
      r[j] = x;
      if (rec(j + 1)) return true;
    }
    return false;
  };
  if (u == 1) {
    if (rule == CellRule::per_matrix && zero_row[1] && n > 0) return false;
    return visit(r);
  }
  return rec(1);
}

std::vector<std::size_t> row_lookup(const std::vector<int>& rows, std::size_t n) { return part_lookup(rows, n); }

// Reads off the sign of each cell; singletons count as increasing.
GridMatrix matrix_from_cells(const Permutation& pi, const Gridding& g, std::size_t t, std::size_t u) {
  const std::size_t n = pi.size();
  auto col = part_lookup(g.cols, n);
  auto row = part_lookup(g.rows, n);
  GridMatrix m(t, u);
  std::vector<int> last(t * u, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    const int v = pi.at(i);
    const std::size_t k = col[i], l = row[v];
    int& prev = last[(k - 1) * u + (l - 1)];
    m.set(k, l, prev == 0 || v > prev ? 1 : -1);
    prev = v;
  }
  return m;
}

} // namespace

std::optional<Gridding> find_gridding(const Permutation& pi, const GridMatrix& m) {
  const std::size_t n = pi.size();
  std::optional<Gridding> found;
  for_each_row_division(n, m, CellRule::per_matrix, [&](const std::vector<int>& rows) {
    ColumnTable table(pi, m, row_lookup(rows, n), CellRule::per_matrix);
    if (!table.feasible()) return false;
    found = Gridding{table.greatest(), rows};
    return true;
  });
  return found;
}

std::optional<MatrixGridding> is_txu_griddable(const Permutation& pi, std::size_t t, std::size_t u) {
  if (t == 0 || u == 0) throw PreconditionError("t and u must be at least 1");
  const std::size_t n = pi.size();
  GridMatrix shape(t, u);
  std::optional<MatrixGridding> found;
  for_each_row_division(n, shape, CellRule::any_monotone, [&](const std::vector<int>& rows) {
    ColumnTable table(pi, shape, row_lookup(rows, n), CellRule::any_monotone);
    if (!table.feasible()) return false;
    Gridding g{table.greatest(), rows};
    GridMatrix m = matrix_from_cells(pi, g, t, u);
    found = MatrixGridding{m, g};
    return true;
  });
  return found;
}

// ---------------------------------------------------------------- covers

bool verify_cover(const Permutation& pi, const RectCover& cover) {
  const int n = static_cast<int>(pi.size());
  if (n == 0) return true;
  std::vector<char> covered(static_cast<std::size_t>(n) * n, 0);
  for (const auto& r : cover.rects) {
    if (r.columns.empty() || r.values.empty() || r.columns.lo < 1 || r.values.lo < 1 || r.columns.hi > n ||
        r.values.hi > n)
      return false;
    auto seq = subgrid(pi, r.columns, r.values);
    const bool inc = std::is_sorted(seq.begin(), seq.end());
    const bool dec = std::is_sorted(seq.begin(), seq.end(), std::greater<>());
    if (!inc && !dec) return false;
    for (int i = r.columns.lo; i <= r.columns.hi; ++i)
      for (int v = r.values.lo; v <= r.values.hi; ++v) covered[(i - 1) * n + (v - 1)] = 1;
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

MatrixGridding cover_to_gridding(const Permutation& pi, const RectCover& cover) {
  if (!verify_cover(pi, cover)) throw PreconditionError("not a cover by monotone rectangles");
  const std::size_t n = pi.size();
  const std::size_t s = cover.rects.size();
  if (s == 0) throw PreconditionError("empty rectangle cover");
  const std::size_t dim = 2 * s - 1;

  std::vector<int> cs, rs;
  for (const auto& r : cover.rects) {
    cs.insert(cs.end(), {r.columns.lo, r.columns.hi});
    rs.insert(rs.end(), {r.values.lo, r.values.hi});
  }
  std::sort(cs.begin(), cs.end());
  std::sort(rs.begin(), rs.end());
  // Half-open cells: point c_{k+1} moves to the next cell, and the final
  // endpoint n is absorbed by the last cell via c_{2s} = n + 1.
  cs.back() = static_cast<int>(n) + 1;
  rs.back() = static_cast<int>(n) + 1;
  Gridding g{cs, rs};

  GridMatrix m = matrix_from_cells(pi, g, dim, dim);
  MatrixGridding out{m, g};
  if (!verify_gridding(pi, out.matrix, out.gridding))
    throw PreconditionError("rectangle cover produced an invalid gridding");
  return out;
}

// --------------------------------------------------------------- greedy

std::optional<Gridding> greedy_gridding(const Permutation& pi, const GridMatrix& m) {
  if (!graph_of(m).is_matching()) throw PreconditionError("greedy gridding needs a matrix whose graph is a matching");
  const std::size_t n = pi.size();
  std::optional<Gridding> best;
  for_each_row_division(n, m, CellRule::per_matrix, [&](const std::vector<int>& rows) {
    ColumnTable table(pi, m, row_lookup(rows, n), CellRule::per_matrix);
    if (table.feasible()) {
      auto cols = table.greatest();
      if (!best || cols > best->cols) best = Gridding{cols, rows};
    }
    return false;
  });
  return best;
}

// ----------------------------------------------------------------- pegs

PegDecomposition peg_decomposition(const Permutation& pi, const GridMatrix& m) {
  auto g = greedy_gridding(pi, m);
  if (!g) throw PreconditionError("permutation " + pi.to_string() + " is not in Grid(" + m.to_string() + ")");
  PegDecomposition d;
  std::vector<int> peg_values;
  for (std::size_t k = 1; k <= m.cols(); ++k) {
    const int lo = g->cols[k - 1], hi = g->cols[k];
    const std::size_t size = static_cast<std::size_t>(hi - lo);
    ColumnBlock b;
    b.row = m.sole_row(k);
    b.direction = b.row ? m.at(k, b.row) : 0;
    b.pegs = static_cast<int>(std::min<std::size_t>(size, 2));
    if (size >= 1) peg_values.push_back(pi.at(lo));
    if (size >= 2) peg_values.push_back(pi.at(hi - 1));
    d.blocks.push_back(b);
    d.nonpeg.push_back(size - b.pegs);
  }
  d.peg = pattern_of(peg_values);
  return d;
}

Permutation reconstruct_from_peg(const PegDecomposition& d, const GridMatrix& m) {
  const std::size_t t = m.cols();
  if (d.blocks.size() != t || d.nonpeg.size() != t)
    throw PreconditionError("peg decomposition does not match the matrix width");
  std::size_t total_pegs = 0;
  for (std::size_t k = 0; k < t; ++k) {
    const auto& b = d.blocks[k];
    if (b.pegs < 0 || b.pegs > 2) throw PreconditionError("peg count must be 0, 1 or 2");
    if (b.pegs < 2 && d.nonpeg[k] != 0) throw PreconditionError("non-peg points require two pegs in the column");
    if (b.pegs > 0 && (b.row == 0 || m.sole_row(k + 1) != b.row || m.at(k + 1, b.row) != b.direction))
      throw PreconditionError("column block record disagrees with the matrix");
    total_pegs += static_cast<std::size_t>(b.pegs);
  }
  if (total_pegs != d.peg.size()) throw PreconditionError("peg permutation length differs from the peg counts");

  // Weight each peg value: the lower peg of a two-peg column carries the
  // column's non-peg points just above it in value.
  std::vector<std::size_t> extra_above(d.peg.size() + 1, 0);
  std::size_t idx = 0;
  for (std::size_t k = 0; k < t; ++k) {
    const auto& b = d.blocks[k];
    if (b.pegs == 2) {
      const int first = d.peg[idx], second = d.peg[idx + 1];
      if (std::abs(first - second) != 1) throw PreconditionError("pegs of a column must be adjacent in value");
      if ((second > first ? 1 : -1) != b.direction) throw PreconditionError("peg order disagrees with the column direction");
      extra_above[std::min(first, second)] = d.nonpeg[k];
    }
    idx += static_cast<std::size_t>(b.pegs);
  }
  std::vector<int> new_value(d.peg.size() + 1, 0);
  int next = 1;
  for (std::size_t v = 1; v <= d.peg.size(); ++v) {
    new_value[v] = next;
    next += 1 + static_cast<int>(extra_above[v]);
  }

  std::vector<int> out;
  idx = 0;
  for (std::size_t k = 0; k < t; ++k) {
    const auto& b = d.blocks[k];
    if (b.pegs >= 1) out.push_back(new_value[d.peg[idx]]);
    if (b.pegs == 2) {
      const int a = new_value[d.peg[idx]], z = new_value[d.peg[idx + 1]];
      const int step = z > a ? 1 : -1;
      for (int v = a + step; v != z; v += step) out.push_back(v);
      out.push_back(z);
    }
    idx += static_cast<std::size_t>(b.pegs);
  }
  Permutation pi(std::move(out));
  if (peg_decomposition(pi, m) != d)
    throw PreconditionError("peg decomposition is not the greedy decomposition of any member");
  return pi;
}

// ---------------------------------------------------------- intervals

std::vector<Interval> monotone_interval_partition(const Permutation& pi) {
  std::vector<Interval> parts;
  const int n = static_cast<int>(pi.size());
  int start = 1;
  for (int i = 2; i <= n + 1; ++i) {
    bool extend = false;
    if (i <= n) {
      const int step = pi.at(i) - pi.at(i - 1);
      if (std::abs(step) == 1) {
        extend = i - 1 == start || pi.at(i - 1) - pi.at(i - 2) == step;
      }
    }
    if (!extend) {
      parts.push_back({start, i - 1});
      start = i;
    }
  }
  return parts;
}

MatrixGridding gridding_from_intervals(const Permutation& pi, const std::vector<Interval>& parts) {
  const std::size_t t = parts.size();
  if (t == 0) return {GridMatrix(1, 1), Gridding{{1, 1}, {1, 1}}};
  std::vector<std::size_t> order(t);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pi.at(parts[a].lo) < pi.at(parts[b].lo);
  });
  GridMatrix m(t, t);
  Gridding g;
  for (const auto& p : parts) g.cols.push_back(p.lo);
  g.cols.push_back(static_cast<int>(pi.size()) + 1);
  g.rows.push_back(1);
  for (std::size_t r = 0; r < t; ++r) {
    const auto& p = parts[order[r]];
    const int len = p.hi - p.lo + 1;
    g.rows.push_back(g.rows.back() + len);
    const int dir = len >= 2 && pi.at(p.hi) < pi.at(p.lo) ? -1 : 1;
    m.set(order[r] + 1, r + 1, dir);
  }
  return {m, g};
}

// --------------------------------------------------------------- f(a, b)

BigInt griddability_bound(unsigned a, unsigned b) {
  if (a == 0 && b == 0) throw PreconditionError("griddability_bound: a and b cannot both be 0");
  std::map<std::pair<unsigned, unsigned>, BigInt> memo;
  std::function<BigInt(unsigned, unsigned)> f = [&](unsigned x, unsigned y) -> BigInt {
    if (x == 0 || y == 0) return 1;
    if (x == 1 && y == 1) return 4;
    if (x < y) std::swap(x, y); // symmetric; recursion needs x >= 2
    auto key = std::make_pair(x, y);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    BigInt v = 2 * f(x - 1, y) + 2 * f(x, y - 1);
    memo.emplace(key, v);
    return v;
  };
  return f(a, b);
}

} // namespace permgrid
