#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "permgrid/bigint.hpp"
#include "permgrid/permutation.hpp"

namespace permgrid {

/// A t x u matrix with entries in {-1, 0, 1}, indexed from the lower left:
/// at(k, l) is column k from the left, row l from the bottom (both 1-based).
class GridMatrix {
public:
  GridMatrix() = default;
  GridMatrix(std::size_t cols, std::size_t rows);

  /// `rows_top_first[r][c]`: human layout, top row first.
  static GridMatrix from_rows_top_first(const std::vector<std::vector<int>>& rows_top_first);

  /// "-1 1; 1 -1": rows separated by ';', entries by spaces, top row first.
  static GridMatrix parse(std::string_view text);

  std::size_t cols() const noexcept { return t_; }
  std::size_t rows() const noexcept { return u_; }

  int at(std::size_t k, std::size_t l) const { return cells_.at(index(k, l)); }
  void set(std::size_t k, std::size_t l, int value);

  /// The nonzero row of column k, or 0 if the column is all zero or has several.
  std::size_t sole_row(std::size_t k) const;

  std::vector<std::vector<int>> rows_top_first() const;
  std::string to_string() const;

  /// Mirror left-to-right and flip every cell direction: the matrix of the
  /// class of reverses.
  GridMatrix column_reversed() const;

  friend bool operator==(const GridMatrix&, const GridMatrix&) = default;

private:
  std::size_t index(std::size_t k, std::size_t l) const;

  std::size_t t_ = 0;
  std::size_t u_ = 0;
  std::vector<int> cells_;
};

/// Column divisions 1 = c_1 <= ... <= c_{t+1} = n+1 and row divisions
/// 1 = r_1 <= ... <= r_{u+1} = n+1; cell (k, l) is pi([c_k, c_{k+1}) x [r_l, r_{l+1})).
struct Gridding {
  std::vector<int> cols;
  std::vector<int> rows;
  friend bool operator==(const Gridding&, const Gridding&) = default;
};

/// Closed rectangle [w, x] x [y, z].
struct Rect {
  Interval columns;
  Interval values;
  friend bool operator==(const Rect&, const Rect&) = default;
};

struct RectCover {
  std::vector<Rect> rects;

  /// "[1,2]x[1,4]; [3,4]x[1,4]"
  static RectCover parse(std::string_view text);
  std::string to_string() const;
};

enum class GraphKind { matching, star_plus_isolated, forest, other };
std::string to_string(GraphKind kind);

/// Bipartite graph on column vertices x_1..x_t and row vertices y_1..y_u.
struct CellGraph {
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges; // (k, l), 1-based

  bool is_matching() const;
  bool is_forest() const;
  bool is_star_plus_isolated() const;
};

CellGraph graph_of(const GridMatrix& m);
/// Most specific kind: matching, then star with isolated vertices, then forest.
GraphKind classify_graph(const CellGraph& g);

/// Throws PreconditionError when the gridding's shape does not fit M and |pi|.
bool verify_gridding(const Permutation& pi, const GridMatrix& m, const Gridding& g);

std::optional<Gridding> find_gridding(const Permutation& pi, const GridMatrix& m);
inline bool in_grid_class(const Permutation& pi, const GridMatrix& m) {
  return find_gridding(pi, m).has_value();
}

struct MatrixGridding {
  GridMatrix matrix;
  Gridding gridding;
};

/// A t x u matrix and an accompanying gridding of pi, if one exists.
std::optional<MatrixGridding> is_txu_griddable(const Permutation& pi, std::size_t t, std::size_t u);

bool verify_cover(const Permutation& pi, const RectCover& cover);

/// Builds a (2s-1) x (2s-1) gridding from an s-rectangle cover. The c's are
/// the sorted multiset of column endpoints w_i, x_i (the last one replaced by
/// n+1), likewise for rows. Throws PreconditionError for an invalid cover.
MatrixGridding cover_to_gridding(const Permutation& pi, const RectCover& cover);

/// The gridding whose column divisions (c_2, ..., c_t) are lexicographically
/// greatest among all M-griddings. M must have a matching graph
/// (PreconditionError otherwise); nullopt when pi is not in Grid(M).
std::optional<Gridding> greedy_gridding(const Permutation& pi, const GridMatrix& m);

struct ColumnBlock {
  std::size_t row = 0; // nonzero row of the column, 0 if none
  int pegs = 0;        // 0, 1 or 2
  int direction = 0;   // M entry of that row, 0 if none
  friend bool operator==(const ColumnBlock&, const ColumnBlock&) = default;
};

struct PegDecomposition {
  Permutation peg;
  std::vector<std::size_t> nonpeg;
  std::vector<ColumnBlock> blocks;
  friend bool operator==(const PegDecomposition&, const PegDecomposition&) = default;
};

/// Peg points are the first and last point of each block of the greedy gridding.
/// Throws PreconditionError if pi is not in Grid(M).
PegDecomposition peg_decomposition(const Permutation& pi, const GridMatrix& m);

/// Inverse of peg_decomposition. Throws PreconditionError if `d` is not the
/// decomposition of any member of Grid(M).
Permutation reconstruct_from_peg(const PegDecomposition& d, const GridMatrix& m);

/// Minimum partition of [n] into uninterrupted monotone intervals.
std::vector<Interval> monotone_interval_partition(const Permutation& pi);

/// The matching-graph matrix and gridding induced by an interval partition:
/// one column per interval, rows ordered by value.
MatrixGridding gridding_from_intervals(const Permutation& pi, const std::vector<Interval>& parts);

/// Number of monotone rectangles sufficient to cover any permutation avoiding
/// the (a+1)-fold skew sum of 12 and the (b+1)-fold direct sum of 21.
BigInt griddability_bound(unsigned a, unsigned b);

} // namespace permgrid
