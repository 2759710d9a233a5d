#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace permgrid {

/// A permutation of [n] in one-line notation. Values are 1-based; the empty
/// permutation (n = 0) is a valid value and is contained in everything.
class Permutation {
public:
  Permutation() = default;

  /// Throws PreconditionError unless `values` is a bijection on [n].
  explicit Permutation(std::vector<int> values);
  Permutation(std::initializer_list<int> values);

  static Permutation identity(std::size_t n);
  static Permutation decreasing(std::size_t n);

  /// Comma form ("3,9,1,8") or, for n <= 9, compact digit form ("3918").
  /// The empty string and "()" denote the empty permutation.
  static Permutation parse(std::string_view text);

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  /// 1-based access: at(i) = pi(i).
  int at(std::size_t i) const { return values_.at(i - 1); }
  int operator[](std::size_t idx) const noexcept { return values_[idx]; }

  std::span<const int> values() const noexcept { return values_; }

  bool is_increasing() const noexcept;
  bool is_decreasing() const noexcept;

  /// Always the comma form.
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.values_ <=> b.values_;
  }

private:
  std::vector<int> values_;
};

std::ostream& operator<<(std::ostream& os, const Permutation& p);

/// Closed interval [lo, hi]; empty when lo > hi.
struct Interval {
  int lo = 1;
  int hi = 0;

  static Interval none() { return {1, 0}; }
  bool empty() const noexcept { return lo > hi; }
  bool holds(int x) const noexcept { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// (index, value) pairs of the plot.
using PointSet = std::vector<std::pair<int, int>>;
PointSet plot(const Permutation& pi);

/// True iff `pi` has a subsequence order-isomorphic to `sigma`.
bool contains(const Permutation& pi, const Permutation& sigma);
inline bool avoids(const Permutation& pi, const Permutation& sigma) { return !contains(pi, sigma); }

/// One occurrence of `sigma` in `pi` as 1-based indices, or empty if none.
std::vector<int> find_occurrence(const Permutation& pi, const Permutation& sigma);

/// pi(A x B): entries with index in A and value in B, in index order, not renormalised.
std::vector<int> subgrid(const Permutation& pi, Interval indices, Interval values);

Permutation direct_sum(const Permutation& pi, const Permutation& sigma);
Permutation skew_sum(const Permutation& pi, const Permutation& sigma);

enum class SumKind { direct, skew };
/// k-fold iterated sum of `base`; k = 0 gives the empty permutation.
Permutation sum_power(const Permutation& base, std::size_t k, SumKind kind);

enum class Symmetry { inverse, reverse, complement };
Permutation symmetry(const Permutation& pi, Symmetry which);
inline Permutation inverse(const Permutation& pi) { return symmetry(pi, Symmetry::inverse); }
inline Permutation reverse(const Permutation& pi) { return symmetry(pi, Symmetry::reverse); }
inline Permutation complement(const Permutation& pi) { return symmetry(pi, Symmetry::complement); }

struct MonotoneLengths {
  std::size_t increasing = 0;
  std::size_t decreasing = 0;
};
/// Exact lengths of the longest increasing and decreasing subsequences.
MonotoneLengths longest_monotone(const Permutation& pi);

/// The permutation order-isomorphic to `seq`. Throws PreconditionError on duplicates.
Permutation pattern_of(std::span<const int> seq);

/// All permutations of length n in lexicographic order.
std::vector<Permutation> all_permutations(std::size_t n);

} // namespace permgrid
