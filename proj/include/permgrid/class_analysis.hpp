#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "permgrid/gridding.hpp"
#include "permgrid/permutation.hpp"
#include "permgrid/series.hpp"
#include "permgrid/vector_downset.hpp"

namespace permgrid {

/// Basis of a permutation class, kept as an antichain (elements containing
/// another element are dropped on construction).
class FiniteBasis {
public:
  FiniteBasis() = default;
  explicit FiniteBasis(std::vector<Permutation> patterns);

  /// Patterns separated by whitespace, each in permutation text format.
  static FiniteBasis parse(std::string_view text);

  const std::vector<Permutation>& patterns() const noexcept { return patterns_; }
  bool empty() const noexcept { return patterns_.empty(); }

  /// pi avoids every pattern.
  bool admits(const Permutation& pi) const;

  std::string to_string() const;

private:
  std::vector<Permutation> patterns_;
};

constexpr std::size_t default_memory_cap = 10'000'000;

/// Counts |C_1|, ..., |C_N|.
using ClassCounts = IntSequence;

/// Generates Av(B) level by level, extending each avoider of length n by
/// inserting n+1 at every position. `visit` sees every member of length
/// 0..horizon. Throws ResourceError when a level exceeds `memory_cap`.
void for_each_member(const FiniteBasis& basis, std::size_t horizon, const std::function<void(const Permutation&)>& visit,
                     std::size_t memory_cap = default_memory_cap);

ClassCounts enumerate_class(const FiniteBasis& basis, std::size_t horizon, std::size_t memory_cap = default_memory_cap);

struct FinitenessWitness {
  bool finite = false;
  std::optional<Permutation> increasing; // a basis element that is increasing
  std::optional<Permutation> decreasing; // a basis element that is decreasing
};
/// Av(B) is finite iff B has an increasing and a decreasing element.
FinitenessWitness is_finite_class(const FiniteBasis& basis);

/// Av(231, 312, 321): the patterns of arbitrarily long direct sums of 21.
const FiniteBasis& direct_sums_of_21_class();
/// Av(213, 132, 123): the patterns of arbitrarily long skew sums of 12.
const FiniteBasis& skew_sums_of_12_class();

struct LongSumTest {
  bool contains_long_sums = false;
  std::optional<Permutation> blocker; // a basis element inside the test class
};
LongSumTest contains_long_direct_sums_21(const FiniteBasis& basis);
LongSumTest contains_long_skew_sums_12(const FiniteBasis& basis);

struct GriddabilityCertificate {
  bool griddable = false;
  LongSumTest direct;
  LongSumTest skew;
};
GriddabilityCertificate is_griddable_class(const FiniteBasis& basis);

/// The eight two-cell monotone juxtapositions: row vectors (a b) then column
/// vectors with entries a over b, for a, b in {1, -1}.
const std::vector<GridMatrix>& juxtaposition_matrices();

struct JuxtapositionWitness {
  GridMatrix matrix;
  Permutation member; // basis element lying in Grid(matrix)
  Gridding gridding;
};

struct AlternationCertificate {
  bool contains_long_alternations = false;
  std::optional<GridMatrix> free_matrix;          // Grid(matrix) avoids all of B
  std::vector<JuxtapositionWitness> blockers;     // filled when no matrix is free
};
AlternationCertificate contains_long_alternations(const FiniteBasis& basis);

enum class DichotomyKind { Finite, EventuallyPolynomial, AtLeastFibonacci };
std::string to_string(DichotomyKind kind);

struct DichotomyVerdict {
  DichotomyKind kind = DichotomyKind::EventuallyPolynomial;
  FinitenessWitness finiteness;
  std::optional<GriddabilityCertificate> griddability;
  std::optional<AlternationCertificate> alternations;
};

/// Structural classification; never consults counts.
DichotomyVerdict classify_dichotomy(const FiniteBasis& basis);

/// Re-checks a verdict's certificate against the basis with independent
/// containment and gridding verification.
bool check_certificate(const FiniteBasis& basis, const DichotomyVerdict& verdict);

/// Peg permutation -> observed non-peg vectors.
using PegPartition = std::map<Permutation, std::set<Vec>>;

/// Greedy peg decompositions of `members` in Grid(M). M must have a matching
/// graph; throws PreconditionError if some member is not in Grid(M).
PegPartition empirical_peg_partition(std::span<const Permutation> members, const GridMatrix& m);
/// Same for every member of Av(B) of length at most `horizon`.
PegPartition empirical_peg_partition(const FiniteBasis& basis, const GridMatrix& m, std::size_t horizon,
                                     std::size_t memory_cap = default_memory_cap);

/// Every pattern contained in pi (including pi and the empty permutation).
std::vector<Permutation> principal_class(const Permutation& pi);

} // namespace permgrid
