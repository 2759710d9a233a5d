#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "permgrid/bigint.hpp"
#include "permgrid/series.hpp"

namespace permgrid {

using Vec = std::vector<std::size_t>;

/// x <= y in the product order.
bool dominated_by(std::span<const std::size_t> x, std::span<const std::size_t> y);

/// A downset of N^m given by the minimal vectors of its complement.
class VecDownset {
public:
  /// Reduces `forbidden` to its minimal elements; throws PreconditionError on
  /// m = 0 or a vector of the wrong dimension.
  VecDownset(std::size_t m, std::vector<Vec> forbidden);

  /// "m=2; forbidden=(1,1),(3,0)"; an empty list after '=' is allowed.
  static VecDownset parse(std::string_view text);

  std::size_t dim() const noexcept { return m_; }
  const std::vector<Vec>& forbidden() const noexcept { return forbidden_; }
  std::size_t max_forbidden_weight() const noexcept;
  /// Weight of the componentwise maximum of all forbidden vectors. count_weight
  /// is a polynomial in n for n >= join_weight() - m + 1.
  std::size_t join_weight() const noexcept;

  /// Throws PreconditionError on a dimension mismatch.
  bool member(std::span<const std::size_t> x) const;

  /// Vectors of weight n in the downset, by inclusion-exclusion over the forbidden set.
  BigInt count_weight(std::size_t n) const;

  std::string to_string() const;

private:
  std::size_t m_;
  std::vector<Vec> forbidden_;
};

struct EventualPolynomial {
  PolynomialFit fit;
  IntSequence counts; // the window's count_weight values
};

/// Fits count_weight over [first, last] by finite differences, demanding at
/// least m + 2 vanishing differences. Throws PreconditionError when the
/// window is too short or no fit of degree <= m - 1 stabilises.
EventualPolynomial eventual_polynomial(const VecDownset& d, std::size_t first, std::size_t last);
/// Window [0, join_weight() + 2m + 4].
EventualPolynomial eventual_polynomial(const VecDownset& d);

} // namespace permgrid
