#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "permgrid/bigint.hpp"

namespace permgrid {

/// Terms a_start, a_{start+1}, ... of an integer sequence.
struct IntSequence {
  long long start = 1;
  std::vector<BigInt> terms;

  long long last_index() const { return start + static_cast<long long>(terms.size()) - 1; }
  const BigInt& at(long long n) const { return terms.at(static_cast<std::size_t>(n - start)); }
  friend bool operator==(const IntSequence&, const IntSequence&) = default;
};

/// F_1 = 1, F_2 = 2, F_n = F_{n-1} + F_{n-2}. Throws PreconditionError for n < 1.
BigInt fibonacci(long long n);

/// Coefficients a_1..a_N of (1 - 3x) / ((1 - 2x) sqrt(1 - 4x)).
IntSequence skew_merged_series(std::size_t count);

/// p(n) = sum_i coefficients[i] * n^i, agreeing with the sequence from `onset` on.
struct PolynomialFit {
  std::vector<Rational> coefficients;
  long long onset = 0;
  std::size_t degree = 0;
  std::size_t stable = 0; // vanishing order-(degree+1) differences observed

  Rational operator()(long long n) const;
  std::string to_string() const;
};

/// Least degree d whose order-(d+1) differences vanish on a trailing run of
/// at least `min_stable` terms (default d + 3). The onset is the first index
/// from which the fitted polynomial matches every remaining term.
std::optional<PolynomialFit> fit_polynomial(const IntSequence& seq, std::optional<std::size_t> min_stable = {});

/// term_n >= F_n for every available n; the sequence must start at n = 1.
bool dominates_fibonacci(const IntSequence& seq);

} // namespace permgrid
