#include "permgrid/series.hpp"

#include <sstream>

#include "permgrid/error.hpp"

namespace permgrid {

BigInt fibonacci(long long n) {
  if (n < 1) throw PreconditionError("fibonacci: n must be at least 1");
  BigInt a = 1, b = 2; // F_1, F_2
  if (n == 1) return a;
  for (long long i = 2; i < n; ++i) {
    BigInt c = a + b;
    a = std::move(b);
    b = std::move(c);
  }
  return b;
}

IntSequence skew_merged_series(std::size_t count) {
  if (count < 1) throw PreconditionError("skew_merged_series: need at least one term");
  const std::size_t len = count + 1;
  // 1/sqrt(1-4x) = sum C(2n, n) x^n; central binomials by C(2n,n) = C(2n-2,n-1) * (4n-2) / n.
  std::vector<BigInt> central(len);
  central[0] = 1;
  for (std::size_t i = 1; i < len; ++i) central[i] = central[i - 1] * (4 * i - 2) / i;
  // (1 - 3x) / (1 - 2x) = (1 - 3x) * sum 2^n x^n.
  std::vector<BigInt> rational(len);
  BigInt pow2 = 1;
  for (std::size_t i = 0; i < len; ++i) {
    rational[i] = pow2;
    if (i > 0) rational[i] -= 3 * (pow2 / 2);
    pow2 *= 2;
  }
  IntSequence out{1, {}};
  for (std::size_t n = 1; n < len; ++n) {
    BigInt a = 0;
    for (std::size_t j = 0; j <= n; ++j) a += rational[j] * central[n - j];
    out.terms.push_back(a);
  }
  return out;
}

Rational PolynomialFit::operator()(long long n) const {
  Rational acc = 0;
  for (std::size_t i = coefficients.size(); i-- > 0;) acc = acc * n + coefficients[i];
  return acc;
}

std::string PolynomialFit::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coefficients.size(); i-- > 0;) {
    const Rational& c = coefficients[i];
    if (c == 0) continue;
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    const Rational mag = c < 0 ? Rational(-c) : c;
    if (i == 0) os << mag;
    else if (mag != 1) os << mag << '*';
    if (i >= 1) os << 'n';
    if (i >= 2) os << '^' << i;
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

std::optional<PolynomialFit> fit_polynomial(const IntSequence& seq, std::optional<std::size_t> min_stable) {
  const std::size_t len = seq.terms.size();
  // rows[j] = order-j forward differences; rows[j][i] = Delta^j a_{start+i}.
  std::vector<std::vector<BigInt>> rows{seq.terms};
  for (std::size_t d = 0; d + 1 < len; ++d) {
    const auto& prev = rows.back();
    std::vector<BigInt> next(prev.size() - 1);
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) next[i] = prev[i + 1] - prev[i];
    rows.push_back(std::move(next));

    const auto& diff = rows[d + 1];
    std::size_t run = 0;
    while (run < diff.size() && diff[diff.size() - 1 - run] == 0) ++run;
    const std::size_t need = min_stable.value_or(d + 3);
    if (run == 0 || run < need) continue;

    // Newton form from the first index of the stable run.
    const std::size_t base = diff.size() - run;
    std::vector<Rational> coeffs(d + 1, 0);
    std::vector<Rational> basis{1}; // C(n - n0, j) expanded in powers of n
    const long long n0 = seq.start + static_cast<long long>(base);
    for (std::size_t j = 0; j <= d; ++j) {
      const Rational w(rows[j][base]);
      for (std::size_t i = 0; i < basis.size(); ++i) coeffs[i] += w * basis[i];
      // basis *= (n - n0 - j) / (j + 1)
      std::vector<Rational> nb(basis.size() + 1, 0);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        nb[i + 1] += basis[i];
        nb[i] -= basis[i] * (n0 + static_cast<long long>(j));
      }
      for (auto& c : nb) c /= static_cast<long long>(j + 1);
      basis = std::move(nb);
    }
    while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
    PolynomialFit fit{coeffs, n0, coeffs.size() - 1, run};
    // The polynomial may already hold earlier than the run start.
    while (fit.onset > seq.start && fit(fit.onset - 1) == Rational(seq.at(fit.onset - 1))) --fit.onset;
    return fit;
  }
  return std::nullopt;
}

bool dominates_fibonacci(const IntSequence& seq) {
  if (seq.start != 1) throw PreconditionError("dominates_fibonacci: sequence must start at n = 1");
  for (std::size_t i = 0; i < seq.terms.size(); ++i)
    if (seq.terms[i] < fibonacci(static_cast<long long>(i) + 1)) return false;
  return true;
}

} // namespace permgrid
