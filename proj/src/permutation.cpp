#include "permgrid/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "permgrid/error.hpp"

namespace permgrid {

namespace {

bool is_bijection(const std::vector<int>& v) {
  std::vector<char> seen(v.size() + 1, 0);
  for (int x : v) {
    if (x < 1 || static_cast<std::size_t>(x) > v.size() || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

} // namespace

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
  if (!is_bijection(values_)) throw PreconditionError("not a permutation of [n]");
}

Permutation::Permutation(std::initializer_list<int> values)
    : Permutation(std::vector<int>(values)) {}

Permutation Permutation::identity(std::size_t n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::decreasing(std::size_t n) {
  std::vector<int> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(n - i);
  return Permutation(std::move(v));
}

Permutation Permutation::parse(std::string_view text) {
  text = trim(text);
  if (text.empty() || text == "()") return {};
  if (text.front() == '(' && text.back() == ')') text = trim(text.substr(1, text.size() - 2));

  std::vector<int> v;
  if (text.find(',') == std::string_view::npos) {
    for (char ch : text) {
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw ParseError("invalid character in permutation '" + std::string(text) + "'");
      v.push_back(ch - '0');
    }
    if (v.size() > 9)
      throw ParseError("compact digit form is limited to n <= 9; use commas: '" + std::string(text) + "'");
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t next = text.find(',', pos);
      if (next == std::string_view::npos) next = text.size();
      std::string_view tok = trim(text.substr(pos, next - pos));
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("invalid entry '" + std::string(tok) + "' in permutation '" + std::string(text) + "'");
      if (tok.size() > 9) throw ParseError("entry too large in permutation '" + std::string(text) + "'");
      v.push_back(std::stoi(std::string(tok)));
      pos = next + 1;
    }
  }
  if (!is_bijection(v)) throw ParseError("'" + std::string(text) + "' is not a permutation of [n]");
  return Permutation(std::move(v));
}

bool Permutation::is_increasing() const noexcept {
  return std::is_sorted(values_.begin(), values_.end());
}

bool Permutation::is_decreasing() const noexcept {
  return std::is_sorted(values_.begin(), values_.end(), std::greater<>());
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) os << ',';
    os << values_[i];
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Permutation& p) { return os << p.to_string(); }

PointSet plot(const Permutation& pi) {
  PointSet pts;
  pts.reserve(pi.size());
  for (std::size_t i = 0; i < pi.size(); ++i) pts.emplace_back(static_cast<int>(i + 1), pi[i]);
  return pts;
}

namespace {

// Occurrence search: positions are assigned to sigma's entries left to right.
// For entry j the chosen value must lie strictly between the values matched
// to sigma's nearest already-placed value neighbours below and above.
class OccurrenceSearch {
public:
  OccurrenceSearch(const Permutation& pi, const Permutation& sigma)
      : pi_(pi.values()), k_(sigma.size()), below_(k_, -1), above_(k_, -1), pos_(k_, 0) {
    auto s = sigma.values();
    for (std::size_t j = 0; j < k_; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (s[i] < s[j] && (below_[j] < 0 || s[i] > s[below_[j]])) below_[j] = static_cast<int>(i);
        if (s[i] > s[j] && (above_[j] < 0 || s[i] < s[above_[j]])) above_[j] = static_cast<int>(i);
      }
    }
  }

  bool run() { return k_ == 0 || place(0, 0); }

  std::vector<int> occurrence() const {
    std::vector<int> out(k_);
    for (std::size_t j = 0; j < k_; ++j) out[j] = static_cast<int>(pos_[j]) + 1;
    return out;
  }

private:
  bool place(std::size_t j, std::size_t start) {
    const int lo = below_[j] < 0 ? 0 : pi_[pos_[below_[j]]];
    const int hi = above_[j] < 0 ? static_cast<int>(pi_.size()) + 1 : pi_[pos_[above_[j]]];
    if (hi - lo <= 1) return false;
    const std::size_t last = pi_.size() - (k_ - j);
    for (std::size_t p = start; p <= last; ++p) {
      const int v = pi_[p];
      if (v <= lo || v >= hi) continue;
      pos_[j] = p;
      if (j + 1 == k_ || place(j + 1, p + 1)) return true;
    }
    return false;
  }

  std::span<const int> pi_;
  std::size_t k_;
  std::vector<int> below_, above_;
  std::vector<std::size_t> pos_;
};

} // namespace

bool contains(const Permutation& pi, const Permutation& sigma) {
  if (sigma.size() > pi.size()) return false;
  if (sigma.size() == pi.size()) return sigma == pi;
  return OccurrenceSearch(pi, sigma).run();
}

std::vector<int> find_occurrence(const Permutation& pi, const Permutation& sigma) {
  if (sigma.size() > pi.size()) return {};
  OccurrenceSearch search(pi, sigma);
  if (!search.run()) return {};
  return search.occurrence();
}

std::vector<int> subgrid(const Permutation& pi, Interval indices, Interval values) {
  std::vector<int> out;
  if (indices.empty() || values.empty()) return out;
  const int lo = std::max(indices.lo, 1);
  const int hi = std::min(indices.hi, static_cast<int>(pi.size()));
  for (int i = lo; i <= hi; ++i)
    if (values.holds(pi.at(i))) out.push_back(pi.at(i));
  return out;
}

Permutation direct_sum(const Permutation& pi, const Permutation& sigma) {
  std::vector<int> v(pi.values().begin(), pi.values().end());
  const int m = static_cast<int>(pi.size());
  for (int x : sigma.values()) v.push_back(x + m);
  return Permutation(std::move(v));
}

Permutation skew_sum(const Permutation& pi, const Permutation& sigma) {
  std::vector<int> v;
  v.reserve(pi.size() + sigma.size());
  const int n = static_cast<int>(sigma.size());
  for (int x : pi.values()) v.push_back(x + n);
  for (int x : sigma.values()) v.push_back(x);
  return Permutation(std::move(v));
}

Permutation sum_power(const Permutation& base, std::size_t k, SumKind kind) {
  Permutation out;
  for (std::size_t i = 0; i < k; ++i)
    out = kind == SumKind::direct ? direct_sum(out, base) : skew_sum(out, base);
  return out;
}

Permutation symmetry(const Permutation& pi, Symmetry which) {
  const std::size_t n = pi.size();
  std::vector<int> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    switch (which) {
    case Symmetry::inverse: v[pi[i] - 1] = static_cast<int>(i + 1); break;
    case Symmetry::reverse: v[n - 1 - i] = pi[i]; break;
    case Symmetry::complement: v[i] = static_cast<int>(n + 1) - pi[i]; break;
    }
  }
  return Permutation(std::move(v));
}

MonotoneLengths longest_monotone(const Permutation& pi) {
  // Patience tails, O(n log n).
  auto lis = [](auto first, auto last, auto cmp) {
    std::vector<int> tails;
    for (auto it = first; it != last; ++it) {
      auto pos = std::lower_bound(tails.begin(), tails.end(), *it, cmp);
      if (pos == tails.end()) tails.push_back(*it);
      else *pos = *it;
    }
    return tails.size();
  };
  auto v = pi.values();
  return {lis(v.begin(), v.end(), std::less<>()), lis(v.begin(), v.end(), std::greater<>())};
}

Permutation pattern_of(std::span<const int> seq) {
  std::vector<int> order(seq.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return seq[a] < seq[b]; });
  std::vector<int> v(seq.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    if (r > 0 && seq[order[r]] == seq[order[r - 1]]) throw PreconditionError("pattern_of: duplicate entries");
    v[order[r]] = static_cast<int>(r + 1);
  }
  return Permutation(std::move(v));
}

std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

} // namespace permgrid
