#include "permgrid/vector_downset.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <regex>
#include <sstream>

#include "permgrid/error.hpp"

namespace permgrid {

bool dominated_by(std::span<const std::size_t> x, std::span<const std::size_t> y) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > y[i]) return false;
  return true;
}

VecDownset::VecDownset(std::size_t m, std::vector<Vec> forbidden) : m_(m) {
  if (m == 0) throw PreconditionError("downset dimension must be at least 1");
  for (const auto& f : forbidden)
    if (f.size() != m) throw PreconditionError("forbidden vector has the wrong dimension");
  std::sort(forbidden.begin(), forbidden.end());
  forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());
  for (const auto& f : forbidden) {
    bool minimal = std::none_of(forbidden.begin(), forbidden.end(),
                                [&](const Vec& g) { return g != f && dominated_by(g, f); });
    if (minimal) forbidden_.push_back(f);
  }
}

VecDownset VecDownset::parse(std::string_view text) {
  static const std::regex whole_re(R"(\s*m\s*=\s*(\d+)\s*;\s*forbidden\s*=\s*(.*?)\s*)");
  static const std::regex vec_re(R"(\(([^()]*)\))");
  std::string s(text);
  std::smatch mt;
  if (!std::regex_match(s, mt, whole_re)) throw ParseError("invalid downset '" + s + "' (expected m=<dim>; forbidden=(..),..)");
  const std::size_t m = std::stoul(mt[1]);
  const std::string list = mt[2];
  std::vector<Vec> forbidden;
  std::string rest = list;
  for (auto it = std::sregex_iterator(list.begin(), list.end(), vec_re); it != std::sregex_iterator(); ++it) {
    Vec v;
    std::stringstream ss((*it)[1].str());
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok.erase(std::remove_if(tok.begin(), tok.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }), tok.end());
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("invalid vector entry in '" + s + "'");
      v.push_back(std::stoul(tok));
    }
    if (v.size() != m) throw ParseError("vector of dimension " + std::to_string(v.size()) + " in an m=" + std::to_string(m) + " downset");
    forbidden.push_back(std::move(v));
  }
  std::string leftover = std::regex_replace(list, vec_re, "");
  if (std::any_of(leftover.begin(), leftover.end(), [](char c) { return c != ',' && !std::isspace(static_cast<unsigned char>(c)); }))
    throw ParseError("unexpected text in forbidden list '" + list + "'");
  if (m == 0) throw ParseError("downset dimension must be at least 1");
  return VecDownset(m, std::move(forbidden));
}

std::size_t VecDownset::max_forbidden_weight() const noexcept {
  std::size_t w = 0;
  for (const auto& f : forbidden_) w = std::max(w, std::accumulate(f.begin(), f.end(), std::size_t{0}));
  return w;
}

std::size_t VecDownset::join_weight() const noexcept {
  Vec join(m_, 0);
  for (const auto& f : forbidden_)
    for (std::size_t i = 0; i < m_; ++i) join[i] = std::max(join[i], f[i]);
  return std::accumulate(join.begin(), join.end(), std::size_t{0});
}

bool VecDownset::member(std::span<const std::size_t> x) const {
  if (x.size() != m_) throw PreconditionError("vector dimension does not match the downset");
  return std::none_of(forbidden_.begin(), forbidden_.end(), [&](const Vec& f) { return dominated_by(f, x); });
}

BigInt VecDownset::count_weight(std::size_t n) const {
  // sum over subsets S of (-1)^|S| * #{x : ||x|| = n, x >= join(S)}
  //   = sum_S (-1)^|S| * C(n - ||join S|| + m - 1, m - 1).
  const std::size_t f = forbidden_.size();
  if (f >= 63) throw ResourceError("too many forbidden vectors for inclusion-exclusion");
  BigInt total = 0;
  Vec join(m_);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f); ++mask) {
    std::fill(join.begin(), join.end(), 0);
    int parity = 0;
    for (std::size_t i = 0; i < f; ++i) {
      if (!(mask >> i & 1)) continue;
      ++parity;
      for (std::size_t j = 0; j < m_; ++j) join[j] = std::max(join[j], forbidden_[i][j]);
    }
    const std::size_t w = std::accumulate(join.begin(), join.end(), std::size_t{0});
    if (w > n) continue;
    BigInt term = binomial(static_cast<long long>(n - w + m_ - 1), static_cast<long long>(m_ - 1));
    if (parity % 2) total -= term;
    else total += term;
  }
  return total;
}

std::string VecDownset::to_string() const {
  std::ostringstream os;
  os << "m=" << m_ << "; forbidden=";
  for (std::size_t i = 0; i < forbidden_.size(); ++i) {
    os << (i ? "," : "") << '(';
    for (std::size_t j = 0; j < m_; ++j) os << (j ? "," : "") << forbidden_[i][j];
    os << ')';
  }
  return os.str();
}

EventualPolynomial eventual_polynomial(const VecDownset& d, std::size_t first, std::size_t last) {
  const std::size_t m = d.dim();
  const std::size_t need = m + 2;
  if (last < first || last - first + 1 < m + need)
    throw PreconditionError("window too short: need at least " + std::to_string(m + need) + " terms");
  IntSequence counts{static_cast<long long>(first), {}};
  for (std::size_t n = first; n <= last; ++n) counts.terms.push_back(d.count_weight(n));
  auto fit = fit_polynomial(counts, need);
  if (!fit || fit->degree + 1 > m) throw PreconditionError("count_weight did not stabilise within the window");
  return {*fit, counts};
}

EventualPolynomial eventual_polynomial(const VecDownset& d) {
  return eventual_polynomial(d, 0, d.join_weight() + 2 * d.dim() + 4);
}

} // namespace permgrid
