#include "permgrid/class_analysis.hpp"

#include <algorithm>
#include <sstream>

#include "permgrid/error.hpp"

namespace permgrid {

// ---------------------------------------------------------------- basis

FiniteBasis::FiniteBasis(std::vector<Permutation> patterns) {
  std::sort(patterns.begin(), patterns.end());
  patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
  // Sorted by length first, so any pattern contained in p is already kept.
  for (auto& p : patterns) {
    if (std::none_of(patterns_.begin(), patterns_.end(), [&](const Permutation& q) { return contains(p, q); }))
      patterns_.push_back(std::move(p));
  }
}

FiniteBasis FiniteBasis::parse(std::string_view text) {
  std::stringstream ss{std::string(text)};
  std::vector<Permutation> out;
  std::string tok;
  while (ss >> tok) out.push_back(Permutation::parse(tok));
  return FiniteBasis(std::move(out));
}

bool FiniteBasis::admits(const Permutation& pi) const {
  return std::none_of(patterns_.begin(), patterns_.end(), [&](const Permutation& b) { return contains(pi, b); });
}

std::string FiniteBasis::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < patterns_.size(); ++i) os << (i ? " " : "") << patterns_[i].to_string();
  return os.str();
}

// ---------------------------------------------------------- enumeration

void for_each_member(const FiniteBasis& basis, std::size_t horizon, const std::function<void(const Permutation&)>& visit,
                     std::size_t memory_cap) {
  std::vector<Permutation> level;
  if (basis.admits(Permutation{})) level.emplace_back();
  for (const auto& p : level) visit(p);
  std::vector<int> buf;
  for (std::size_t n = 1; n <= horizon && !level.empty(); ++n) {
    std::vector<Permutation> next;
    for (const auto& parent : level) {
      auto v = parent.values();
      for (std::size_t pos = 0; pos <= v.size(); ++pos) {
        buf.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(pos));
        buf.push_back(static_cast<int>(n));
        buf.insert(buf.end(), v.begin() + static_cast<std::ptrdiff_t>(pos), v.end());
        Permutation child(buf);
        if (!basis.admits(child)) continue;
        if (next.size() >= memory_cap)
          throw ResourceError("class enumeration exceeded the memory cap of " + std::to_string(memory_cap) +
                              " stored permutations at length " + std::to_string(n));
        next.push_back(std::move(child));
      }
    }
    for (const auto& p : next) visit(p);
    level = std::move(next);
  }
}

ClassCounts enumerate_class(const FiniteBasis& basis, std::size_t horizon, std::size_t memory_cap) {
  if (horizon < 1) throw PreconditionError("enumerate_class: horizon must be at least 1");
  ClassCounts counts{1, std::vector<BigInt>(horizon, 0)};
  for_each_member(basis, horizon, [&](const Permutation& p) {
    if (!p.empty()) counts.terms[p.size() - 1] += 1;
  }, memory_cap);
  return counts;
}

// ------------------------------------------------------ decision tests

FinitenessWitness is_finite_class(const FiniteBasis& basis) {
  FinitenessWitness w;
  for (const auto& b : basis.patterns()) {
    if (!w.increasing && b.is_increasing()) w.increasing = b;
    if (!w.decreasing && b.is_decreasing()) w.decreasing = b;
  }
  w.finite = w.increasing && w.decreasing;
  return w;
}

const FiniteBasis& direct_sums_of_21_class() {
  static const FiniteBasis cls({Permutation{2, 3, 1}, Permutation{3, 1, 2}, Permutation{3, 2, 1}});
  return cls;
}

const FiniteBasis& skew_sums_of_12_class() {
  static const FiniteBasis cls({Permutation{2, 1, 3}, Permutation{1, 3, 2}, Permutation{1, 2, 3}});
  return cls;
}

namespace {

LongSumTest long_sum_test(const FiniteBasis& basis, const FiniteBasis& test_class) {
  for (const auto& b : basis.patterns())
    if (test_class.admits(b)) return {false, b};
  return {true, std::nullopt};
}

} // namespace

LongSumTest contains_long_direct_sums_21(const FiniteBasis& basis) {
  return long_sum_test(basis, direct_sums_of_21_class());
}

LongSumTest contains_long_skew_sums_12(const FiniteBasis& basis) {
  return long_sum_test(basis, skew_sums_of_12_class());
}

GriddabilityCertificate is_griddable_class(const FiniteBasis& basis) {
  GriddabilityCertificate c;
  c.direct = contains_long_direct_sums_21(basis);
  c.skew = contains_long_skew_sums_12(basis);
  c.griddable = !c.direct.contains_long_sums && !c.skew.contains_long_sums;
  return c;
}

const std::vector<GridMatrix>& juxtaposition_matrices() {
  static const std::vector<GridMatrix> all = [] {
    std::vector<GridMatrix> out;
    for (int a : {1, -1})
      for (int b : {1, -1}) out.push_back(GridMatrix::from_rows_top_first({{a, b}}));
    for (int a : {1, -1})
      for (int b : {1, -1}) out.push_back(GridMatrix::from_rows_top_first({{a}, {b}}));
    return out;
  }();
  return all;
}

AlternationCertificate contains_long_alternations(const FiniteBasis& basis) {
  AlternationCertificate cert;
  for (const auto& a : juxtaposition_matrices()) {
    std::optional<JuxtapositionWitness> hit;
    for (const auto& b : basis.patterns()) {
      if (auto g = find_gridding(b, a)) {
        hit = JuxtapositionWitness{a, b, *g};
        break;
      }
    }
    if (!hit) {
      cert.contains_long_alternations = true;
      cert.free_matrix = a;
      cert.blockers.clear();
      return cert;
    }
    cert.blockers.push_back(*hit);
  }
  return cert;
}

std::string to_string(DichotomyKind kind) {
  switch (kind) {
  case DichotomyKind::Finite: return "Finite";
  case DichotomyKind::EventuallyPolynomial: return "EventuallyPolynomial";
  case DichotomyKind::AtLeastFibonacci: return "AtLeastFibonacci";
  }
  return "?";
}

DichotomyVerdict classify_dichotomy(const FiniteBasis& basis) {
  DichotomyVerdict v;
  v.finiteness = is_finite_class(basis);
  if (v.finiteness.finite) {
    v.kind = DichotomyKind::Finite;
    return v;
  }
  v.griddability = is_griddable_class(basis);
  if (!v.griddability->griddable) {
    v.kind = DichotomyKind::AtLeastFibonacci;
    return v;
  }
  v.alternations = contains_long_alternations(basis);
  v.kind = v.alternations->contains_long_alternations ? DichotomyKind::AtLeastFibonacci
                                                      : DichotomyKind::EventuallyPolynomial;
  return v;
}

// -------------------------------------------------- certificate checking

namespace {

bool in_basis(const FiniteBasis& basis, const Permutation& p) {
  const auto& ps = basis.patterns();
  return std::find(ps.begin(), ps.end(), p) != ps.end();
}

// beta lies below arbitrarily long sums iff it lies below the |beta|-fold sum.
bool below_long_sum(const Permutation& beta, SumKind kind) {
  const Permutation unit = kind == SumKind::direct ? Permutation{2, 1} : Permutation{1, 2};
  return contains(sum_power(unit, std::max<std::size_t>(beta.size(), 1), kind), beta);
}

// Two-cell membership by trying every division point directly.
bool in_two_cell_class(const Permutation& pi, const GridMatrix& a) {
  const int n = static_cast<int>(pi.size());
  for (int cut = 1; cut <= n + 1; ++cut) {
    Gridding g = a.cols() == 2 ? Gridding{{1, cut, n + 1}, {1, n + 1}} : Gridding{{1, n + 1}, {1, cut, n + 1}};
    if (verify_gridding(pi, a, g)) return true;
  }
  return false;
}

bool check_sum_side(const FiniteBasis& basis, const LongSumTest& t, SumKind kind) {
  if (t.contains_long_sums)
    return std::none_of(basis.patterns().begin(), basis.patterns().end(),
                        [&](const Permutation& b) { return below_long_sum(b, kind); });
  return t.blocker && in_basis(basis, *t.blocker) && below_long_sum(*t.blocker, kind);
}

} // namespace

bool check_certificate(const FiniteBasis& basis, const DichotomyVerdict& verdict) {
  const auto& f = verdict.finiteness;
  if (verdict.kind == DichotomyKind::Finite)
    return f.finite && f.increasing && f.decreasing && in_basis(basis, *f.increasing) && in_basis(basis, *f.decreasing) &&
           f.increasing->is_increasing() && f.decreasing->is_decreasing();
  if (f.finite || is_finite_class(basis).finite) return false;
  if (!verdict.griddability) return false;
  const auto& g = *verdict.griddability;
  if (!check_sum_side(basis, g.direct, SumKind::direct) || !check_sum_side(basis, g.skew, SumKind::skew)) return false;
  if (g.griddable != (!g.direct.contains_long_sums && !g.skew.contains_long_sums)) return false;

  if (verdict.kind == DichotomyKind::AtLeastFibonacci && !g.griddable) return true;
  if (!g.griddable || !verdict.alternations) return false;
  const auto& alt = *verdict.alternations;
  if (verdict.kind == DichotomyKind::AtLeastFibonacci) {
    if (!alt.contains_long_alternations || !alt.free_matrix) return false;
    return std::none_of(basis.patterns().begin(), basis.patterns().end(),
                        [&](const Permutation& b) { return in_two_cell_class(b, *alt.free_matrix); });
  }
  // EventuallyPolynomial: every juxtaposition is blocked by a gridded basis element.
  if (alt.contains_long_alternations) return false;
  const auto& all = juxtaposition_matrices();
  for (const auto& a : all) {
    auto it = std::find_if(alt.blockers.begin(), alt.blockers.end(), [&](const JuxtapositionWitness& w) { return w.matrix == a; });
    if (it == alt.blockers.end() || !in_basis(basis, it->member) || !verify_gridding(it->member, a, it->gridding))
      return false;
  }
  return true;
}

// ----------------------------------------------------------------- pegs

PegPartition empirical_peg_partition(std::span<const Permutation> members, const GridMatrix& m) {
  if (!graph_of(m).is_matching()) throw PreconditionError("peg partition needs a matrix whose graph is a matching");
  PegPartition out;
  for (const auto& pi : members) {
    auto d = peg_decomposition(pi, m);
    out[d.peg].insert(d.nonpeg);
  }
  return out;
}

PegPartition empirical_peg_partition(const FiniteBasis& basis, const GridMatrix& m, std::size_t horizon,
                                     std::size_t memory_cap) {
  if (!graph_of(m).is_matching()) throw PreconditionError("peg partition needs a matrix whose graph is a matching");
  PegPartition out;
  for_each_member(basis, horizon, [&](const Permutation& pi) {
    auto d = peg_decomposition(pi, m);
    out[d.peg].insert(d.nonpeg);
  }, memory_cap);
  return out;
}

std::vector<Permutation> principal_class(const Permutation& pi) {
  const std::size_t n = pi.size();
  if (n > 20) throw ResourceError("principal_class is limited to n <= 20");
  std::set<Permutation> seen;
  std::vector<int> sub;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    sub.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) sub.push_back(pi[i]);
    seen.insert(pattern_of(sub));
  }
  return {seen.begin(), seen.end()};
}

} // namespace permgrid
