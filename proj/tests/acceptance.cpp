// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "permgrid/class_analysis.hpp"
#include "permgrid/error.hpp"
#include "permgrid/gridding.hpp"
#include "permgrid/series.hpp"
#include "permgrid/vector_downset.hpp"

using namespace permgrid;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  [" << id << "] " << name << ": " << detail << std::endl;
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

// 1
void skew_merged_cross_check() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto counts = enumerate_class(FiniteBasis::parse("2143 3412"), 9);
  const double secs = seconds_since(t0);
  const auto series = skew_merged_series(9);
  const bool ok = counts == series && secs < 60.0;
  std::ostringstream os;
  os << "enumerate_class to N=9 equals the series term-for-term (exact), a_9 = " << counts.at(9) << ", runtime "
     << fmt_seconds(secs) << " (limit 60 s)";
  report(1, "skew-merged cross-check", ok, os.str());
}

// 2
void fibonacci_class() {
  const auto counts = enumerate_class(FiniteBasis::parse("231 312 321"), 12);
  bool ok = counts.terms.size() == 12;
  for (long long n = 1; ok && n <= 12; ++n) ok = counts.at(n) == fibonacci(n);
  std::ostringstream os;
  os << "Av(231,312,321) counts equal F_1..F_12 with F_1=1, F_2=2 (exact), F_12 = " << counts.at(12);
  report(2, "Fibonacci class", ok, os.str());
}

// 3
void juxtaposition_counts() {
  const auto same = GridMatrix::parse("1 1"), mixed = GridMatrix::parse("1 -1");
  bool ok = true;
  std::size_t mismatches = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    std::size_t a = 0, b = 0;
    for (const auto& p : all_permutations(n)) {
      a += in_grid_class(p, same) ? 1 : 0;
      b += in_grid_class(p, mixed) ? 1 : 0;
    }
    if (a != (std::size_t{1} << n) - n) ++mismatches;
    if (b != std::size_t{1} << (n - 1)) ++mismatches;
  }
  ok = mismatches == 0;
  report(3, "juxtaposition counts", ok,
         "members of S_n in Grid(1 1) number 2^n - n and in Grid(1 -1) number 2^(n-1), n <= 8 (exact), " +
             std::to_string(mismatches) + " mismatches");
}

// 4
void dichotomy_consistency() {
  std::mt19937 rng(20240601);
  std::uniform_int_distribution<int> size(1, 3);
  std::discrete_distribution<int> len({0, 1, 2, 4, 8}); // lengths 1..4, favouring longer patterns
  const std::size_t horizon = 9;
  std::size_t tested = 0, inconsistent = 0, extended = 0;
  std::size_t kinds[3] = {0, 0, 0};
  std::string first_bad;
  const auto t0 = std::chrono::steady_clock::now();
  while (tested < 200) {
    std::vector<Permutation> pats;
    const int k = size(rng);
    for (int i = 0; i < k; ++i) pats.push_back(oracle::random_permutation(static_cast<std::size_t>(len(rng)), rng));
    const FiniteBasis b(pats);
    const auto v = classify_dichotomy(b);
    bool ok = check_certificate(b, v);
    switch (v.kind) {
    case DichotomyKind::AtLeastFibonacci:
      ok = ok && dominates_fibonacci(enumerate_class(b, horizon));
      break;
    case DichotomyKind::EventuallyPolynomial: {
      auto fit = fit_polynomial(enumerate_class(b, horizon), 3);
      ok = ok && fit && fit->stable >= 3;
      break;
    }
    case DichotomyKind::Finite: {
      // by Erdos-Szekeres every permutation longer than (a-1)(b-1) contains one of the witnesses
      const std::size_t bound = (v.finiteness.increasing->size() - 1) * (v.finiteness.decreasing->size() - 1) + 1;
      const std::size_t h = std::max(horizon, bound);
      if (h > horizon) ++extended;
      const auto counts = enumerate_class(b, h);
      ok = ok && counts.terms.back() == 0;
      break;
    }
    }
    ++kinds[static_cast<int>(v.kind)];
    if (!ok) {
      ++inconsistent;
      if (first_bad.empty()) first_bad = b.to_string();
    }
    ++tested;
  }
  std::ostringstream os;
  os << tested << " random bases (length <= 4, size <= 3) to horizon 9: " << kinds[0] << " Finite, " << kinds[1]
     << " EventuallyPolynomial, " << kinds[2] << " AtLeastFibonacci; " << inconsistent
     << " inconsistencies (tolerance 0); Finite checked to max(9, (a-1)(b-1)+1), extended for " << extended << "; "
     << fmt_seconds(seconds_since(t0));
  if (!first_bad.empty()) os << "; first inconsistent basis {" << first_bad << "}";
  report(4, "dichotomy consistency", inconsistent == 0, os.str());
}

// 5
void gridding_oracle_equivalence() {
  std::size_t matrices = 0, checks = 0, mismatches = 0;
  for (std::size_t t = 1; t <= 2; ++t)
    for (std::size_t u = 1; u <= 2; ++u)
      for (const auto& m : oracle::all_matrices(t, u)) {
        ++matrices;
        for (std::size_t n = 0; n <= 6; ++n)
          for (const auto& pi : all_permutations(n)) {
            ++checks;
            const auto g = find_gridding(pi, m);
            const bool want = oracle::in_grid(pi, m);
            if (g.has_value() != want || (g && !oracle::is_gridding(pi, m, g->cols, g->rows))) ++mismatches;
          }
      }
  report(5, "gridding oracle equivalence", mismatches == 0,
         std::to_string(matrices) + " matrices x all |pi| <= 6 (" + std::to_string(checks) +
             " pairs) against exhaustive division enumeration, " + std::to_string(mismatches) + " mismatches (tolerance 0)");
}

// 6
bool monotone_region(const Permutation& pi, const Rect& r) {
  auto cell = subgrid(pi, r.columns, r.values);
  return std::is_sorted(cell.begin(), cell.end()) || std::is_sorted(cell.begin(), cell.end(), std::greater<>());
}

std::optional<RectCover> random_cover(std::mt19937& rng, Permutation& pi_out) {
  // a random matrix with t*u <= 3 and a random gridded member of Grid(M)
  static const std::vector<std::pair<std::size_t, std::size_t>> shapes{{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}};
  const auto [t, u] = shapes[std::uniform_int_distribution<std::size_t>(0, shapes.size() - 1)(rng)];
  GridMatrix m(t, u);
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  std::uniform_int_distribution<int> entry(-1, 1);
  for (std::size_t k = 1; k <= t; ++k)
    for (std::size_t l = 1; l <= u; ++l) {
      m.set(k, l, entry(rng));
      if (m.at(k, l) != 0) cells.emplace_back(k, l);
    }
  if (cells.empty()) return std::nullopt;
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
  std::vector<std::size_t> cell_of(n);
  for (auto& c : cell_of) c = std::uniform_int_distribution<std::size_t>(0, cells.size() - 1)(rng);

  // positions: columns left to right, each column's points in random order; same for rows
  std::vector<int> x(n), y(n);
  int next = 1;
  for (std::size_t k = 1; k <= t; ++k) {
    std::vector<std::size_t> pts;
    for (std::size_t i = 0; i < n; ++i)
      if (cells[cell_of[i]].first == k) pts.push_back(i);
    std::shuffle(pts.begin(), pts.end(), rng);
    for (auto i : pts) x[i] = next++;
  }
  next = 1;
  for (std::size_t l = 1; l <= u; ++l) {
    std::vector<std::size_t> pts;
    for (std::size_t i = 0; i < n; ++i)
      if (cells[cell_of[i]].second == l) pts.push_back(i);
    std::shuffle(pts.begin(), pts.end(), rng);
    for (auto i : pts) y[i] = next++;
  }
  // make each cell monotone in its direction
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::vector<std::size_t> pts;
    for (std::size_t i = 0; i < n; ++i)
      if (cell_of[i] == c) pts.push_back(i);
    std::vector<int> ys;
    for (auto i : pts) ys.push_back(y[i]);
    std::sort(pts.begin(), pts.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::sort(ys.begin(), ys.end());
    if (m.at(cells[c].first, cells[c].second) < 0) std::reverse(ys.begin(), ys.end());
    for (std::size_t j = 0; j < pts.size(); ++j) y[pts[j]] = ys[j];
  }
  // every column and row strip must be nonempty so each cell is a rectangle
  std::vector<int> col_lo(t + 1, 0), col_hi(t + 1, 0), row_lo(u + 1, 0), row_hi(u + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [k, l] = cells[cell_of[i]];
    col_lo[k] = col_lo[k] ? std::min(col_lo[k], x[i]) : x[i];
    col_hi[k] = std::max(col_hi[k], x[i]);
    row_lo[l] = row_lo[l] ? std::min(row_lo[l], y[i]) : y[i];
    row_hi[l] = std::max(row_hi[l], y[i]);
  }
  for (std::size_t k = 1; k <= t; ++k)
    if (!col_lo[k]) return std::nullopt;
  for (std::size_t l = 1; l <= u; ++l)
    if (!row_lo[l]) return std::nullopt;

  std::vector<int> values(n);
  for (std::size_t i = 0; i < n; ++i) values[static_cast<std::size_t>(x[i] - 1)] = y[i];
  const Permutation pi(values);

  // the cells tile the square; enlarge each while its region stays monotone
  RectCover cover;
  std::uniform_int_distribution<int> side(0, 3);
  const int last = static_cast<int>(n);
  for (std::size_t k = 1; k <= t; ++k)
    for (std::size_t l = 1; l <= u; ++l) {
      Rect r{{col_lo[k], col_hi[k]}, {row_lo[l], row_hi[l]}};
      for (int step = 0; step < 6; ++step) {
        Rect bigger = r;
        switch (side(rng)) {
        case 0: bigger.columns.lo -= 1; break;
        case 1: bigger.columns.hi += 1; break;
        case 2: bigger.values.lo -= 1; break;
        default: bigger.values.hi += 1; break;
        }
        if (bigger.columns.lo < 1 || bigger.values.lo < 1 || bigger.columns.hi > last || bigger.values.hi > last) continue;
        if (monotone_region(pi, bigger)) r = bigger;
      }
      cover.rects.push_back(r);
    }
  pi_out = pi;
  return cover;
}

void cover_construction() {
  std::mt19937 rng(99);
  std::size_t covers = 0, bad = 0, invalid_input = 0;
  std::size_t by_s[4] = {0, 0, 0, 0};
  while (covers < 150) {
    Permutation pi;
    auto cover = random_cover(rng, pi);
    if (!cover) continue;
    if (!verify_cover(pi, *cover)) {
      ++invalid_input;
      continue;
    }
    ++covers;
    const std::size_t s = cover->rects.size();
    ++by_s[s];
    const auto mg = cover_to_gridding(pi, *cover);
    const bool ok = mg.matrix.cols() == 2 * s - 1 && mg.matrix.rows() == 2 * s - 1 &&
                    verify_gridding(pi, mg.matrix, mg.gridding) &&
                    oracle::is_gridding(pi, mg.matrix, mg.gridding.cols, mg.gridding.rows);
    if (!ok) ++bad;
  }
  std::ostringstream os;
  os << covers << " random valid covers (n <= 10; s = 1, 2, 3: " << by_s[1] << ", " << by_s[2] << ", " << by_s[3]
     << "), " << bad << " without a verified (2s-1)x(2s-1) gridding (tolerance 0)";
  report(6, "cover construction", bad == 0 && invalid_input == 0, os.str());
}

// 7
void peg_roundtrip() {
  const auto staircase_m = GridMatrix::parse("0 0 0 -1; 1 0 0 0; 0 -1 0 0; 0 0 1 0");
  const auto staircase = Permutation::parse("10,9,8,7,6,5,4,3,1,2,14,13,12,11");
  const std::vector<GridMatrix> classes{staircase_m, GridMatrix::parse("1 0 0; 0 0 -1; 0 1 0")};
  std::size_t members = 0, bad = 0;
  for (const auto& m : classes)
    for (std::size_t n = 0; n <= 8; ++n)
      for (const auto& pi : all_permutations(n)) {
        if (!in_grid_class(pi, m)) continue;
        ++members;
        if (reconstruct_from_peg(peg_decomposition(pi, m), m) != pi) ++bad;
      }
  const auto d = peg_decomposition(staircase, staircase_m);
  const bool example_ok = d.peg == Permutation::parse("5431276") && d.nonpeg == std::vector<std::size_t>{0, 5, 0, 2};
  std::ostringstream os;
  os << members << " members (|pi| <= 8) of Grid(" << classes[0].to_string() << ") and Grid(" << classes[1].to_string()
     << "), " << bad << " roundtrip failures (tolerance 0); staircase example: peg " << d.peg.to_string() << ", non-peg (";
  for (std::size_t i = 0; i < d.nonpeg.size(); ++i) os << (i ? "," : "") << d.nonpeg[i];
  os << ") (exact)";
  report(7, "peg roundtrip", bad == 0 && example_ok, os.str());
}

// 8
BigInt order_m_difference(const VecDownset& d, std::size_t n) {
  const std::size_t m = d.dim();
  BigInt acc = 0;
  for (std::size_t i = 0; i <= m; ++i) {
    BigInt term = binomial(static_cast<long long>(m), static_cast<long long>(i)) * d.count_weight(n + i);
    acc += ((m - i) % 2 == 0) ? term : BigInt(-term);
  }
  return acc;
}

void downset_polynomiality() {
  std::mt19937 rng(31337);
  std::uniform_int_distribution<std::size_t> dim(1, 4), size(0, 4), entry(0, 4);
  std::size_t tested = 0, count_bad = 0, diff_bad = 0, fit_bad = 0, literal_breaks = 0;
  for (; tested < 120; ++tested) {
    const std::size_t m = dim(rng);
    std::vector<Vec> fs(size(rng));
    for (auto& f : fs) {
      f.resize(m);
      for (auto& e : f) e = entry(rng);
    }
    const VecDownset d(m, fs);
    const auto brute = oracle::box_counts(d, 12);
    for (std::size_t n = 0; n <= 12; ++n)
      if (d.count_weight(n) != brute[n]) ++count_bad;

    const std::size_t from = d.join_weight() + 1 >= m ? d.join_weight() + 1 - m : 0;
    bool diffs_ok = true;
    for (std::size_t n = from; n <= from + 20; ++n) diffs_ok = diffs_ok && order_m_difference(d, n) == 0;
    if (!diffs_ok) ++diff_bad;
    for (std::size_t n = d.max_forbidden_weight(); n < from; ++n)
      if (order_m_difference(d, n) != 0) {
        ++literal_breaks;
        break;
      }

    try {
      const auto e = eventual_polynomial(d);
      bool ok = e.fit.degree + 1 <= m;
      for (long long n = e.fit.onset; ok && n <= e.counts.last_index() + 20; ++n)
        ok = e.fit(n) == Rational(d.count_weight(static_cast<std::size_t>(n)));
      if (!ok) ++fit_bad;
    } catch (const Error&) {
      ++fit_bad;
    }
  }
  std::ostringstream os;
  os << tested << " random downsets (m <= 4, entries <= 4): " << count_bad
     << " count_weight mismatches vs box scan for n <= 12, " << diff_bad
     << " with nonzero order-m differences for n >= ||join F|| - m + 1, " << fit_bad
     << " without a degree <= m-1 eventual fit (tolerance 0 each); " << literal_breaks
     << " have a nonzero order-m difference at some n >= max ||f|| below that threshold";
  report(8, "downset polynomiality", count_bad == 0 && diff_bad == 0 && fit_bad == 0, os.str());
}

// 9
void erdos_szekeres() {
  std::size_t checked = 0, violations = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto need = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n)) - 1e-12));
    for (const auto& p : all_permutations(n)) {
      ++checked;
      const auto ml = longest_monotone(p);
      if (std::max(ml.increasing, ml.decreasing) < need) ++violations;
    }
  }
  report(9, "Erdos-Szekeres", violations == 0,
         "all " + std::to_string(checked) + " permutations of length 1..8 have a monotone subsequence of length >= "
             "ceil(sqrt(n)), " + std::to_string(violations) + " violations (tolerance 0)");
}

} // namespace

int main() {
  skew_merged_cross_check();
  fibonacci_class();
  juxtaposition_counts();
  dichotomy_consistency();
  gridding_oracle_equivalence();
  cover_construction();
  peg_roundtrip();
  downset_polynomiality();
  erdos_szekeres();
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
