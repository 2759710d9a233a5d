#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "permgrid/error.hpp"

namespace permgrid::cli {

namespace {

constexpr const char* matrix_convention =
    "text and rows_top_first list the top row first; entry (k,l) is column k from the left, row l from the bottom";

std::string big(const BigInt& x) { return x.str(); }

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

json perm_json(const std::optional<Permutation>& p) { return p ? json(p->to_string()) : json(nullptr); }

json gridding_json(const Gridding& g) { return {{"cols", g.cols}, {"rows", g.rows}}; }

Gridding gridding_from(const json& j) { return {j.at("cols").get<std::vector<int>>(), j.at("rows").get<std::vector<int>>()}; }

json matrix_json(const GridMatrix& m) {
  return {{"text", m.to_string()}, {"rows_top_first", m.rows_top_first()}, {"convention", matrix_convention}};
}

GridMatrix matrix_from(const json& j) { return GridMatrix::parse(j.at("text").get<std::string>()); }

json seq_json(const IntSequence& s) {
  json terms = json::array();
  for (const auto& t : s.terms) terms.push_back(big(t));
  return {{"start", s.start}, {"terms", terms}};
}

json fit_json(const PolynomialFit& f) {
  json coeffs = json::array();
  for (const auto& c : f.coefficients) coeffs.push_back(rational_str(c));
  return {{"polynomial", f.to_string()}, {"coefficients", coeffs}, {"onset", f.onset}, {"degree", f.degree},
          {"stable_terms", f.stable}};
}

json base_report(const std::string& command, json inputs) {
  return {{"tool", "permgrid"},  {"version", tool_version}, {"command", command},
          {"inputs", std::move(inputs)}, {"results", json::object()}, {"certificates", json::object()}};
}

json sum_test_json(const LongSumTest& t) { return {{"unbounded", t.contains_long_sums}, {"blocker", perm_json(t.blocker)}}; }

LongSumTest sum_test_from(const json& j) {
  LongSumTest t;
  t.contains_long_sums = j.at("unbounded").get<bool>();
  if (!j.at("blocker").is_null()) t.blocker = Permutation::parse(j.at("blocker").get<std::string>());
  return t;
}

std::optional<Permutation> opt_perm(const json& j) {
  if (j.is_null()) return std::nullopt;
  return Permutation::parse(j.get<std::string>());
}

} // namespace

json verdict_to_json(const DichotomyVerdict& v) {
  json j;
  j["kind"] = to_string(v.kind);
  j["finiteness"] = {{"finite", v.finiteness.finite},
                     {"increasing", perm_json(v.finiteness.increasing)},
                     {"decreasing", perm_json(v.finiteness.decreasing)}};
  if (v.griddability) {
    j["griddability"] = {{"griddable", v.griddability->griddable},
                         {"direct_sums_21", sum_test_json(v.griddability->direct)},
                         {"skew_sums_12", sum_test_json(v.griddability->skew)}};
  } else {
    j["griddability"] = nullptr;
  }
  if (v.alternations) {
    json blockers = json::array();
    for (const auto& w : v.alternations->blockers)
      blockers.push_back({{"matrix", matrix_json(w.matrix)}, {"member", w.member.to_string()}, {"gridding", gridding_json(w.gridding)}});
    j["alternations"] = {{"unbounded", v.alternations->contains_long_alternations},
                         {"free_matrix", v.alternations->free_matrix ? matrix_json(*v.alternations->free_matrix) : json(nullptr)},
                         {"blockers", blockers}};
  } else {
    j["alternations"] = nullptr;
  }
  return j;
}

DichotomyVerdict verdict_from_json(const json& j) {
  DichotomyVerdict v;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "Finite") v.kind = DichotomyKind::Finite;
  else if (kind == "EventuallyPolynomial") v.kind = DichotomyKind::EventuallyPolynomial;
  else if (kind == "AtLeastFibonacci") v.kind = DichotomyKind::AtLeastFibonacci;
  else throw ParseError("unknown verdict kind '" + kind + "'");
  const auto& f = j.at("finiteness");
  v.finiteness.finite = f.at("finite").get<bool>();
  v.finiteness.increasing = opt_perm(f.at("increasing"));
  v.finiteness.decreasing = opt_perm(f.at("decreasing"));
  if (!j.at("griddability").is_null()) {
    const auto& g = j.at("griddability");
    v.griddability = GriddabilityCertificate{g.at("griddable").get<bool>(), sum_test_from(g.at("direct_sums_21")),
                                             sum_test_from(g.at("skew_sums_12"))};
  }
  if (!j.at("alternations").is_null()) {
    const auto& a = j.at("alternations");
    AlternationCertificate c;
    c.contains_long_alternations = a.at("unbounded").get<bool>();
    if (!a.at("free_matrix").is_null()) c.free_matrix = matrix_from(a.at("free_matrix"));
    for (const auto& w : a.at("blockers"))
      c.blockers.push_back({matrix_from(w.at("matrix")), Permutation::parse(w.at("member").get<std::string>()),
                            gridding_from(w.at("gridding"))});
    v.alternations = c;
  }
  return v;
}

// ------------------------------------------------------------- commands

json cmd_classify(const FiniteBasis& basis, std::optional<std::size_t> horizon, std::size_t memory_cap) {
  json inputs = {{"basis", basis.to_string()}};
  if (horizon) inputs["max_n"] = *horizon;
  json r = base_report("classify", inputs);
  const auto verdict = classify_dichotomy(basis);
  r["results"]["verdict"] = to_string(verdict.kind);
  r["certificates"] = verdict_to_json(verdict);
  if (horizon) {
    const auto counts = enumerate_class(basis, *horizon, memory_cap);
    r["results"]["counts"] = seq_json(counts);
    json check;
    switch (verdict.kind) {
    case DichotomyKind::AtLeastFibonacci:
      check = {{"check", "dominates_fibonacci"}, {"passed", dominates_fibonacci(counts)}};
      break;
    case DichotomyKind::EventuallyPolynomial: {
      auto fit = fit_polynomial(counts);
      check = {{"check", "fit_polynomial"}, {"passed", fit.has_value()}};
      if (fit) check["fit"] = fit_json(*fit);
      break;
    }
    case DichotomyKind::Finite:
      check = {{"check", "reaches_zero"},
               {"passed", std::any_of(counts.terms.begin(), counts.terms.end(), [](const BigInt& c) { return c == 0; })}};
      break;
    }
    r["results"]["consistency"] = check;
  }
  return r;
}

json cmd_enumerate(const FiniteBasis& basis, std::size_t horizon, std::size_t memory_cap) {
  json r = base_report("enumerate", {{"basis", basis.to_string()}, {"max_n", horizon}});
  r["results"]["counts"] = seq_json(enumerate_class(basis, horizon, memory_cap));
  return r;
}

json cmd_grid_member(const GridMatrix& m, const Permutation& pi) {
  json r = base_report("grid-member", {{"matrix", matrix_json(m)}, {"perm", pi.to_string()}});
  auto g = find_gridding(pi, m);
  r["results"]["member"] = g.has_value();
  r["results"]["graph"] = to_string(classify_graph(graph_of(m)));
  r["certificates"]["gridding"] = g ? gridding_json(*g) : json(nullptr);
  return r;
}

json cmd_greedy(const GridMatrix& m, const Permutation& pi) {
  json r = base_report("greedy", {{"matrix", matrix_json(m)}, {"perm", pi.to_string()}});
  auto g = greedy_gridding(pi, m);
  r["results"]["member"] = g.has_value();
  r["certificates"]["gridding"] = g ? gridding_json(*g) : json(nullptr);
  if (g) {
    auto d = peg_decomposition(pi, m);
    json blocks = json::array();
    for (const auto& b : d.blocks) blocks.push_back({{"row", b.row}, {"pegs", b.pegs}, {"direction", b.direction}});
    r["results"]["peg"] = d.peg.to_string();
    r["results"]["nonpeg"] = d.nonpeg;
    r["results"]["blocks"] = blocks;
  }
  return r;
}

json cmd_cover(const Permutation& pi, const RectCover& cover) {
  json r = base_report("cover", {{"perm", pi.to_string()}, {"rects", cover.to_string()}});
  const bool valid = verify_cover(pi, cover);
  r["results"]["valid_cover"] = valid;
  if (valid) {
    auto mg = cover_to_gridding(pi, cover);
    r["results"]["matrix"] = matrix_json(mg.matrix);
    r["certificates"]["gridding"] = gridding_json(mg.gridding);
  }
  return r;
}

json cmd_downset(const VecDownset& d, std::size_t horizon) {
  json r = base_report("downset", {{"downset", d.to_string()}, {"max_n", horizon}});
  IntSequence counts{0, {}};
  for (std::size_t n = 0; n <= horizon; ++n) counts.terms.push_back(d.count_weight(n));
  r["results"]["counts"] = seq_json(counts);
  auto ev = eventual_polynomial(d);
  r["results"]["eventual_polynomial"] = fit_json(ev.fit);
  return r;
}

json cmd_series(const std::string& name, std::size_t horizon) {
  json r = base_report("series", {{"name", name}, {"max_n", horizon}});
  IntSequence s;
  if (name == "skew-merged") {
    s = skew_merged_series(horizon);
  } else if (name == "fibonacci") {
    s.start = 1;
    for (std::size_t n = 1; n <= horizon; ++n) s.terms.push_back(fibonacci(static_cast<long long>(n)));
  } else {
    throw ParseError("unknown series '" + name + "' (expected skew-merged or fibonacci)");
  }
  r["results"]["sequence"] = seq_json(s);
  return r;
}

// --------------------------------------------------------------- verify

std::vector<std::string> verify_report(const json& report) {
  std::vector<std::string> failures;
  auto expect = [&](bool cond, const std::string& what) {
    if (!cond) failures.push_back(what);
  };
  const auto command = report.at("command").get<std::string>();
  const auto& in = report.at("inputs");
  const auto& res = report.at("results");
  const auto& cert = report.at("certificates");

  if (command == "classify") {
    const auto basis = FiniteBasis::parse(in.at("basis").get<std::string>());
    const auto verdict = verdict_from_json(cert);
    expect(check_certificate(basis, verdict), "certificate does not check");
    expect(to_string(classify_dichotomy(basis).kind) == res.at("verdict").get<std::string>(), "verdict differs on recomputation");
    if (res.contains("counts")) {
      const auto n = in.at("max_n").get<std::size_t>();
      expect(seq_json(enumerate_class(basis, n)) == res.at("counts"), "counts differ on recomputation");
    }
  } else if (command == "enumerate") {
    const auto basis = FiniteBasis::parse(in.at("basis").get<std::string>());
    expect(seq_json(enumerate_class(basis, in.at("max_n").get<std::size_t>())) == res.at("counts"), "counts differ");
  } else if (command == "grid-member" || command == "greedy") {
    const auto m = matrix_from(in.at("matrix"));
    const auto pi = Permutation::parse(in.at("perm").get<std::string>());
    if (res.at("member").get<bool>()) {
      const auto g = gridding_from(cert.at("gridding"));
      expect(verify_gridding(pi, m, g), "gridding does not verify");
      if (command == "greedy") {
        expect(greedy_gridding(pi, m) == g, "gridding is not the greedy gridding");
        auto d = peg_decomposition(pi, m);
        expect(d.peg.to_string() == res.at("peg").get<std::string>(), "peg permutation differs");
        expect(reconstruct_from_peg(d, m) == pi, "peg decomposition does not reconstruct the permutation");
      }
    } else {
      expect(!find_gridding(pi, m), "claimed non-member has a gridding");
    }
  } else if (command == "cover") {
    const auto pi = Permutation::parse(in.at("perm").get<std::string>());
    const auto cover = RectCover::parse(in.at("rects").get<std::string>());
    expect(verify_cover(pi, cover) == res.at("valid_cover").get<bool>(), "cover validity differs");
    if (res.at("valid_cover").get<bool>()) {
      const auto m = matrix_from(res.at("matrix"));
      const std::size_t dim = 2 * cover.rects.size() - 1;
      expect(m.cols() == dim && m.rows() == dim, "matrix is not (2s-1)x(2s-1)");
      expect(verify_gridding(pi, m, gridding_from(cert.at("gridding"))), "gridding does not verify");
    }
  } else if (command == "downset") {
    const auto d = VecDownset::parse(in.at("downset").get<std::string>());
    auto again = cmd_downset(d, in.at("max_n").get<std::size_t>());
    expect(again.at("results") == res, "downset results differ");
  } else if (command == "series") {
    auto again = cmd_series(in.at("name").get<std::string>(), in.at("max_n").get<std::size_t>());
    expect(again.at("results") == res, "series terms differ");
  } else {
    failures.push_back("unknown command '" + command + "'");
  }
  return failures;
}

// ---------------------------------------------------------------- table

namespace {

void flatten(const json& j, const std::string& path, std::ostringstream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), os);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
  } else {
    os << path << "  " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

} // namespace

std::string to_table(const json& report) {
  std::ostringstream os;
  flatten(report, "", os);
  return os.str();
}

// ------------------------------------------------------------------ run

Outcome run(const std::vector<std::string>& args) {
  CLI::App app{"Grid classes of permutations: gridding, enumeration and the Fibonacci dichotomy", "permgrid"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  std::size_t memory_cap = default_memory_cap;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--memory-cap", memory_cap, "Maximum stored permutations per length")->check(CLI::PositiveNumber);

  std::string basis_text, matrix_text, perm_text, rects_text, downset_text, series_name, report_path;
  std::size_t max_n = 10;
  std::optional<std::size_t> classify_n;

  auto* classify = app.add_subcommand("classify", "Fibonacci-dichotomy verdict for Av(B)");
  classify->add_option("--basis", basis_text, "Basis patterns")->required();
  classify->add_option("--max-n", classify_n, "Also count to this horizon and run the consistency check");

  auto* enumerate = app.add_subcommand("enumerate", "Exact counts of Av(B)");
  enumerate->add_option("--basis", basis_text, "Basis patterns")->required();
  enumerate->add_option("--max-n", max_n, "Horizon")->check(CLI::PositiveNumber);

  auto* member = app.add_subcommand("grid-member", "Find an M-gridding of a permutation");
  member->add_option("--matrix", matrix_text, "Matrix, top row first")->required();
  member->add_option("--perm", perm_text, "Permutation")->required();

  auto* greedy = app.add_subcommand("greedy", "Greedy gridding and peg decomposition (matching matrices)");
  greedy->add_option("--matrix", matrix_text, "Matrix, top row first")->required();
  greedy->add_option("--perm", perm_text, "Permutation")->required();

  auto* cover = app.add_subcommand("cover", "Gridding from a cover by monotone rectangles");
  cover->add_option("--perm", perm_text, "Permutation")->required();
  cover->add_option("--rects", rects_text, "Rectangles [w,x]x[y,z] separated by ';'")->required();

  auto* downset = app.add_subcommand("downset", "Weight counts and eventual polynomial of a downset of N^m");
  downset->add_option("--downset", downset_text, "Downset, e.g. 'm=2; forbidden=(1,1)'")->required();
  downset->add_option("--max-n", max_n, "Largest weight to count");

  auto* series = app.add_subcommand("series", "Exact sequences: skew-merged, fibonacci");
  series->add_option("name", series_name, "Series name")->required();
  series->add_option("--max-n", max_n, "Number of terms")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Re-verify a report produced by another command");
  verify->add_option("--report", report_path, "Report file, '-' for standard input")->required();

  Outcome outcome;
  std::ostringstream out, err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    outcome.exit_code = app.exit(e, out, err);
    if (outcome.exit_code != 0) outcome.exit_code = ExitCode::parse_error;
    outcome.out = out.str();
    outcome.err = err.str();
    return outcome;
  }

  const auto started = std::chrono::steady_clock::now();
  try {
    json report;
    if (*classify) report = cmd_classify(FiniteBasis::parse(basis_text), classify_n, memory_cap);
    else if (*enumerate) report = cmd_enumerate(FiniteBasis::parse(basis_text), max_n, memory_cap);
    else if (*member) report = cmd_grid_member(GridMatrix::parse(matrix_text), Permutation::parse(perm_text));
    else if (*greedy) report = cmd_greedy(GridMatrix::parse(matrix_text), Permutation::parse(perm_text));
    else if (*cover) report = cmd_cover(Permutation::parse(perm_text), RectCover::parse(rects_text));
    else if (*downset) report = cmd_downset(VecDownset::parse(downset_text), max_n);
    else if (*series) report = cmd_series(series_name, max_n);
    else if (*verify) {
      json input;
      try {
        if (report_path == "-") {
          input = json::parse(std::cin);
        } else {
          std::ifstream f(report_path);
          if (!f) throw ParseError("cannot open report '" + report_path + "'");
          input = json::parse(f);
        }
      } catch (const json::exception& e) {
        throw ParseError(std::string("report is not valid JSON: ") + e.what());
      }
      auto failures = verify_report(input);
      report = base_report("verify", {{"report_command", input.at("command")}});
      report["results"]["verified"] = failures.empty();
      report["results"]["failures"] = failures;
      if (!failures.empty()) outcome.exit_code = ExitCode::verification_failed;
    }
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
    report["timing"] = {{"elapsed_ms", elapsed.count()}};
    out << (format == "table" ? to_table(report) : report.dump(2) + "\n");
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    outcome.exit_code = ExitCode::parse_error;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << '\n';
    outcome.exit_code = ExitCode::precondition_error;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    outcome.exit_code = ExitCode::resource_error;
  } catch (const json::exception& e) {
    err << "malformed report: " << e.what() << '\n';
    outcome.exit_code = ExitCode::parse_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    outcome.exit_code = ExitCode::failure;
  }
  outcome.out = out.str();
  outcome.err = err.str();
  return outcome;
}

} // namespace permgrid::cli
