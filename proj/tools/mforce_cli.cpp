// mforce: command-line front end. Positions are 1-based in all output.
//
// Exit codes: 0 success / true / all checks passed, 1 false / a check failed,
// 2 usage, parse or precondition error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mforce/bitmatrix.hpp"
#include "mforce/forcing.hpp"
#include "mforce/json_io.hpp"
#include "mforce/patterns.hpp"
#include "mforce/search.hpp"
#include "mforce/strong_forcing.hpp"
#include "mforce/suites.hpp"

namespace {

using namespace mforce;

enum ExitCode { kOk = 0, kFalse = 1, kError = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Accepts plain integers, "1e9" and "10^9".
std::uint64_t parse_count(const std::string& text) {
  const auto caret = text.find('^');
  try {
    if (caret != std::string::npos) {
      const auto base = std::stoull(text.substr(0, caret));
      const auto exp = std::stoull(text.substr(caret + 1));
      long double v = std::pow(static_cast<long double>(base), static_cast<long double>(exp));
      if (v > 1.8e19L) throw UsageError("count '" + text + "' is too large");
      return static_cast<std::uint64_t>(v);
    }
    std::size_t used = 0;
    const long double v = std::stold(text, &used);
    if (used != text.size() || v < 0 || v > 1.8e19L || v != std::floor(v)) throw UsageError("bad count '" + text + "'");
    return static_cast<std::uint64_t>(v);
  } catch (const std::logic_error&) {
    throw UsageError("bad count '" + text + "'");
  }
}

double millis_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void write_matrix(const BitMatrix& a, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << serialize(a);
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << serialize(a);
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

struct MinArgs {
  std::size_t m = 0, n = 0;
  std::string pattern, emit = "count", format = "text";
  bool explain = false;
};

int cmd_min(const MinArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto q = load_matrix(a.pattern);
  if (q.all_zero()) throw std::invalid_argument("pattern has no 1-entries");
  const auto matrix = minimal_forcing(a.m, a.n, q);
  std::string formula = "window";
  std::size_t count = matrix.ones_count();
  try {
    const auto r = min_ones(a.m, a.n, q);
    formula = to_string(r.formula);
    if (r.value != count) throw std::logic_error("closed form disagrees with the window algorithm");
  } catch (const std::domain_error&) {
  }
  const bool want_count = a.emit != "matrix", want_matrix = a.emit != "count";

  if (a.format == "json") {
    json out{{"command", "min"},
             {"inputs", {{"m", a.m}, {"n", a.n}, {"pattern", a.pattern}}},
             {"outputs", json::object()},
             {"passed", true}};
    auto& o = out["outputs"];
    if (want_count) {
      o["min_ones"] = count;
      o["formula"] = formula;
    }
    if (want_matrix) o["matrix"] = serialize(matrix);
    if (a.explain) {
      o["corners"] = to_json(corner_functions(q));
      o["core"] = to_json(core(q));
    }
    out["timing_ms"] = millis_since(t0);
    print_json(out);
    return kOk;
  }
  if (want_count) std::cout << count << '\n';
  if (want_matrix) std::cout << serialize(matrix);
  if (a.explain) {
    const auto rep = corner_functions(q);
    const auto dec = core(q);
    std::cout << "formula: " << formula << '\n'
              << "corners: NW=" << rep.nw.size() << " SW=" << rep.sw.size() << " NE=" << rep.ne.size()
              << " SE=" << rep.se.size() << '\n'
              << "core: rows " << dec.top_zero_rows + 1 << ".." << q.rows() - dec.bottom_zero_rows << ", cols "
              << dec.left_zero_cols + 1 << ".." << q.cols() - dec.right_zero_cols << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string ambient, pattern, format = "text";
  bool witness = false;
};

int cmd_check(const std::string& kind, const CheckArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto amb = load_matrix(a.ambient);
  const auto q = load_matrix(a.pattern);
  if (amb.rows() < q.rows() || amb.cols() < q.cols()) throw std::invalid_argument("ambient smaller than pattern");

  bool result = false;
  json witnesses = json::array();
  if (kind == "forcing") {
    result = is_forcing(amb, q);
  } else if (a.witness) {
    result = true;
    for (const auto& [pos, w] : witness_report(amb, q)) {
      json entry{{"position", {pos.row + 1, pos.col + 1}}};
      entry["witness"] = w ? to_json(*w) : json(nullptr);
      if (!w) result = false;
      witnesses.push_back(entry);
    }
  } else {
    result = is_strongly_forcing(amb, q);
  }

  if (a.format == "json") {
    json out{{"command", "check " + kind},
             {"inputs", {{"ambient", a.ambient}, {"pattern", a.pattern}}},
             {"outputs", {{"result", result}}},
             {"passed", result}};
    if (a.witness && kind == "strong") out["outputs"]["witnesses"] = witnesses;
    out["timing_ms"] = millis_since(t0);
    print_json(out);
  } else {
    std::cout << (result ? "true" : "false") << '\n';
    if (a.witness && kind == "strong") print_json(witnesses);
  }
  return result ? kOk : kFalse;
}

// ---------------------------------------------------------------------------

struct ConstructArgs {
  std::size_t m = 0, n = 0, k = 0, n1 = 0, k1 = 0, n2 = 0, k2 = 0;
  std::string pattern, variant = "i2", left, right, out, emit = "matrix", format = "text";
};

BitMatrix build(const std::string& which, const ConstructArgs& a) {
  auto need = [&](std::size_t v, const char* flag) {
    if (v == 0) throw UsageError(std::string("construct ") + which + " requires --" + flag);
  };
  if (which == "a-mnq" || which == "linear-zero") {
    need(a.m, "m");
    need(a.n, "n");
    if (a.pattern.empty()) throw UsageError("construct " + which + " requires --pattern");
    const auto q = load_matrix(a.pattern);
    return which == "a-mnq" ? construct_A_mnQ(a.m, a.n, q) : linear_zero_construction(a.m, a.n, q);
  }
  if (which == "s-n" || which == "t-n") {
    need(a.n, "n");
    return which == "s-n" ? construct_S(a.n) : construct_T(a.n);
  }
  if (which == "s-nk") {
    need(a.n, "n");
    need(a.k, "k");
    return construct_S_nk(a.n, a.k);
  }
  if (which == "extremal-2x2") {
    need(a.n, "n");
    if (a.variant != "i2" && a.variant != "h2") throw UsageError("--variant must be i2 or h2");
    return extremal_2x2(a.n, a.variant == "i2" ? TwoByTwo::I2 : TwoByTwo::H2);
  }
  // block
  if (!a.left.empty() || !a.right.empty()) {
    if (a.left.empty() || a.right.empty()) throw UsageError("construct block needs both --left and --right");
    return direct_sum(load_matrix(a.left), load_matrix(a.right));
  }
  need(a.n1, "n1");
  need(a.k1, "k1");
  need(a.n2, "n2");
  need(a.k2, "k2");
  if (a.k1 > a.n1 || a.k2 > a.n2) throw std::invalid_argument("construct block: requires k1 <= n1 and k2 <= n2");
  return direct_sum(known_constructions(a.n1, identity(a.k1)).front(),
                    known_constructions(a.n2, identity(a.k2)).front());
}

int cmd_construct(const std::string& which, const ConstructArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto m = build(which, a);
  const bool want_count = a.emit != "matrix", want_matrix = a.emit != "count";
  if (a.format == "json") {
    json out{{"command", "construct " + which},
             {"outputs", {{"ones", m.ones_count()}, {"zeros", m.zeros_count()}, {"rows", m.rows()}, {"cols", m.cols()}}},
             {"passed", true}};
    if (want_matrix) {
      if (a.out.empty()) {
        out["outputs"]["matrix"] = serialize(m);
      } else {
        write_matrix(m, a.out);
        out["outputs"]["matrix_path"] = a.out;
      }
    }
    out["timing_ms"] = millis_since(t0);
    print_json(out);
    return kOk;
  }
  if (want_count) std::cout << m.ones_count() << '\n';
  if (want_matrix) write_matrix(m, a.out);
  return kOk;
}

// ---------------------------------------------------------------------------

struct SearchArgs {
  std::size_t n = 0;
  std::string pattern, node_budget, cache, format = "json";
  double time_budget = 0;
  bool all_extremal = false, dihedral = false, no_timing = false;
  unsigned threads = 0;
};

int cmd_search(const SearchArgs& a) {
  const auto q = load_matrix(a.pattern);
  SearchConfig cfg;
  if (!a.node_budget.empty()) cfg.node_budget = parse_count(a.node_budget);
  if (a.time_budget > 0) cfg.time_budget = std::chrono::milliseconds(static_cast<long long>(a.time_budget * 1000));
  cfg.enumerate_all_extremal = a.all_extremal;
  cfg.use_dihedral_reduction = a.dihedral;
  cfg.threads = a.threads;

  auto res = search_max(a.n, q, cfg);
  if (a.no_timing) {
    res.elapsed = std::chrono::milliseconds(0);
    res.nodes_explored = 0;
  }
  if (!a.cache.empty()) {
    ResultsCache cache(a.cache);
    cache.put(cache_key(a.n, q), res);
    cache.save();
  }
  if (a.format == "json") {
    print_json(to_json(res));
    return kOk;
  }
  std::cout << "status " << to_string(res.status) << '\n'
            << "best_ones " << res.best_ones << '\n'
            << "upper_bound " << res.upper_bound << '\n';
  for (const auto& w : res.witnesses) std::cout << '\n' << serialize(w);
  return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite, format = "csv";
  std::optional<std::size_t> n_max, k_max, search_n_max;
  bool no_timing = false;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

int cmd_verify(const VerifyArgs& a) {
  suites::Options opt;
  opt.n_max = a.n_max;
  opt.k_max = a.k_max;
  if (a.search_n_max) opt.search_n_max = *a.search_n_max;

  std::vector<std::string> names;
  if (a.suite == "all") {
    for (const auto& s : suites::kSuites) names.emplace_back(s.name);
  } else {
    names.push_back(a.suite);
  }
  suites::Table rows;
  for (const auto& name : names) {
    auto t = suites::run(name, opt);
    if (!t) throw UsageError("unknown suite '" + name + "'");
    rows.insert(rows.end(), t->begin(), t->end());
  }
  if (a.no_timing)
    for (auto& r : rows) r.millis = 0;
  const bool ok = suites::passed(rows);

  if (a.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"theorem_id", r.theorem_id},
                     {"instance", r.instance},
                     {"expected", r.expected},
                     {"actual", r.actual},
                     {"status", r.status},
                     {"millis", std::round(r.millis * 1000) / 1000}});
    }
    json inputs{{"suite", a.suite}};
    if (a.n_max) inputs["n_max"] = *a.n_max;
    if (a.k_max) inputs["k_max"] = *a.k_max;
    print_json({{"command", "verify"}, {"inputs", inputs}, {"rows", arr}, {"passed", ok}});
  } else {
    std::cout << "theorem_id,instance,expected,actual,status,millis\n";
    for (const auto& r : rows) {
      char ms[32];
      std::snprintf(ms, sizeof ms, "%.3f", r.millis);
      std::cout << csv_field(r.theorem_id) << ',' << csv_field(r.instance) << ',' << csv_field(r.expected) << ','
                << csv_field(r.actual) << ',' << r.status << ',' << ms << '\n';
    }
  }
  std::cerr << suites::count_status(rows, "pass") << " pass, " << suites::count_status(rows, "fail") << " fail, "
            << suites::count_status(rows, "info") << " info\n";
  return ok ? kOk : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pattern-forcing and strongly pattern-forcing (0,1)-matrices"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  // Patterns are files, "-" for stdin, or built-in names: iK hK jK b3 c3 d3 e3 pDIGITS.
  const std::string pattern_help = "pattern file, '-' for stdin, or a built-in name (i3, h2, b3, p2413, ...)";
  const auto emit_check = CLI::IsMember({"count", "matrix", "both"});
  const auto text_json = CLI::IsMember({"text", "json"});

  MinArgs min_args;
  auto* min = app.add_subcommand("min", "Minimal Q-forcing matrix and its ones count");
  min->add_option("--m", min_args.m, "rows")->required()->check(CLI::Range(std::size_t{1}, kMaxDim));
  min->add_option("--n", min_args.n, "columns")->required()->check(CLI::Range(std::size_t{1}, kMaxDim));
  min->add_option("--pattern", min_args.pattern, pattern_help)->required();
  min->add_option("--emit", min_args.emit, "count, matrix or both")->check(emit_check);
  min->add_option("--format", min_args.format, "text or json")->check(text_json);
  min->add_flag("--explain", min_args.explain, "also print corner sizes and core offsets");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Test whether a matrix is (strongly) Q-forcing");
  check->require_subcommand(1);
  for (const char* kind : {"forcing", "strong"}) {
    auto* sub = check->add_subcommand(kind, std::string(kind) == "forcing" ? "Q-forcing" : "strongly Q-forcing");
    sub->add_option("--ambient", check_args.ambient, "ambient matrix file or '-'")->required();
    sub->add_option("--pattern", check_args.pattern, pattern_help)->required();
    sub->add_option("--format", check_args.format, "text or json")->check(text_json);
    if (std::string(kind) == "strong") sub->add_flag("--witness", check_args.witness, "emit a witness per 1-entry");
  }

  ConstructArgs con;
  auto* construct = app.add_subcommand("construct", "Explicit constructions");
  construct->require_subcommand(1);
  for (const char* which : {"a-mnq", "s-n", "t-n", "s-nk", "linear-zero", "extremal-2x2", "block"}) {
    auto* sub = construct->add_subcommand(which);
    const std::string w = which;
    if (w == "a-mnq" || w == "linear-zero") {
      sub->add_option("--m", con.m)->required();
      sub->add_option("--n", con.n)->required();
      sub->add_option("--pattern", con.pattern, pattern_help)->required();
    } else if (w == "block") {
      sub->add_option("--n1", con.n1);
      sub->add_option("--k1", con.k1);
      sub->add_option("--n2", con.n2);
      sub->add_option("--k2", con.k2);
      sub->add_option("--left", con.left, "first block (file)");
      sub->add_option("--right", con.right, "second block (file)");
    } else {
      sub->add_option("--n", con.n)->required();
      if (w == "s-nk") sub->add_option("--k", con.k)->required();
      if (w == "extremal-2x2") sub->add_option("--variant", con.variant, "i2 or h2")->check(CLI::IsMember({"i2", "h2"}));
    }
    sub->add_option("--out", con.out, "write the matrix here instead of stdout");
    sub->add_option("--emit", con.emit, "count, matrix or both")->check(emit_check);
    sub->add_option("--format", con.format, "text or json")->check(text_json);
  }

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Branch-and-bound maximum of a strongly Q-forcing n x n matrix");
  search->add_option("--n", sa.n)->required()->check(CLI::Range(std::size_t{1}, kMaxDim));
  search->add_option("--pattern", sa.pattern, pattern_help)->required();
  search->add_option("--node-budget", sa.node_budget, "node limit (1000000, 1e9 or 10^9)");
  search->add_option("--time-budget", sa.time_budget, "seconds")->check(CLI::NonNegativeNumber);
  search->add_flag("--all-extremal", sa.all_extremal, "return every extremal matrix");
  search->add_flag("--dihedral", sa.dihedral, "prune with the pattern's symmetry group");
  search->add_option("--cache", sa.cache, "JSON results cache to update");
  search->add_option("--threads", sa.threads, "worker threads (default: MFORCE_THREADS or 1)");
  search->add_option("--format", sa.format, "json or text")->check(text_json);
  search->add_flag("--no-timing", sa.no_timing, "zero elapsed_ms and nodes_explored for reproducible output");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a verification suite and print a pass/fail table");
  std::vector<std::string> suite_names{"all"};
  for (const auto& s : suites::kSuites) suite_names.emplace_back(s.name);
  verify->add_option("--suite", va.suite, "suite name")->required()->check(CLI::IsMember(suite_names));
  verify->add_option("--n-max", va.n_max, "largest ambient size");
  verify->add_option("--k-max", va.k_max, "largest pattern size");
  verify->add_option("--search-n-max", va.search_n_max, "conjecture suite: exact search up to this n");
  verify->add_option("--format", va.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  verify->add_flag("--no-timing", va.no_timing, "report millis as 0 for reproducible output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    if (*min) return cmd_min(min_args);
    if (*check) {
      for (auto* sub : check->get_subcommands()) return cmd_check(sub->get_name(), check_args);
    }
    if (*construct) {
      for (auto* sub : construct->get_subcommands()) return cmd_construct(sub->get_name(), con);
    }
    if (*search) return cmd_search(sa);
    if (*verify) return cmd_verify(va);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
