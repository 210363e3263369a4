#pragma once

// Verification suites shared by the CLI and the acceptance harness. Each suite
// returns a table with one row per (claim, instance).

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mforce/bitmatrix.hpp"
#include "mforce/forcing.hpp"
#include "mforce/oracle.hpp"
#include "mforce/search.hpp"
#include "mforce/strong_forcing.hpp"

namespace mforce::suites {

struct Row {
  std::string theorem_id;
  std::string instance;
  std::string expected;
  std::string actual;
  std::string status;  ///< pass, fail or info
  double millis = 0;
};

struct Options {
  std::optional<std::size_t> n_max;
  std::optional<std::size_t> k_max;
  std::size_t search_n_max = 6;  ///< conjecture suite: exact search up to this n
  std::uint64_t seed = 20240611;
  SearchConfig search;
};

using Table = std::vector<Row>;

inline bool passed(const Table& t) {
  return std::none_of(t.begin(), t.end(), [](const Row& r) { return r.status == "fail"; });
}

inline std::size_t count_status(const Table& t, const std::string& status) {
  return static_cast<std::size_t>(std::count_if(t.begin(), t.end(), [&](const Row& r) { return r.status == status; }));
}

/// Rows of one id only.
inline Table only(const Table& t, const std::string& id) {
  Table out;
  std::copy_if(t.begin(), t.end(), std::back_inserter(out), [&](const Row& r) { return r.theorem_id == id; });
  return out;
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

/// Compact one-line form: rows joined by '/'.
inline std::string label(const BitMatrix& q) {
  std::string s;
  for (std::size_t i = 0; i < q.rows(); ++i) {
    if (i) s += '/';
    for (std::size_t j = 0; j < q.cols(); ++j) s += q(i, j) ? '1' : '0';
  }
  return s;
}

inline std::string perm_label(const BitMatrix& p) {
  std::string s;
  for (int v : permutation_of(p)) s += std::to_string(v);
  return s;
}

inline const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

/// Every non-zero pattern with 1 <= s, t <= 3, by size then by code.
inline std::vector<BitMatrix> small_patterns() {
  std::vector<BitMatrix> out;
  for (std::size_t s = 1; s <= 3; ++s) {
    for (std::size_t t = 1; t <= 3; ++t) {
      const std::uint64_t cells = s * t;
      for (std::uint64_t code = 1; code < (std::uint64_t{1} << cells); ++code) {
        BitMatrix q(s, t);
        for (std::size_t c = 0; c < cells; ++c)
          if ((code >> c) & 1u) q.set(c / t, c % t);
        out.push_back(std::move(q));
      }
    }
  }
  return out;
}

inline std::set<std::string> keys(const std::vector<BitMatrix>& ms) {
  std::set<std::string> out;
  for (const auto& m : ms) out.insert(serialize(m));
  return out;
}

/// Orbit under all eight symmetries of the square (transposition included for
/// non-square patterns, since the ambient is square).
inline std::vector<BitMatrix> orbit(const BitMatrix& q) {
  std::map<std::string, BitMatrix> seen;
  for (Symmetry g : kAllSymmetries) {
    auto h = apply(g, q);
    seen.emplace(serialize(h), std::move(h));
  }
  std::vector<BitMatrix> out;
  for (auto& [k, m] : seen) out.push_back(std::move(m));
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------

/// Window algorithm against the subset oracle, every pattern up to 3x3 and
/// 4 <= m, n <= n_max.
inline Table window_union(const Options& opt) {
  const std::size_t n_max = opt.n_max.value_or(7);
  Table out;
  for (const auto& q : detail::small_patterns()) {
    const auto t0 = detail::Clock::now();
    std::size_t agree = 0, total = 0;
    for (std::size_t m = 4; m <= n_max; ++m) {
      for (std::size_t n = 4; n <= n_max; ++n) {
        ++total;
        const auto fast = minimal_forcing(m, n, q);
        bool ok = fast == oracle::minimal_forcing(m, n, q);
        if (m >= 2 * q.rows() && n >= 2 * q.cols()) ok = ok && fast == construct_A_mnQ(m, n, q);
        if (ok) ++agree;
      }
    }
    out.push_back({"window-union", detail::label(q), std::to_string(total) + "/" + std::to_string(total),
                   std::to_string(agree) + "/" + std::to_string(total), detail::verdict(agree == total),
                   detail::since(t0)});
  }
  return out;
}

/// Closed forms against ones_count(minimal_forcing) on the same family where
/// m >= 2s and n >= 2t.
inline Table min_formulas(const Options& opt) {
  const std::size_t n_max = opt.n_max.value_or(7);
  Table out;
  for (const auto& q : detail::small_patterns()) {
    const auto t0 = detail::Clock::now();
    std::size_t checks = 0, agree = 0;
    for (std::size_t m = std::max<std::size_t>(4, 2 * q.rows()); m <= n_max; ++m) {
      for (std::size_t n = std::max<std::size_t>(4, 2 * q.cols()); n <= n_max; ++n) {
        const std::size_t truth = minimal_forcing(m, n, q).ones_count();
        for (auto v : {min_ones_general(m, n, q), min_ones_boundary(m, n, q), min_ones_core(m, n, q)}) {
          if (!v) continue;
          ++checks;
          if (*v == truth) ++agree;
        }
        ++checks;
        if (min_ones(m, n, q).value == truth) ++agree;
      }
    }
    if (checks == 0) continue;
    out.push_back({"min-formulas", detail::label(q), std::to_string(checks) + "/" + std::to_string(checks),
                   std::to_string(agree) + "/" + std::to_string(checks), detail::verdict(agree == checks),
                   detail::since(t0)});
  }

  // Minimum is not monotone under containment: Q1 in Q2 in Q3.
  const BitMatrix q1{{1}};
  const BitMatrix q2{{1, 0}, {0, 0}};
  const BitMatrix q3{{1, 1, 1, 1}, {1, 1, 0, 1}, {1, 0, 0, 1}, {1, 1, 1, 1}};
  for (std::size_t m = 4; m <= 12; ++m) {
    for (std::size_t n = 4; n <= 12; ++n) {
      const auto t0 = detail::Clock::now();
      const auto v1 = minimal_forcing(m, n, q1).ones_count();
      const auto v2 = minimal_forcing(m, n, q2).ones_count();
      const auto v3 = minimal_forcing(m, n, q3).ones_count();
      const bool ok = v1 > v2 && v3 > v2 && v2 == (m - 1) * (n - 1);
      out.push_back({"non-monotone", std::to_string(m) + "x" + std::to_string(n),
                     "m(Q1) > m(Q2) = " + std::to_string((m - 1) * (n - 1)) + " < m(Q3)",
                     std::to_string(v1) + " > " + std::to_string(v2) + " < " + std::to_string(v3),
                     detail::verdict(ok), detail::since(t0)});
    }
  }
  return out;
}

/// Permutation patterns: the lower bound with its equality cases (k <= 4,
/// n = 2k), and the maximum with its maximizers (k <= k_max, n = 2k+2).
inline Table perm_bounds(const Options& opt) {
  const std::size_t k_max = opt.k_max.value_or(5);
  Table out;
  for (std::size_t k = 2; k <= std::min<std::size_t>(k_max, 4); ++k) {
    const std::size_t n = 2 * k;
    const std::size_t bound = perm_min_bound(n, k);
    for (const auto& p : all_permutation_matrices(k)) {
      const auto t0 = detail::Clock::now();
      const std::size_t v = minimal_forcing(n, n, p).ones_count();
      const bool is_ih = p == identity(k) || p == hankel(k);
      const bool ok = v >= bound && ((v == bound) == is_ih) && (perm_min_equality(p) == is_ih);
      out.push_back({"perm-lower", "n=" + std::to_string(n) + " P=" + detail::perm_label(p),
                     is_ih ? "= " + std::to_string(bound) : "> " + std::to_string(bound), std::to_string(v),
                     detail::verdict(ok), detail::since(t0)});
    }
  }
  for (std::size_t k = 1; k <= k_max; ++k) {
    const std::size_t n = 2 * k + 2;
    const auto t0 = detail::Clock::now();
    std::size_t best = 0;
    std::vector<BitMatrix> maximizers;
    const auto perms = all_permutation_matrices(k);
    for (const auto& p : perms) {
      const std::size_t v = minimal_forcing(n, n, p).ones_count();
      if (v > best) {
        best = v;
        maximizers.clear();
      }
      if (v == best) maximizers.push_back(p);
    }
    const std::size_t expected = perm_max_m(n, k);
    out.push_back({"perm-upper", "k=" + std::to_string(k) + " n=" + std::to_string(n), std::to_string(expected),
                   std::to_string(best), detail::verdict(best == expected), detail::since(t0)});
    if (k >= 4) {
      std::vector<BitMatrix> characterized;
      for (const auto& p : perms)
        if (perm_max_extremal(p)) characterized.push_back(p);
      std::string got, want;
      for (const auto& p : maximizers) got += (got.empty() ? "" : " ") + detail::perm_label(p);
      for (const auto& p : characterized) want += (want.empty() ? "" : " ") + detail::perm_label(p);
      out.push_back({"perm-extremal", "k=" + std::to_string(k) + " n=" + std::to_string(n), want, got,
                     detail::verdict(detail::keys(maximizers) == detail::keys(characterized)), 0});
    }
  }
  return out;
}

/// 2x2 permutation patterns: value n^2 - n with a unique extremal matrix.
/// Full sweep for n <= 4, branch and bound up to n_max.
inline Table two_by_two(const Options& opt) {
  const std::size_t n_max = opt.n_max.value_or(6);
  Table out;
  for (auto variant : {TwoByTwo::I2, TwoByTwo::H2}) {
    const BitMatrix q = variant == TwoByTwo::I2 ? identity(2) : hankel(2);
    const std::string name = variant == TwoByTwo::I2 ? "I2" : "H2";
    for (std::size_t n = 2; n <= n_max; ++n) {
      const std::size_t expected = n * n - n;
      const auto unique = extremal_2x2(n, variant);
      const std::string want = std::to_string(expected) + ", 1 witness";
      if (n <= oracle::kMaxStrongDefaultN) {
        const auto t0 = detail::Clock::now();
        const auto sweep = oracle::max_strong(n, q);
        const bool ok = sweep.best_ones == expected && sweep.witnesses == std::vector<BitMatrix>{unique};
        out.push_back({"max-2x2", name + " n=" + std::to_string(n) + " sweep", want,
                       std::to_string(sweep.best_ones) + ", " + std::to_string(sweep.witnesses.size()) + " witness",
                       detail::verdict(ok), detail::since(t0)});
      }
      SearchConfig cfg = opt.search;
      cfg.enumerate_all_extremal = true;
      const auto t0 = detail::Clock::now();
      const auto res = search_max(n, q, cfg);
      const bool ok = res.status == SearchStatus::exact && res.best_ones == expected &&
                      res.witnesses == std::vector<BitMatrix>{unique};
      out.push_back({"max-2x2", name + " n=" + std::to_string(n) + " search", want + ", exact",
                     std::to_string(res.best_ones) + ", " + std::to_string(res.witnesses.size()) + " witness, " +
                         to_string(res.status),
                     detail::verdict(ok), detail::since(t0)});
    }
  }
  return out;
}

/// The six 3x3 permutation patterns: value n^2 - 3n + 3.
inline Table three_by_three(const Options& opt) {
  const std::size_t n_max = opt.n_max.value_or(5);
  Table out;
  for (const auto& p : all_permutation_matrices(3)) {
    for (std::size_t n = 3; n <= n_max; ++n) {
      const std::size_t expected = upper_bound_3x3(n);
      const std::string inst = detail::perm_label(p) + " n=" + std::to_string(n);
      if (n <= oracle::kMaxStrongDefaultN) {
        const auto t0 = detail::Clock::now();
        const auto sweep = oracle::max_strong(n, p);
        out.push_back({"max-3x3", inst + " sweep", std::to_string(expected), std::to_string(sweep.best_ones),
                       detail::verdict(sweep.best_ones == expected), detail::since(t0)});
      }
      const auto t0 = detail::Clock::now();
      const auto res = search_max(n, p, opt.search);
      const bool ok = res.status == SearchStatus::exact && res.best_ones == expected;
      out.push_back({"max-3x3", inst + " search", std::to_string(expected) + ", exact",
                     std::to_string(res.best_ones) + ", " + to_string(res.status), detail::verdict(ok),
                     detail::since(t0)});
    }
  }
  return out;
}

/// Symmetric patterns have equal maxima, and the symmetry carries one
/// extremal set onto the other. Patterns: every non-zero 2x2 and 2x3 (with
/// transposes) and the 3x3 permutations.
inline Table dihedral(const Options& opt) {
  const std::size_t n = opt.n_max.value_or(4);
  std::vector<BitMatrix> patterns;
  for (const auto& q : detail::small_patterns()) {
    const bool sq2 = q.rows() == 2 && q.cols() == 2;
    const bool rect = q.rows() * q.cols() == 6;
    if (sq2 || rect || (q.rows() == 3 && q.cols() == 3 && is_permutation_matrix(q))) patterns.push_back(q);
  }
  SearchConfig cfg = opt.search;
  cfg.enumerate_all_extremal = true;
  std::map<std::string, SearchOutcome> results;
  auto result = [&](const BitMatrix& q) -> const SearchOutcome& {
    const auto key = serialize(q);
    auto it = results.find(key);
    if (it == results.end()) it = results.emplace(key, search_max(n, q, cfg)).first;
    return it->second;
  };

  Table out;
  std::set<std::string> done;
  for (const auto& q : patterns) {
    const auto cls = detail::orbit(q);
    if (!done.insert(serialize(cls.front())).second) continue;
    const auto t0 = detail::Clock::now();
    const auto& base = result(cls.front());
    bool ok = base.status == SearchStatus::exact;
    for (const auto& member : cls) {
      for (Symmetry g : kAllSymmetries) {
        const auto image = apply(g, member);
        const auto& a = result(member);
        const auto& b = result(image);
        std::vector<BitMatrix> mapped;
        for (const auto& w : a.witnesses) mapped.push_back(apply(g, w));
        ok = ok && a.best_ones == b.best_ones && b.status == SearchStatus::exact &&
             detail::keys(mapped) == detail::keys(b.witnesses);
      }
    }
    out.push_back({"dihedral", detail::label(cls.front()) + " n=" + std::to_string(n) + " (" +
                                   std::to_string(cls.size()) + " members)",
                   "equal maxima, mapped witness sets", std::to_string(base.best_ones) + ", " +
                       std::to_string(base.witnesses.size()) + " witnesses",
                   detail::verdict(ok), detail::since(t0)});
  }
  return out;
}

/// For I_k: S_{n,k} is strongly forcing with the conjectured count, which
/// stays below the simple bound; exact search where n <= search_n_max. Rows
/// without an exact answer are informational.
inline Table conjecture(const Options& opt) {
  const std::size_t k_max = opt.k_max.value_or(6), n_max = opt.n_max.value_or(12);
  const auto table = known_lower_bounds(n_max, k_max);
  Table out;
  for (std::size_t k = 3; k <= k_max; ++k) {
    for (std::size_t n = k; n <= n_max; ++n) {
      const std::string inst = "k=" + std::to_string(k) + " n=" + std::to_string(n);
      const std::size_t conj = conjecture_value(n, k), upper = upper_bound_simple(n, k);
      {
        const auto t0 = detail::Clock::now();
        const auto s = construct_S_nk(n, k);
        const bool ok = s.ones_count() == conj && is_strongly_forcing(s, identity(k)) && conj <= upper;
        out.push_back({"s-nk", inst, std::to_string(conj) + " <= " + std::to_string(upper),
                       std::to_string(s.ones_count()) + (ok ? ", strongly forcing" : ""), detail::verdict(ok),
                       detail::since(t0)});
      }
      const std::size_t lower = table.at({n, k});
      out.push_back({"bounds", inst, "[" + std::to_string(conj) + ", " + std::to_string(upper) + "]",
                     "[" + std::to_string(lower) + ", " + std::to_string(upper) + "]",
                     lower == conj ? "info" : "fail", 0});
      if (n <= opt.search_n_max && n <= kMaxSearchDim) {
        const auto t0 = detail::Clock::now();
        const auto res = search_max(n, identity(k), opt.search);
        const bool exact = res.status == SearchStatus::exact;
        out.push_back({"conjecture", inst, std::to_string(conj),
                       std::to_string(res.best_ones) + ", " + to_string(res.status),
                       exact ? detail::verdict(res.best_ones == conj) : "info", detail::since(t0)});
      }
    }
  }
  return out;
}

/// Linear-zero construction on random patterns up to 3x4 and ambients up to 20x20.
inline Table linear_zero(const Options& opt) {
  std::mt19937_64 rng(opt.seed);
  Table out;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t s = 1 + rng() % 3, t = 1 + rng() % 4;
    BitMatrix q(s, t);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < t; ++j)
        if (rng() & 1u) q.set(i, j);
    if (q.all_zero()) q.set(rng() % s, rng() % t);
    const std::size_t m = s + rng() % (21 - s), n = t + rng() % (21 - t);
    const auto t0 = detail::Clock::now();
    const auto plan = linear_zero_plan(m, n, q);
    const auto a = linear_zero_construction(m, n, q);
    const bool ok = a.zeros_count() == plan.predicted_zeros && is_strongly_forcing(a, q);
    out.push_back({"linear-zero", detail::label(q) + " in " + std::to_string(m) + "x" + std::to_string(n),
                   std::to_string(plan.predicted_zeros) + " zeros, strongly forcing",
                   std::to_string(a.zeros_count()) + " zeros" + (is_strongly_forcing(a, q) ? ", strongly forcing" : ""),
                   detail::verdict(ok), detail::since(t0)});
  }
  return out;
}

/// Randomized invariants, one row per property.
inline Table properties(const Options& opt) {
  std::mt19937_64 rng(opt.seed);
  auto random_matrix = [&](std::size_t m, std::size_t n, double density) {
    std::bernoulli_distribution coin(density);
    BitMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (coin(rng)) a.set(i, j);
    return a;
  };
  auto random_pattern = [&](std::size_t s, std::size_t t) {
    auto q = random_matrix(s, t, 0.5);
    if (q.all_zero()) q.set(rng() % s, rng() % t);
    return q;
  };
  Table out;
  auto record = [&](const std::string& id, std::size_t trials, const std::function<bool()>& check) {
    const auto t0 = detail::Clock::now();
    std::size_t ok = 0;
    for (std::size_t i = 0; i < trials; ++i)
      if (check()) ++ok;
    out.push_back({id, std::to_string(trials) + " random cases", std::to_string(trials) + "/" + std::to_string(trials),
                   std::to_string(ok) + "/" + std::to_string(trials), detail::verdict(ok == trials),
                   detail::since(t0)});
  };

  record("corner-young-shape", 300, [&] {
    const auto q = random_pattern(1 + rng() % 6, 1 + rng() % 6);
    const auto rep = corner_functions(q);
    // Each corner set is a Young shape: closed under steps toward its corner.
    auto closed = [&](const std::vector<Position>& set, int di, int dj) {
      const std::set<Position> in(set.begin(), set.end());
      for (const auto& p : set) {
        if (q(p.row, p.col)) return false;
        const long r = static_cast<long>(p.row) + di, c = static_cast<long>(p.col) + dj;
        if (r >= 0 && r < static_cast<long>(q.rows()) && !in.count({static_cast<std::size_t>(r), p.col})) return false;
        if (c >= 0 && c < static_cast<long>(q.cols()) && !in.count({p.row, static_cast<std::size_t>(c)})) return false;
      }
      return true;
    };
    return closed(rep.nw, -1, -1) && closed(rep.ne, -1, 1) && closed(rep.sw, 1, -1) && closed(rep.se, 1, 1);
  });

  record("single-flip-minimality", 150, [&] {
    const auto q = random_pattern(1 + rng() % 3, 1 + rng() % 3);
    const std::size_t m = q.rows() + rng() % 4, n = q.cols() + rng() % 4;
    const auto a = minimal_forcing(m, n, q);
    if (!oracle::is_forcing(a, q)) return false;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(i, j)) continue;
        auto b = a;
        b.flip(i, j);
        if (oracle::is_forcing(b, q)) return false;
      }
    }
    return true;
  });

  record("direct-sum-closure", 60, [&] {
    auto block = [&](std::size_t& k) {
      const std::size_t choice = rng() % 3;
      const std::size_t n = 2 + rng() % 3;
      if (choice == 0) return k = 1, all_ones(n);
      if (choice == 1) return k = 2, extremal_2x2(n, TwoByTwo::I2);
      return k = 3, construct_S(n + 1);
    };
    std::size_t k1 = 0, k2 = 0;
    const auto a1 = block(k1), a2 = block(k2);
    return is_strongly_forcing(a1, identity(k1)) && is_strongly_forcing(a2, identity(k2)) &&
           is_strongly_forcing(direct_sum(a1, a2), identity(k1 + k2));
  });

  record("vacuous-all-zero", 100, [&] {
    const auto q = random_pattern(1 + rng() % 4, 1 + rng() % 4);
    const BitMatrix zero(q.rows() + rng() % 4, q.cols() + rng() % 4);
    return is_strongly_forcing(zero, q) && oracle::is_strongly_forcing(zero, q);
  });

  record("forcing-oracle-agreement", 300, [&] {
    const auto q = random_pattern(1 + rng() % 3, 1 + rng() % 3);
    const std::size_t m = q.rows() + rng() % 4, n = q.cols() + rng() % 4;
    const auto a = random_matrix(m, n, 0.6 + 0.4 * static_cast<double>(rng() % 100) / 100.0);
    return is_forcing(a, q) == oracle::is_forcing(a, q) &&
           minimal_forcing(m, n, q) == oracle::minimal_forcing(m, n, q);
  });

  record("strong-oracle-agreement", 300, [&] {
    const auto q = random_pattern(1 + rng() % 3, 1 + rng() % 3);
    const std::size_t m = q.rows() + rng() % 4, n = q.cols() + rng() % 4;
    const auto a = random_matrix(m, n, 0.3 + 0.6 * static_cast<double>(rng() % 100) / 100.0);
    return is_strongly_forcing(a, q) == oracle::is_strongly_forcing(a, q);
  });
  return out;
}

struct Suite {
  const char* name;
  Table (*run)(const Options&);
};

inline constexpr Suite kSuites[] = {
    {"lemma21", window_union},   {"formulas", min_formulas}, {"perm-bounds", perm_bounds},
    {"2x2", two_by_two},         {"3x3", three_by_three},    {"dihedral", dihedral},
    {"conjecture", conjecture},  {"linear-zero", linear_zero}, {"properties", properties},
};

inline std::optional<Table> run(const std::string& name, const Options& opt) {
  for (const auto& s : kSuites)
    if (name == s.name) return s.run(opt);
  return std::nullopt;
}

}  // namespace mforce::suites
