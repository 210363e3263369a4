#pragma once

// Exact branch-and-bound search for M(n, Q), the maximum number of ones in an
// n x n strongly Q-forcing matrix.
//
// Target levels are tried from the counting upper bound downward. At a level
// with Z zeros the search assigns cells in row-major order (0 before 1), so
// the first matrix found is the lexicographically smallest one at that level.
// Pruning:
//   * every row holds at least z_row zeros and every column at least z_col,
//     where z_row is the fewest zeros in a pattern row that contains a 1
//     (an exact copy through any 1 puts that many zeros in its row);
//   * when a row is completed, every 1 above it must still be covered by some
//     placement of Q whose assigned part matches exactly.
//
// The bit-level kernel stores a whole matrix in one 64-bit word, so exact
// search is limited to n <= 8.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "mforce/bitmatrix.hpp"
#include "mforce/strong_forcing.hpp"

namespace mforce {

inline constexpr std::size_t kMaxSearchDim = 8;

struct SearchConfig {
  std::optional<std::uint64_t> node_budget;
  std::optional<std::chrono::milliseconds> time_budget;
  bool use_dihedral_reduction = false;
  bool enumerate_all_extremal = false;
  /// Worker threads; 0 reads MFORCE_THREADS and falls back to 1.
  unsigned threads = 0;
};

enum class SearchStatus { exact, lower_bound_only, budget_exhausted };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::exact: return "exact";
    case SearchStatus::lower_bound_only: return "lower_bound_only";
    case SearchStatus::budget_exhausted: return "budget_exhausted";
  }
  return "?";
}

struct SearchOutcome {
  SearchStatus status = SearchStatus::lower_bound_only;
  std::size_t best_ones = 0;
  /// Smallest ones count not yet refuted; equals best_ones when exact.
  std::size_t upper_bound = 0;
  std::vector<BitMatrix> witnesses;
  std::uint64_t nodes_explored = 0;
  std::chrono::milliseconds elapsed{0};
};

inline unsigned resolve_thread_count(unsigned requested) {
  if (requested != 0) return requested;
  if (const char* env = std::getenv("MFORCE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(std::min<long>(v, 256));
  }
  return 1;
}

/// Best verified strongly Q-forcing n x n construction known without search:
/// the linear-zero construction plus the explicit I_2 / I_k / 132 families,
/// each moved by every symmetry that maps its pattern onto Q.
inline std::vector<BitMatrix> known_constructions(std::size_t n, const BitMatrix& q) {
  std::vector<std::pair<BitMatrix, BitMatrix>> base;  // (pattern, strongly forcing matrix)
  for (Symmetry g : kAllSymmetries) {
    if (swaps_axes(g) && q.rows() != q.cols()) continue;
    const BitMatrix h = apply(g, q);
    if (n >= h.rows() && n >= h.cols() && !h.all_zero()) base.emplace_back(h, linear_zero_construction(n, n, h));
  }
  if (n >= 2) base.emplace_back(identity(2), extremal_2x2(n, TwoByTwo::I2));
  for (std::size_t k = 3; k <= n; ++k) base.emplace_back(identity(k), construct_S_nk(n, k));
  if (n >= 3) base.emplace_back(permutation_matrix("132"), construct_T(n));

  std::size_t best = 0;
  std::map<std::string, BitMatrix> found;
  for (const auto& [pattern, matrix] : base) {
    if (pattern.rows() != q.rows() && pattern.rows() != q.cols()) continue;
    for (Symmetry g : kAllSymmetries) {
      if (apply(g, pattern) != q) continue;
      BitMatrix a = apply(g, matrix);
      if (a.ones_count() < best || !is_strongly_forcing(a, q)) continue;
      if (a.ones_count() > best) {
        best = a.ones_count();
        found.clear();
      }
      found.emplace(serialize(a), std::move(a));
    }
  }
  std::vector<BitMatrix> out;
  for (auto& [key, a] : found) out.push_back(std::move(a));
  if (out.empty()) out.emplace_back(n, n);  // all-zero is vacuously strongly forcing
  return out;
}

namespace detail {

using Mask = std::uint64_t;

/// Precomputed placements of Q inside an n x n ambient, as cell masks.
struct Placement {
  Mask region;  ///< all cells of the selected rows x columns
  Mask image;   ///< cells where Q has a 1
};

inline void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
}

class SmallKernel {
 public:
  SmallKernel(std::size_t n, const BitMatrix& q) : n_(n), cells_(n * n) {
    std::vector<std::vector<std::size_t>> rsel, csel;
    combinations(n, q.rows(), rsel);
    combinations(n, q.cols(), csel);
    for (const auto& rs : rsel) {
      for (const auto& cs : csel) {
        Placement p{0, 0};
        for (std::size_t y = 0; y < rs.size(); ++y) {
          for (std::size_t x = 0; x < cs.size(); ++x) {
            const Mask bit = Mask{1} << (rs[y] * n + cs[x]);
            p.region |= bit;
            if (q(y, x)) p.image |= bit;
          }
        }
        placements_.push_back(p);
      }
    }
    Mask acc = 0;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) acc |= Mask{1} << (r * n + c);
      rows_done_[r] = acc;
    }
  }

  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::size_t cells() const noexcept { return cells_; }
  [[nodiscard]] Mask rows_done(std::size_t r) const noexcept { return rows_done_[r]; }

  /// With rows 0..r fixed, every fixed 1 still lies in some consistent placement.
  [[nodiscard]] bool coverable(Mask ones, std::size_t r) const noexcept {
    const Mask known = rows_done_[r];
    const Mask need = ones & known;
    Mask alive = 0;
    for (const auto& p : placements_) {
      if ((((ones ^ p.image) & p.region) & known) == 0) {
        alive |= p.image;
        if ((need & ~alive) == 0) return true;
      }
    }
    return (need & ~alive) == 0;
  }

  [[nodiscard]] bool strongly_forcing(Mask ones) const noexcept { return coverable(ones, n_ - 1); }

  [[nodiscard]] BitMatrix to_matrix(Mask ones) const {
    BitMatrix m(n_, n_);
    for (std::size_t c = 0; c < cells_; ++c)
      if ((ones >> c) & 1u) m.set(c / n_, c % n_);
    return m;
  }

  [[nodiscard]] Mask to_mask(const BitMatrix& m) const {
    Mask out = 0;
    for (std::size_t c = 0; c < cells_; ++c)
      if (m(c / n_, c % n_)) out |= Mask{1} << c;
    return out;
  }

 private:
  std::size_t n_;
  std::size_t cells_;
  std::vector<Placement> placements_;
  std::array<Mask, kMaxSearchDim> rows_done_{};
};

/// Row-major order with 0 < 1: the first differing cell decides.
inline bool row_major_less(Mask a, Mask b) noexcept {
  const Mask diff = a ^ b;
  if (diff == 0) return false;
  return ((a >> std::countr_zero(diff)) & 1u) == 0;
}

struct SharedState {
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::atomic<std::size_t> first_hit{std::numeric_limits<std::size_t>::max()};
  std::optional<std::uint64_t> node_budget;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct Frame {
  Mask ones = 0;
  std::size_t cell = 0;
  std::size_t zeros_left = 0;
  std::size_t row_zeros = 0;
  std::array<std::uint8_t, kMaxSearchDim> col_zeros{};
};

/// Depth-first enumeration of one target level.
class LevelSearch {
 public:
  LevelSearch(const SmallKernel& kernel, std::size_t z_row, std::size_t z_col,
              std::vector<std::vector<std::size_t>> symmetry_maps, bool enumerate_all, SharedState& shared)
      : k_(kernel), z_row_(z_row), z_col_(z_col), sym_(std::move(symmetry_maps)), all_(enumerate_all),
        shared_(shared) {}

  /// Collects frames at `depth` cells, in search order.
  void split(Frame f, std::size_t depth, std::vector<Frame>& out) {
    if (f.cell == depth || f.cell == k_.cells()) {
      out.push_back(f);
      return;
    }
    for (int bit = 0; bit < 2; ++bit) {
      Frame g = f;
      if (advance(g, bit != 0)) split(g, depth, out);
    }
  }

  /// Explores the subtree under `f`; returns false if aborted.
  bool run(const Frame& f, std::size_t task, std::vector<Mask>& hits) {
    task_ = task;
    hits_ = &hits;
    local_nodes_ = 0;
    stop_local_ = false;
    const bool finished = dfs(f);
    shared_.nodes.fetch_add(local_nodes_, std::memory_order_relaxed);
    return finished;
  }

 private:
  /// Assigns the next cell; false if the assignment is pruned.
  bool advance(Frame& f, bool one) const {
    const std::size_t n = k_.n();
    const std::size_t r = f.cell / n, c = f.cell % n;
    if (one) {
      if (k_.cells() - f.cell - 1 < f.zeros_left) return false;
      if (f.row_zeros + (n - 1 - c) < z_row_) return false;
      if (f.col_zeros[c] + (n - 1 - r) < z_col_) return false;
      f.ones |= Mask{1} << f.cell;
    } else {
      if (f.zeros_left == 0) return false;
      --f.zeros_left;
      ++f.row_zeros;
      ++f.col_zeros[c];
    }
    ++f.cell;
    if (c == n - 1) {
      f.row_zeros = 0;
      if (!k_.coverable(f.ones, r)) return false;
      // Zeros still owed to rows below and to columns must fit in the budget.
      std::size_t col_need = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (f.col_zeros[j] < z_col_) col_need += z_col_ - f.col_zeros[j];
      }
      if (col_need > f.zeros_left || z_row_ * (n - 1 - r) > f.zeros_left) return false;
    }
    return true;
  }

  bool canonical(Mask ones) const {
    for (const auto& map : sym_) {
      Mask img = 0;
      for (Mask rest = ones; rest != 0; rest &= rest - 1) {
        img |= Mask{1} << map[static_cast<std::size_t>(std::countr_zero(rest))];
      }
      if (row_major_less(img, ones)) return false;
    }
    return true;
  }

  bool budget_hit() {
    if (shared_.stop.load(std::memory_order_relaxed)) return true;
    if (!all_ && shared_.first_hit.load(std::memory_order_relaxed) < task_) return true;
    if ((local_nodes_ & 0xFFF) != 0) return false;
    const std::uint64_t total = shared_.nodes.fetch_add(local_nodes_, std::memory_order_relaxed) + local_nodes_;
    local_nodes_ = 0;
    if (shared_.node_budget && total >= *shared_.node_budget) shared_.stop = true;
    if (shared_.deadline && std::chrono::steady_clock::now() >= *shared_.deadline) shared_.stop = true;
    return shared_.stop.load(std::memory_order_relaxed);
  }

  /// Returns false when the subtree was cut short (budget or an earlier hit).
  bool dfs(const Frame& f) {
    ++local_nodes_;
    if (budget_hit()) return false;
    if (f.cell == k_.cells()) {
      // The last row completion already verified full coverage.
      if (f.zeros_left == 0 && (sym_.empty() || canonical(f.ones))) {
        hits_->push_back(f.ones);
        if (!all_) {
          std::size_t cur = shared_.first_hit.load();
          while (task_ < cur && !shared_.first_hit.compare_exchange_weak(cur, task_)) {
          }
          stop_local_ = true;
        }
      }
      return true;
    }
    for (int bit = 0; bit < 2; ++bit) {
      Frame g = f;
      if (!advance(g, bit != 0)) continue;
      if (!dfs(g)) return false;
      if (stop_local_) return true;
    }
    return true;
  }

  const SmallKernel& k_;
  std::size_t z_row_, z_col_;
  std::vector<std::vector<std::size_t>> sym_;
  bool all_;
  SharedState& shared_;
  std::size_t task_ = 0;
  std::vector<Mask>* hits_ = nullptr;
  std::uint64_t local_nodes_ = 0;
  bool stop_local_ = false;
};

inline std::size_t min_zeros_over_lines_with_one(const BitMatrix& q, bool by_rows) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  const std::size_t lines = by_rows ? q.rows() : q.cols();
  const std::size_t len = by_rows ? q.cols() : q.rows();
  for (std::size_t i = 0; i < lines; ++i) {
    const std::size_t ones = by_rows ? q.row_ones(i) : q.col_ones(i);
    if (ones > 0) best = std::min(best, len - ones);
  }
  return best;
}

}  // namespace detail

/// Zeros every row (column) of a strongly Q-forcing matrix must hold.
inline std::size_t required_row_zeros(const BitMatrix& q) { return detail::min_zeros_over_lines_with_one(q, true); }
inline std::size_t required_col_zeros(const BitMatrix& q) { return detail::min_zeros_over_lines_with_one(q, false); }

inline SearchOutcome search_max(std::size_t n, const BitMatrix& q, const SearchConfig& config = {}) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  if (q.empty() || q.all_zero()) throw std::invalid_argument("search_max: all-zero pattern");
  if (n < q.rows() || n < q.cols()) throw std::invalid_argument("search_max: n smaller than pattern");
  if (config.node_budget && *config.node_budget == 0) throw std::invalid_argument("search_max: node budget must be positive");
  if (config.time_budget && config.time_budget->count() <= 0) {
    throw std::invalid_argument("search_max: time budget must be positive");
  }

  const std::size_t z_row = required_row_zeros(q), z_col = required_col_zeros(q);
  const std::size_t min_zeros = std::max(z_row, z_col) * n;

  SearchOutcome out;
  out.witnesses = known_constructions(n, q);
  out.best_ones = out.witnesses.front().ones_count();
  out.upper_bound = n * n - min_zeros;
  auto finish = [&] {
    out.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0);
    return out;
  };
  if (n > kMaxSearchDim) {
    out.status = SearchStatus::lower_bound_only;
    return finish();
  }

  const detail::SmallKernel kernel(n, q);
  std::vector<std::vector<std::size_t>> sym_maps;
  std::vector<Symmetry> syms;
  if (config.use_dihedral_reduction) {
    for (Symmetry g : stabilizer(q)) {
      if (g == Symmetry::identity) continue;
      syms.push_back(g);
      std::vector<std::size_t> map(n * n);
      for (std::size_t c = 0; c < n * n; ++c) {
        BitMatrix unit(n, n);
        unit.set(c / n, c % n);
        const BitMatrix img = apply(g, unit);
        for (std::size_t d = 0; d < n * n; ++d)
          if (img(d / n, d % n)) map[c] = d;
      }
      sym_maps.push_back(std::move(map));
    }
  }

  detail::SharedState shared;
  shared.node_budget = config.node_budget;
  if (config.time_budget) shared.deadline = t0 + *config.time_budget;
  const unsigned threads = resolve_thread_count(config.threads);

  const std::size_t max_zeros = n * n - out.best_ones;
  for (std::size_t zeros = min_zeros; zeros <= max_zeros; ++zeros) {
    detail::LevelSearch splitter(kernel, z_row, z_col, sym_maps, config.enumerate_all_extremal, shared);
    detail::Frame root;
    root.zeros_left = zeros;
    std::vector<detail::Frame> tasks;
    splitter.split(root, std::min<std::size_t>(n, kernel.cells()), tasks);

    shared.first_hit = std::numeric_limits<std::size_t>::max();
    std::vector<std::vector<detail::Mask>> hits(tasks.size());
    std::vector<char> finished(tasks.size(), 0);
    std::atomic<std::size_t> next_task{0};
    auto worker = [&] {
      detail::LevelSearch search(kernel, z_row, z_col, sym_maps, config.enumerate_all_extremal, shared);
      for (std::size_t i = next_task++; i < tasks.size(); i = next_task++) {
        finished[i] = search.run(tasks[i], i, hits[i]) ? 1 : 0;
      }
    };
    if (threads <= 1 || tasks.size() <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < std::min<std::size_t>(threads, tasks.size()); ++t) pool.emplace_back(worker);
    }
    out.nodes_explored = shared.nodes.load();

    // A level is settled once every task up to the first hit (or all tasks,
    // when enumerating) ran to completion.
    std::size_t first = tasks.size();
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (!hits[i].empty()) {
        first = i;
        break;
      }
    }
    const std::size_t must_finish = config.enumerate_all_extremal ? tasks.size() : std::min(first + 1, tasks.size());
    bool settled = true;
    for (std::size_t i = 0; i < must_finish; ++i) settled = settled && finished[i];
    if (!settled) {
      out.status = SearchStatus::budget_exhausted;
      out.upper_bound = n * n - zeros;
      return finish();
    }
    if (first == tasks.size()) continue;  // level refuted

    std::map<std::string, BitMatrix> found;
    for (std::size_t i = first; i < tasks.size(); ++i) {
      for (detail::Mask m : hits[i]) {
        BitMatrix a = kernel.to_matrix(m);
        for (Symmetry g : syms) {
          BitMatrix img = apply(g, a);
          found.emplace(serialize(img), std::move(img));
        }
        found.emplace(serialize(a), std::move(a));
      }
      if (!config.enumerate_all_extremal) break;
    }
    out.witnesses.clear();
    if (config.enumerate_all_extremal) {
      for (auto& [key, a] : found) out.witnesses.push_back(std::move(a));
    } else {
      out.witnesses.push_back(kernel.to_matrix(hits[first].front()));
    }
    out.status = SearchStatus::exact;
    out.best_ones = n * n - zeros;
    out.upper_bound = out.best_ones;
    return finish();
  }
  // Unreachable: the construction level always yields a hit.
  out.status = SearchStatus::budget_exhausted;
  return finish();
}

}  // namespace mforce
