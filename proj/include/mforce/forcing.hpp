#pragma once

// Q-forcing matrices: the minimal forcing construction, corner functions,
// cores, closed-form counts and the permutation-pattern bounds.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mforce/bitmatrix.hpp"

namespace mforce {

/// (i1,j1) dominates (i2,j2) iff i1 >= i2 and j1 >= j2.
[[nodiscard]] constexpr bool dominates(Position p1, Position p2) noexcept {
  return p1.row >= p2.row && p1.col >= p2.col;
}

/// (i1,j1) alt-dominates (i2,j2) iff i1 <= i2 and j1 >= j2.
[[nodiscard]] constexpr bool alt_dominates(Position p1, Position p2) noexcept {
  return p1.row <= p2.row && p1.col >= p2.col;
}

// ---------------------------------------------------------------------------
// Corner functions.

struct CornerReport {
  std::vector<Position> nw, ne, se, sw;
  // Row-length profiles after orienting each corner to the upper left; trailing
  // zero rows are trimmed so an empty corner has an empty shape.
  std::vector<std::size_t> nw_shape, ne_shape, se_shape, sw_shape;

  [[nodiscard]] std::size_t total() const noexcept { return nw.size() + ne.size() + se.size() + sw.size(); }
};

namespace detail {

inline std::vector<std::size_t> profile(const std::vector<Position>& set, std::size_t rows, bool flip_rows) {
  std::vector<std::size_t> shape(rows, 0);
  for (const auto& p : set) ++shape[flip_rows ? rows - 1 - p.row : p.row];
  while (!shape.empty() && shape.back() == 0) shape.pop_back();
  return shape;
}

}  // namespace detail

inline CornerReport corner_functions(const BitMatrix& q) {
  if (q.empty()) throw std::invalid_argument("corner_functions: empty pattern");
  std::vector<Position> ones;
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j)
      if (q(i, j)) ones.push_back({i, j});

  CornerReport rep;
  for (std::size_t i = 0; i < q.rows(); ++i) {
    for (std::size_t j = 0; j < q.cols(); ++j) {
      if (q(i, j)) continue;
      const Position z{i, j};
      bool dom_any = false, alt_dom_any = false, dominated = false, alt_dominated = false;
      for (const auto& o : ones) {
        dom_any = dom_any || dominates(z, o);
        alt_dom_any = alt_dom_any || alt_dominates(z, o);
        dominated = dominated || dominates(o, z);
        alt_dominated = alt_dominated || alt_dominates(o, z);
      }
      if (!dom_any) rep.nw.push_back(z);
      if (!alt_dom_any) rep.sw.push_back(z);
      if (!alt_dominated) rep.ne.push_back(z);
      if (!dominated) rep.se.push_back(z);
    }
  }
  rep.nw_shape = detail::profile(rep.nw, q.rows(), false);
  rep.ne_shape = detail::profile(rep.ne, q.rows(), false);
  rep.sw_shape = detail::profile(rep.sw, q.rows(), true);
  rep.se_shape = detail::profile(rep.se, q.rows(), true);
  return rep;
}

// ---------------------------------------------------------------------------
// Core extraction.

struct CoreDecomposition {
  std::size_t top_zero_rows = 0;
  std::size_t bottom_zero_rows = 0;
  std::size_t left_zero_cols = 0;
  std::size_t right_zero_cols = 0;
  BitMatrix core;

  /// Re-pads the core with its recorded zero borders.
  [[nodiscard]] BitMatrix reconstruct() const {
    BitMatrix out(core.rows() + top_zero_rows + bottom_zero_rows, core.cols() + left_zero_cols + right_zero_cols);
    for (std::size_t i = 0; i < core.rows(); ++i)
      for (std::size_t j = 0; j < core.cols(); ++j)
        if (core(i, j)) out.set(top_zero_rows + i, left_zero_cols + j);
    return out;
  }
};

inline CoreDecomposition core(const BitMatrix& q) {
  if (q.empty() || q.all_zero()) throw std::invalid_argument("core: pattern has no 1-entries");
  CoreDecomposition d;
  while (q.row_ones(d.top_zero_rows) == 0) ++d.top_zero_rows;
  while (q.row_ones(q.rows() - 1 - d.bottom_zero_rows) == 0) ++d.bottom_zero_rows;
  while (q.col_ones(d.left_zero_cols) == 0) ++d.left_zero_cols;
  while (q.col_ones(q.cols() - 1 - d.right_zero_cols) == 0) ++d.right_zero_cols;
  d.core = window(q, d.top_zero_rows, d.left_zero_cols, q.rows() - d.top_zero_rows - d.bottom_zero_rows,
                  q.cols() - d.left_zero_cols - d.right_zero_cols);
  return d;
}

// ---------------------------------------------------------------------------
// Minimal forcing matrix.

namespace detail {

inline void require_pattern_fits(std::size_t m, std::size_t n, const BitMatrix& q, const char* who) {
  if (q.empty()) throw std::invalid_argument(std::string(who) + ": empty pattern");
  if (m < q.rows() || n < q.cols()) {
    throw std::invalid_argument(std::string(who) + ": ambient " + std::to_string(m) + "x" + std::to_string(n) +
                                " is smaller than pattern " + std::to_string(q.rows()) + "x" +
                                std::to_string(q.cols()));
  }
}

/// OR `src` shifted left by `shift` bits into `dst` (both rows of packed words).
inline void or_shifted(std::span<BitMatrix::word_type> dst, std::span<const BitMatrix::word_type> src,
                       std::size_t shift) {
  constexpr std::size_t W = BitMatrix::kWordBits;
  const std::size_t ws = shift / W, bs = shift % W;
  for (std::size_t k = 0; k < src.size(); ++k) {
    if (k + ws >= dst.size()) break;
    dst[k + ws] |= src[k] << bs;
    if (bs != 0 && k + ws + 1 < dst.size()) dst[k + ws + 1] |= src[k] >> (W - bs);
  }
}

}  // namespace detail

/// The unique m x n Q-forcing matrix with the fewest ones: every contiguous
/// s x t window is forced to dominate Q.
inline BitMatrix minimal_forcing(std::size_t m, std::size_t n, const BitMatrix& q) {
  detail::require_pattern_fits(m, n, q, "minimal_forcing");
  if (q.all_zero()) throw std::invalid_argument("minimal_forcing: all-zero pattern");
  const std::size_t s = q.rows(), t = q.cols();

  // Row y of Q smeared over every column offset is the same for every window
  // row, so build it once per pattern row and OR it into rows y..y+m-s.
  BitMatrix smeared(s, n);
  for (std::size_t y = 0; y < s; ++y) {
    BitMatrix pattern_row(1, n);
    for (std::size_t x = 0; x < t; ++x)
      if (q(y, x)) pattern_row.set(0, x);
    for (std::size_t c0 = 0; c0 + t <= n; ++c0) detail::or_shifted(smeared.row_words_mut(y), pattern_row.row_words(0), c0);
    smeared.row_words_mut(y).back() &= smeared.tail_mask();
  }

  BitMatrix out(m, n);
  for (std::size_t r0 = 0; r0 + s <= m; ++r0) {
    for (std::size_t y = 0; y < s; ++y) {
      auto dst = out.row_words_mut(r0 + y);
      auto src = smeared.row_words(y);
      for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
    }
  }
  return out;
}

/// A is Q-forcing iff it dominates the minimal forcing matrix entrywise.
inline bool is_forcing(const BitMatrix& a, const BitMatrix& q) {
  detail::require_pattern_fits(a.rows(), a.cols(), q, "is_forcing");
  if (q.all_zero()) return true;
  return entrywise_leq(minimal_forcing(a.rows(), a.cols(), q), a);
}

/// Builds A_{m,n,Q} directly from the corner functions and zero borders of Q.
/// Requires m >= 2s and n >= 2t.
inline BitMatrix construct_A_mnQ(std::size_t m, std::size_t n, const BitMatrix& q) {
  detail::require_pattern_fits(m, n, q, "construct_A_mnQ");
  if (q.all_zero()) throw std::invalid_argument("construct_A_mnQ: all-zero pattern");
  const std::size_t s = q.rows(), t = q.cols();
  if (m < 2 * s || n < 2 * t) {
    throw std::invalid_argument("construct_A_mnQ: requires m >= 2s and n >= 2t");
  }
  const auto corners = corner_functions(q);
  const auto dec = core(q);

  BitMatrix a(m, n, Fill::one);
  for (const auto& p : corners.nw) a.set(p.row, p.col, false);
  for (const auto& p : corners.ne) a.set(p.row, n - t + p.col, false);
  for (const auto& p : corners.sw) a.set(m - s + p.row, p.col, false);
  for (const auto& p : corners.se) a.set(m - s + p.row, n - t + p.col, false);
  for (std::size_t i = 0; i < dec.top_zero_rows; ++i)
    for (std::size_t j = 0; j < n; ++j) a.set(i, j, false);
  for (std::size_t i = 0; i < dec.bottom_zero_rows; ++i)
    for (std::size_t j = 0; j < n; ++j) a.set(m - 1 - i, j, false);
  for (std::size_t j = 0; j < dec.left_zero_cols; ++j)
    for (std::size_t i = 0; i < m; ++i) a.set(i, j, false);
  for (std::size_t j = 0; j < dec.right_zero_cols; ++j)
    for (std::size_t i = 0; i < m; ++i) a.set(i, n - 1 - j, false);
  return a;
}

// ---------------------------------------------------------------------------
// Closed-form minimum.

enum class MinOnesFormula {
  trivial,       ///< pattern has the ambient's dimensions: |Q|
  general,       ///< mn - (m-2s)(t-t') - (n-2t)(s-s') - corner sum of Q
  boundary,      ///< mn - corner sum of Q; every boundary line of Q holds a 1
  core_based,    ///< (m-(s-s'))(n-(t-t')) - corner sum of Q_core
};

inline const char* to_string(MinOnesFormula f) {
  switch (f) {
    case MinOnesFormula::trivial: return "trivial";
    case MinOnesFormula::general: return "general";
    case MinOnesFormula::boundary: return "boundary";
    case MinOnesFormula::core_based: return "core";
  }
  return "?";
}

struct MinOnes {
  std::size_t value = 0;
  MinOnesFormula formula = MinOnesFormula::general;
};

/// General corner-count formula; nullopt unless m >= 2s and n >= 2t.
inline std::optional<std::size_t> min_ones_general(std::size_t m, std::size_t n, const BitMatrix& q) {
  const std::size_t s = q.rows(), t = q.cols();
  if (m < 2 * s || n < 2 * t) return std::nullopt;
  const auto dec = core(q);
  const std::size_t s_core = dec.core.rows(), t_core = dec.core.cols();
  const std::size_t removed = (m - 2 * s) * (t - t_core) + (n - 2 * t) * (s - s_core) + corner_functions(q).total();
  return m * n - removed;
}

/// Boundary formula; nullopt unless the size precondition holds and Q has a 1 on each boundary line.
inline std::optional<std::size_t> min_ones_boundary(std::size_t m, std::size_t n, const BitMatrix& q) {
  const std::size_t s = q.rows(), t = q.cols();
  if (m < 2 * s || n < 2 * t) return std::nullopt;
  if (q.row_ones(0) == 0 || q.row_ones(s - 1) == 0 || q.col_ones(0) == 0 || q.col_ones(t - 1) == 0) {
    return std::nullopt;
  }
  return m * n - corner_functions(q).total();
}

/// Core-based formula; nullopt unless m-(s-s') >= 2s' and n-(t-t') >= 2t'.
inline std::optional<std::size_t> min_ones_core(std::size_t m, std::size_t n, const BitMatrix& q) {
  if (m < q.rows() || n < q.cols()) return std::nullopt;
  const auto dec = core(q);
  const std::size_t s_core = dec.core.rows(), t_core = dec.core.cols();
  const std::size_t m_eff = m - (q.rows() - s_core), n_eff = n - (q.cols() - t_core);
  if (m_eff < 2 * s_core || n_eff < 2 * t_core) return std::nullopt;
  return m_eff * n_eff - corner_functions(dec.core).total();
}

/// Minimum number of ones in an m x n Q-forcing matrix, by closed form.
/// Throws std::domain_error when no formula's precondition holds; callers
/// then fall back to ones_count(minimal_forcing(m, n, q)).
inline MinOnes min_ones(std::size_t m, std::size_t n, const BitMatrix& q) {
  detail::require_pattern_fits(m, n, q, "min_ones");
  if (q.all_zero()) throw std::invalid_argument("min_ones: all-zero pattern");
  if (m == q.rows() && n == q.cols()) return {q.ones_count(), MinOnesFormula::trivial};

  if (auto v = min_ones_core(m, n, q)) {
#ifndef NDEBUG
    if (auto g = min_ones_general(m, n, q)) assert(*g == *v);
#endif
    return {*v, MinOnesFormula::core_based};
  }
  // The core precondition is implied by the general one, so reaching here
  // means neither applies.
  throw std::domain_error("min_ones: no closed form applies for " + std::to_string(m) + "x" + std::to_string(n));
}

/// Closed form when available, otherwise the popcount of the minimal forcing matrix.
inline std::size_t min_ones_value(std::size_t m, std::size_t n, const BitMatrix& q) {
  try {
    return min_ones(m, n, q).value;
  } catch (const std::domain_error&) {
    return minimal_forcing(m, n, q).ones_count();
  }
}

// ---------------------------------------------------------------------------
// Permutation patterns.

namespace detail {

inline void require_permutation(const BitMatrix& p, const char* who) {
  if (!is_permutation_matrix(p)) throw std::invalid_argument(std::string(who) + ": not a permutation matrix");
}

}  // namespace detail

/// Lower bound n^2 - k(k-1) on the minimum for any k x k permutation pattern.
inline std::size_t perm_min_bound(std::size_t n, std::size_t k) {
  if (k == 0 || n < 2 * k) throw std::invalid_argument("perm_min_bound: requires n >= 2k >= 2");
  return n * n - k * (k - 1);
}

/// True iff P attains the lower bound. Read as P in {I_k, H_k}; the literal
/// statement names I_k and its transpose, which coincide.
inline bool perm_min_equality(const BitMatrix& p) {
  detail::require_permutation(p, "perm_min_equality");
  return p == identity(p.rows()) || p == hankel(p.rows());
}

/// Largest minimum over all k x k permutation patterns.
inline std::size_t perm_max_m(std::size_t n, std::size_t k) {
  if (k == 0 || n < 2 * k) throw std::invalid_argument("perm_max_m: requires n >= 2k >= 2");
  switch (k) {
    case 1: return n * n;
    case 2: return n * n - 2;
    case 3: return n * n - 5;
    default: return n * n - 4 * k + 8;
  }
}

/// For k >= 4: P maximizes the minimum iff p(1,2), p(2,k), p(k,k-1), p(k-1,1)
/// are all ones, or p(2,1), p(k,2), p(k-1,k), p(1,k-1) are (1-based).
inline bool perm_max_extremal(const BitMatrix& p) {
  detail::require_permutation(p, "perm_max_extremal");
  const std::size_t k = p.rows();
  if (k < 4) throw std::invalid_argument("perm_max_extremal: characterization needs k >= 4");
  auto at = [&](std::size_t i, std::size_t j) { return p(i - 1, j - 1); };
  const bool first = at(1, 2) && at(2, k) && at(k, k - 1) && at(k - 1, 1);
  const bool second = at(2, 1) && at(k, 2) && at(k - 1, k) && at(1, k - 1);
  return first || second;
}

/// All k x k permutation matrices in lexicographic order of one-line notation.
inline std::vector<BitMatrix> all_permutation_matrices(std::size_t k) {
  std::vector<int> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = static_cast<int>(i + 1);
  std::vector<BitMatrix> out;
  do {
    out.push_back(permutation_matrix(std::span<const int>(perm)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace mforce
