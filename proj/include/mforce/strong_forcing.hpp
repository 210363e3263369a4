#pragma once

// Strongly Q-forcing matrices: witness embeddings, the checker, the explicit
// constructions and bounds, dihedral classes and the block-diagonal recurrence.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mforce/bitmatrix.hpp"
#include "mforce/forcing.hpp"

namespace mforce {

/// Row and column selections realizing an exact copy of Q.
struct WitnessEmbedding {
  std::vector<std::size_t> row_sel;
  std::vector<std::size_t> col_sel;

  friend bool operator==(const WitnessEmbedding&, const WitnessEmbedding&) = default;
};

namespace detail {

using Word = BitMatrix::word_type;

/// Index of the first set bit at or after `from`, or `limit` if none.
inline std::size_t next_set(const Word* words, std::size_t nwords, std::size_t from, std::size_t limit) {
  constexpr std::size_t W = BitMatrix::kWordBits;
  if (from >= limit) return limit;
  std::size_t w = from / W;
  Word cur = words[w] & (~Word{0} << (from % W));
  while (true) {
    if (cur != 0) {
      const std::size_t idx = w * W + static_cast<std::size_t>(std::countr_zero(cur));
      return idx < limit ? idx : limit;
    }
    if (++w >= nwords) return limit;
    cur = words[w];
  }
}

/// Backtracking search for an exact copy of Q through a fixed entry.
class WitnessFinder {
 public:
  WitnessFinder(const BitMatrix& a, const BitMatrix& q) : a_(a), q_(q), nw_(a.words_per_row()) {}

  /// Copy of Q in which pattern cell (y, x) lands on `pos`.
  std::optional<WitnessEmbedding> anchored(Position pos, std::size_t y, std::size_t x) {
    const std::size_t s = q_.rows(), t = q_.cols();
    if (pos.row < y || pos.col < x) return std::nullopt;
    if (a_.rows() - pos.row < s - y || a_.cols() - pos.col < t - x) return std::nullopt;

    anchor_ = pos;
    anchor_y_ = y;
    rows_.assign(s, 0);
    cols_.assign(t, 0);
    // Level i holds the candidate column sets (one bitset per pattern column)
    // after pattern rows 0..i-1 have been assigned.
    cand_.assign((s + 1) * t * nw_, 0);
    Word* base = level(0);
    for (std::size_t xc = 0; xc < t; ++xc) {
      Word* c = base + xc * nw_;
      if (xc == x) {
        c[pos.col / BitMatrix::kWordBits] = Word{1} << (pos.col % BitMatrix::kWordBits);
      } else {
        for (std::size_t w = 0; w < nw_; ++w) c[w] = ~Word{0};
        c[nw_ - 1] &= a_.tail_mask();
      }
    }
    if (!assign_row(0, 0)) return std::nullopt;
    return WitnessEmbedding{rows_, cols_};
  }

 private:
  Word* level(std::size_t i) { return cand_.data() + i * q_.cols() * nw_; }

  /// Greedy leftmost increasing column choice; fills cols_ when feasible.
  bool columns_feasible(const Word* sets) {
    std::size_t from = 0;
    for (std::size_t xc = 0; xc < q_.cols(); ++xc) {
      const std::size_t c = next_set(sets + xc * nw_, nw_, from, a_.cols());
      if (c == a_.cols()) return false;
      cols_[xc] = c;
      from = c + 1;
    }
    return true;
  }

  bool assign_row(std::size_t i, std::size_t first_row) {
    const std::size_t s = q_.rows(), t = q_.cols();
    if (i == s) return true;
    std::size_t lo = first_row, hi;
    if (i == anchor_y_) {
      lo = hi = anchor_.row;
    } else if (i < anchor_y_) {
      hi = anchor_.row - (anchor_y_ - i);
    } else {
      hi = a_.rows() - (s - i);
    }
    const Word* cur = level(i);
    Word* next = level(i + 1);
    for (std::size_t r = lo; r <= hi; ++r) {
      auto row = a_.row_words(r);
      for (std::size_t xc = 0; xc < t; ++xc) {
        const bool want_one = q_(i, xc);
        for (std::size_t w = 0; w < nw_; ++w) {
          next[xc * nw_ + w] = cur[xc * nw_ + w] & (want_one ? row[w] : ~row[w]);
        }
        next[xc * nw_ + nw_ - 1] &= a_.tail_mask();
      }
      if (!columns_feasible(next)) continue;
      rows_[i] = r;
      if (assign_row(i + 1, r + 1)) return true;
    }
    return false;
  }

  const BitMatrix& a_;
  const BitMatrix& q_;
  std::size_t nw_;
  Position anchor_{};
  std::size_t anchor_y_ = 0;
  std::vector<std::size_t> rows_, cols_;
  std::vector<Word> cand_;
};

inline void require_fits(const BitMatrix& a, const BitMatrix& q, const char* who) {
  if (a.empty() || q.empty()) throw std::invalid_argument(std::string(who) + ": empty matrix");
  if (a.rows() < q.rows() || a.cols() < q.cols()) {
    throw std::invalid_argument(std::string(who) + ": ambient " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " is smaller than pattern " + std::to_string(q.rows()) +
                                "x" + std::to_string(q.cols()));
  }
}

}  // namespace detail

/// An exact copy of Q in A that contains the 1-entry at `pos`, if one exists.
/// Pattern 1-cells are tried row-major, matrix rows ascending, so the result
/// is deterministic.
inline std::optional<WitnessEmbedding> find_witness(const BitMatrix& a, const BitMatrix& q, Position pos) {
  detail::require_fits(a, q, "find_witness");
  if (pos.row >= a.rows() || pos.col >= a.cols()) {
    throw std::out_of_range("find_witness: position (" + std::to_string(pos.row + 1) + "," +
                            std::to_string(pos.col + 1) + ") outside ambient");
  }
  if (!a(pos)) {
    throw std::invalid_argument("find_witness: position (" + std::to_string(pos.row + 1) + "," +
                                std::to_string(pos.col + 1) + ") is a 0-entry");
  }
  detail::WitnessFinder finder(a, q);
  for (std::size_t y = 0; y < q.rows(); ++y) {
    for (std::size_t x = 0; x < q.cols(); ++x) {
      if (!q(y, x)) continue;
      if (auto w = finder.anchored(pos, y, x)) return w;
    }
  }
  return std::nullopt;
}

/// Checks that `w` selects an exact copy of Q in A.
inline bool is_valid_embedding(const BitMatrix& a, const BitMatrix& q, const WitnessEmbedding& w) {
  if (w.row_sel.size() != q.rows() || w.col_sel.size() != q.cols()) return false;
  try {
    return submatrix(a, w.row_sel, w.col_sel) == q;
  } catch (const std::exception&) {
    return false;
  }
}

/// One witness per 1-entry of A (row-major), or nullopt for an entry with none.
inline std::vector<std::pair<Position, std::optional<WitnessEmbedding>>> witness_report(const BitMatrix& a,
                                                                                        const BitMatrix& q) {
  detail::require_fits(a, q, "witness_report");
  std::vector<std::pair<Position, std::optional<WitnessEmbedding>>> out;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j)) out.emplace_back(Position{i, j}, find_witness(a, q, {i, j}));
  return out;
}

/// Every 1-entry of A lies in an exact copy of Q. Vacuously true for all-zero A.
inline bool is_strongly_forcing(const BitMatrix& a, const BitMatrix& q) {
  detail::require_fits(a, q, "is_strongly_forcing");
  // Entries already inside a found copy need no search of their own.
  BitMatrix covered(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!a(i, j) || covered(i, j)) continue;
      auto w = find_witness(a, q, {i, j});
      if (!w) return false;
      for (std::size_t y = 0; y < q.rows(); ++y)
        for (std::size_t x = 0; x < q.cols(); ++x)
          if (q(y, x)) covered.set(w->row_sel[y], w->col_sel[x]);
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Linear-zero construction.

struct LinearZeroPlan {
  std::size_t pivot_row = 0;   ///< first row of Q holding a 1 (duplicated m-s+1 times)
  std::size_t pivot_col = 0;   ///< leftmost 1 in that row (duplicated n-t+1 times)
  std::size_t col_zeros = 0;   ///< zeros of Q in the pivot column
  std::size_t row_zeros = 0;   ///< zeros in the pivot row after column expansion
  std::size_t predicted_zeros = 0;
};

inline LinearZeroPlan linear_zero_plan(std::size_t m, std::size_t n, const BitMatrix& q) {
  if (q.empty() || q.all_zero()) throw std::invalid_argument("linear_zero_construction: all-zero pattern");
  if (m < q.rows() || n < q.cols()) throw std::invalid_argument("linear_zero_construction: ambient smaller than pattern");
  LinearZeroPlan plan;
  while (q.row_ones(plan.pivot_row) == 0) ++plan.pivot_row;
  while (!q(plan.pivot_row, plan.pivot_col)) ++plan.pivot_col;
  plan.col_zeros = q.rows() - q.col_ones(plan.pivot_col);
  // Copies of the pivot column carry Q(pivot_row, pivot_col) = 1, so the
  // expanded pivot row has exactly the zeros of the original row.
  plan.row_zeros = q.cols() - q.row_ones(plan.pivot_row);
  plan.predicted_zeros =
      q.zeros_count() + (n - q.cols()) * plan.col_zeros + (m - q.rows()) * plan.row_zeros;
  return plan;
}

/// m x n strongly Q-forcing matrix with O(m+n) zeros: duplicate the pivot
/// column of Q to width n, then the pivot row to height m.
inline BitMatrix linear_zero_construction(std::size_t m, std::size_t n, const BitMatrix& q) {
  const auto plan = linear_zero_plan(m, n, q);
  const std::size_t s = q.rows(), t = q.cols();
  const std::size_t extra_cols = n - t, extra_rows = m - s;
  auto src_col = [&](std::size_t j) {
    if (j <= plan.pivot_col) return j;
    if (j <= plan.pivot_col + extra_cols) return plan.pivot_col;
    return j - extra_cols;
  };
  auto src_row = [&](std::size_t i) {
    if (i <= plan.pivot_row) return i;
    if (i <= plan.pivot_row + extra_rows) return plan.pivot_row;
    return i - extra_rows;
  };
  BitMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (q(src_row(i), src_col(j))) a.set(i, j);
  return a;
}

// ---------------------------------------------------------------------------
// Explicit extremal constructions.

enum class TwoByTwo { I2, H2 };

/// J_n - H_n (strongly I_2-forcing) or J_n - I_n (strongly H_2-forcing).
inline BitMatrix extremal_2x2(std::size_t n, TwoByTwo variant) {
  if (n < 2) throw std::invalid_argument("extremal_2x2: requires n >= 2");
  return complement(variant == TwoByTwo::I2 ? hankel(n) : identity(n));
}

/// S_n = 1 (+) (J_{n-1} - H_{n-1}), strongly I_3-forcing.
inline BitMatrix construct_S(std::size_t n) {
  if (n < 3) throw std::invalid_argument("construct_S: requires n >= 3");
  return direct_sum(all_ones(1), complement(hankel(n - 1)));
}

/// T_n = 1 (+) (J_{n-1} - I_{n-1}), strongly 132-forcing.
inline BitMatrix construct_T(std::size_t n) {
  if (n < 3) throw std::invalid_argument("construct_T: requires n >= 3");
  return direct_sum(all_ones(1), complement(identity(n - 1)));
}

/// S_{n,k} = I_{k-2} (+) (J_{n-k+2} - H_{n-k+2}), strongly I_k-forcing.
inline BitMatrix construct_S_nk(std::size_t n, std::size_t k) {
  if (k < 3 || n < k) throw std::invalid_argument("construct_S_nk: requires n >= k >= 3");
  return direct_sum(identity(k - 2), complement(hankel(n - k + 2)));
}

// ---------------------------------------------------------------------------
// Bounds.

/// n^2 - (k-1)n: every row of a k x k permutation pattern has k-1 zeros.
inline std::size_t upper_bound_simple(std::size_t n, std::size_t k) {
  if (k == 0 || n < k) throw std::invalid_argument("upper_bound_simple: requires n >= k >= 1");
  return n * n - (k - 1) * n;
}

inline std::size_t upper_bound_3x3(std::size_t n) {
  if (n < 3) throw std::invalid_argument("upper_bound_3x3: requires n >= 3");
  return n * n - 3 * n + 3;
}

/// Conjectured M(n, I_k) = n^2 - (2k-3)n - (2k-k^2); also the ones count of S_{n,k}.
/// Defined for n >= k >= 2 (k = 2 reproduces n^2 - n).
inline std::size_t conjecture_value(std::size_t n, std::size_t k) {
  if (k < 2 || n < k) throw std::invalid_argument("conjecture_value: requires n >= k >= 2");
  const auto ni = static_cast<long long>(n), ki = static_cast<long long>(k);
  return static_cast<std::size_t>(ni * ni - (2 * ki - 3) * ni - (2 * ki - ki * ki));
}

// ---------------------------------------------------------------------------
// Dihedral symmetry.

/// The eight symmetries of a square, as maps on matrices.
enum class Symmetry { identity, rot90, rot180, rot270, reflect_h, reflect_v, transpose, anti_transpose };

inline constexpr Symmetry kAllSymmetries[] = {Symmetry::identity,  Symmetry::rot90,     Symmetry::rot180,
                                              Symmetry::rot270,    Symmetry::reflect_h, Symmetry::reflect_v,
                                              Symmetry::transpose, Symmetry::anti_transpose};

[[nodiscard]] constexpr bool swaps_axes(Symmetry g) noexcept {
  return g == Symmetry::rot90 || g == Symmetry::rot270 || g == Symmetry::transpose || g == Symmetry::anti_transpose;
}

inline BitMatrix apply(Symmetry g, const BitMatrix& m) {
  switch (g) {
    case Symmetry::identity: return m;
    case Symmetry::reflect_h: return reflect_h(m);
    case Symmetry::reflect_v: return reflect_v(m);
    case Symmetry::rot180: return reflect_h(reflect_v(m));
    case Symmetry::transpose: return transpose(m);
    case Symmetry::anti_transpose: return reflect_h(reflect_v(transpose(m)));
    case Symmetry::rot90: return reflect_v(transpose(m));
    case Symmetry::rot270: return reflect_h(transpose(m));
  }
  return m;
}

namespace detail {

inline std::vector<BitMatrix> closure(const BitMatrix& q, bool with_transpose) {
  std::map<std::string, BitMatrix> seen;
  std::vector<BitMatrix> frontier{q};
  seen.emplace(serialize(q), q);
  while (!frontier.empty()) {
    BitMatrix cur = std::move(frontier.back());
    frontier.pop_back();
    std::vector<BitMatrix> next{reflect_h(cur), reflect_v(cur)};
    if (with_transpose) next.push_back(transpose(cur));
    for (auto& m : next) {
      if (seen.emplace(serialize(m), m).second) frontier.push_back(std::move(m));
    }
  }
  std::vector<BitMatrix> out;
  for (auto& [key, m] : seen) out.push_back(std::move(m));
  return out;
}

}  // namespace detail

/// Closure of Q under row reversal, column reversal and (for square Q)
/// transposition, sorted by serialized form.
inline std::vector<BitMatrix> dihedral_class(const BitMatrix& q) {
  return detail::closure(q, q.rows() == q.cols());
}

/// For non-square Q: the reflection class of Q^T, which shares M(n, .) with Q
/// on square ambients.
inline std::vector<BitMatrix> transposed_class(const BitMatrix& q) { return detail::closure(transpose(q), false); }

inline BitMatrix canonical_form(const BitMatrix& q) { return dihedral_class(q).front(); }

/// Symmetries g of the square ambient with g(Q) = Q; they map strongly
/// Q-forcing matrices to strongly Q-forcing matrices.
inline std::vector<Symmetry> stabilizer(const BitMatrix& q) {
  std::vector<Symmetry> out;
  for (Symmetry g : kAllSymmetries) {
    if (swaps_axes(g) && q.rows() != q.cols()) continue;
    if (apply(g, q) == q) out.push_back(g);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Block-diagonal recurrence for M(n, I_k).

/// Table of known values or lower bounds for M(n, I_k), keyed by (n, k).
using ValueTable = std::map<std::pair<std::size_t, std::size_t>, std::size_t>;

enum class MissingEntries { reject, skip };

struct RecurrenceResult {
  std::size_t value = 0;
  std::size_t n1 = 0, k1 = 0, n2 = 0, k2 = 0;  ///< the best split
};

/// max table(n1,k1) + table(n2,k2) over n1+n2 = n, k1+k2 = k, 1 <= ki <= ni.
/// nullopt when no split exists (k < 2). With MissingEntries::reject, a
/// feasible split whose entries are absent throws std::out_of_range.
inline std::optional<RecurrenceResult> recurrence_lower_bound(std::size_t n, std::size_t k, const ValueTable& table,
                                                              MissingEntries policy = MissingEntries::reject) {
  if (k == 0 || k > n) throw std::invalid_argument("recurrence_lower_bound: requires 1 <= k <= n");
  std::optional<RecurrenceResult> best;
  for (std::size_t k1 = 1; k1 < k; ++k1) {
    const std::size_t k2 = k - k1;
    for (std::size_t n1 = k1; n1 + k2 <= n; ++n1) {
      const std::size_t n2 = n - n1;
      auto a = table.find({n1, k1});
      auto b = table.find({n2, k2});
      if (a == table.end() || b == table.end()) {
        if (policy == MissingEntries::skip) continue;
        const auto& [mn, mk] = a == table.end() ? std::pair{n1, k1} : std::pair{n2, k2};
        throw std::out_of_range("recurrence_lower_bound: missing table entry M(" + std::to_string(mn) + ", I_" +
                                std::to_string(mk) + ")");
      }
      const std::size_t v = a->second + b->second;
      if (!best || v > best->value) best = RecurrenceResult{v, n1, k1, n2, k2};
    }
  }
  return best;
}

/// Best known lower bounds for M(n, I_k), n <= n_max, k <= k_max: exact values
/// for k <= 3 and n = k, otherwise the max of S_{n,k} and the recurrence.
inline ValueTable known_lower_bounds(std::size_t n_max, std::size_t k_max) {
  ValueTable table;
  for (std::size_t k = 1; k <= k_max; ++k) {
    for (std::size_t n = k; n <= n_max; ++n) {
      std::size_t v = 0;
      if (k == 1) {
        v = n * n;
      } else if (k == 2) {
        v = n * n - n;
      } else if (n == k) {
        v = n;
      } else {
        v = conjecture_value(n, k);
      }
      if (k >= 2) {
        if (auto r = recurrence_lower_bound(n, k, table, MissingEntries::skip)) v = std::max(v, r->value);
      }
      table[{n, k}] = v;
    }
  }
  return table;
}

}  // namespace mforce
