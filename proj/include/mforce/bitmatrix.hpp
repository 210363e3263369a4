#pragma once

// Dense (0,1)-matrix with bit-packed rows.
//
// Indexing is 0-based everywhere in the library. Anything shown to a user
// (CLI output, error messages) is converted to 1-based at that boundary.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mforce {

inline constexpr std::size_t kMaxDim = std::size_t{1} << 16;

struct Position {
  std::size_t row = 0;
  std::size_t col = 0;

  friend constexpr bool operator==(const Position&, const Position&) = default;
  friend constexpr auto operator<=>(const Position&, const Position&) = default;
};

enum class Fill { zero, one };

class BitMatrix {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitMatrix() = default;

  BitMatrix(std::size_t rows, std::size_t cols, Fill fill = Fill::zero)
      : rows_(rows), cols_(cols), words_per_row_((cols + kWordBits - 1) / kWordBits) {
    if (rows == 0 || cols == 0) {
      throw std::invalid_argument("BitMatrix: dimensions must be positive");
    }
    if (rows > kMaxDim || cols > kMaxDim) {
      throw std::invalid_argument("BitMatrix: dimension exceeds 65536");
    }
    bits_.assign(rows_ * words_per_row_, 0);
    if (fill == Fill::one) {
      for (std::size_t i = 0; i < rows_; ++i) {
        auto row = row_words_mut(i);
        std::fill(row.begin(), row.end(), ~word_type{0});
        row.back() &= tail_mask();
      }
    }
  }

  /// Builds a matrix from nested 0/1 rows; rows must all have the same length.
  BitMatrix(std::initializer_list<std::initializer_list<int>> rows)
      : BitMatrix(rows.size(), rows.size() == 0 ? 0 : rows.begin()->size()) {
    std::size_t i = 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("BitMatrix: ragged rows");
      std::size_t j = 0;
      for (int v : r) set(i, j++, v != 0);
      ++i;
    }
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] std::size_t size() const noexcept { return rows_ * cols_; }
  [[nodiscard]] bool empty() const noexcept { return rows_ == 0; }
  [[nodiscard]] std::size_t words_per_row() const noexcept { return words_per_row_; }

  [[nodiscard]] bool get(std::size_t i, std::size_t j) const noexcept {
    return (bits_[i * words_per_row_ + j / kWordBits] >> (j % kWordBits)) & 1u;
  }
  [[nodiscard]] bool operator()(std::size_t i, std::size_t j) const noexcept { return get(i, j); }
  [[nodiscard]] bool operator()(Position p) const noexcept { return get(p.row, p.col); }

  void set(std::size_t i, std::size_t j, bool value = true) noexcept {
    auto& w = bits_[i * words_per_row_ + j / kWordBits];
    const word_type mask = word_type{1} << (j % kWordBits);
    w = value ? (w | mask) : (w & ~mask);
  }
  void flip(std::size_t i, std::size_t j) noexcept {
    bits_[i * words_per_row_ + j / kWordBits] ^= word_type{1} << (j % kWordBits);
  }

  [[nodiscard]] std::span<const word_type> row_words(std::size_t i) const noexcept {
    return {bits_.data() + i * words_per_row_, words_per_row_};
  }
  [[nodiscard]] std::span<word_type> row_words_mut(std::size_t i) noexcept {
    return {bits_.data() + i * words_per_row_, words_per_row_};
  }
  [[nodiscard]] std::span<const word_type> words() const noexcept { return bits_; }

  /// Mask of the valid bits in the last word of each row.
  [[nodiscard]] word_type tail_mask() const noexcept {
    const std::size_t r = cols_ % kWordBits;
    return r == 0 ? ~word_type{0} : ((word_type{1} << r) - 1);
  }

  [[nodiscard]] bool padding_is_clear() const noexcept {
    const word_type pad = ~tail_mask();
    for (std::size_t i = 0; i < rows_; ++i) {
      if (row_words(i).back() & pad) return false;
    }
    return true;
  }

  [[nodiscard]] std::size_t ones_count() const noexcept {
    std::size_t total = 0;
    for (word_type w : bits_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }
  [[nodiscard]] std::size_t zeros_count() const noexcept { return size() - ones_count(); }

  [[nodiscard]] std::size_t row_ones(std::size_t i) const noexcept {
    std::size_t total = 0;
    for (word_type w : row_words(i)) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }
  [[nodiscard]] std::size_t col_ones(std::size_t j) const noexcept {
    std::size_t total = 0;
    for (std::size_t i = 0; i < rows_; ++i) total += get(i, j) ? 1 : 0;
    return total;
  }

  [[nodiscard]] bool all_zero() const noexcept {
    return std::all_of(bits_.begin(), bits_.end(), [](word_type w) { return w == 0; });
  }
  [[nodiscard]] bool all_one() const noexcept { return ones_count() == size(); }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<word_type> bits_;
};

// ---------------------------------------------------------------------------
// Constructors for the standard matrices.

inline BitMatrix make(std::size_t rows, std::size_t cols, Fill fill) { return BitMatrix(rows, cols, fill); }

inline BitMatrix all_ones(std::size_t rows, std::size_t cols) { return BitMatrix(rows, cols, Fill::one); }
inline BitMatrix all_ones(std::size_t n) { return all_ones(n, n); }

inline BitMatrix identity(std::size_t k) {
  BitMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) m.set(i, i);
  return m;
}

/// Anti-diagonal identity: ones at (i, k-1-i).
inline BitMatrix hankel(std::size_t k) {
  BitMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) m.set(i, k - 1 - i);
  return m;
}

/// Permutation matrix with a one at (i, perm[i]-1); `perm` is 1-based one-line notation.
inline BitMatrix permutation_matrix(std::span<const int> perm) {
  const std::size_t k = perm.size();
  BitMatrix m(k, k);
  std::vector<bool> seen(k, false);
  for (std::size_t i = 0; i < k; ++i) {
    const int v = perm[i];
    if (v < 1 || static_cast<std::size_t>(v) > k || seen[v - 1]) {
      throw std::invalid_argument("permutation_matrix: not a permutation of 1.." + std::to_string(k));
    }
    seen[v - 1] = true;
    m.set(i, static_cast<std::size_t>(v - 1));
  }
  return m;
}

inline BitMatrix permutation_matrix(std::string_view one_line) {
  std::vector<int> perm;
  for (char ch : one_line) {
    if (ch < '1' || ch > '9') throw std::invalid_argument("permutation_matrix: expected digits 1-9");
    perm.push_back(ch - '0');
  }
  return permutation_matrix(std::span<const int>(perm));
}

[[nodiscard]] inline bool is_permutation_matrix(const BitMatrix& p) {
  if (p.rows() != p.cols()) return false;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    if (p.row_ones(i) != 1 || p.col_ones(i) != 1) return false;
  }
  return true;
}

/// One-line notation (1-based) of a permutation matrix.
inline std::vector<int> permutation_of(const BitMatrix& p) {
  if (!is_permutation_matrix(p)) throw std::invalid_argument("not a permutation matrix");
  std::vector<int> perm(p.rows());
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (p(i, j)) perm[i] = static_cast<int>(j + 1);
    }
  }
  return perm;
}

// ---------------------------------------------------------------------------
// Structural operations.

inline BitMatrix transpose(const BitMatrix& m) {
  BitMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j)) out.set(j, i);
  return out;
}

/// Row reversal: (i,j) -> (m-1-i, j).
inline BitMatrix reflect_h(const BitMatrix& m) {
  BitMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto src = m.row_words(i);
    auto dst = out.row_words_mut(m.rows() - 1 - i);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  return out;
}

/// Column reversal: (i,j) -> (i, n-1-j).
inline BitMatrix reflect_v(const BitMatrix& m) {
  BitMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j)) out.set(i, m.cols() - 1 - j);
  return out;
}

/// J - M.
inline BitMatrix complement(const BitMatrix& m) {
  BitMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto src = m.row_words(i);
    auto dst = out.row_words_mut(i);
    for (std::size_t w = 0; w < src.size(); ++w) dst[w] = ~src[w];
    dst.back() &= out.tail_mask();
  }
  return out;
}

namespace detail {

inline void check_selection(std::span<const std::size_t> sel, std::size_t bound, const char* what) {
  if (sel.empty()) throw std::invalid_argument(std::string("submatrix: empty ") + what + " selection");
  for (std::size_t k = 0; k < sel.size(); ++k) {
    if (sel[k] >= bound) {
      throw std::out_of_range(std::string("submatrix: ") + what + " index " + std::to_string(sel[k] + 1) +
                              " out of range 1.." + std::to_string(bound));
    }
    if (k > 0 && sel[k] <= sel[k - 1]) {
      throw std::invalid_argument(std::string("submatrix: ") + what + " selection not strictly increasing");
    }
  }
}

}  // namespace detail

inline BitMatrix submatrix(const BitMatrix& m, std::span<const std::size_t> row_sel,
                           std::span<const std::size_t> col_sel) {
  detail::check_selection(row_sel, m.rows(), "row");
  detail::check_selection(col_sel, m.cols(), "column");
  BitMatrix out(row_sel.size(), col_sel.size());
  for (std::size_t a = 0; a < row_sel.size(); ++a)
    for (std::size_t b = 0; b < col_sel.size(); ++b)
      if (m(row_sel[a], col_sel[b])) out.set(a, b);
  return out;
}

inline BitMatrix window(const BitMatrix& m, std::size_t r0, std::size_t c0, std::size_t s, std::size_t t) {
  if (s == 0 || t == 0 || r0 + s > m.rows() || c0 + t > m.cols()) {
    throw std::out_of_range("window: block exceeds matrix bounds");
  }
  BitMatrix out(s, t);
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < t; ++b)
      if (m(r0 + a, c0 + b)) out.set(a, b);
  return out;
}

inline bool entrywise_leq(const BitMatrix& a, const BitMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("entrywise_leq: dimension mismatch");
  }
  auto wa = a.words();
  auto wb = b.words();
  for (std::size_t k = 0; k < wa.size(); ++k) {
    if (wa[k] & ~wb[k]) return false;
  }
  return true;
}

/// Block-diagonal sum: `a` top-left, `b` bottom-right.
inline BitMatrix direct_sum(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j)) out.set(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (b(i, j)) out.set(a.rows() + i, a.cols() + j);
  return out;
}

inline std::size_t ones_count(const BitMatrix& m) { return m.ones_count(); }
inline std::size_t zeros_count(const BitMatrix& m) { return m.zeros_count(); }

// ---------------------------------------------------------------------------
// Text format: optional "m n" header, then m lines of n characters in {0,1}.

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rows only, no header.
inline std::string to_rows(const BitMatrix& m) {
  std::string out;
  out.reserve(m.rows() * (m.cols() + 1));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m(i, j) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

inline std::string serialize(const BitMatrix& m) {
  return std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n" + to_rows(m);
}

inline BitMatrix parse(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("parse: empty input");

  bool have_header = false;
  std::size_t hdr_rows = 0, hdr_cols = 0;
  if (lines.front().find(' ') != std::string_view::npos) {
    std::istringstream in{std::string(lines.front())};
    std::string extra;
    if (!(in >> hdr_rows >> hdr_cols) || (in >> extra)) {
      throw ParseError("parse: line 1: malformed header, expected \"m n\"");
    }
    if (hdr_rows == 0 || hdr_cols == 0) throw ParseError("parse: line 1: header dimensions must be positive");
    have_header = true;
  }

  const std::size_t first = have_header ? 1 : 0;
  const std::size_t nrows = lines.size() - first;
  if (nrows == 0) throw ParseError("parse: no matrix rows");
  const std::size_t ncols = lines[first].size();
  if (ncols == 0) throw ParseError("parse: line " + std::to_string(first + 1) + ": empty row");
  if (nrows > kMaxDim || ncols > kMaxDim) throw ParseError("parse: dimension exceeds 65536");

  for (std::size_t k = first; k < lines.size(); ++k) {
    if (lines[k].size() != ncols) {
      throw ParseError("parse: line " + std::to_string(k + 1) + ": ragged rows (expected " +
                       std::to_string(ncols) + " entries, got " + std::to_string(lines[k].size()) + ")");
    }
    for (std::size_t j = 0; j < ncols; ++j) {
      const char c = lines[k][j];
      if (c != '0' && c != '1') {
        throw ParseError("parse: line " + std::to_string(k + 1) + ", column " + std::to_string(j + 1) +
                         ": invalid character");
      }
    }
  }
  if (have_header && (hdr_rows != nrows || hdr_cols != ncols)) {
    throw ParseError("parse: header says " + std::to_string(hdr_rows) + "x" + std::to_string(hdr_cols) +
                     " but body is " + std::to_string(nrows) + "x" + std::to_string(ncols));
  }

  BitMatrix m(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j)
      if (lines[first + i][j] == '1') m.set(i, j);
  return m;
}

inline std::ostream& operator<<(std::ostream& os, const BitMatrix& m) {
  if (m.empty()) return os << "(empty)";
  return os << "\n" << to_rows(m);
}

}  // namespace mforce
