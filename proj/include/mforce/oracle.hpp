#pragma once

// Brute-force reference implementations. These enumerate definitions
// literally and are only used to validate the fast paths.

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mforce/bitmatrix.hpp"

namespace mforce::oracle {

inline constexpr std::uint64_t kDefaultPlacementCap = 10'000'000;

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Calls f(selection) for every k-subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> sel(k);
  for (std::size_t i = 0; i < k; ++i) sel[i] = i;
  while (true) {
    f(static_cast<const std::vector<std::size_t>&>(sel));
    std::size_t i = k;
    while (i > 0 && sel[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++sel[i - 1];
    for (std::size_t j = i; j < k; ++j) sel[j] = sel[j - 1] + 1;
  }
}

inline void check_cap(std::size_t m, std::size_t n, std::size_t s, std::size_t t, std::uint64_t cap) {
  const std::uint64_t placements = binomial(m, s) * binomial(n, t);
  if (placements > cap) {
    throw CapExceeded("oracle: " + std::to_string(placements) + " placements exceed cap " + std::to_string(cap));
  }
}

/// Union, over every s x t submatrix (arbitrary rows and columns), of the
/// positions where Q has a 1.
inline BitMatrix minimal_forcing(std::size_t m, std::size_t n, const BitMatrix& q,
                                 std::uint64_t cap = kDefaultPlacementCap) {
  if (m < q.rows() || n < q.cols()) throw std::invalid_argument("oracle::minimal_forcing: ambient too small");
  check_cap(m, n, q.rows(), q.cols(), cap);
  BitMatrix a(m, n);
  for_each_subset(m, q.rows(), [&](const std::vector<std::size_t>& rows) {
    for_each_subset(n, q.cols(), [&](const std::vector<std::size_t>& cols) {
      for (std::size_t y = 0; y < rows.size(); ++y)
        for (std::size_t x = 0; x < cols.size(); ++x)
          if (q(y, x)) a.set(rows[y], cols[x]);
    });
  });
  return a;
}

/// Every s x t submatrix of A dominates Q.
inline bool is_forcing(const BitMatrix& a, const BitMatrix& q, std::uint64_t cap = kDefaultPlacementCap) {
  check_cap(a.rows(), a.cols(), q.rows(), q.cols(), cap);
  bool ok = true;
  for_each_subset(a.rows(), q.rows(), [&](const std::vector<std::size_t>& rows) {
    for_each_subset(a.cols(), q.cols(), [&](const std::vector<std::size_t>& cols) {
      for (std::size_t y = 0; y < rows.size(); ++y)
        for (std::size_t x = 0; x < cols.size(); ++x)
          if (q(y, x) && !a(rows[y], cols[x])) ok = false;
    });
  });
  return ok;
}

/// Every 1 of A lies in some submatrix exactly equal to Q.
inline bool is_strongly_forcing(const BitMatrix& a, const BitMatrix& q, std::uint64_t cap = kDefaultPlacementCap) {
  if (a.rows() < q.rows() || a.cols() < q.cols()) {
    throw std::invalid_argument("oracle::is_strongly_forcing: ambient too small");
  }
  check_cap(a.rows(), a.cols(), q.rows(), q.cols(), cap);
  BitMatrix covered(a.rows(), a.cols());
  for_each_subset(a.rows(), q.rows(), [&](const std::vector<std::size_t>& rows) {
    for_each_subset(a.cols(), q.cols(), [&](const std::vector<std::size_t>& cols) {
      bool equal = true;
      for (std::size_t y = 0; y < rows.size() && equal; ++y)
        for (std::size_t x = 0; x < cols.size() && equal; ++x)
          equal = a(rows[y], cols[x]) == q(y, x);
      if (!equal) return;
      for (std::size_t y = 0; y < rows.size(); ++y)
        for (std::size_t x = 0; x < cols.size(); ++x)
          if (q(y, x)) covered.set(rows[y], cols[x]);
    });
  });
  return covered == a;
}

struct MaxStrong {
  std::size_t best_ones = 0;
  std::vector<BitMatrix> witnesses;  ///< the full extremal level set, sorted by serialized form
};

inline constexpr std::size_t kMaxStrongDefaultN = 4;

/// Exhaustive sweep over all 2^(n^2) matrices. n <= 4 unless `allow_long`
/// (which permits n = 5).
inline MaxStrong max_strong(std::size_t n, const BitMatrix& q, bool allow_long = false) {
  if (n < q.rows() || n < q.cols()) throw std::invalid_argument("oracle::max_strong: n smaller than pattern");
  if (n > (allow_long ? kMaxStrongDefaultN + 1 : kMaxStrongDefaultN)) {
    throw CapExceeded("oracle::max_strong: n = " + std::to_string(n) + " exceeds the sweep cap");
  }
  const std::size_t cells = n * n;
  MaxStrong out;
  std::map<std::string, BitMatrix> level;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << cells); ++code) {
    const auto ones = static_cast<std::size_t>(std::popcount(code));
    if (ones < out.best_ones) continue;
    BitMatrix a(n, n);
    for (std::size_t c = 0; c < cells; ++c)
      if ((code >> c) & 1u) a.set(c / n, c % n);
    if (!oracle::is_strongly_forcing(a, q)) continue;
    if (ones > out.best_ones) {
      out.best_ones = ones;
      level.clear();
    }
    level.emplace(serialize(a), std::move(a));
  }
  for (auto& [key, a] : level) out.witnesses.push_back(std::move(a));
  return out;
}

}  // namespace mforce::oracle
