#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mforce/bitmatrix.hpp"

#ifndef MFORCE_FIXTURE_DIR
#error "MFORCE_FIXTURE_DIR must be defined"
#endif

namespace mforce::test {

inline std::string fixture_path(const std::string& name) { return std::string(MFORCE_FIXTURE_DIR) + "/" + name; }

inline BitMatrix fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

inline BitMatrix random_matrix(std::size_t m, std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  BitMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (coin(rng)) a.set(i, j);
  return a;
}

/// A random matrix with at least one 1.
inline BitMatrix random_pattern(std::size_t s, std::size_t t, std::uint64_t seed) {
  auto q = random_matrix(s, t, 0.5, seed);
  if (q.all_zero()) q.set(seed % s, (seed / s) % t);
  return q;
}

/// Every s x t matrix whose cells are the low s*t bits of `code`.
inline BitMatrix from_code(std::size_t s, std::size_t t, std::uint64_t code) {
  BitMatrix q(s, t);
  for (std::size_t c = 0; c < s * t; ++c)
    if ((code >> c) & 1u) q.set(c / t, c % t);
  return q;
}

}  // namespace mforce::test
