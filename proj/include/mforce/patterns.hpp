#pragma once

// Built-in pattern names.
//
//   iK  identity I_K (permutation 12..K)      hK  anti-identity H_K (K..21)
//   jK  all-one J_K
//   b3  132    c3  213    d3  231    e3  312
//   pDIGITS  permutation matrix in one-line notation, e.g. p2413

#include <cctype>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mforce/bitmatrix.hpp"

namespace mforce {

inline std::optional<BitMatrix> named_pattern(std::string_view name) {
  if (name == "b3") return permutation_matrix("132");
  if (name == "c3") return permutation_matrix("213");
  if (name == "d3") return permutation_matrix("231");
  if (name == "e3") return permutation_matrix("312");
  if (name.size() >= 2 && (name[0] == 'i' || name[0] == 'h' || name[0] == 'j')) {
    const std::string_view digits = name.substr(1);
    for (char c : digits)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    const std::size_t k = std::stoul(std::string(digits));
    if (k == 0 || k > kMaxDim) return std::nullopt;
    if (name[0] == 'i') return identity(k);
    if (name[0] == 'h') return hankel(k);
    return all_ones(k);
  }
  if (name.size() >= 2 && name[0] == 'p') {
    try {
      return permutation_matrix(name.substr(1));
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

/// Resolves "-" (stdin), a built-in name, or a file path in the text format.
inline BitMatrix load_matrix(const std::string& source) {
  if (source == "-") {
    std::string text{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    return parse(text);
  }
  std::ifstream in(source);
  if (in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
  }
  if (auto q = named_pattern(source)) return *q;
  throw std::invalid_argument("cannot open '" + source + "' and it is not a built-in pattern name");
}

}  // namespace mforce
