// Small tour of the library: minimal forcing matrix, a strong-forcing check
// with witnesses, and an exact search.

#include <iostream>

#include "mforce/forcing.hpp"
#include "mforce/search.hpp"
#include "mforce/strong_forcing.hpp"

int main() {
  using namespace mforce;

  const auto q = permutation_matrix("2413");
  const auto a = minimal_forcing(8, 8, q);
  std::cout << "minimal 8x8 forcing matrix for 2413 (" << a.ones_count() << " ones):\n" << to_rows(a) << '\n';
  const auto rep = corner_functions(q);
  std::cout << "corner sizes NW SW NE SE: " << rep.nw.size() << ' ' << rep.sw.size() << ' ' << rep.ne.size() << ' '
            << rep.se.size() << "\n\n";

  const auto s = construct_S(5);
  std::cout << "S_5 is strongly I_3-forcing: " << std::boolalpha << is_strongly_forcing(s, identity(3)) << '\n';
  if (auto w = find_witness(s, identity(3), {0, 0})) {
    std::cout << "copy of I_3 through (1,1): rows";
    for (auto r : w->row_sel) std::cout << ' ' << r + 1;
    std::cout << ", cols";
    for (auto c : w->col_sel) std::cout << ' ' << c + 1;
    std::cout << "\n\n";
  }

  SearchConfig cfg;
  cfg.enumerate_all_extremal = true;
  const auto out = search_max(5, permutation_matrix("132"), cfg);
  std::cout << "max ones in a 5x5 strongly 132-forcing matrix: " << out.best_ones << " (" << to_string(out.status)
            << ", " << out.witnesses.size() << " extremal matrices)\n";
  if (!out.witnesses.empty()) std::cout << to_rows(out.witnesses.front());
}
