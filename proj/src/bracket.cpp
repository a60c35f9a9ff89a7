#include "khdetect/bracket.hpp"

#include <bit>
#include <stdexcept>

#include "khdetect/khovanov.hpp"

namespace kh {

LaurentPoly kauffman_bracket(const PlanarDiagram& d) {
  const int n = d.n_crossings();
  if (n > 16)
    throw std::invalid_argument("kauffman_bracket: more than 16 crossings");

  LaurentPoly loop = LaurentPoly::monomial('A', -1, 2) +
                     LaurentPoly::monomial('A', -1, -2);  // -A^2 - A^-2

  // Precompute powers of the loop value up to the max circle count.
  std::vector<LaurentPoly> loop_pow{LaurentPoly::constant('A', 1)};
  LaurentPoly sum('A');
  for (std::uint32_t v = 0; v < (1u << n); v++) {
    int circles = smooth(d, v).n_circles;
    while (static_cast<int>(loop_pow.size()) < circles)
      loop_pow.push_back(loop_pow.back() * loop);
    int exp = n - 2 * std::popcount(v);  // #0-smoothings - #1-smoothings
    sum = sum + LaurentPoly::monomial('A', 1, exp) * loop_pow[circles - 1];
  }
  return sum;
}

LaurentPoly jones(const PlanarDiagram& d) {
  int w = d.writhe();
  LaurentPoly f = LaurentPoly::monomial('A', (w % 2 == 0) ? 1 : -1, -3 * w) *
                  kauffman_bracket(d);
  return f.with_exponents_divided('t', -4);
}

}  // namespace kh
