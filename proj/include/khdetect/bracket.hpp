#pragma once

#include "khdetect/laurent.hpp"
#include "khdetect/pd.hpp"

namespace kh {

// Kauffman bracket state sum in the variable A, normalized so the unknot
// gives 1: sum over smoothing states of A^(#0 - #1) (-A^2 - A^-2)^(circles-1).
// 2^n states; refuses diagrams with more than 16 crossings.
LaurentPoly kauffman_bracket(const PlanarDiagram& d);

// (-A)^(-3 writhe) * bracket, re-expressed in t = A^-4.  Throws if an
// exponent fails to be a multiple of 4 (a convention bug, not an input error).
LaurentPoly jones(const PlanarDiagram& d);

}  // namespace kh
