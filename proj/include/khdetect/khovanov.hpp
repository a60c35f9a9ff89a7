#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "khdetect/laurent.hpp"
#include "khdetect/pd.hpp"
#include "khdetect/sparse_matrix.hpp"

namespace kh {

// One vertex of the cube of resolutions: the circles of a full smoothing.
// Bit i of `vertex` picks the smoothing of crossing i: 0 joins (a,d),(b,c)
// of the tuple, 1 joins (a,b),(c,d).  Circles are indexed by their minimal
// contained arc label.
struct CircleDecomposition {
  std::uint32_t vertex = 0;
  int n_circles = 0;
  std::vector<int> circle_of_arc;  // 1-based by arc label
  int marked_circle = 0;           // circle containing the basepoint arc
};

CircleDecomposition smooth(const PlanarDiagram& d, std::uint32_t vertex);

// Khovanov chain complex graded by (quantum q, homological h).  Basis order
// within each h is lexicographic in (vertex, labeling), labeling bits mark
// circles carrying x; this makes every matrix reproducible byte-for-byte.
struct GradedComplex {
  bool reduced = false;
  int n_plus = 0, n_minus = 0;
  std::map<int, std::vector<int>> gen_q;          // h -> q of each generator
  std::map<int, SparseIntMatrix> differentials;   // h -> matrix C_h -> C_{h+1}

  int dim_at(int h) const {
    auto it = gen_q.find(h);
    return it == gen_q.end() ? 0 : static_cast<int>(it->second.size());
  }
  int total_dim() const;
  // h -> list of (q, multiplicity), q ascending.
  std::map<int, std::vector<std::pair<int, int>>> groups() const;
};

GradedComplex build_complex(const PlanarDiagram& d, bool reduced);

// Verifies d*d = 0 for every pair of consecutive differentials.
bool chain_condition_holds(const GradedComplex& c);

struct BigradedDimensions {
  std::map<std::pair<int, int>, int> dims;  // (q, h) -> dimension > 0

  int total_dim() const;
  bool operator==(const BigradedDimensions&) const = default;
};

// Betti numbers per (q, h), q-block by q-block.  Throws if d*d != 0.
BigradedDimensions homology(const GradedComplex& c);

// { q/2 - h : dims(q,h) > 0 }
std::set<mpq_class> delta_support(const BigradedDimensions& b);

// Total dimension == dim and a single delta value.
bool is_thin_candidate(const BigradedDimensions& b, int dim);

// sum over (q,h) of (-1)^h dim * q^q, as a Laurent polynomial in 'q'.
LaurentPoly graded_euler_char(const BigradedDimensions& b);

// Bit-exact serialization: [{"dim":..,"h":..,"q":..},...] sorted by (q,h).
std::string homology_to_json(const BigradedDimensions& b);
BigradedDimensions homology_from_json(const std::string& text);

}  // namespace kh
