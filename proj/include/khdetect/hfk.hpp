#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "khdetect/laurent.hpp"

namespace kh {

// A bigraded knot-Floer dimension profile: Maslov grading m, Alexander
// grading a.  Maslov data is stored relative to a free offset unless a case
// pins it.
struct HFKClass {
  int m;
  int a;
  int mult;
  bool operator==(const HFKClass&) const = default;
};

struct HFKShape {
  std::vector<HFKClass> classes;  // decreasing m, no repeats of (m, a)

  int total_dim() const;
  int dim_at_alexander(int a) const;
  int genus() const;  // max a with a nonzero class
  // m - a if constant across classes.
  std::optional<int> single_delta() const;
  // mult(m, a) == mult(m - 2a, -a) for all classes.
  bool symmetric() const;
  HFKShape mirrored() const;  // (m, a) -> (-m, -a)
  // Adds `shift` to every Maslov grading.
  HFKShape with_maslov_offset(int shift) const;
  std::string str() const;
  bool operator==(const HFKShape&) const = default;
};

// Euler characteristic sum of (-1)^m t^a over classes; no renormalization.
LaurentPoly alexander_from_hfk(const HFKShape& s);

// A named, citable rewrite rule of the constraint pipeline.  The cited
// results enter as black-box axioms; the engine never proves them.
struct AxiomRule {
  std::string name;
  std::string citation;
  std::string statement;
};

const std::vector<AxiomRule>& axiom_rules();
const AxiomRule& axiom(const std::string& name);

struct TraceStep {
  std::string rule;        // AxiomRule name ("" for bookkeeping steps)
  std::string conclusion;
};

// An Alexander-filtered complex on explicit generators: the differential
// lowers the Maslov grading by 1 and does not raise the Alexander grading.
struct FilteredComplex {
  std::vector<int> maslov;
  std::vector<int> alexander;
  // differential[t][s] = coefficient of generator t in the boundary of s.
  std::vector<std::vector<mpq_class>> differential;

  int size() const { return static_cast<int>(maslov.size()); }
  bool gradings_ok() const;
  bool d_squared_is_zero() const;
  int homology_dim() const;
};

// All differentials compatible with the gradings of a 5-singleton-class
// shape, up to rescaling generators by units, that have 1-dimensional
// homology.  The rescaling quotient is cross-checked against randomized
// nonzero coefficient assignments.
std::vector<FilteredComplex> enumerate_differentials(const HFKShape& s);

// Minimal Alexander level a* whose subcomplex surjects onto the homology.
// Requires 1-dimensional homology.
int tau(const FilteredComplex& c);

// Finite truncation of a CFK-infinity-style plane complex: node (gen, i, j)
// with j - i = a(gen); vertical arrows drop j, horizontal arrows drop i,
// never diagonally; the pattern is invariant under (i,j) -> (i+1, j+1).
struct PlaneNode {
  int gen;
  int i;
  int j;
  bool operator==(const PlaneNode&) const = default;
};
struct PlaneArrow {
  int src;  // node indices
  int dst;
  bool vertical;
};
struct PlaneComplex {
  std::vector<PlaneNode> nodes;
  std::vector<PlaneArrow> arrows;
  int window = 6;  // inclusive bound on |i| and |j|
};

PlaneComplex build_plane_complex(const FilteredComplex& c, int window = 6);

// A nonzero entry of the squared total differential on the interior of the
// window, as (source node, target node); absent if d^2 = 0 there.
std::optional<std::pair<PlaneNode, PlaneNode>> d_squared_witness(
    const PlaneComplex& p);

struct RejectedCase {
  std::string description;
  std::string certificate_type;  // alexander_at_one | d_squared_witness |
                                 // dimension_overflow | kh_dimension
  std::string certificate;
  std::vector<TraceStep> trace;
};

struct MirrorTwin {
  HFKShape shape;
  int tau_value = 0;
  int delta_numerator = 0;  // delta = numerator / 2
};

struct AcceptedCase {
  std::string name;
  HFKShape shape;  // Maslov-pinned
  int genus = 0;
  bool fibered = false;
  bool strongly_quasipositive = false;  // self or, for the twin, its mirror
  int tau_value = 0;
  int delta_numerator = 0;  // delta = numerator / 2
  LaurentPoly alexander{'t'};
  std::optional<MirrorTwin> mirror;
  std::vector<TraceStep> trace;
};

struct ClassificationReport {
  int total_dim = 0;
  int genus_bound = 0;
  std::vector<AcceptedCase> accepted;
  std::vector<RejectedCase> rejected;
  std::vector<AxiomRule> axioms_used;
  std::string to_json() const;
};

// Allowed total HFK dimensions under the spectral-sequence axiom: all
// dimensions <= kh_dim of the same parity.  kh_dim must be odd.
std::vector<int> dowlin_candidates(int kh_dim);

// Terminal routing for HFK dimension 1 or 3: the unknot / trefoil detection
// axioms identify K, whose reduced Khovanov dimension is compared to kh_dim.
RejectedCase apply_small_dim_axioms(int hfk_dim, int kh_dim);

struct ShapeEnumeration {
  std::vector<std::pair<HFKShape, std::vector<TraceStep>>> surviving;
  std::vector<RejectedCase> rejected;
};

// Enumerates symmetric multiplicity profiles of total dimension 5 with odd
// dimension at Alexander grading 0 and applies the axioms in order.
// Shapes of the genus-g family are emitted for g = 2..genus_bound.
ShapeEnumeration admissible_shapes(int total_dim, int genus_bound);

// The full pipeline; total_dim must be odd and >= 1.
ClassificationReport classify(int total_dim, int genus_bound = 8);

// delta of an accepted case, as an exact rational (numerator over 2).
mpq_class delta_of_case(const AcceptedCase& c);

}  // namespace kh
