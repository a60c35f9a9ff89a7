#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace kh {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One crossing of a planar diagram.  arcs = (a,b,c,d) lists the four arc
// labels counterclockwise, starting from the incoming under-strand a.
// The under-strand exits at c; the over-strand occupies b and d.
struct Crossing {
  std::array<int, 4> arcs;

  int a() const { return arcs[0]; }
  int b() const { return arcs[1]; }
  int c() const { return arcs[2]; }
  int d() const { return arcs[3]; }
  bool operator==(const Crossing&) const = default;
};

// A validated PD code for a knot.  Arc labels run 1..2n and increase along
// the orientation; each crossing passage increments the label (mod 2n).
// The zero-crossing diagram is the unknot, with a single formal arc.
struct PlanarDiagram {
  std::vector<Crossing> crossings;
  int n_arcs = 1;       // 2n for n crossings, 1 for the unknot
  int basepoint = 1;    // arc carrying the reduction basepoint
  int n_plus = 0;
  int n_minus = 0;

  int n_crossings() const { return static_cast<int>(crossings.size()); }
  int writhe() const { return n_plus - n_minus; }
  bool is_unknot() const { return crossings.empty(); }
  bool operator==(const PlanarDiagram&) const = default;
};

// Per-crossing orientation data derived during validation.
struct CrossingOrientation {
  bool over_from_d;  // true: over-strand runs d -> b; false: b -> d
  int sign;          // +1 for b -> d, -1 for d -> b
};

// Parses PD text: `unknot`, or `X(a,b,c,d)` terms separated by `;` or
// whitespace.  The bracketed form `PD[X[a,b,c,d],...]` is accepted by
// transliteration.  Throws ParseError on bad syntax, ValidationError if the
// diagram violates an invariant.
PlanarDiagram parse_pd(const std::string& text);

// Canonical text form: `unknot` or `X(..);X(..)`.  parse_pd(print_pd(d)) == d.
std::string print_pd(const PlanarDiagram& d);

// All invariant violations, empty iff the diagram is valid.  Checks label
// positivity, the twice-each occurrence rule, per-crossing orientation
// consistency, and that the strand transitions form a single knot component.
// The checks are combinatorial: a code passing them can still fail to embed
// in the plane (a virtual diagram); planar realizability is assumed.
std::vector<std::string> validate(const PlanarDiagram& d);

// Orientation and sign of each crossing.  Requires a valid diagram.
std::vector<CrossingOrientation> orientations(const PlanarDiagram& d);

// Mirror knot: over/under swapped at every crossing (tuples rotated one
// step), writhe negated, basepoint preserved.  Involution.
PlanarDiagram mirror(const PlanarDiagram& d);

// Connected sum, spliced at the label-wrap arc of each summand.
PlanarDiagram connect_sum(const PlanarDiagram& d1, const PlanarDiagram& d2);

}  // namespace kh
