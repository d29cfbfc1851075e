#pragma once

#include <string>
#include <vector>

#include "anc/category.hpp"
#include "anc/cell.hpp"

namespace anc {

struct Coordinate {
  bool singular = false;
  std::size_t index = 0;

  static Coordinate regular(std::size_t i) { return {false, i}; }
  static Coordinate sing(std::size_t i) { return {true, i}; }
  friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

// Outermost coordinate first.
using Path = std::vector<Coordinate>;

// "s1,r0" style; "" or "-" is the empty path. Throws ParseError.
Path parse_path(const std::string& text);
std::string format_path(const Path& path);

// Throws PathOutOfRange.
Diagram slice(const Diagram& d, const Path& path);

// Length-0 zigzag with sole regular object d.
Diagram identity_suspend(const Diagram& d);

// Generator with source S and target T: S -> K <- T where K is the cone on
// the boundary of S, bottoming out at the label. Throws DimensionMismatch,
// NotGlobular or ConeMapMissing.
Diagram cone_generator(const LabelSignature& signature, Atom label, const Diagram& source, const Diagram& target);

struct DimensionViolation {
  Path path;
  Atom label = 0;
};

// A label reached through s singular coordinates must have dimension <= s.
std::vector<DimensionViolation> validate_dimensions(const LabelSignature& signature, const Diagram& d);

// Distinct top-dimensional label occurrences of the source that a map sends
// to the same position of the target.
struct Fusion {
  Path target;  // all-singular path in the target
  std::vector<Atom> labels;
};
std::vector<Fusion> find_fusions(const LabelSignature& signature, const Morphism& map);

}  // namespace anc
