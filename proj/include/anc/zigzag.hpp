#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "anc/category.hpp"
#include "anc/cell.hpp"

namespace anc {

struct Violation {
  std::size_t height = 0;  // target height for maps, index for zigzags
  std::string what;
};

// Objects and morphisms of `z` belong to `base`.
std::vector<Violation> validate_zigzag(const Category& base, const Diagram& z);

// Regular equalities, the per-target-height square rules and slice
// membership in `base` (the category of the zigzags' objects).
std::vector<Violation> validate_map(const Category& base, const Morphism& m);

// reversal(m.sing): target regular heights -> source regular heights.
Monotone regular_map(const Morphism& m);

std::pair<Diagram, Diagram> boundaries(const Diagram& z);

// Throws BoundaryMismatch unless the last regular of `a` equals the first of `b`.
Diagram concatenate(const Diagram& a, const Diagram& b);
Morphism concatenate_maps(const Morphism& a, const Morphism& b);

// Regular heights a <= b. Throws IndexOutOfRange.
Diagram restrict(const Diagram& z, std::size_t a, std::size_t b);
// Restriction to target regular heights a <= b; the source window is
// (regular_map(m)(a), regular_map(m)(b)).
Morphism restrict_map(const Morphism& m, std::size_t a, std::size_t b);

// Diagram of zigzags and zigzag maps over a shape.
struct ZigzagDiagram {
  DiagramShape shape;
  std::vector<Diagram> objects;
  std::vector<Morphism> arrows;
};

// A diagram in the base category.
struct Deconstruction {
  struct Node {
    std::size_t diagram_node = 0;
    bool singular = false;
    std::size_t height = 0;
  };
  DiagramShape shape;
  std::vector<Diagram> objects;
  std::vector<Morphism> arrows;
  std::vector<Node> nodes;
  // node_of[j] maps 2*height (+1 for singular) of D(j) to a node index, or
  // SIZE_MAX when dropped.
  std::vector<std::vector<std::size_t>> node_of;

  std::size_t regular_node(std::size_t j, std::size_t i) const { return node_of[j][2 * i]; }
  std::size_t singular_node(std::size_t j, std::size_t i) const { return node_of[j][2 * i + 1]; }
};

// With drop_outer, the first and last regular objects of every zigzag are
// left out together with the arrows touching them.
Deconstruction deconstruct(const ZigzagDiagram& d, bool drop_outer = false);

// Applies an atom map at the bottom level, recursively.
Diagram apply_functor(const std::function<Atom(Atom)>& f, const Diagram& z);
Morphism apply_functor(const std::function<Atom(Atom)>& f, const Morphism& m);

}  // namespace anc
