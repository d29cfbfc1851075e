#pragma once

#include <cstddef>
#include <vector>

namespace anc {

struct ShapeArrow {
  std::size_t source = 0;
  std::size_t target = 0;
};

// Finite shape of a diagram. Arrow ids are indices into `arrows`; parallel
// arrows and loops are allowed.
struct DiagramShape {
  std::size_t nodes = 0;
  std::vector<ShapeArrow> arrows;

  std::size_t add_node() { return nodes++; }
  std::size_t add_arrow(std::size_t source, std::size_t target);

  // Throws IndexOutOfRange for an endpoint outside [0, nodes).
  void check() const;
};

// Nonempty and connected as an undirected graph.
bool is_connected(const DiagramShape& shape);

// Throws EmptyShape or NotConnected.
void require_connected(const DiagramShape& shape);

}  // namespace anc
