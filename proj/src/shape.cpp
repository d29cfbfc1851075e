#include "anc/shape.hpp"

#include <numeric>

#include "anc/error.hpp"

namespace anc {

std::size_t DiagramShape::add_arrow(std::size_t source, std::size_t target) {
  arrows.push_back({source, target});
  return arrows.size() - 1;
}

void DiagramShape::check() const {
  for (const auto& a : arrows) {
    if (a.source >= nodes || a.target >= nodes) {
      throw Error(ErrorCode::IndexOutOfRange, "shape arrow endpoint outside node range");
    }
  }
}

bool is_connected(const DiagramShape& shape) {
  if (shape.nodes == 0) return false;
  std::vector<std::size_t> parent(shape.nodes);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = shape.nodes;
  for (const auto& a : shape.arrows) {
    auto s = find(a.source);
    auto t = find(a.target);
    if (s != t) {
      parent[s] = t;
      --components;
    }
  }
  return components == 1;
}

void require_connected(const DiagramShape& shape) {
  shape.check();
  if (shape.nodes == 0) throw Error(ErrorCode::EmptyShape, "diagram shape has no nodes");
  if (!is_connected(shape)) throw Error(ErrorCode::NotConnected, "diagram shape is not connected");
}

}  // namespace anc
