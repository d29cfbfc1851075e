#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "anc/category.hpp"
#include "anc/cell.hpp"

namespace anc {

enum class NodeKind { Region, Wire, Vertex };

const char* to_string(NodeKind kind);

// A point of the projection: `level` indexes the outer zigzag (r_0, s_0,
// r_1, ... as 0, 1, 2, ...), `position` the inner one the same way.
struct LayerNode {
  std::size_t level = 0;
  std::size_t position = 0;
  Atom label = 0;
  NodeKind kind = NodeKind::Region;
};

// Connects a singular point of a regular level to its image in the adjacent
// singular level.
struct LayerEdge {
  std::size_t from = 0;
  std::size_t to = 0;
};

struct LayerGraph {
  std::size_t dimension = 0;  // of the projected diagram
  std::vector<std::size_t> level_start;  // first node of each level
  std::vector<std::size_t> level_length;  // inner zigzag length per level
  std::vector<LayerNode> nodes;
  std::vector<LayerEdge> edges;

  std::size_t levels() const { return level_start.size(); }
};

// Keeps the two outermost dimensions. A point's label is the highest
// dimensional label of the sub-diagram it stands for; its kind compares that
// dimension with the diagram's. 1-diagrams become a single level, 0-diagrams
// a single node.
LayerGraph project(const LabelSignature& signature, const Diagram& d);

struct RenderStyle {
  int unit = 40;
  int vertex_radius = 7;
  int wire_width = 4;
};

// Deterministic SVG 1.1. Outer heights grow upward, inner heights rightward.
std::string emit_svg(const LabelSignature& signature, const LayerGraph& graph, const RenderStyle& style = {});

// One row per level from the bottom up, each with its inner length as [k],
// and the singular maps between rows.
std::string emit_text(const LabelSignature& signature, const LayerGraph& graph);

// {dimension, levels: [{length, nodes: [{position, label, kind}]}], edges: [[from, to]]}
// with label ids resolved through the signature.
nlohmann::json graph_to_json(const LabelSignature& signature, const LayerGraph& graph);

}  // namespace anc
