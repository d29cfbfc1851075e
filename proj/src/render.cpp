#include "anc/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include "anc/zigzag.hpp"

namespace anc {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Region: return "region";
    case NodeKind::Wire: return "wire";
    case NodeKind::Vertex: return "vertex";
  }
  return "?";
}

namespace {

// Highest-dimensional label of a sub-diagram. Ties go to the label met
// first, singular heights before regular ones.
class TopLabel {
 public:
  explicit TopLabel(const LabelSignature& sig) : sig_(sig) {}

  Atom operator()(const Diagram& d) {
    if (d.is_atom()) return d.atom();
    if (auto it = memo_.find(d.identity_key()); it != memo_.end()) return it->second;
    const auto& z = d.zigzag();
    Atom best = (*this)(z.regular[0]);
    auto consider = [&](const Diagram& x) {
      const Atom a = (*this)(x);
      if (sig_[a].dimension > sig_[best].dimension) best = a;
    };
    for (const auto& s : z.singular) consider(s);
    for (const auto& r : z.regular) consider(r);
    memo_.emplace(d.identity_key(), best);
    return best;
  }

 private:
  const LabelSignature& sig_;
  std::unordered_map<const void*, Atom> memo_;
};

NodeKind classify(const LabelSignature& sig, Atom a, std::size_t n) {
  const auto dim = sig[a].dimension;
  if (dim >= n && n > 0) return NodeKind::Vertex;
  if (dim + 1 == n) return NodeKind::Wire;
  return NodeKind::Region;
}

void add_level(LayerGraph& g, TopLabel& top, const LabelSignature& sig, const Diagram& level, std::size_t index) {
  g.level_start.push_back(g.nodes.size());
  if (level.is_atom()) {
    g.level_length.push_back(0);
    g.nodes.push_back({index, 0, level.atom(), classify(sig, level.atom(), g.dimension)});
    return;
  }
  const auto& z = level.zigzag();
  g.level_length.push_back(z.length());
  for (std::size_t p = 0; p < 2 * z.length() + 1; ++p) {
    const Diagram& x = p % 2 ? z.singular[p / 2] : z.regular[p / 2];
    const Atom a = top(x);
    g.nodes.push_back({index, p, a, classify(sig, a, g.dimension)});
  }
}

void add_edges(LayerGraph& g, std::size_t regular_level, std::size_t singular_level, const Morphism& m) {
  if (m.is_arrow()) return;
  const auto& sing = m.map().sing;
  for (std::size_t j = 0; j < sing.source_size(); ++j) {
    g.edges.push_back({g.level_start[regular_level] + 2 * j + 1, g.level_start[singular_level] + 2 * sing(j) + 1});
  }
}

std::string color_of(const LabelSignature& sig, Atom a) {
  if (!sig[a].color.empty()) return sig[a].color;
  static const char* palette[] = {"#f2f2f2", "#3a6ea5", "#c0392b", "#27ae60", "#8e44ad", "#d68910", "#17a589", "#7f8c8d"};
  return palette[a % (sizeof(palette) / sizeof(palette[0]))];
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

LayerGraph project(const LabelSignature& signature, const Diagram& d) {
  LayerGraph g;
  g.dimension = d.dimension();
  TopLabel top(signature);
  if (d.dimension() < 2) {
    add_level(g, top, signature, d, 0);
    return g;
  }
  const auto& z = d.zigzag();
  for (std::size_t y = 0; y < 2 * z.length() + 1; ++y) {
    add_level(g, top, signature, y % 2 ? z.singular[y / 2] : z.regular[y / 2], y);
  }
  for (std::size_t i = 0; i < z.length(); ++i) {
    add_edges(g, 2 * i, 2 * i + 1, z.forward[i]);
    add_edges(g, 2 * i + 2, 2 * i + 1, z.backward[i]);
  }
  return g;
}

std::string emit_svg(const LabelSignature& signature, const LayerGraph& graph, const RenderStyle& style) {
  const int u = style.unit;
  std::size_t width = 1;
  for (auto len : graph.level_length) width = std::max(width, 2 * len + 1);
  const std::size_t height = std::max<std::size_t>(graph.levels(), 1);
  const auto px = [&](std::size_t position) { return static_cast<int>(position) * u + u / 2; };
  const auto py = [&](std::size_t level) { return static_cast<int>(height - 1 - level) * u + u / 2; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width * u << "\" height=\""
      << height * u << "\" viewBox=\"0 0 " << width * u << ' ' << height * u << "\">\n";
  out << "<g class=\"cells\">\n";
  for (const auto& n : graph.nodes) {
    if (n.kind != NodeKind::Region) continue;
    out << "<rect x=\"" << px(n.position) - u / 2 << "\" y=\"" << py(n.level) - u / 2 << "\" width=\"" << u
        << "\" height=\"" << u << "\" fill=\"" << escape(color_of(signature, n.label)) << "\"/>\n";
  }
  out << "</g>\n<g class=\"wires\" fill=\"none\" stroke-width=\"" << style.wire_width << "\">\n";
  for (const auto& e : graph.edges) {
    const auto& a = graph.nodes[e.from];
    const auto& b = graph.nodes[e.to];
    // Colour by the wire end, so edges into a vertex keep the wire's colour.
    const Atom label = a.kind == NodeKind::Wire || b.kind != NodeKind::Wire ? a.label : b.label;
    out << "<line x1=\"" << px(a.position) << "\" y1=\"" << py(a.level) << "\" x2=\"" << px(b.position)
        << "\" y2=\"" << py(b.level) << "\" stroke=\"" << escape(color_of(signature, label)) << "\"/>\n";
  }
  out << "</g>\n<g class=\"vertices\">\n";
  for (const auto& n : graph.nodes) {
    if (n.kind != NodeKind::Vertex) continue;
    out << "<circle cx=\"" << px(n.position) << "\" cy=\"" << py(n.level) << "\" r=\"" << style.vertex_radius
        << "\" fill=\"" << escape(color_of(signature, n.label)) << "\"><title>" << escape(signature[n.label].id)
        << "</title></circle>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

std::string emit_text(const LabelSignature& signature, const LayerGraph& graph) {
  std::ostringstream out;
  std::vector<std::vector<std::size_t>> targets(graph.nodes.size());
  for (const auto& e : graph.edges) targets[e.from].push_back(e.to);
  for (std::size_t y = 0; y < graph.levels(); ++y) {
    const std::size_t start = graph.level_start[y];
    const std::size_t end = y + 1 < graph.levels() ? graph.level_start[y + 1] : graph.nodes.size();
    out << (y % 2 ? 's' : 'r') << y / 2 << " [" << graph.level_length[y] << "] ";
    for (std::size_t k = start; k < end; ++k) out << ' ' << signature[graph.nodes[k].label].id;
    out << '\n';
    if (y % 2 == 1) continue;
    // Singular maps out of this regular level: backward into the level below,
    // forward into the level above.
    for (std::size_t dy : {std::size_t{0}, std::size_t{1}}) {
      if (dy == 0 && y == 0) continue;
      if (dy == 1 && y + 1 >= graph.levels()) continue;
      const std::size_t to_level = dy ? y + 1 : y - 1;
      std::vector<std::size_t> values;
      for (std::size_t k = start; k < end; ++k) {
        for (auto t : targets[k]) {
          if (graph.nodes[t].level == to_level) values.push_back(graph.nodes[t].position / 2);
        }
      }
      out << "    " << (dy ? "-> s" : "<- s") << to_level / 2 << " [";
      for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
      out << "]\n";
    }
  }
  return out.str();
}

nlohmann::json graph_to_json(const LabelSignature& sig, const LayerGraph& g) {
  nlohmann::json levels = nlohmann::json::array();
  for (std::size_t y = 0; y < g.levels(); ++y) {
    const std::size_t end = y + 1 < g.levels() ? g.level_start[y + 1] : g.nodes.size();
    nlohmann::json nodes = nlohmann::json::array();
    for (std::size_t k = g.level_start[y]; k < end; ++k) {
      const auto& n = g.nodes[k];
      nodes.push_back({{"position", n.position}, {"label", sig[n.label].id}, {"kind", to_string(n.kind)}});
    }
    levels.push_back({{"length", g.level_length[y]}, {"nodes", std::move(nodes)}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges) edges.push_back({e.from, e.to});
  return {{"dimension", g.dimension}, {"levels", std::move(levels)}, {"edges", std::move(edges)}};
}


}  // namespace anc
