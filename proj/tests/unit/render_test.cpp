#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "anc/render.hpp"
#include "fixtures.hpp"

using namespace anc;

namespace {

std::size_t count(const LayerGraph& g, NodeKind kind) {
  std::size_t n = 0;
  for (const auto& node : g.nodes) n += node.kind == kind;
  return n;
}

// Compares with tests/snapshots/<name>; ANC_UPDATE_SNAPSHOTS=1 rewrites it.
void check_snapshot(const std::string& name, const std::string& bytes) {
  const std::string path = std::string(ANC_TEST_DATA) + "/snapshots/" + name;
  if (const char* update = std::getenv("ANC_UPDATE_SNAPSHOTS"); update && std::string(update) == "1") {
    std::ofstream(path, std::ios::binary) << bytes;
  }
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing snapshot ", path);
  std::ostringstream stored;
  stored << in.rdbuf();
  CHECK_MESSAGE(stored.str() == bytes, "snapshot differs: ", name);
}

LabelSignature untyped_signature() {
  LabelSignature sig;
  sig.add({"o", "o", 0, "", false});
  return sig;
}

}  // namespace

TEST_SUITE("render") {
  TEST_CASE("untyped scaffold") {
    const auto sig = untyped_signature();
    const Diagram d = fx::untyped_decomposition();
    const LayerGraph g = project(sig, d);
    REQUIRE(g.levels() == 7);
    CHECK(g.level_length == std::vector<std::size_t>{3, 3, 4, 3, 3, 4, 3});
    CHECK(g.nodes.size() == 7 + 7 + 9 + 7 + 7 + 9 + 7);
    // One edge per singular point of every regular level and direction.
    CHECK(g.edges.size() == (3 + 4 + 3) + (4 + 3 + 3));
    for (const auto& e : g.edges) {
      const auto& a = g.nodes[e.from];
      const auto& b = g.nodes[e.to];
      CHECK(a.level % 2 == 0);
      CHECK(b.level % 2 == 1);
      CHECK((a.level == b.level + 1 || a.level + 1 == b.level));
      CHECK(a.position % 2 == 1);
      CHECK(b.position % 2 == 1);
    }
    // Edge targets spell out the sing maps.
    const auto& z = d.zigzag();
    std::vector<std::size_t> f1;
    for (const auto& e : g.edges) {
      if (g.nodes[e.from].level == 2 && g.nodes[e.to].level == 3) f1.push_back(g.nodes[e.to].position / 2);
    }
    CHECK(f1 == z.forward[1].map().sing.values());
    CHECK(count(g, NodeKind::Vertex) == 0);
    check_snapshot("untyped_decomposition.txt", emit_text(sig, g));
  }

  TEST_CASE("two beads") {
    const auto sig = fx::standard_signature();
    const LayerGraph g = project(sig, fx::two_beads(sig));
    CHECK(count(g, NodeKind::Vertex) == 2);
    CHECK(count(g, NodeKind::Wire) == 2 * 5 - 2);
    CHECK(count(g, NodeKind::Region) == 3 * 5);
    // Two tracks: every level has its wires or vertices at positions 1 and 3.
    for (const auto& n : g.nodes) CHECK((n.kind == NodeKind::Region) == (n.position % 2 == 0));
    CHECK(emit_text(sig, g) ==
          "r0 [2]  x a x b x\n"
          "    -> s0 [0,1]\n"
          "s0 [2]  x f x b x\n"
          "r1 [2]  x a x b x\n"
          "    <- s0 [0,1]\n"
          "    -> s1 [0,1]\n"
          "s1 [2]  x a x g x\n"
          "r2 [2]  x a x b x\n"
          "    <- s1 [0,1]\n");
  }

  TEST_CASE("degenerate inputs") {
    const auto sig = fx::standard_signature();
    const LayerGraph point = project(sig, Diagram(sig.at("x")));
    CHECK(point.nodes.size() == 1);
    CHECK(point.levels() == 1);

    const LayerGraph strip = project(sig, fx::row(sig, "x a x"));
    CHECK(strip.levels() == 1);
    CHECK(strip.nodes.size() == 3);
    CHECK(strip.nodes[1].kind == NodeKind::Vertex);

    const LayerGraph flat = project(sig, suspend(fx::row(sig, "x a x")));
    CHECK(flat.levels() == 1);
    CHECK(flat.nodes[1].kind == NodeKind::Wire);
    CHECK(flat.edges.empty());

    const std::string empty = emit_svg(sig, LayerGraph{});
    CHECK(empty.starts_with("<?xml"));
    CHECK(empty.find("<svg") != std::string::npos);
    CHECK(empty.ends_with("</svg>\n"));
    CHECK(emit_text(sig, LayerGraph{}).empty());
  }

  TEST_CASE("higher diagrams project their top two levels") {
    const auto sig = fx::scalar_signature();
    const Diagram d = fx::naturality_source(sig);
    const LayerGraph g = project(sig, d);
    CHECK(g.levels() == 5);
    // The e point is the only label of the diagram's own dimension.
    CHECK(count(g, NodeKind::Vertex) == 1);
    CHECK(g.nodes[g.level_start[1] + 1].label == sig.at("e"));
  }

  TEST_CASE("snapshots") {
    const auto sig = fx::standard_signature();
    const auto scalar = fx::scalar_signature();
    const std::pair<const char*, std::pair<const LabelSignature*, Diagram>> cases[] = {
        {"two_beads", {&sig, fx::two_beads(sig)}},
        {"opposing", {&sig, fx::opposing(sig)}},
        {"wire_between", {&sig, fx::wire_between(sig)}},
        {"three_beads", {&sig, fx::three_beads(sig)}},
        {"fuse_endomorphisms", {&sig, fx::fuse_endomorphisms(sig)}},
        {"naturality_source", {&scalar, fx::naturality_source(scalar)}},
        {"naturality_target", {&scalar, fx::naturality_target(scalar)}},
    };
    for (const auto& [name, item] : cases) {
      CAPTURE(name);
      const auto& [s, d] = item;
      const LayerGraph g = project(*s, d);
      const std::string svg = emit_svg(*s, g);
      CHECK(svg == emit_svg(*s, project(*s, d)));
      check_snapshot(std::string(name) + ".svg", svg);
      check_snapshot(std::string(name) + ".txt", emit_text(*s, g));
    }
  }
}
