#pragma once

// Brute-force universal-property checkers. Nothing here calls the colimit
// procedures; the sweeps compare the two.

#include <memory>
#include <optional>
#include <vector>

#include "anc/category.hpp"
#include "anc/monotone.hpp"
#include "anc/zigzag.hpp"

namespace anc::oracle {

// All monotone maps [n] -> [m] in lexicographic order.
std::vector<Monotone> monotone_maps(std::size_t n, std::size_t m);

// A Δ colimit is jointly surjective (an element outside every image could be
// doubled, giving two mediators), and every cocone factors through its image.
// So the colimit exists iff some jointly surjective cocone maps to all the
// others, and this search needs no apex bound.
std::vector<DeltaCocone> surjective_delta_cocones(const DeltaDiagram& d);

// Number of mediators u with u . from.legs[j] = to.legs[j], capped at 2.
std::size_t delta_mediators(const DeltaCocone& from, const DeltaCocone& to);

std::optional<DeltaCocone> delta_colimit_oracle(const DeltaDiagram& d);

// True iff c is a cocone and every jointly surjective cocone receives exactly
// one mediator from it.
bool delta_is_universal(const DeltaDiagram& d, const DeltaCocone& c);

// Zigzags of length <= max_length in a poset from a to b.
std::vector<Diagram> zigzags_between(const Poset& p, Atom a, Atom b, std::size_t max_length);

struct ZigzagCocone {
  Diagram apex;
  std::vector<Monotone> legs;  // sing maps; slices are forced over a thin base
};

// Searches cocones with apex length <= max_apex for an initial one. Objects
// are 1-diagrams over p.
std::optional<ZigzagCocone> zigzag_colimit_oracle(const Poset& p, const ZigzagDiagram& d, std::size_t max_apex);

// Caches apexes and leg maps for repeated queries over one boundary pair.
// Not thread-safe; use one instance per thread.
class ZigzagOracle {
 public:
  ZigzagOracle(const Poset& p, Atom a, Atom b, std::size_t max_apex);
  ~ZigzagOracle();
  ZigzagOracle(const ZigzagOracle&) = delete;
  ZigzagOracle& operator=(const ZigzagOracle&) = delete;

  const std::vector<Diagram>& apexes() const;
  std::optional<ZigzagCocone> colimit(const ZigzagDiagram& d);

 private:
  struct State;
  std::unique_ptr<State> state_;
};

// Valid zigzag maps x -> y between 1-diagrams over p, as sing maps.
std::vector<Monotone> zigzag_maps(const Poset& p, const Diagram& x, const Diagram& y);

}  // namespace anc::oracle
