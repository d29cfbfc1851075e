#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anc/colimit.hpp"
#include "anc/diagram.hpp"

namespace anc {

struct ContractionDirective {
  Path path;
  std::size_t a = 0;  // window of regular heights, a < b
  std::size_t b = 0;
  Bias bias = Bias::None;
};

enum class SplitOrder {
  Lower,   // the first group takes the lower of the two new heights
  Higher,  // the first group takes the higher one
};

struct ExpansionDirective {
  Path path;
  std::size_t height = 0;  // singular height of the addressed diagram
  std::vector<std::size_t> first;   // inner singular heights of s_height
  std::vector<std::size_t> second;
  SplitOrder order = SplitOrder::Lower;
};

struct MovePolicy {
  // Accept results failing validate_dimensions and fusions of rigid labels.
  bool permissive = false;
};

// Everything a move needs: the category tower and, for typed diagrams, the
// signature used by the post-move checks.
struct MoveContext {
  const Tower& tower;
  const LabelSignature* signature = nullptr;
  MovePolicy policy{};
};

struct MoveResult {
  Diagram result;
  Morphism map;  // contraction: D -> result; expansion: result -> D
  std::vector<std::string> notes;
};

// Z with s_i replaced by the target of c: s_i -> C. Returns Z -> Z'.
Morphism promote_singular(const Diagram& z, std::size_t i, const Morphism& c);

// Z with a new singular height C inserted at j, fed by two copies of r_j via
// c: r_j -> C. Returns Z -> Z'.
Morphism bubble_regular(const Diagram& z, std::size_t j, const Morphism& c);

// Throws PathOutOfRange, InvalidWindow, DeltaColimitFailed, BaseColimitFailed,
// DimensionViolation or LabelFusionRejected.
MoveResult contract_at(const MoveContext& ctx, const Diagram& d, const ContractionDirective& dir);

// Splits s_height of the addressed zigzag in two and propagates outward.
// Throws PathOutOfRange, ExpansionUnsupported, RegularPropagationImpossible
// or DimensionViolation.
MoveResult expand_at(const MoveContext& ctx, const Diagram& d, const ExpansionDirective& dir);

// Least h: B -> A with e . h = g, where e: A -> C and g: B -> C are morphisms
// of tower.level(e.dimension()).
std::optional<Morphism> factor(const Tower& tower, const Morphism& e, const Morphism& g);

enum class MoveKind { Contraction, Expansion };

// validate_map plus the shape of a single move's singular map. For a
// contraction at most one target height has a fibre of size other than one;
// for an expansion exactly the declared height (or none) has a fibre of two.
std::vector<Violation> verify_generalized(const Tower& tower, const Morphism& m, MoveKind kind,
                                          std::optional<std::size_t> declared = std::nullopt);

}  // namespace anc
