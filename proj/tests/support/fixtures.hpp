#pragma once

#include <functional>
#include <memory>
#include <string_view>
#include <vector>

#include "anc/category.hpp"
#include "anc/colimit.hpp"
#include "anc/homotopy.hpp"

namespace anc::fx {

// A signature with its label poset and tower, kept alive together.
struct Typed {
  LabelSignature sig;
  std::shared_ptr<const LabelPoset> poset;
  std::shared_ptr<Tower> tower;

  explicit Typed(LabelSignature s);
  MoveContext context(bool permissive = false) const { return {*tower, &sig, {permissive}}; }
};

// "x a x b x": alternating regular and singular labels of a 1-diagram.
Diagram row(const LabelSignature& sig, std::string_view labels);

// Zigzag map whose level-0 slices are the forced poset arrows.
Morphism thin_map(const Diagram& source, const Diagram& target, std::vector<std::size_t> sing);

Diagram zig(std::vector<Diagram> regular, std::vector<Diagram> singular, std::vector<Morphism> forward,
            std::vector<Morphism> backward);

Morphism zmap(const Diagram& source, const Diagram& target, std::vector<std::size_t> sing,
              std::vector<Morphism> slices);

// 2-diagram from rows; forward[i], backward[i] are the sing maps of the row maps.
Diagram rows2(const LabelSignature& sig, const std::vector<std::string_view>& regular,
              const std::vector<std::string_view>& singular, const std::vector<std::vector<std::size_t>>& forward,
              const std::vector<std::vector<std::size_t>>& backward);

// 1-diagram of length n over the terminal category.
Diagram untyped(std::size_t n);
Morphism untyped_map(std::size_t n, std::size_t m, std::vector<std::size_t> sing);

// Signature with region x, wires a b c (dim 1), vertices f g h (dim 2), the
// counit-like u and unit-like v, and the scalar-level labels used below.
LabelSignature standard_signature(bool rigid_f = false);

// Fixtures. Each returns a valid diagram over standard_signature().
Diagram two_beads(const LabelSignature& sig);        // f on a, then g on b
Diagram opposing(const LabelSignature& sig);         // a ends at u, then b starts at v
Diagram wire_between(const LabelSignature& sig);     // p ends a, c runs from p's row into q's
Diagram fuse_endomorphisms(const LabelSignature& sig);  // f twice on a
Diagram three_beads(const LabelSignature& sig);      // f, g, h on a, b, c in turn

// Untyped 2-diagram of four singular rows, drawn as a sequence of monotone maps.
Diagram untyped_decomposition();

// Scalar world: region x, points p q of dim 2, endomorphism e of p of dim 3.
LabelSignature scalar_signature();
// p above q as rows of a 2-diagram, and the interchange with both in one row.
Diagram scalars(const LabelSignature& sig, std::string_view order);  // "pq", "qp", "[pq]", "eq", "[eq]"...

// The vertex e on p passing through the interchange of p and q, before and
// after: e then interchange, and interchange then e.
Diagram naturality_source(const LabelSignature& sig);
Diagram naturality_target(const LabelSignature& sig);

// The scalar world plus y, a dim-4 endomorphism of e.
LabelSignature scalar4_signature();
// The 4-diagram n -> n[e := y] <- n: y applied to the e inside n.
Diagram y_cell(const LabelSignature& sig, const Diagram& n);

// The map d -> apply_functor(f, d) that is the identity on every zigzag and
// the arrow a -> f(a) on atoms. Needs a <= f(a) in the base.
Morphism relabel_map(const Diagram& d, const std::function<Atom(Atom)>& f);

}  // namespace anc::fx
