#pragma once

#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <utility>

#include "anc/category.hpp"
#include "anc/zigzag.hpp"

namespace anc {

struct ZigzagColimitTrace {
  DeltaCocone delta;  // the step-1 cocone on singular heights
  std::vector<std::size_t> chosen_node;  // per height k, the node used to build C_k
};

// Colimit of a nonempty connected diagram of zigzags over `base`. Throws
// EmptyShape, NotConnected, DeltaColimitFailed (step 1) or BaseColimitFailed
// (step 4, with the height).
Cocone zigzag_colimit(const Category& base, const DiagramShape& shape, std::span<const Diagram> objects,
                      std::span<const Morphism> arrows, const ColimitOptions& options = {},
                      ZigzagColimitTrace* trace = nullptr);

inline Cocone zigzag_colimit(const Category& base, const ZigzagDiagram& d, const ColimitOptions& options = {},
                             ZigzagColimitTrace* trace = nullptr) {
  return zigzag_colimit(base, d.shape, d.objects, d.arrows, options, trace);
}

struct Contraction {
  Diagram result;
  Morphism map;  // source zigzag -> result
};

// Collapses the heights between regular heights a < b into one. Throws
// InvalidWindow, or the base colimit's failure.
Contraction contract_zigzag(const Category& base, const Diagram& z, std::size_t a, std::size_t b,
                            const ColimitOptions& options = {});

// Zigzags over `base`, with zigzag_colimit as connected colimits.
class ZigzagCategory : public Category {
 public:
  explicit ZigzagCategory(const Category& base) : base_(base) {}

  const Category& base() const { return base_; }
  std::size_t dimension() const override { return base_.dimension() + 1; }
  bool is_object(const Diagram& x) const override;
  bool is_morphism(const Morphism& f) const override;
  std::optional<Diagram> terminal() const override;
  Cocone connected_colimit(const DiagramShape& shape, std::span<const Diagram> objects,
                           std::span<const Morphism> arrows, const ColimitOptions& options) const override;

  // a -> t <- b for the base's terminal object t; thin bases only.
  std::optional<Diagram> local_terminal(const Diagram& a, const Diagram& b) const;

 private:
  const Category& base_;
};

inline ZigzagCategory zigzag_base_adapter(const Category& base) { return ZigzagCategory(base); }

// The categories Z^k over a poset, k = 0, 1, 2, ...; level(k) has objects of
// dimension k. Addresses are stable; safe to share across threads.
class Tower {
 public:
  explicit Tower(std::shared_ptr<const Poset> bottom) : bottom_(std::move(bottom)) {}

  const Poset& bottom() const { return *bottom_; }
  const Category& level(std::size_t k) const;

 private:
  std::shared_ptr<const Poset> bottom_;
  mutable std::mutex mutex_;
  mutable std::deque<std::unique_ptr<ZigzagCategory>> levels_;
};

}  // namespace anc
