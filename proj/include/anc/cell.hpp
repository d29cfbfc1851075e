#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "anc/monotone.hpp"

namespace anc {

using Atom = std::uint32_t;

class Morphism;
struct Zigzag;
struct ZigzagMap;

// An object of the n-fold iterated zigzag category over a thin base: an atom
// when n = 0, otherwise a zigzag of (n-1)-dimensional objects. Immutable and
// cheap to copy; equality is structural.
class Diagram {
 public:
  Diagram() : Diagram(Atom{0}) {}
  explicit Diagram(Atom atom);
  // Checks lengths, uniform object dimension and morphism endpoints.
  explicit Diagram(Zigzag zigzag);

  std::size_t dimension() const { return dim_; }
  bool is_atom() const { return dim_ == 0; }
  Atom atom() const;
  const Zigzag& zigzag() const;
  std::size_t length() const;  // zigzag length; 0 for atoms
  std::size_t hash() const { return hash_; }
  const void* identity_key() const { return node_.get(); }

  friend bool operator==(const Diagram& a, const Diagram& b);

 private:
  std::size_t dim_ = 0;
  Atom atom_ = 0;
  std::shared_ptr<const Zigzag> node_;
  std::size_t hash_ = 0;
};

// A morphism between objects of equal dimension: a thin arrow between atoms
// when the dimension is 0, otherwise a zigzag map.
class Morphism {
 public:
  Morphism() = default;
  static Morphism arrow(Atom source, Atom target);
  // Checks sizes and slice endpoints (not the commutativity conditions).
  explicit Morphism(ZigzagMap map);

  std::size_t dimension() const { return dim_; }
  bool is_arrow() const { return dim_ == 0; }
  Atom source_atom() const;
  Atom target_atom() const;
  const ZigzagMap& map() const;
  Diagram source() const;
  Diagram target() const;
  std::size_t hash() const { return hash_; }

  friend bool operator==(const Morphism& a, const Morphism& b);

 private:
  std::size_t dim_ = 0;
  Atom source_ = 0;
  Atom target_ = 0;
  std::shared_ptr<const ZigzagMap> node_;
  std::size_t hash_ = 0;
};

// r_0 -> s_0 <- r_1 -> ... <- r_n. forward[i]: regular[i] -> singular[i],
// backward[i]: regular[i+1] -> singular[i].
struct Zigzag {
  std::vector<Diagram> regular;
  std::vector<Diagram> singular;
  std::vector<Morphism> forward;
  std::vector<Morphism> backward;

  std::size_t length() const { return singular.size(); }
};

struct ZigzagMap {
  Diagram source;
  Diagram target;
  Monotone sing;
  std::vector<Morphism> slices;  // slices[i]: source.s_i -> target.s_{sing(i)}
};

// Length-0 zigzag at `object`.
Diagram suspend(const Diagram& object);
// Length-1 zigzag r0 -> s <- r1.
Diagram cospan(const Morphism& forward, const Morphism& backward);

Morphism identity(const Diagram& object);
// g after f. Throws BoundaryMismatch if f's target differs from g's source.
Morphism after(const Morphism& g, const Morphism& f);

std::size_t hash_combine(std::size_t seed, std::size_t value);

}  // namespace anc

template <>
struct std::hash<anc::Diagram> {
  std::size_t operator()(const anc::Diagram& d) const noexcept { return d.hash(); }
};
