#include "anc/cell.hpp"

#include "anc/error.hpp"

namespace anc {

std::size_t hash_combine(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 12) + (seed >> 4));
}

namespace {

std::size_t hash_atom(Atom a) { return hash_combine(0x51ed270b27a3b1c3ULL, a); }

void require(bool ok, ErrorCode code, const char* what) {
  if (!ok) throw Error(code, what);
}

}  // namespace

Diagram::Diagram(Atom atom) : dim_(0), atom_(atom), hash_(hash_atom(atom)) {}

Diagram::Diagram(Zigzag z) {
  const std::size_t n = z.singular.size();
  require(z.regular.size() == n + 1, ErrorCode::SizeMismatch, "zigzag needs one more regular than singular object");
  require(z.forward.size() == n && z.backward.size() == n, ErrorCode::SizeMismatch,
          "zigzag needs one forward and one backward morphism per singular object");
  const std::size_t d = z.regular[0].dimension();
  for (const auto& r : z.regular) require(r.dimension() == d, ErrorCode::DimensionMismatch, "mixed object dimensions");
  for (std::size_t i = 0; i < n; ++i) {
    require(z.singular[i].dimension() == d, ErrorCode::DimensionMismatch, "mixed object dimensions");
    require(z.forward[i].dimension() == d && z.backward[i].dimension() == d, ErrorCode::DimensionMismatch,
            "morphism dimension differs from objects");
    require(z.forward[i].source() == z.regular[i] && z.forward[i].target() == z.singular[i],
            ErrorCode::BoundaryMismatch, "forward morphism endpoints differ from zigzag objects");
    require(z.backward[i].source() == z.regular[i + 1] && z.backward[i].target() == z.singular[i],
            ErrorCode::BoundaryMismatch, "backward morphism endpoints differ from zigzag objects");
  }
  std::size_t h = hash_combine(0x2545f4914f6cdd1dULL, d + 1);
  h = hash_combine(h, n);
  for (const auto& r : z.regular) h = hash_combine(h, r.hash());
  for (std::size_t i = 0; i < n; ++i) {
    h = hash_combine(h, z.singular[i].hash());
    h = hash_combine(h, z.forward[i].hash());
    h = hash_combine(h, z.backward[i].hash());
  }
  dim_ = d + 1;
  hash_ = h;
  node_ = std::make_shared<const Zigzag>(std::move(z));
}

Atom Diagram::atom() const {
  if (dim_ != 0) throw Error(ErrorCode::DimensionMismatch, "diagram is not an atom");
  return atom_;
}

const Zigzag& Diagram::zigzag() const {
  if (dim_ == 0) throw Error(ErrorCode::DimensionMismatch, "atom has no zigzag");
  return *node_;
}

std::size_t Diagram::length() const { return dim_ == 0 ? 0 : node_->length(); }

bool operator==(const Diagram& a, const Diagram& b) {
  if (a.hash_ != b.hash_ || a.dim_ != b.dim_) return false;
  if (a.dim_ == 0) return a.atom_ == b.atom_;
  if (a.node_ == b.node_) return true;
  const Zigzag& x = *a.node_;
  const Zigzag& y = *b.node_;
  return x.regular == y.regular && x.singular == y.singular && x.forward == y.forward && x.backward == y.backward;
}

Morphism Morphism::arrow(Atom source, Atom target) {
  Morphism m;
  m.dim_ = 0;
  m.source_ = source;
  m.target_ = target;
  m.hash_ = hash_combine(hash_atom(source), hash_atom(target));
  return m;
}

Morphism::Morphism(ZigzagMap map) {
  const auto& s = map.source;
  const auto& t = map.target;
  require(s.dimension() >= 1 && s.dimension() == t.dimension(), ErrorCode::DimensionMismatch,
          "zigzag map needs zigzags of equal dimension");
  require(map.sing.source_size() == s.length() && map.sing.target_size() == t.length(), ErrorCode::SizeMismatch,
          "singular map sizes differ from zigzag lengths");
  require(map.slices.size() == s.length(), ErrorCode::SizeMismatch, "one slice morphism per source singular height");
  const auto& sz = s.zigzag();
  const auto& tz = t.zigzag();
  for (std::size_t i = 0; i < map.slices.size(); ++i) {
    require(map.slices[i].dimension() + 1 == s.dimension(), ErrorCode::DimensionMismatch,
            "slice morphism has the wrong dimension");
    require(map.slices[i].source() == sz.singular[i] && map.slices[i].target() == tz.singular[map.sing(i)],
            ErrorCode::BoundaryMismatch, "slice morphism endpoints differ from the singular objects");
  }
  std::size_t h = hash_combine(0x9fb21c651e98df25ULL, s.hash());
  h = hash_combine(h, t.hash());
  for (std::size_t i = 0; i < map.slices.size(); ++i) {
    h = hash_combine(h, map.sing(i));
    h = hash_combine(h, map.slices[i].hash());
  }
  dim_ = s.dimension();
  hash_ = h;
  node_ = std::make_shared<const ZigzagMap>(std::move(map));
}

Atom Morphism::source_atom() const {
  if (dim_ != 0) throw Error(ErrorCode::DimensionMismatch, "morphism is not a thin arrow");
  return source_;
}

Atom Morphism::target_atom() const {
  if (dim_ != 0) throw Error(ErrorCode::DimensionMismatch, "morphism is not a thin arrow");
  return target_;
}

const ZigzagMap& Morphism::map() const {
  if (dim_ == 0) throw Error(ErrorCode::DimensionMismatch, "thin arrow has no zigzag map");
  return *node_;
}

Diagram Morphism::source() const { return dim_ == 0 ? Diagram(source_) : node_->source; }
Diagram Morphism::target() const { return dim_ == 0 ? Diagram(target_) : node_->target; }

bool operator==(const Morphism& a, const Morphism& b) {
  if (a.hash_ != b.hash_ || a.dim_ != b.dim_) return false;
  if (a.dim_ == 0) return a.source_ == b.source_ && a.target_ == b.target_;
  if (a.node_ == b.node_) return true;
  const ZigzagMap& x = *a.node_;
  const ZigzagMap& y = *b.node_;
  return x.sing == y.sing && x.source == y.source && x.target == y.target && x.slices == y.slices;
}

Diagram suspend(const Diagram& object) { return Diagram(Zigzag{{object}, {}, {}, {}}); }

Diagram cospan(const Morphism& forward, const Morphism& backward) {
  return Diagram(Zigzag{{forward.source(), backward.source()}, {forward.target()}, {forward}, {backward}});
}

Morphism identity(const Diagram& object) {
  if (object.is_atom()) return Morphism::arrow(object.atom(), object.atom());
  const auto& z = object.zigzag();
  std::vector<Morphism> slices;
  slices.reserve(z.length());
  for (const auto& s : z.singular) slices.push_back(identity(s));
  return Morphism(ZigzagMap{object, object, Monotone::identity(z.length()), std::move(slices)});
}

Morphism after(const Morphism& g, const Morphism& f) {
  if (f.dimension() != g.dimension()) throw Error(ErrorCode::DimensionMismatch, "composing morphisms of different dimension");
  if (f.is_arrow()) {
    if (f.target_atom() != g.source_atom()) throw Error(ErrorCode::BoundaryMismatch, "arrows do not compose");
    return Morphism::arrow(f.source_atom(), g.target_atom());
  }
  const auto& fm = f.map();
  const auto& gm = g.map();
  if (!(fm.target == gm.source)) throw Error(ErrorCode::BoundaryMismatch, "zigzag maps do not compose");
  std::vector<Morphism> slices;
  slices.reserve(fm.slices.size());
  for (std::size_t i = 0; i < fm.slices.size(); ++i) slices.push_back(after(gm.slices[fm.sing(i)], fm.slices[i]));
  return Morphism(ZigzagMap{fm.source, gm.target, compose(fm.sing, gm.sing), std::move(slices)});
}

}  // namespace anc
