#include "anc/zigzag.hpp"

#include <unordered_map>

#include "anc/error.hpp"

namespace anc {

std::vector<Violation> validate_zigzag(const Category& base, const Diagram& z) {
  std::vector<Violation> out;
  if (z.dimension() != base.dimension() + 1) {
    out.push_back({0, "zigzag objects have the wrong dimension"});
    return out;
  }
  const auto& zz = z.zigzag();
  for (std::size_t i = 0; i < zz.regular.size(); ++i) {
    if (!base.is_object(zz.regular[i])) out.push_back({i, "regular object is not in the base"});
  }
  for (std::size_t i = 0; i < zz.length(); ++i) {
    if (!base.is_object(zz.singular[i])) out.push_back({i, "singular object is not in the base"});
    if (!base.is_morphism(zz.forward[i])) out.push_back({i, "forward morphism is not in the base"});
    if (!base.is_morphism(zz.backward[i])) out.push_back({i, "backward morphism is not in the base"});
  }
  return out;
}

Monotone regular_map(const Morphism& m) { return reversal(m.map().sing); }

std::vector<Violation> validate_map(const Category& base, const Morphism& m) {
  std::vector<Violation> out;
  if (m.dimension() != base.dimension() + 1) {
    out.push_back({0, "map has the wrong dimension for this base"});
    return out;
  }
  const auto& mm = m.map();
  const auto& z = mm.source.zigzag();
  const auto& t = mm.target.zigzag();
  const auto reg = reversal(mm.sing);
  for (std::size_t j = 0; j < t.regular.size(); ++j) {
    if (!(z.regular[reg(j)] == t.regular[j])) {
      out.push_back({j, "r'_" + std::to_string(j) + " != r_" + std::to_string(reg(j))});
    }
  }
  for (std::size_t i = 0; i < mm.slices.size(); ++i) {
    if (!base.is_morphism(mm.slices[i])) {
      out.push_back({mm.sing(i), "g_" + std::to_string(i) + " is not a morphism of the base"});
    }
  }
  if (!out.empty()) return out;
  const auto& g = mm.slices;
  for (std::size_t h = 0; h < t.length(); ++h) {
    const std::size_t lo = reg(h);
    const std::size_t hi = reg(h + 1);
    const auto H = std::to_string(h);
    if (lo == hi) {
      if (!(t.forward[h] == t.backward[h])) out.push_back({h, "f'_" + H + " != b'_" + H});
      continue;
    }
    if (!(t.forward[h] == after(g[lo], z.forward[lo]))) {
      out.push_back({h, "f'_" + H + " != g_" + std::to_string(lo) + " . f_" + std::to_string(lo)});
    }
    if (!(t.backward[h] == after(g[hi - 1], z.backward[hi - 1]))) {
      out.push_back({h, "b'_" + H + " != g_" + std::to_string(hi - 1) + " . b_" + std::to_string(hi - 1)});
    }
    for (std::size_t i = lo; i + 1 < hi; ++i) {
      if (!(after(g[i], z.backward[i]) == after(g[i + 1], z.forward[i + 1]))) {
        out.push_back({h, "g_" + std::to_string(i) + " . b_" + std::to_string(i) + " != g_" + std::to_string(i + 1) +
                              " . f_" + std::to_string(i + 1)});
      }
    }
  }
  return out;
}

std::pair<Diagram, Diagram> boundaries(const Diagram& z) {
  const auto& zz = z.zigzag();
  return {zz.regular.front(), zz.regular.back()};
}

Diagram concatenate(const Diagram& a, const Diagram& b) {
  const auto& x = a.zigzag();
  const auto& y = b.zigzag();
  if (!(x.regular.back() == y.regular.front())) {
    throw Error(ErrorCode::BoundaryMismatch, "last regular object differs from the next first regular object");
  }
  Zigzag z = x;
  z.regular.insert(z.regular.end(), y.regular.begin() + 1, y.regular.end());
  z.singular.insert(z.singular.end(), y.singular.begin(), y.singular.end());
  z.forward.insert(z.forward.end(), y.forward.begin(), y.forward.end());
  z.backward.insert(z.backward.end(), y.backward.begin(), y.backward.end());
  return Diagram(std::move(z));
}

Morphism concatenate_maps(const Morphism& a, const Morphism& b) {
  const auto& x = a.map();
  const auto& y = b.map();
  auto source = concatenate(x.source, y.source);
  auto target = concatenate(x.target, y.target);
  auto values = x.sing.values();
  for (auto v : y.sing.values()) values.push_back(v + x.sing.target_size());
  auto slices = x.slices;
  slices.insert(slices.end(), y.slices.begin(), y.slices.end());
  return Morphism(ZigzagMap{source, target, Monotone(std::move(values), target.length()), std::move(slices)});
}

Diagram restrict(const Diagram& z, std::size_t a, std::size_t b) {
  const auto& x = z.zigzag();
  if (a > b || b > x.length()) {
    throw Error(ErrorCode::IndexOutOfRange, "window (" + std::to_string(a) + "," + std::to_string(b) +
                                                ") outside regular heights of a length-" + std::to_string(x.length()) +
                                                " zigzag");
  }
  if (a == 0 && b == x.length()) return z;
  Zigzag r;
  r.regular.assign(x.regular.begin() + a, x.regular.begin() + b + 1);
  r.singular.assign(x.singular.begin() + a, x.singular.begin() + b);
  r.forward.assign(x.forward.begin() + a, x.forward.begin() + b);
  r.backward.assign(x.backward.begin() + a, x.backward.begin() + b);
  return Diagram(std::move(r));
}

Morphism restrict_map(const Morphism& m, std::size_t a, std::size_t b) {
  const auto& mm = m.map();
  if (a > b || b > mm.target.length()) {
    throw Error(ErrorCode::IndexOutOfRange, "window outside target regular heights");
  }
  const auto reg = reversal(mm.sing);
  const std::size_t sa = reg(a);
  const std::size_t sb = reg(b);
  std::vector<std::size_t> values;
  std::vector<Morphism> slices;
  for (std::size_t i = sa; i < sb; ++i) {
    values.push_back(mm.sing(i) - a);
    slices.push_back(mm.slices[i]);
  }
  return Morphism(ZigzagMap{restrict(mm.source, sa, sb), restrict(mm.target, a, b), Monotone(std::move(values), b - a),
                            std::move(slices)});
}

Deconstruction deconstruct(const ZigzagDiagram& d, bool drop_outer) {
  Deconstruction out;
  const std::size_t nodes = d.shape.nodes;
  out.node_of.resize(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    const auto& z = d.objects[j].zigzag();
    const std::size_t n = z.length();
    out.node_of[j].assign(2 * n + 1, SIZE_MAX);
    for (std::size_t p = 0; p <= 2 * n; ++p) {
      const bool singular = p % 2 == 1;
      if (drop_outer && !singular && (p == 0 || p == 2 * n)) continue;
      out.node_of[j][p] = out.shape.add_node();
      out.nodes.push_back({j, singular, p / 2});
      out.objects.push_back(singular ? z.singular[p / 2] : z.regular[p / 2]);
    }
  }
  auto link = [&](std::size_t s, std::size_t t, const Morphism& m) {
    if (s == SIZE_MAX || t == SIZE_MAX) return;
    out.shape.add_arrow(s, t);
    out.arrows.push_back(m);
  };
  for (std::size_t j = 0; j < nodes; ++j) {
    const auto& z = d.objects[j].zigzag();
    for (std::size_t i = 0; i < z.length(); ++i) {
      link(out.regular_node(j, i), out.singular_node(j, i), z.forward[i]);
      link(out.regular_node(j, i + 1), out.singular_node(j, i), z.backward[i]);
    }
  }
  for (std::size_t a = 0; a < d.arrows.size(); ++a) {
    const auto [j, jt] = d.shape.arrows[a];
    const auto& m = d.arrows[a].map();
    for (std::size_t i = 0; i < m.slices.size(); ++i) {
      link(out.singular_node(j, i), out.singular_node(jt, m.sing(i)), m.slices[i]);
    }
    const auto reg = reversal(m.sing);
    const auto& tz = m.target.zigzag();
    for (std::size_t i = 0; i < tz.regular.size(); ++i) {
      link(out.regular_node(jt, i), out.regular_node(j, reg(i)), identity(tz.regular[i]));
    }
  }
  return out;
}

namespace {

struct FunctorApplication {
  const std::function<Atom(Atom)>& f;
  std::unordered_map<const void*, Diagram> diagrams;

  Diagram object(const Diagram& z) {
    if (z.is_atom()) return Diagram(f(z.atom()));
    auto it = diagrams.find(z.identity_key());
    if (it != diagrams.end()) return it->second;
    const auto& x = z.zigzag();
    Zigzag y;
    for (const auto& r : x.regular) y.regular.push_back(object(r));
    for (std::size_t i = 0; i < x.length(); ++i) {
      y.singular.push_back(object(x.singular[i]));
      y.forward.push_back(morphism(x.forward[i]));
      y.backward.push_back(morphism(x.backward[i]));
    }
    Diagram out(std::move(y));
    diagrams.emplace(z.identity_key(), out);
    return out;
  }

  Morphism morphism(const Morphism& m) {
    if (m.is_arrow()) return Morphism::arrow(f(m.source_atom()), f(m.target_atom()));
    const auto& mm = m.map();
    std::vector<Morphism> slices;
    for (const auto& s : mm.slices) slices.push_back(morphism(s));
    return Morphism(ZigzagMap{object(mm.source), object(mm.target), mm.sing, std::move(slices)});
  }
};

}  // namespace

Diagram apply_functor(const std::function<Atom(Atom)>& f, const Diagram& z) {
  FunctorApplication app{f, {}};
  return app.object(z);
}

Morphism apply_functor(const std::function<Atom(Atom)>& f, const Morphism& m) {
  FunctorApplication app{f, {}};
  return app.morphism(m);
}

}  // namespace anc
