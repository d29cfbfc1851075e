#include "anc/colimit.hpp"

#include <exception>

#include "anc/error.hpp"

namespace anc {

namespace {

struct HeightSolution {
  Diagram apex;  // C_k
  std::size_t chosen = 0;
  Deconstruction deconstruction;
  std::vector<Morphism> legs;  // base colimit legs per deconstruction node
};

HeightSolution solve_height(const Category& base, const DiagramShape& shape, std::span<const Diagram> objects,
                            std::span<const Morphism> arrows, const std::vector<Monotone>& windows, std::size_t k,
                            const ColimitOptions& options) {
  const std::size_t nodes = shape.nodes;
  ZigzagDiagram dk;
  dk.shape = shape;
  dk.objects.reserve(nodes);
  for (std::size_t j = 0; j < nodes; ++j) dk.objects.push_back(restrict(objects[j], windows[j](k), windows[j](k + 1)));
  dk.arrows.reserve(arrows.size());
  for (std::size_t f = 0; f < arrows.size(); ++f) {
    const auto t = shape.arrows[f].target;
    dk.arrows.push_back(restrict_map(arrows[f], windows[t](k), windows[t](k + 1)));
  }
  HeightSolution out{Diagram(), 0, deconstruct(dk, true), {}};
  Cocone base_cocone;
  try {
    base_cocone = base.connected_colimit(out.deconstruction.shape, out.deconstruction.objects,
                                         out.deconstruction.arrows, options);
  } catch (const Error& e) {
    throw Error(ErrorCode::BaseColimitFailed, "height " + std::to_string(k) + ": " + e.what(), 4, k);
  }
  std::optional<std::size_t> chosen;
  for (std::size_t j = 0; j < nodes; ++j) {
    if (dk.objects[j].length() == 0) continue;
    if (!chosen || options.prefer_last_node) chosen = j;
    if (!options.prefer_last_node) break;
  }
  const std::size_t j = *chosen;
  const auto& z = objects[j].zigzag();
  const std::size_t a = windows[j](k);
  const std::size_t b = windows[j](k + 1);
  const auto& d = out.deconstruction;
  auto f0 = after(base_cocone.legs[d.singular_node(j, 0)], z.forward[a]);
  auto b0 = after(base_cocone.legs[d.singular_node(j, b - a - 1)], z.backward[b - 1]);
  out.apex = cospan(f0, b0);
  out.chosen = j;
  out.legs = std::move(base_cocone.legs);
  return out;
}

}  // namespace

Cocone zigzag_colimit(const Category& base, const DiagramShape& shape, std::span<const Diagram> objects,
                      std::span<const Morphism> arrows, const ColimitOptions& options, ZigzagColimitTrace* trace) {
  require_connected(shape);
  if (objects.size() != shape.nodes || arrows.size() != shape.arrows.size()) {
    throw Error(ErrorCode::SizeMismatch, "diagram assignment does not match its shape");
  }
  for (const auto& o : objects) {
    if (o.dimension() != base.dimension() + 1) throw Error(ErrorCode::DimensionMismatch, "object is not a zigzag over the base");
  }

  DeltaDiagram dd{shape, {}, {}};
  for (const auto& o : objects) dd.sizes.push_back(o.length());
  for (const auto& f : arrows) dd.arrows.push_back(f.map().sing);
  DeltaCocone delta;
  try {
    delta = options.bias == Bias::None ? delta_colimit(dd) : biased_cocone(dd, options.bias);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoColimit && e.code() != ErrorCode::BiasRequired) throw;
    throw Error(ErrorCode::DeltaColimitFailed, e.reason(), 1);
  }

  const std::size_t c = delta.size;
  const std::size_t nodes = shape.nodes;
  std::vector<Monotone> windows;
  windows.reserve(nodes);
  for (const auto& leg : delta.legs) windows.push_back(reversal(leg));

  std::vector<std::optional<HeightSolution>> solved(c);
  std::vector<std::exception_ptr> failures(c);
  const long count = static_cast<long>(c);
#pragma omp parallel for schedule(dynamic) if (options.parallel && c > 1)
  for (long k = 0; k < count; ++k) {
    try {
      solved[k] = solve_height(base, shape, objects, arrows, windows, static_cast<std::size_t>(k), options);
    } catch (...) {
      failures[k] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  Diagram apex;
  if (c == 0) {
    apex = suspend(objects[0].zigzag().regular[0]);
  } else {
    Zigzag z;
    z.regular.push_back(solved[0]->apex.zigzag().regular[0]);
    for (std::size_t k = 0; k < c; ++k) {
      const auto& ck = solved[k]->apex.zigzag();
      z.regular.push_back(ck.regular[1]);
      z.singular.push_back(ck.singular[0]);
      z.forward.push_back(ck.forward[0]);
      z.backward.push_back(ck.backward[0]);
    }
    apex = Diagram(std::move(z));
  }

  Cocone out{apex, {}};
  out.legs.reserve(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    const auto& leg = delta.legs[j];
    std::vector<Morphism> slices;
    slices.reserve(leg.source_size());
    for (std::size_t i = 0; i < leg.source_size(); ++i) {
      const auto k = leg(i);
      const auto& s = *solved[k];
      slices.push_back(s.legs[s.deconstruction.singular_node(j, i - windows[j](k))]);
    }
    out.legs.emplace_back(ZigzagMap{objects[j], apex, leg, std::move(slices)});
  }
  if (trace) {
    trace->delta = delta;
    trace->chosen_node.clear();
    for (const auto& s : solved) trace->chosen_node.push_back(s->chosen);
  }
  return out;
}

Contraction contract_zigzag(const Category& base, const Diagram& z, std::size_t a, std::size_t b,
                            const ColimitOptions& options) {
  if (z.dimension() != base.dimension() + 1) throw Error(ErrorCode::DimensionMismatch, "zigzag is not over the base");
  const auto& x = z.zigzag();
  if (b <= a || b > x.length()) {
    throw Error(ErrorCode::InvalidWindow, "window (" + std::to_string(a) + "," + std::to_string(b) +
                                              ") is not a nonempty range of regular heights of a length-" +
                                              std::to_string(x.length()) + " zigzag");
  }
  ZigzagDiagram single{DiagramShape{1, {}}, {restrict(z, a, b)}, {}};
  auto d = deconstruct(single, true);
  auto colimit = base.connected_colimit(d.shape, d.objects, d.arrows, options);

  auto forward = after(colimit.legs[d.singular_node(0, 0)], x.forward[a]);
  auto backward = after(colimit.legs[d.singular_node(0, b - a - 1)], x.backward[b - 1]);
  Zigzag y;
  y.regular.assign(x.regular.begin(), x.regular.begin() + a + 1);
  y.singular.assign(x.singular.begin(), x.singular.begin() + a);
  y.forward.assign(x.forward.begin(), x.forward.begin() + a);
  y.backward.assign(x.backward.begin(), x.backward.begin() + a);
  y.singular.push_back(colimit.apex);
  y.forward.push_back(forward);
  y.backward.push_back(backward);
  y.regular.insert(y.regular.end(), x.regular.begin() + b, x.regular.end());
  y.singular.insert(y.singular.end(), x.singular.begin() + b, x.singular.end());
  y.forward.insert(y.forward.end(), x.forward.begin() + b, x.forward.end());
  y.backward.insert(y.backward.end(), x.backward.begin() + b, x.backward.end());
  Diagram result(std::move(y));

  std::vector<std::size_t> values(x.length());
  std::vector<Morphism> slices;
  slices.reserve(x.length());
  for (std::size_t i = 0; i < x.length(); ++i) {
    if (i < a) {
      values[i] = i;
      slices.push_back(identity(x.singular[i]));
    } else if (i < b) {
      values[i] = a;
      slices.push_back(colimit.legs[d.singular_node(0, i - a)]);
    } else {
      values[i] = i - (b - a) + 1;
      slices.push_back(identity(x.singular[i]));
    }
  }
  Morphism map(ZigzagMap{z, result, Monotone(std::move(values), result.length()), std::move(slices)});
  return {result, map};
}

bool ZigzagCategory::is_object(const Diagram& x) const {
  return x.dimension() == dimension() && validate_zigzag(base_, x).empty();
}

bool ZigzagCategory::is_morphism(const Morphism& f) const {
  return f.dimension() == dimension() && validate_map(base_, f).empty();
}

std::optional<Diagram> ZigzagCategory::local_terminal(const Diagram& a, const Diagram& b) const {
  auto t = base_.terminal();
  if (!t || !a.is_atom() || !b.is_atom()) return std::nullopt;
  return cospan(Morphism::arrow(a.atom(), t->atom()), Morphism::arrow(b.atom(), t->atom()));
}

std::optional<Diagram> ZigzagCategory::terminal() const {
  if (!base_.has_single_object()) return std::nullopt;
  auto t = base_.terminal();
  if (!t) return std::nullopt;
  return cospan(identity(*t), identity(*t));
}

Cocone ZigzagCategory::connected_colimit(const DiagramShape& shape, std::span<const Diagram> objects,
                                         std::span<const Morphism> arrows, const ColimitOptions& options) const {
  return zigzag_colimit(base_, shape, objects, arrows, options);
}

const Category& Tower::level(std::size_t k) const {
  if (k == 0) return *bottom_;
  std::lock_guard<std::mutex> lock(mutex_);
  while (levels_.size() < k) {
    const Category& below = levels_.empty() ? static_cast<const Category&>(*bottom_) : *levels_.back();
    levels_.push_back(std::make_unique<ZigzagCategory>(below));
  }
  return *levels_[k - 1];
}

}  // namespace anc
