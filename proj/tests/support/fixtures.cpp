#include "fixtures.hpp"

#include <sstream>
#include <string>

#include "anc/error.hpp"

namespace anc::fx {

Typed::Typed(LabelSignature s)
    : sig(std::move(s)), poset(std::make_shared<LabelPoset>(sig)), tower(std::make_shared<Tower>(poset)) {}

Diagram row(const LabelSignature& sig, std::string_view labels) {
  std::istringstream in{std::string(labels)};
  std::vector<Atom> atoms;
  for (std::string id; in >> id;) atoms.push_back(sig.at(id));
  if (atoms.size() % 2 == 0) throw Error(ErrorCode::ParseError, "row needs an odd number of labels");
  Zigzag z;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (k % 2 == 0) {
      z.regular.emplace_back(atoms[k]);
    } else {
      z.singular.emplace_back(atoms[k]);
      z.forward.push_back(Morphism::arrow(atoms[k - 1], atoms[k]));
      z.backward.push_back(Morphism::arrow(atoms[k + 1], atoms[k]));
    }
  }
  return Diagram(std::move(z));
}

Morphism thin_map(const Diagram& source, const Diagram& target, std::vector<std::size_t> sing) {
  const auto& s = source.zigzag();
  const auto& t = target.zigzag();
  std::vector<Morphism> slices;
  for (std::size_t i = 0; i < sing.size(); ++i) {
    slices.push_back(Morphism::arrow(s.singular[i].atom(), t.singular[sing[i]].atom()));
  }
  return Morphism(ZigzagMap{source, target, Monotone(std::move(sing), t.length()), std::move(slices)});
}

Diagram zig(std::vector<Diagram> regular, std::vector<Diagram> singular, std::vector<Morphism> forward,
            std::vector<Morphism> backward) {
  return Diagram(Zigzag{std::move(regular), std::move(singular), std::move(forward), std::move(backward)});
}

Morphism zmap(const Diagram& source, const Diagram& target, std::vector<std::size_t> sing,
              std::vector<Morphism> slices) {
  const std::size_t m = target.length();
  return Morphism(ZigzagMap{source, target, Monotone(std::move(sing), m), std::move(slices)});
}

Diagram rows2(const LabelSignature& sig, const std::vector<std::string_view>& regular,
              const std::vector<std::string_view>& singular, const std::vector<std::vector<std::size_t>>& forward,
              const std::vector<std::vector<std::size_t>>& backward) {
  Zigzag z;
  for (auto r : regular) z.regular.push_back(row(sig, r));
  for (auto s : singular) z.singular.push_back(row(sig, s));
  for (std::size_t i = 0; i < singular.size(); ++i) {
    z.forward.push_back(thin_map(z.regular[i], z.singular[i], forward[i]));
    z.backward.push_back(thin_map(z.regular[i + 1], z.singular[i], backward[i]));
  }
  return Diagram(std::move(z));
}

Diagram untyped(std::size_t n) {
  Zigzag z;
  z.regular.assign(n + 1, Diagram(Atom{0}));
  z.singular.assign(n, Diagram(Atom{0}));
  z.forward.assign(n, Morphism::arrow(0, 0));
  z.backward.assign(n, Morphism::arrow(0, 0));
  return Diagram(std::move(z));
}

Morphism untyped_map(std::size_t n, std::size_t m, std::vector<std::size_t> sing) {
  return thin_map(untyped(n), untyped(m), std::move(sing));
}

LabelSignature standard_signature(bool rigid_f) {
  LabelSignature sig;
  sig.add({"x", "x", 0, "#ffffff", false});
  sig.add({"a", "a", 1, "#1f77b4", false});
  sig.add({"b", "b", 1, "#ff7f0e", false});
  sig.add({"c", "c", 1, "#2ca02c", false});
  sig.add({"f", "f", 2, "#d62728", rigid_f});
  sig.add({"g", "g", 2, "#9467bd", false});
  sig.add({"h", "h", 2, "#8c564b", false});
  sig.add({"u", "u", 2, "#e377c2", false});
  sig.add({"v", "v", 2, "#7f7f7f", false});
  return sig;
}

Diagram two_beads(const LabelSignature& sig) {
  return rows2(sig, {"x a x b x", "x a x b x", "x a x b x"}, {"x f x b x", "x a x g x"}, {{0, 1}, {0, 1}},
               {{0, 1}, {0, 1}});
}

Diagram opposing(const LabelSignature& sig) {
  return rows2(sig, {"x a x", "x", "x b x"}, {"x u x", "x v x"}, {{0}, {}}, {{}, {0}});
}

Diagram wire_between(const LabelSignature& sig) {
  return rows2(sig, {"x a x c x", "x c x", "x c x b x"}, {"x u x c x", "x c x v x"}, {{0, 1}, {0}}, {{1}, {0, 1}});
}

Diagram fuse_endomorphisms(const LabelSignature& sig) {
  return rows2(sig, {"x a x", "x a x", "x a x"}, {"x f x", "x f x"}, {{0}, {0}}, {{0}, {0}});
}

Diagram three_beads(const LabelSignature& sig) {
  const char* r = "x a x b x c x";
  return rows2(sig, {r, r, r, r}, {"x f x b x c x", "x a x g x c x", "x a x b x h x"}, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}},
               {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
}

Diagram untyped_decomposition() {
  const std::vector<std::size_t> reg{3, 4, 3, 3};
  const std::vector<std::size_t> sing{3, 3, 4};
  const std::vector<std::vector<std::size_t>> f{{0, 1, 2}, {0, 0, 1, 2}, {0, 1, 3}};
  const std::vector<std::vector<std::size_t>> b{{0, 1, 1, 2}, {0, 1, 2}, {0, 1, 3}};
  Zigzag z;
  for (auto n : reg) z.regular.push_back(untyped(n));
  for (std::size_t i = 0; i < sing.size(); ++i) {
    z.singular.push_back(untyped(sing[i]));
    z.forward.push_back(untyped_map(reg[i], sing[i], f[i]));
    z.backward.push_back(untyped_map(reg[i + 1], sing[i], b[i]));
  }
  return Diagram(std::move(z));
}

LabelSignature scalar_signature() {
  LabelSignature sig;
  sig.add({"x", "x", 0, "#ffffff", false});
  sig.add({"p", "p", 2, "#1f77b4", false});
  sig.add({"q", "q", 2, "#ff7f0e", false});
  sig.add({"e", "e", 3, "#d62728", false});
  return sig;
}

Diagram scalars(const LabelSignature& sig, std::string_view order) {
  std::istringstream in{std::string(order)};
  Zigzag z;
  const Diagram empty = row(sig, "x");
  z.regular.push_back(empty);
  for (std::string group; in >> group;) {
    std::string labels = "x";
    for (char c : group) {
      if (c == '[' || c == ']') continue;
      labels += ' ';
      labels += c;
      labels += " x";
    }
    Diagram s = row(sig, labels);
    z.singular.push_back(s);
    z.forward.push_back(thin_map(empty, s, {}));
    z.backward.push_back(thin_map(empty, s, {}));
    z.regular.push_back(empty);
  }
  return Diagram(std::move(z));
}

}  // namespace anc::fx

namespace anc::fx {

namespace {

// 2-diagram map between scalar stacks: each row's point goes to `rows[i]`,
// sitting at `positions[i]` of the target row.
Morphism stack_map(const Diagram& source, const Diagram& target, std::vector<std::size_t> rows,
                   std::vector<std::size_t> positions) {
  const auto& s = source.zigzag();
  const auto& t = target.zigzag();
  std::vector<Morphism> slices;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    slices.push_back(thin_map(s.singular[i], t.singular[rows[i]], {positions[i]}));
  }
  return zmap(source, target, std::move(rows), std::move(slices));
}

}  // namespace

Diagram naturality_source(const LabelSignature& sig) {
  const Diagram pq = scalars(sig, "p q"), eq = scalars(sig, "e q"), qp = scalars(sig, "q p");
  const Diagram joint = scalars(sig, "[pq]");
  const Morphism to_e = stack_map(pq, eq, {0, 1}, {0, 0});
  return zig({pq, pq, qp}, {eq, joint}, {to_e, stack_map(pq, joint, {0, 0}, {0, 1})},
             {to_e, stack_map(qp, joint, {0, 0}, {1, 0})});
}

Diagram naturality_target(const LabelSignature& sig) {
  const Diagram pq = scalars(sig, "p q"), qp = scalars(sig, "q p"), qe = scalars(sig, "q e");
  const Diagram joint = scalars(sig, "[pq]");
  const Morphism to_e = stack_map(qp, qe, {0, 1}, {0, 0});
  return zig({pq, qp, qp}, {joint, qe}, {stack_map(pq, joint, {0, 0}, {0, 1}), to_e},
             {stack_map(qp, joint, {0, 0}, {1, 0}), to_e});
}

Morphism relabel_map(const Diagram& d, const std::function<Atom(Atom)>& f) {
  if (d.is_atom()) return Morphism::arrow(d.atom(), f(d.atom()));
  const Zigzag& z = d.zigzag();
  std::vector<Morphism> slices;
  for (const auto& s : z.singular) slices.push_back(relabel_map(s, f));
  return Morphism(ZigzagMap{d, apply_functor(f, d), Monotone::identity(z.length()), std::move(slices)});
}

LabelSignature scalar4_signature() {
  LabelSignature sig = scalar_signature();
  sig.add({"y", "y", 4, "#e5c100", false});
  return sig;
}

Diagram y_cell(const LabelSignature& sig, const Diagram& n) {
  const Atom e = sig.at("e"), y = sig.at("y");
  const Morphism m = relabel_map(n, [&](Atom a) { return a == e ? y : a; });
  return cospan(m, m);
}

}  // namespace anc::fx
