#include "anc/category.hpp"

#include "anc/error.hpp"

namespace anc {

bool Poset::is_object(const Diagram& x) const { return x.is_atom() && x.atom() < size(); }

bool Poset::is_morphism(const Morphism& f) const {
  if (!f.is_arrow()) return false;
  auto s = f.source_atom();
  auto t = f.target_atom();
  return s < size() && t < size() && leq(s, t);
}

Cocone Poset::connected_colimit(const DiagramShape& shape, std::span<const Diagram> objects,
                                std::span<const Morphism>, const ColimitOptions&) const {
  require_connected(shape);
  std::vector<Atom> atoms;
  atoms.reserve(objects.size());
  for (const auto& o : objects) atoms.push_back(o.atom());
  auto top = join(atoms);
  if (!top) throw Error(ErrorCode::NoColimit, "no least upper bound");
  Cocone c{Diagram(*top), {}};
  c.legs.reserve(atoms.size());
  for (auto a : atoms) c.legs.push_back(Morphism::arrow(a, *top));
  return c;
}

FinitePoset::FinitePoset(std::vector<std::vector<bool>> leq) : leq_(std::move(leq)) {
  const std::size_t n = leq_.size();
  for (const auto& row : leq_) {
    if (row.size() != n) throw Error(ErrorCode::SizeMismatch, "order relation must be square");
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (!leq_[a][a]) throw Error(ErrorCode::ValidationFailed, "order relation must be reflexive");
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && leq_[a][b] && leq_[b][a]) throw Error(ErrorCode::ValidationFailed, "order relation must be antisymmetric");
      for (std::size_t c = 0; c < n; ++c) {
        if (leq_[a][b] && leq_[b][c] && !leq_[a][c]) throw Error(ErrorCode::ValidationFailed, "order relation must be transitive");
      }
    }
  }
}

FinitePoset FinitePoset::chain(std::size_t n) {
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) r[a][b] = true;
  return FinitePoset(std::move(r));
}

FinitePoset FinitePoset::antichain(std::size_t n) {
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a) r[a][a] = true;
  return FinitePoset(std::move(r));
}

FinitePoset FinitePoset::diamond() {
  std::vector<std::vector<bool>> r(4, std::vector<bool>(4));
  for (std::size_t a = 0; a < 4; ++a) r[a][a] = true;
  r[0][1] = r[0][2] = r[0][3] = r[1][3] = r[2][3] = true;
  return FinitePoset(std::move(r));
}

std::optional<Atom> FinitePoset::join(std::span<const Atom> atoms) const {
  const std::size_t n = size();
  std::optional<Atom> best;
  for (Atom u = 0; u < n; ++u) {
    bool upper = true;
    for (auto a : atoms) upper = upper && leq_[a][u];
    if (!upper) continue;
    if (!best || leq_[u][*best]) best = u;
  }
  if (!best) return std::nullopt;
  // `best` is minimal among upper bounds reached so far; it must be below all.
  for (Atom u = 0; u < n; ++u) {
    bool upper = true;
    for (auto a : atoms) upper = upper && leq_[a][u];
    if (upper && !leq_[*best][u]) return std::nullopt;
  }
  return best;
}

std::optional<Diagram> FinitePoset::terminal() const {
  for (Atom t = 0; t < size(); ++t) {
    bool top = true;
    for (Atom a = 0; a < size(); ++a) top = top && leq_[a][t];
    if (top) return Diagram(t);
  }
  return std::nullopt;
}

FinitePoset terminal_category() { return FinitePoset::chain(1); }

Atom LabelSignature::add(Label label) {
  if (index_.count(label.id)) throw Error(ErrorCode::DuplicateName, "label '" + label.id + "' already exists");
  auto a = static_cast<Atom>(labels_.size());
  index_.emplace(label.id, a);
  labels_.push_back(std::move(label));
  return a;
}

std::optional<Atom> LabelSignature::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Atom LabelSignature::at(const std::string& id) const {
  auto a = find(id);
  if (!a) throw Error(ErrorCode::UnknownLabel, "unknown label '" + id + "'");
  return *a;
}

bool operator==(const LabelSignature& a, const LabelSignature& b) {
  if (a.labels_.size() != b.labels_.size()) return false;
  for (std::size_t i = 0; i < a.labels_.size(); ++i) {
    const auto& x = a.labels_[i];
    const auto& y = b.labels_[i];
    if (x.id != y.id || x.name != y.name || x.dimension != y.dimension || x.color != y.color || x.rigid != y.rigid)
      return false;
  }
  return true;
}

bool LabelPoset::leq(Atom a, Atom b) const {
  return a == b || signature_[a].dimension < signature_[b].dimension;
}

std::optional<Atom> LabelPoset::join(std::span<const Atom> atoms) const {
  if (atoms.empty()) return std::nullopt;
  Atom top = atoms[0];
  for (auto a : atoms) {
    if (signature_[a].dimension > signature_[top].dimension) top = a;
  }
  for (auto a : atoms) {
    if (a != top && signature_[a].dimension >= signature_[top].dimension) return std::nullopt;
  }
  return top;
}

Atom label_colimit(const LabelSignature& signature, const DiagramShape& shape, std::span<const Atom> labels) {
  require_connected(shape);
  if (labels.size() != shape.nodes) throw Error(ErrorCode::SizeMismatch, "one label per node required");
  for (auto l : labels) {
    if (l >= signature.size()) throw Error(ErrorCode::UnknownLabel, "label index outside signature");
  }
  auto top = LabelPoset(signature).join(labels);
  if (!top) throw Error(ErrorCode::NoColimit, "TiedMaxima");
  return *top;
}

std::optional<Atom> poset_colimit_oracle(const Poset& poset, const DiagramShape& shape, std::span<const Atom> atoms) {
  if (!is_connected(shape)) return std::nullopt;
  std::vector<Atom> uppers;
  for (Atom u = 0; u < poset.size(); ++u) {
    bool upper = true;
    for (auto a : atoms) upper = upper && poset.leq(a, u);
    if (upper) uppers.push_back(u);
  }
  for (auto u : uppers) {
    bool least = true;
    for (auto v : uppers) least = least && poset.leq(u, v);
    if (least) return u;
  }
  return std::nullopt;
}

}  // namespace anc
