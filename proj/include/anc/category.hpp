#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "anc/cell.hpp"
#include "anc/monotone.hpp"
#include "anc/shape.hpp"

namespace anc {

struct ColimitOptions {
  Bias bias = Bias::None;
  // Solve independent per-height subproblems on OpenMP threads.
  bool parallel = false;
  // Build each C_k from the last node with a nonempty window instead of the
  // first. The result is the same; used to spot-check that claim.
  bool prefer_last_node = false;
};

struct Cocone {
  Diagram apex;
  std::vector<Morphism> legs;  // per node
};

// Base category for zigzag constructions. Objects and morphisms are the
// recursive Diagram/Morphism values; identity and composition are the free
// functions identity() and after().
class Category {
 public:
  virtual ~Category() = default;

  // Dimension of this category's objects.
  virtual std::size_t dimension() const = 0;
  virtual bool is_object(const Diagram& x) const = 0;
  virtual bool is_morphism(const Morphism& f) const = 0;
  virtual bool has_single_object() const { return false; }
  virtual std::optional<Diagram> terminal() const { return std::nullopt; }

  // Colimit of a nonempty connected diagram. Throws on failure.
  virtual Cocone connected_colimit(const DiagramShape& shape, std::span<const Diagram> objects,
                                   std::span<const Morphism> arrows, const ColimitOptions& options) const = 0;
};

// Thin category on atoms [0, size()).
class Poset : public Category {
 public:
  virtual std::size_t size() const = 0;
  virtual bool leq(Atom a, Atom b) const = 0;
  // The colimit object of a connected diagram with these objects, if any.
  virtual std::optional<Atom> join(std::span<const Atom> atoms) const = 0;

  std::size_t dimension() const override { return 0; }
  bool is_object(const Diagram& x) const override;
  bool is_morphism(const Morphism& f) const override;
  bool has_single_object() const override { return size() == 1; }
  Cocone connected_colimit(const DiagramShape& shape, std::span<const Diagram> objects,
                           std::span<const Morphism> arrows, const ColimitOptions& options) const override;
};

// Finite poset given by its order relation; colimits are global least upper
// bounds.
class FinitePoset : public Poset {
 public:
  // leq[a][b]; must be reflexive, antisymmetric and transitive.
  explicit FinitePoset(std::vector<std::vector<bool>> leq);

  static FinitePoset chain(std::size_t n);
  static FinitePoset antichain(std::size_t n);
  // 0 < 1, 0 < 2, 1 < 3, 2 < 3.
  static FinitePoset diamond();

  std::size_t size() const override { return leq_.size(); }
  bool leq(Atom a, Atom b) const override { return leq_[a][b]; }
  std::optional<Atom> join(std::span<const Atom> atoms) const override;
  std::optional<Diagram> terminal() const override;

 private:
  std::vector<std::vector<bool>> leq_;
};

// The category with one object and one morphism.
FinitePoset terminal_category();

struct Label {
  std::string id;
  std::string name;
  unsigned dimension = 0;
  std::string color;
  // Rigid labels may not be fused by a contraction.
  bool rigid = false;
};

class LabelSignature {
 public:
  // Throws DuplicateName for a repeated id.
  Atom add(Label label);
  std::size_t size() const { return labels_.size(); }
  const Label& operator[](Atom a) const { return labels_.at(a); }
  std::optional<Atom> find(const std::string& id) const;
  // Throws UnknownLabel.
  Atom at(const std::string& id) const;
  const std::vector<Label>& labels() const { return labels_; }

  friend bool operator==(const LabelSignature& a, const LabelSignature& b);

 private:
  std::vector<Label> labels_;
  std::unordered_map<std::string, Atom> index_;
};

// l <= l' iff l = l' or dim(l) < dim(l'). Colimits follow the local rule of
// label_colimit.
class LabelPoset : public Poset {
 public:
  explicit LabelPoset(LabelSignature signature) : signature_(std::move(signature)) {}

  const LabelSignature& signature() const { return signature_; }
  std::size_t size() const override { return signature_.size(); }
  bool leq(Atom a, Atom b) const override;
  std::optional<Atom> join(std::span<const Atom> atoms) const override;

 private:
  LabelSignature signature_;
};

// The unique label of maximal dimension among `labels`, provided every other
// occurring label has strictly smaller dimension. Throws EmptyShape,
// NotConnected, or NoColimit with reason "TiedMaxima".
Atom label_colimit(const LabelSignature& signature, const DiagramShape& shape, std::span<const Atom> labels);

// Exhaustive least-upper-bound search; the reference for base colimits.
std::optional<Atom> poset_colimit_oracle(const Poset& poset, const DiagramShape& shape, std::span<const Atom> atoms);

}  // namespace anc
