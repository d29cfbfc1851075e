#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "anc/shape.hpp"

namespace anc {

// Order-preserving map [n] -> [m] between finite total orders.
class Monotone {
 public:
  Monotone() = default;
  // Throws IndexOutOfRange if a value is >= target_size, NotMonotone if the
  // values decrease somewhere.
  Monotone(std::vector<std::size_t> values, std::size_t target_size);

  static Monotone identity(std::size_t n);
  static Monotone constant(std::size_t n, std::size_t value, std::size_t target_size);

  std::size_t source_size() const { return values_.size(); }
  std::size_t target_size() const { return target_size_; }
  std::size_t operator()(std::size_t i) const { return values_[i]; }
  const std::vector<std::size_t>& values() const { return values_; }

  bool is_identity() const;
  bool preserves_endpoints() const;

  friend bool operator==(const Monotone&, const Monotone&) = default;

 private:
  std::vector<std::size_t> values_;
  std::size_t target_size_ = 0;
};

std::string to_string(const Monotone& f);

// g after f. Throws SizeMismatch unless f.target_size() == g.source_size().
Monotone compose(const Monotone& f, const Monotone& g);

// f^T: [n+1] -> [m+1], sending the new top element n to m.
Monotone top_extend(const Monotone& f);

// { i | f(i) >= j }. Throws IndexOutOfRange unless j < f.target_size().
std::vector<std::size_t> above_set(const Monotone& f, std::size_t j);

// f': [m+1] -> [n+1], f'(j) = |{ i : f(i) < j }|. The result preserves
// first and last elements.
Monotone reversal(const Monotone& f);

// Inverse of reversal on endpoint-preserving maps [m+1] -> [n+1]:
// result(i) = |{ j in 1..m : g(j) <= i }|. Throws SizeMismatch if g does not
// preserve endpoints.
Monotone reversal_inverse(const Monotone& g);

enum class Bias { None, Lower, Higher };

const char* to_string(Bias bias);

struct DeltaDiagram {
  DiagramShape shape;
  std::vector<std::size_t> sizes;   // per node
  std::vector<Monotone> arrows;     // per shape arrow

  // Throws SizeMismatch if arrow endpoints disagree with node sizes.
  void check() const;
};

struct DeltaCocone {
  std::size_t size = 0;
  std::vector<Monotone> legs;  // per node

  friend bool operator==(const DeltaCocone&, const DeltaCocone&) = default;
};

bool is_cocone(const DeltaDiagram& d, const DeltaCocone& c);

// Colimit in the simplex category. Throws EmptyShape, NotConnected, or
// NoColimit with reason "Incomparable".
DeltaCocone delta_colimit(const DeltaDiagram& d);

// Like delta_colimit, but when the quotient order is not total the classes
// are linearized with ties broken by `bias`. Throws BiasRequired when the
// colimit does not exist and bias is None.
DeltaCocone biased_cocone(const DeltaDiagram& d, Bias bias);

}  // namespace anc
