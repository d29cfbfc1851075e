#include "anc/monotone.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "anc/error.hpp"

namespace anc {

Monotone::Monotone(std::vector<std::size_t> values, std::size_t target_size)
    : values_(std::move(values)), target_size_(target_size) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] >= target_size_) {
      throw Error(ErrorCode::IndexOutOfRange, "monotone value " + std::to_string(values_[i]) +
                                                  " outside target [" + std::to_string(target_size_) + "]");
    }
    if (i > 0 && values_[i] < values_[i - 1]) {
      throw Error(ErrorCode::NotMonotone, "values decrease at index " + std::to_string(i));
    }
  }
}

Monotone Monotone::identity(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return Monotone(std::move(v), n);
}

Monotone Monotone::constant(std::size_t n, std::size_t value, std::size_t target_size) {
  return Monotone(std::vector<std::size_t>(n, value), target_size);
}

bool Monotone::is_identity() const {
  if (values_.size() != target_size_) return false;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != i) return false;
  }
  return true;
}

bool Monotone::preserves_endpoints() const {
  if (values_.empty() || target_size_ == 0) return false;
  return values_.front() == 0 && values_.back() == target_size_ - 1;
}

std::string to_string(const Monotone& f) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < f.source_size(); ++i) {
    if (i) out << ',';
    out << f(i);
  }
  out << "]:[" << f.source_size() << "]->[" << f.target_size() << ']';
  return out.str();
}

Monotone compose(const Monotone& f, const Monotone& g) {
  if (f.target_size() != g.source_size()) {
    throw Error(ErrorCode::SizeMismatch, "cannot compose " + to_string(f) + " with " + to_string(g));
  }
  std::vector<std::size_t> v(f.source_size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = g(f(i));
  return Monotone(std::move(v), g.target_size());
}

Monotone top_extend(const Monotone& f) {
  auto v = f.values();
  v.push_back(f.target_size());
  return Monotone(std::move(v), f.target_size() + 1);
}

std::vector<std::size_t> above_set(const Monotone& f, std::size_t j) {
  if (j >= f.target_size()) {
    throw Error(ErrorCode::IndexOutOfRange, "height " + std::to_string(j) + " outside target of " + to_string(f));
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.source_size(); ++i) {
    if (f(i) >= j) out.push_back(i);
  }
  return out;
}

Monotone reversal(const Monotone& f) {
  const std::size_t m = f.target_size();
  std::vector<std::size_t> v(m + 1);
  std::size_t count = 0;
  for (std::size_t j = 0; j <= m; ++j) {
    while (count < f.source_size() && f(count) < j) ++count;
    v[j] = count;
  }
  return Monotone(std::move(v), f.source_size() + 1);
}

Monotone reversal_inverse(const Monotone& g) {
  if (!g.preserves_endpoints()) {
    throw Error(ErrorCode::SizeMismatch, "reversal_inverse needs an endpoint-preserving map, got " + to_string(g));
  }
  const std::size_t m = g.source_size() - 1;
  const std::size_t n = g.target_size() - 1;
  std::vector<std::size_t> v(n);
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (count < m && g(count + 1) <= i) ++count;
    v[i] = count;
  }
  return Monotone(std::move(v), m);
}

const char* to_string(Bias bias) {
  switch (bias) {
    case Bias::None: return "none";
    case Bias::Lower: return "lower";
    case Bias::Higher: return "higher";
  }
  return "none";
}

void DeltaDiagram::check() const {
  shape.check();
  if (sizes.size() != shape.nodes) throw Error(ErrorCode::SizeMismatch, "node size count differs from shape");
  if (arrows.size() != shape.arrows.size()) throw Error(ErrorCode::SizeMismatch, "arrow count differs from shape");
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    const auto& e = shape.arrows[a];
    if (arrows[a].source_size() != sizes[e.source] || arrows[a].target_size() != sizes[e.target]) {
      throw Error(ErrorCode::SizeMismatch, "arrow " + std::to_string(a) + " does not match node sizes");
    }
  }
}

bool is_cocone(const DeltaDiagram& d, const DeltaCocone& c) {
  if (c.legs.size() != d.shape.nodes) return false;
  for (std::size_t j = 0; j < c.legs.size(); ++j) {
    if (c.legs[j].source_size() != d.sizes[j] || c.legs[j].target_size() != c.size) return false;
  }
  for (std::size_t a = 0; a < d.arrows.size(); ++a) {
    const auto& e = d.shape.arrows[a];
    const auto& f = d.arrows[a];
    for (std::size_t i = 0; i < f.source_size(); ++i) {
      if (c.legs[e.target](f(i)) != c.legs[e.source](i)) return false;
    }
  }
  return true;
}

namespace {

// Elements of the disjoint union, grouped into strongly connected classes of
// the order generated by arrow identifications and within-node successors.
struct Condensation {
  std::vector<std::size_t> offset;     // per node, first element id
  std::vector<std::size_t> component;  // per element
  std::size_t count = 0;
  std::vector<std::vector<std::size_t>> succ;  // component DAG, deduplicated
  std::vector<std::size_t> indegree;
  std::vector<std::pair<std::size_t, std::size_t>> rep;  // smallest (node, element)
};

Condensation condense(const DeltaDiagram& d) {
  Condensation c;
  const std::size_t nodes = d.shape.nodes;
  c.offset.resize(nodes + 1, 0);
  for (std::size_t j = 0; j < nodes; ++j) c.offset[j + 1] = c.offset[j] + d.sizes[j];
  const std::size_t total = c.offset[nodes];

  std::vector<std::size_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < d.arrows.size(); ++a) {
    const auto& e = d.shape.arrows[a];
    const auto& f = d.arrows[a];
    for (std::size_t i = 0; i < f.source_size(); ++i) {
      auto x = find(c.offset[e.source] + i);
      auto y = find(c.offset[e.target] + f(i));
      if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
  }
  std::vector<std::size_t> cls(total), cls_id(total, SIZE_MAX);
  std::size_t classes = 0;
  for (std::size_t x = 0; x < total; ++x) {
    auto r = find(x);
    if (cls_id[r] == SIZE_MAX) cls_id[r] = classes++;
    cls[x] = cls_id[r];
  }

  std::vector<std::vector<std::size_t>> adj(classes);
  for (std::size_t j = 0; j < nodes; ++j) {
    for (std::size_t i = c.offset[j]; i + 1 < c.offset[j + 1]; ++i) {
      if (cls[i] != cls[i + 1]) adj[cls[i]].push_back(cls[i + 1]);
    }
  }

  // Tarjan's algorithm, iterative.
  std::vector<std::size_t> index(classes, SIZE_MAX), low(classes, 0), scc(classes, SIZE_MAX);
  std::vector<char> on_stack(classes, 0);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0, scc_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> call;
  for (std::size_t root = 0; root < classes; ++root) {
    if (index[root] != SIZE_MAX) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      if (pos < adj[v].size()) {
        auto w = adj[v][pos++];
        if (index[w] == SIZE_MAX) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          scc[w] = scc_count;
        } while (w != v);
        ++scc_count;
      }
      auto finished = v;
      call.pop_back();
      if (!call.empty()) {
        auto parent_v = call.back().first;
        low[parent_v] = std::min(low[parent_v], low[finished]);
      }
    }
  }

  c.count = scc_count;
  c.component.resize(total);
  for (std::size_t x = 0; x < total; ++x) c.component[x] = scc[cls[x]];
  c.succ.assign(scc_count, {});
  c.indegree.assign(scc_count, 0);
  for (std::size_t v = 0; v < classes; ++v) {
    for (auto w : adj[v]) {
      if (scc[v] != scc[w]) c.succ[scc[v]].push_back(scc[w]);
    }
  }
  for (auto& s : c.succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (auto w : s) ++c.indegree[w];
  }
  c.rep.assign(scc_count, {SIZE_MAX, SIZE_MAX});
  for (std::size_t j = 0; j < nodes; ++j) {
    for (std::size_t i = c.offset[j]; i < c.offset[j + 1]; ++i) {
      auto& r = c.rep[c.component[i]];
      r = std::min(r, std::make_pair(j, i - c.offset[j]));
    }
  }
  return c;
}

DeltaCocone legs_from_ranks(const DeltaDiagram& d, const Condensation& c, const std::vector<std::size_t>& rank) {
  DeltaCocone out;
  out.size = c.count;
  out.legs.reserve(d.shape.nodes);
  for (std::size_t j = 0; j < d.shape.nodes; ++j) {
    std::vector<std::size_t> v(d.sizes[j]);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = rank[c.component[c.offset[j] + i]];
    out.legs.emplace_back(std::move(v), c.count);
  }
  return out;
}

// Kahn's algorithm. Returns false (leaving `rank` partial) if some step has
// more than one available component and no bias is given.
bool linearize(const Condensation& c, Bias bias, std::vector<std::size_t>& rank) {
  rank.assign(c.count, SIZE_MAX);
  auto indeg = c.indegree;
  std::vector<std::size_t> available;
  for (std::size_t v = 0; v < c.count; ++v) {
    if (indeg[v] == 0) available.push_back(v);
  }
  auto before = [&](std::size_t x, std::size_t y) {
    const auto& a = c.rep[x];
    const auto& b = c.rep[y];
    if (bias == Bias::Higher && a.first != b.first) return a.first > b.first;
    return a < b;
  };
  for (std::size_t next = 0; next < c.count; ++next) {
    if (available.size() != 1 && bias == Bias::None) return false;
    auto it = std::min_element(available.begin(), available.end(), before);
    auto v = *it;
    available.erase(it);
    rank[v] = next;
    for (auto w : c.succ[v]) {
      if (--indeg[w] == 0) available.push_back(w);
    }
  }
  return true;
}

}  // namespace

DeltaCocone delta_colimit(const DeltaDiagram& d) {
  d.check();
  require_connected(d.shape);
  auto c = condense(d);
  std::vector<std::size_t> rank;
  if (!linearize(c, Bias::None, rank)) {
    throw Error(ErrorCode::NoColimit, "Incomparable");
  }
  return legs_from_ranks(d, c, rank);
}

DeltaCocone biased_cocone(const DeltaDiagram& d, Bias bias) {
  d.check();
  require_connected(d.shape);
  auto c = condense(d);
  std::vector<std::size_t> rank;
  if (!linearize(c, Bias::None, rank)) {
    if (bias == Bias::None) {
      throw Error(ErrorCode::BiasRequired, "colimit does not exist and no bias was given");
    }
    linearize(c, bias, rank);
  }
  return legs_from_ranks(d, c, rank);
}

}  // namespace anc
