#include "anc/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "anc/error.hpp"

namespace anc::oracle {

namespace {

using Seq = std::vector<std::size_t>;

void monotone_rec(std::size_t n, std::size_t m, Seq& cur, std::vector<Seq>& out) {
  if (cur.size() == n) {
    out.push_back(cur);
    return;
  }
  const std::size_t lo = cur.empty() ? 0 : cur.back();
  for (std::size_t v = lo; v < m; ++v) {
    cur.push_back(v);
    monotone_rec(n, m, cur, out);
    cur.pop_back();
  }
}

const std::vector<Seq>& monotone_seqs(std::size_t n, std::size_t m) {
  thread_local std::map<std::pair<std::size_t, std::size_t>, std::vector<Seq>> cache;
  auto [it, fresh] = cache.try_emplace({n, m});
  if (fresh) {
    Seq cur;
    monotone_rec(n, m, cur, it->second);
  }
  return it->second;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Regular map of a sing map u: [n] -> [m], counted directly.
Seq regular_of(const Seq& u, std::size_t m) {
  Seq reg(m + 1, 0);
  for (std::size_t j = 0; j <= m; ++j) {
    reg[j] = static_cast<std::size_t>(std::count_if(u.begin(), u.end(), [j](std::size_t v) { return v < j; }));
  }
  return reg;
}

struct Z1 {
  std::vector<Atom> r, s;
};

Z1 flatten(const Diagram& d) {
  Z1 z;
  for (const auto& x : d.zigzag().regular) z.r.push_back(x.atom());
  for (const auto& x : d.zigzag().singular) z.s.push_back(x.atom());
  return z;
}

Diagram build(const Z1& z) {
  Zigzag out;
  for (Atom a : z.r) out.regular.emplace_back(a);
  for (std::size_t i = 0; i < z.s.size(); ++i) {
    out.singular.emplace_back(z.s[i]);
    out.forward.push_back(Morphism::arrow(z.r[i], z.s[i]));
    out.backward.push_back(Morphism::arrow(z.r[i + 1], z.s[i]));
  }
  return Diagram(std::move(out));
}

bool valid_map(const Poset& p, const Z1& x, const Z1& y, const Seq& u) {
  if (x.r.front() != y.r.front() || x.r.back() != y.r.back()) return false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!p.leq(x.s[i], y.s[u[i]])) return false;
  }
  const Seq reg = regular_of(u, y.s.size());
  for (std::size_t j = 0; j < reg.size(); ++j) {
    if (y.r[j] != x.r[reg[j]]) return false;
  }
  return true;
}

// Breadth-first node order, so each later node touches an earlier one.
std::vector<std::size_t> visit_order(const DiagramShape& shape) {
  std::vector<std::size_t> order{0};
  std::vector<bool> seen(shape.nodes, false);
  seen[0] = true;
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (const auto& a : shape.arrows) {
      for (auto [x, y] : {std::pair{a.source, a.target}, std::pair{a.target, a.source}}) {
        if (x == order[k] && !seen[y]) {
          seen[y] = true;
          order.push_back(y);
        }
      }
    }
  }
  return order;
}

}  // namespace

std::vector<Monotone> monotone_maps(std::size_t n, std::size_t m) {
  std::vector<Monotone> out;
  for (const auto& s : monotone_seqs(n, m)) out.emplace_back(s, m);
  return out;
}

std::vector<DeltaCocone> surjective_delta_cocones(const DeltaDiagram& d) {
  const std::size_t nodes = d.shape.nodes;
  std::vector<std::size_t> offset(nodes + 1, 0);
  for (std::size_t j = 0; j < nodes; ++j) offset[j + 1] = offset[j] + d.sizes[j];
  const std::size_t total = offset[nodes];

  // Identify x with f(x) along every arrow until nothing changes.
  std::vector<std::size_t> label(total);
  for (std::size_t e = 0; e < total; ++e) label[e] = e;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < d.shape.arrows.size(); ++k) {
      const auto& a = d.shape.arrows[k];
      for (std::size_t i = 0; i < d.sizes[a.source]; ++i) {
        const std::size_t x = offset[a.source] + i;
        const std::size_t y = offset[a.target] + d.arrows[k](i);
        if (label[x] == label[y]) continue;
        const std::size_t lo = std::min(label[x], label[y]);
        const std::size_t hi = std::max(label[x], label[y]);
        for (auto& l : label) {
          if (l == hi) l = lo;
        }
        changed = true;
      }
    }
  }
  std::vector<std::size_t> cls(total);
  std::map<std::size_t, std::size_t> compact;
  for (std::size_t e = 0; e < total; ++e) {
    auto [it, fresh] = compact.try_emplace(label[e], compact.size());
    cls[e] = it->second;
  }
  const std::size_t classes = compact.size();
  if (classes > 30) throw Error(ErrorCode::AssertionFailed, "oracle limited to 30 classes");

  std::vector<std::uint32_t> pred(classes, 0);
  for (std::size_t j = 0; j < nodes; ++j) {
    for (std::size_t i = 1; i < d.sizes[j]; ++i) {
      const std::size_t a = cls[offset[j] + i - 1];
      const std::size_t b = cls[offset[j] + i];
      if (a != b) pred[b] |= std::uint32_t{1} << a;
    }
  }

  std::vector<DeltaCocone> out;
  std::vector<std::size_t> rank(classes, 0);
  const std::uint32_t all = classes == 32 ? ~0u : (std::uint32_t{1} << classes) - 1;
  std::function<void(std::uint32_t, std::size_t)> place = [&](std::uint32_t placed, std::size_t blocks) {
    if (placed == all) {
      DeltaCocone c;
      c.size = blocks;
      for (std::size_t j = 0; j < nodes; ++j) {
        Seq leg(d.sizes[j]);
        for (std::size_t i = 0; i < d.sizes[j]; ++i) leg[i] = rank[cls[offset[j] + i]];
        c.legs.emplace_back(std::move(leg), blocks);
      }
      out.push_back(std::move(c));
      return;
    }
    const std::uint32_t free = all & ~placed;
    for (std::uint32_t b = free; b != 0; b = (b - 1) & free) {
      bool ok = true;
      for (std::size_t x = 0; x < classes && ok; ++x) {
        if ((b >> x) & 1u) ok = (pred[x] & ~(placed | b)) == 0;
      }
      if (!ok) continue;
      for (std::size_t x = 0; x < classes; ++x) {
        if ((b >> x) & 1u) rank[x] = blocks;
      }
      place(placed | b, blocks + 1);
    }
  };
  place(0, 0);
  return out;
}

std::size_t delta_mediators(const DeltaCocone& from, const DeltaCocone& to) {
  constexpr std::size_t unset = SIZE_MAX;
  std::vector<std::size_t> fixed(from.size, unset);
  for (std::size_t j = 0; j < from.legs.size(); ++j) {
    for (std::size_t i = 0; i < from.legs[j].source_size(); ++i) {
      auto& slot = fixed[from.legs[j](i)];
      const std::size_t v = to.legs[j](i);
      if (slot != unset && slot != v) return 0;
      slot = v;
    }
  }
  // Free runs between fixed values are filled by monotone sequences.
  std::size_t count = 1;
  std::size_t lo = 0;
  std::size_t run = 0;
  for (std::size_t p = 0; p <= from.size; ++p) {
    const bool end = p == from.size;
    if (!end && fixed[p] == unset) {
      ++run;
      continue;
    }
    if (!end && fixed[p] < lo) return 0;
    if (run > 0) {
      if (to.size == 0) return 0;
      const std::size_t hi = end ? to.size - 1 : fixed[p];
      if (hi < lo) return 0;
      count = std::min<std::size_t>(2, count * binomial(hi - lo + run, run));
    }
    run = 0;
    if (!end) lo = fixed[p];
  }
  return count;
}

std::optional<DeltaCocone> delta_colimit_oracle(const DeltaDiagram& d) {
  const auto cocones = surjective_delta_cocones(d);
  if (cocones.empty()) return std::nullopt;
  const DeltaCocone* cand = &cocones.front();
  for (const auto& x : cocones) {
    if (delta_mediators(*cand, x) == 0) cand = &x;
  }
  for (const auto& x : cocones) {
    if (delta_mediators(*cand, x) != 1) return std::nullopt;
  }
  return *cand;
}

bool delta_is_universal(const DeltaDiagram& d, const DeltaCocone& c) {
  if (c.legs.size() != d.shape.nodes) return false;
  for (std::size_t j = 0; j < d.shape.nodes; ++j) {
    if (c.legs[j].source_size() != d.sizes[j] || c.legs[j].target_size() != c.size) return false;
  }
  for (std::size_t k = 0; k < d.shape.arrows.size(); ++k) {
    const auto& a = d.shape.arrows[k];
    for (std::size_t i = 0; i < d.sizes[a.source]; ++i) {
      if (c.legs[a.target](d.arrows[k](i)) != c.legs[a.source](i)) return false;
    }
  }
  // A colimit is jointly surjective, and for surjective c comparing against
  // surjective cocones is enough.
  std::vector<bool> hit(c.size, false);
  for (const auto& leg : c.legs) {
    for (auto v : leg.values()) hit[v] = true;
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
  for (const auto& x : surjective_delta_cocones(d)) {
    if (delta_mediators(c, x) != 1) return false;
  }
  return true;
}

std::vector<Diagram> zigzags_between(const Poset& p, Atom a, Atom b, std::size_t max_length) {
  std::vector<Diagram> out;
  const std::size_t n = p.size();
  Z1 z;
  std::function<void(std::size_t)> grow = [&](std::size_t len) {
    if (z.r.back() == b) out.push_back(build(z));
    if (len == max_length) return;
    for (Atom s = 0; s < n; ++s) {
      if (!p.leq(z.r.back(), s)) continue;
      for (Atom r = 0; r < n; ++r) {
        if (!p.leq(r, s)) continue;
        z.s.push_back(s);
        z.r.push_back(r);
        grow(len + 1);
        z.s.pop_back();
        z.r.pop_back();
      }
    }
  };
  z.r.push_back(a);
  grow(0);
  return out;
}

std::vector<Monotone> zigzag_maps(const Poset& p, const Diagram& x, const Diagram& y) {
  const Z1 zx = flatten(x);
  const Z1 zy = flatten(y);
  std::vector<Monotone> out;
  for (const auto& u : monotone_seqs(zx.s.size(), zy.s.size())) {
    if (valid_map(p, zx, zy, u)) out.emplace_back(u, zy.s.size());
  }
  return out;
}

struct ZigzagOracle::State {
  struct Object {
    Z1 z;
    std::vector<std::vector<const Seq*>> legs;  // per apex
  };
  struct Found {
    std::size_t apex;
    std::vector<const Seq*> legs;
  };

  const Poset& poset;
  std::size_t max_apex;
  std::vector<Diagram> apexes;
  std::vector<Z1> apex_z;
  std::unordered_map<Diagram, Object> objects;
  std::unordered_map<std::uint64_t, std::vector<const Seq*>> between;

  State(const Poset& p, Atom a, Atom b, std::size_t bound) : poset(p), max_apex(bound) {
    apexes = zigzags_between(p, a, b, bound);
    for (const auto& x : apexes) apex_z.push_back(flatten(x));
  }

  const Object& object(const Diagram& x) {
    auto [it, fresh] = objects.try_emplace(x);
    if (fresh) {
      it->second.z = flatten(x);
      const Z1& z = it->second.z;
      for (const auto& apex : apex_z) {
        auto& row = it->second.legs.emplace_back();
        for (const auto& u : monotone_seqs(z.s.size(), apex.s.size())) {
          if (valid_map(poset, z, apex, u)) row.push_back(&u);
        }
      }
    }
    return it->second;
  }

  const std::vector<const Seq*>& maps_between(std::size_t x, std::size_t y) {
    auto [it, fresh] = between.try_emplace((std::uint64_t{x} << 32) | y);
    if (fresh) {
      for (const auto& u : monotone_seqs(apex_z[x].s.size(), apex_z[y].s.size())) {
        if (valid_map(poset, apex_z[x], apex_z[y], u)) it->second.push_back(&u);
      }
    }
    return it->second;
  }

  std::size_t mediators(const Found& from, const Found& to) {
    std::size_t count = 0;
    for (const Seq* u : maps_between(from.apex, to.apex)) {
      bool ok = true;
      for (std::size_t j = 0; j < from.legs.size() && ok; ++j) {
        const Seq& f = *from.legs[j];
        const Seq& g = *to.legs[j];
        for (std::size_t i = 0; i < f.size() && ok; ++i) ok = (*u)[f[i]] == g[i];
      }
      if (ok && ++count == 2) break;
    }
    return count;
  }
};

ZigzagOracle::ZigzagOracle(const Poset& p, Atom a, Atom b, std::size_t max_apex)
    : state_(std::make_unique<State>(p, a, b, max_apex)) {}

ZigzagOracle::~ZigzagOracle() = default;

const std::vector<Diagram>& ZigzagOracle::apexes() const { return state_->apexes; }

std::optional<ZigzagCocone> ZigzagOracle::colimit(const ZigzagDiagram& d) {
  State& st = *state_;
  const std::size_t nodes = d.shape.nodes;
  std::vector<const State::Object*> objs;
  for (const auto& o : d.objects) objs.push_back(&st.object(o));
  std::vector<Seq> arrows;
  for (const auto& m : d.arrows) arrows.push_back(m.map().sing.values());
  const auto order = visit_order(d.shape);

  std::vector<State::Found> cocones;
  std::vector<const Seq*> legs(nodes, nullptr);
  auto commutes = [&](std::size_t e) {
    const auto& arr = d.shape.arrows[e];
    const Seq* s = legs[arr.source];
    const Seq* t = legs[arr.target];
    if (s == nullptr || t == nullptr) return true;
    for (std::size_t i = 0; i < arrows[e].size(); ++i) {
      if ((*t)[arrows[e][i]] != (*s)[i]) return false;
    }
    return true;
  };
  for (std::size_t ai = 0; ai < st.apex_z.size(); ++ai) {
    std::function<void(std::size_t)> assign = [&](std::size_t k) {
      if (k == nodes) {
        cocones.push_back({ai, legs});
        return;
      }
      const std::size_t j = order[k];
      for (const Seq* u : objs[j]->legs[ai]) {
        legs[j] = u;
        bool ok = true;
        for (std::size_t e = 0; e < d.shape.arrows.size() && ok; ++e) ok = commutes(e);
        if (ok) assign(k + 1);
      }
      legs[j] = nullptr;
    };
    assign(0);
  }
  if (cocones.empty()) return std::nullopt;

  const State::Found* cand = &cocones.front();
  for (const auto& x : cocones) {
    if (st.mediators(*cand, x) == 0) cand = &x;
  }
  auto universal = [&](const State::Found& c) {
    for (const auto& x : cocones) {
      if (st.mediators(c, x) != 1) return false;
    }
    return true;
  };
  const State::Found* winner = nullptr;
  if (universal(*cand)) {
    winner = cand;
  } else {
    // An initial cocone may sit in cand's isomorphism class under another name.
    for (const auto& x : cocones) {
      if (&x != cand && st.mediators(*cand, x) > 0 && st.mediators(x, *cand) > 0 && universal(x)) {
        winner = &x;
        break;
      }
    }
  }
  if (winner == nullptr) return std::nullopt;
  ZigzagCocone out{st.apexes[winner->apex], {}};
  const std::size_t len = st.apex_z[winner->apex].s.size();
  for (const Seq* leg : winner->legs) out.legs.emplace_back(*leg, len);
  return out;
}

std::optional<ZigzagCocone> zigzag_colimit_oracle(const Poset& p, const ZigzagDiagram& d, std::size_t max_apex) {
  const auto& first = d.objects.front().zigzag();
  ZigzagOracle oracle(p, first.regular.front().atom(), first.regular.back().atom(), max_apex);
  return oracle.colimit(d);
}

}  // namespace anc::oracle
