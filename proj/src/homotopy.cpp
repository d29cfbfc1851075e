#include "anc/homotopy.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "anc/error.hpp"

namespace anc {

namespace {

Morphism make_map(const Diagram& source, const Diagram& target, std::vector<std::size_t> sing,
                  std::vector<Morphism> slices) {
  Monotone m(std::move(sing), target.length());
  return Morphism(ZigzagMap{source, target, std::move(m), std::move(slices)});
}

std::vector<Morphism> identity_slices(const Zigzag& z) {
  std::vector<Morphism> out;
  out.reserve(z.singular.size());
  for (const auto& s : z.singular) out.push_back(identity(s));
  return out;
}

std::vector<std::size_t> iota(std::size_t n, std::size_t offset = 0) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i + offset;
  return v;
}

Diagram concat_all(const std::vector<Diagram>& pieces) {
  Diagram acc = pieces.front();
  for (std::size_t i = 1; i < pieces.size(); ++i) acc = concatenate(acc, pieces[i]);
  return acc;
}

Morphism concat_all(const std::vector<Morphism>& pieces) {
  Morphism acc = pieces.front();
  for (std::size_t i = 1; i < pieces.size(); ++i) acc = concatenate_maps(acc, pieces[i]);
  return acc;
}

// The chain D_0 = d, D_{l+1} = D_l at path[l].
std::vector<Diagram> slice_chain(const Diagram& d, const Path& path) {
  std::vector<Diagram> chain{d};
  for (std::size_t l = 0; l < path.size(); ++l) {
    chain.push_back(slice(chain.back(), Path{path[l]}));
  }
  return chain;
}

void apply_signature_checks(const MoveContext& ctx, const Diagram& result, const Morphism* contraction,
                            std::vector<std::string>& notes) {
  if (ctx.signature == nullptr) return;
  const auto& sig = *ctx.signature;
  auto violations = validate_dimensions(sig, result);
  if (!violations.empty()) {
    const auto& v = violations.front();
    std::string reason = "label " + sig[v.label].name + " at " + format_path(v.path) +
                         " has dimension " + std::to_string(sig[v.label].dimension) + " in a " +
                         std::to_string(result.dimension()) + "-diagram";
    if (!ctx.policy.permissive) throw Error(ErrorCode::DimensionViolation, reason);
    notes.push_back("dimension violation accepted: " + reason);
  }
  if (contraction == nullptr) return;
  for (const auto& fusion : find_fusions(sig, *contraction)) {
    std::string names;
    bool rigid = false;
    for (Atom a : fusion.labels) {
      if (!names.empty()) names += "+";
      names += sig[a].name;
      rigid = rigid || sig[a].rigid;
    }
    std::string reason = "fusion of " + names + " at " + format_path(fusion.target);
    if (rigid && !ctx.policy.permissive) throw Error(ErrorCode::LabelFusionRejected, reason);
    notes.push_back(reason);
  }
}

struct Interleaved {
  Diagram expanded;
  Morphism map;  // expanded -> z
};

// Splits s_i of the zigzag z (dimension >= 2) into two singular heights. Each
// inner height t of s_i is resolved in the lower or upper new height; in the
// other one it is replaced by the window of r_i (resp. r_{i+1}) over t.
Interleaved interleave(const Diagram& z, std::size_t i, const std::vector<bool>& in_lower) {
  const auto& zz = z.zigzag();
  const Diagram& s = zz.singular[i];
  const Morphism& f = zz.forward[i];
  const Morphism& b = zz.backward[i];
  const std::size_t len = s.length();

  std::vector<Diagram> lower, middle, upper;
  std::vector<Morphism> to_s_lower, mid_lower, mid_upper, to_s_upper, f_new, b_new;
  for (std::size_t t = 0; t < len; ++t) {
    const Diagram piece = restrict(s, t, t + 1);
    const Morphism ft = restrict_map(f, t, t + 1);
    const Morphism bt = restrict_map(b, t, t + 1);
    const Morphism id_piece = identity(piece);
    const Morphism id_f = identity(ft.source());
    const Morphism id_b = identity(bt.source());
    if (in_lower[t]) {
      lower.push_back(piece);
      middle.push_back(bt.source());
      upper.push_back(bt.source());
      to_s_lower.push_back(id_piece);
      mid_lower.push_back(bt);
      mid_upper.push_back(id_b);
      to_s_upper.push_back(bt);
      f_new.push_back(ft);
      b_new.push_back(id_b);
    } else {
      lower.push_back(ft.source());
      middle.push_back(ft.source());
      upper.push_back(piece);
      to_s_lower.push_back(ft);
      mid_lower.push_back(id_f);
      mid_upper.push_back(ft);
      to_s_upper.push_back(id_piece);
      f_new.push_back(id_f);
      b_new.push_back(bt);
    }
  }
  const Diagram lo = concat_all(lower);
  const Diagram mid = concat_all(middle);
  const Diagram up = concat_all(upper);
  const Morphism lambda = concat_all(to_s_lower);
  const Morphism upsilon = concat_all(to_s_upper);
  const Morphism mu_lower = concat_all(mid_lower);
  const Morphism mu_upper = concat_all(mid_upper);
  const Morphism f_prime = concat_all(f_new);
  const Morphism b_prime = concat_all(b_new);

  Zigzag e;
  for (std::size_t j = 0; j < zz.length(); ++j) {
    if (j == i) {
      e.regular.push_back(zz.regular[i]);
      e.singular.push_back(lo);
      e.forward.push_back(f_prime);
      e.backward.push_back(mu_lower);
      e.regular.push_back(mid);
      e.singular.push_back(up);
      e.forward.push_back(mu_upper);
      e.backward.push_back(b_prime);
    } else {
      e.regular.push_back(zz.regular[j]);
      e.singular.push_back(zz.singular[j]);
      e.forward.push_back(zz.forward[j]);
      e.backward.push_back(zz.backward[j]);
    }
  }
  e.regular.push_back(zz.regular.back());
  Diagram expanded(std::move(e));

  std::vector<std::size_t> sing;
  std::vector<Morphism> slices;
  for (std::size_t j = 0; j < zz.length(); ++j) {
    if (j == i) {
      sing.push_back(i);
      sing.push_back(i);
      slices.push_back(lambda);
      slices.push_back(upsilon);
    } else {
      sing.push_back(j);
      slices.push_back(identity(zz.singular[j]));
    }
  }
  return {expanded, make_map(expanded, z, std::move(sing), std::move(slices))};
}

// z with s_h replaced by the source of e, when both f_h and b_h factor
// through e; otherwise the bubble r_h -> s_h <- E' -> s_h <- r_{h+1}.
Interleaved propagate_singular(const Tower& tower, const Diagram& z, std::size_t h, const Morphism& e) {
  const auto& zz = z.zigzag();
  const Diagram inner = e.source();
  auto fh = factor(tower, e, zz.forward[h]);
  std::optional<Morphism> bh;
  if (fh) bh = factor(tower, e, zz.backward[h]);

  Zigzag out;
  std::vector<std::size_t> sing;
  std::vector<Morphism> slices;
  for (std::size_t j = 0; j < zz.length(); ++j) {
    out.regular.push_back(zz.regular[j]);
    if (j != h) {
      out.singular.push_back(zz.singular[j]);
      out.forward.push_back(zz.forward[j]);
      out.backward.push_back(zz.backward[j]);
      sing.push_back(j);
      slices.push_back(identity(zz.singular[j]));
    } else if (fh && bh) {
      out.singular.push_back(inner);
      out.forward.push_back(*fh);
      out.backward.push_back(*bh);
      sing.push_back(j);
      slices.push_back(e);
    } else {
      out.singular.push_back(zz.singular[h]);
      out.forward.push_back(zz.forward[h]);
      out.backward.push_back(e);
      out.regular.push_back(inner);
      out.singular.push_back(zz.singular[h]);
      out.forward.push_back(e);
      out.backward.push_back(zz.backward[h]);
      sing.push_back(j);
      sing.push_back(j);
      slices.push_back(identity(zz.singular[h]));
      slices.push_back(identity(zz.singular[h]));
    }
  }
  out.regular.push_back(zz.regular.back());
  Diagram expanded(std::move(out));
  return {expanded, make_map(expanded, z, std::move(sing), std::move(slices))};
}

}  // namespace

Morphism promote_singular(const Diagram& z, std::size_t i, const Morphism& c) {
  const auto& zz = z.zigzag();
  if (i >= zz.length()) throw Error(ErrorCode::IndexOutOfRange, "singular height out of range");
  Zigzag out = zz;
  out.singular[i] = c.target();
  out.forward[i] = after(c, zz.forward[i]);
  out.backward[i] = after(c, zz.backward[i]);
  auto slices = identity_slices(zz);
  slices[i] = c;
  Diagram target(std::move(out));
  return make_map(z, target, iota(zz.length()), std::move(slices));
}

Morphism bubble_regular(const Diagram& z, std::size_t j, const Morphism& c) {
  const auto& zz = z.zigzag();
  if (j > zz.length()) throw Error(ErrorCode::IndexOutOfRange, "regular height out of range");
  Zigzag out;
  for (std::size_t k = 0; k <= zz.length(); ++k) {
    if (k == j) {
      out.regular.push_back(zz.regular[j]);
      out.singular.push_back(c.target());
      out.forward.push_back(c);
      out.backward.push_back(c);
    }
    out.regular.push_back(zz.regular[k]);
    if (k < zz.length()) {
      out.singular.push_back(zz.singular[k]);
      out.forward.push_back(zz.forward[k]);
      out.backward.push_back(zz.backward[k]);
    }
  }
  std::vector<std::size_t> sing;
  for (std::size_t k = 0; k < zz.length(); ++k) sing.push_back(k < j ? k : k + 1);
  Diagram target(std::move(out));
  return make_map(z, target, std::move(sing), identity_slices(zz));
}

MoveResult contract_at(const MoveContext& ctx, const Diagram& d, const ContractionDirective& dir) {
  const auto chain = slice_chain(d, dir.path);
  const Diagram& addressed = chain.back();
  if (addressed.dimension() == 0) {
    throw Error(ErrorCode::PathOutOfRange, "path " + format_path(dir.path) + " addresses a 0-diagram");
  }
  ColimitOptions options;
  options.bias = dir.bias;
  Contraction c = contract_zigzag(ctx.tower.level(addressed.dimension() - 1), addressed, dir.a, dir.b, options);
  Morphism map = c.map;
  for (std::size_t l = dir.path.size(); l-- > 0;) {
    const Coordinate& p = dir.path[l];
    map = p.singular ? promote_singular(chain[l], p.index, map) : bubble_regular(chain[l], p.index, map);
  }
  auto bad = validate_map(ctx.tower.level(d.dimension() - 1), map);
  if (!bad.empty()) throw Error(ErrorCode::AssertionFailed, "contraction map invalid: " + bad.front().what);
  MoveResult out{map.target(), map, {}};
  apply_signature_checks(ctx, out.result, &out.map, out.notes);
  return out;
}

MoveResult expand_at(const MoveContext& ctx, const Diagram& d, const ExpansionDirective& dir) {
  const auto chain = slice_chain(d, dir.path);
  const Diagram& addressed = chain.back();
  if (addressed.dimension() < 2) {
    throw Error(ErrorCode::PathOutOfRange, "expansion needs a diagram of dimension at least 2 at " + format_path(dir.path));
  }
  if (dir.height >= addressed.length()) {
    throw Error(ErrorCode::PathOutOfRange, "singular height " + std::to_string(dir.height) + " out of range");
  }
  const std::size_t len = addressed.zigzag().singular[dir.height].length();
  std::vector<int> owner(len, -1);
  auto claim = [&](const std::vector<std::size_t>& group, int g) {
    if (group.empty()) throw Error(ErrorCode::ExpansionUnsupported, "split groups must be nonempty");
    for (auto t : group) {
      if (t >= len || owner[t] != -1) {
        throw Error(ErrorCode::ExpansionUnsupported, "split groups must be disjoint subsets of the inner heights");
      }
      owner[t] = g;
    }
  };
  claim(dir.first, 0);
  claim(dir.second, 1);
  if (std::count(owner.begin(), owner.end(), -1) != 0) {
    throw Error(ErrorCode::ExpansionUnsupported, "split groups must cover every inner height");
  }
  const int lower_group = dir.order == SplitOrder::Lower ? 0 : 1;
  std::vector<bool> in_lower(len);
  for (std::size_t t = 0; t < len; ++t) in_lower[t] = owner[t] == lower_group;

  Interleaved step = interleave(addressed, dir.height, in_lower);
  for (std::size_t l = dir.path.size(); l-- > 0;) {
    const Coordinate& p = dir.path[l];
    if (!p.singular) {
      throw Error(ErrorCode::RegularPropagationImpossible,
                  "cannot propagate an expansion through regular height " + std::to_string(p.index));
    }
    step = propagate_singular(ctx.tower, chain[l], p.index, step.map);
  }
  auto bad = validate_map(ctx.tower.level(d.dimension() - 1), step.map);
  if (!bad.empty()) throw Error(ErrorCode::ExpansionUnsupported, "expanded map invalid: " + bad.front().what);
  MoveResult out{step.expanded, step.map, {}};
  apply_signature_checks(ctx, out.result, nullptr, out.notes);
  return out;
}

std::optional<Morphism> factor(const Tower& tower, const Morphism& e, const Morphism& g) {
  if (!(e.target() == g.target())) return std::nullopt;
  if (e.dimension() == 0) {
    if (!tower.bottom().leq(g.source_atom(), e.source_atom())) return std::nullopt;
    return Morphism::arrow(g.source_atom(), e.source_atom());
  }
  const auto& em = e.map();
  const auto& gm = g.map();
  const std::size_t n = gm.sing.source_size();
  const std::size_t m = em.sing.source_size();
  const Category& base = tower.level(e.dimension() - 1);

  // Slice factorizations are cached per (u, v); thin bases make them unique.
  std::vector<std::vector<std::optional<std::optional<Morphism>>>> cache(n, std::vector<std::optional<std::optional<Morphism>>>(m));
  auto slice_factor = [&](std::size_t u, std::size_t v) -> const std::optional<Morphism>& {
    auto& slot = cache[u][v];
    if (!slot) slot = factor(tower, em.slices[v], gm.slices[u]);
    return *slot;
  };

  std::vector<std::size_t> values(n);
  std::vector<Morphism> slices(n);
  std::optional<Morphism> found;
  std::function<bool(std::size_t, std::size_t)> search = [&](std::size_t u, std::size_t lo) -> bool {
    if (u == n) {
      Morphism h(ZigzagMap{g.source(), e.source(), Monotone(values, m), slices});
      if (!validate_map(base, h).empty()) return false;
      found = h;
      return true;
    }
    for (std::size_t v = lo; v < m; ++v) {
      if (em.sing(v) != gm.sing(u)) continue;
      const auto& sf = slice_factor(u, v);
      if (!sf) continue;
      values[u] = v;
      slices[u] = *sf;
      if (search(u + 1, v)) return true;
    }
    return false;
  };
  search(0, 0);
  return found;
}

std::vector<Violation> verify_generalized(const Tower& tower, const Morphism& m, MoveKind kind,
                                          std::optional<std::size_t> declared) {
  if (m.dimension() == 0) return {{0, "a generalized map has dimension at least 1"}};
  auto out = validate_map(tower.level(m.dimension() - 1), m);
  if (!out.empty()) return out;
  const auto& sing = m.map().sing;
  std::vector<std::size_t> fibre(sing.target_size(), 0);
  for (auto v : sing.values()) ++fibre[v];
  if (kind == MoveKind::Contraction) {
    std::size_t odd = 0;
    for (std::size_t t = 0; t < fibre.size(); ++t) {
      if (fibre[t] != 1) ++odd;
      if (fibre[t] != 1 && declared && t != *declared) {
        out.push_back({t, "fibre of size " + std::to_string(fibre[t]) + " away from the declared height"});
      }
    }
    if (odd > 1) out.push_back({0, "more than one target height has a fibre of size other than one"});
  } else {
    for (std::size_t t = 0; t < fibre.size(); ++t) {
      const bool split = declared && t == *declared;
      if (fibre[t] == (split ? 2u : 1u)) continue;
      out.push_back({t, "fibre of size " + std::to_string(fibre[t]) + " at target height " + std::to_string(t)});
    }
  }
  return out;
}

}  // namespace anc
