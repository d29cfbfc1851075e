#include "anc/diagram.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "anc/error.hpp"
#include "anc/zigzag.hpp"

namespace anc {

Path parse_path(const std::string& text) {
  Path path;
  if (text.empty() || text == "-") return path;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.size() < 2) throw Error(ErrorCode::ParseError, "bad path coordinate '" + item + "'");
    const char tag = static_cast<char>(std::tolower(static_cast<unsigned char>(item[0])));
    if (tag != 's' && tag != 'r') throw Error(ErrorCode::ParseError, "path coordinate must start with s or r: '" + item + "'");
    std::size_t index = 0;
    for (std::size_t i = 1; i < item.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(item[i]))) {
        throw Error(ErrorCode::ParseError, "bad path coordinate '" + item + "'");
      }
      index = index * 10 + static_cast<std::size_t>(item[i] - '0');
    }
    path.push_back({tag == 's', index});
  }
  return path;
}

std::string format_path(const Path& path) {
  if (path.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += ',';
    out += path[i].singular ? 's' : 'r';
    out += std::to_string(path[i].index);
  }
  return out;
}

Diagram slice(const Diagram& d, const Path& path) {
  Diagram cur = d;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const auto& c = path[k];
    if (cur.is_atom()) throw Error(ErrorCode::PathOutOfRange, "path is deeper than the diagram's dimension");
    const auto& z = cur.zigzag();
    const auto& objects = c.singular ? z.singular : z.regular;
    if (c.index >= objects.size()) {
      throw Error(ErrorCode::PathOutOfRange, "coordinate " + format_path({c}) + " out of range at depth " + std::to_string(k));
    }
    cur = objects[c.index];
  }
  return cur;
}

Diagram identity_suspend(const Diagram& d) { return suspend(d); }

namespace {

void check_labels_below(const LabelSignature& sig, const Diagram& d, unsigned dim) {
  if (d.is_atom()) {
    if (d.atom() >= sig.size()) throw Error(ErrorCode::UnknownLabel, "label index outside signature");
    if (sig[d.atom()].dimension >= dim) {
      throw Error(ErrorCode::ConeMapMissing, "label '" + sig[d.atom()].id + "' is not of lower dimension than the generator");
    }
    return;
  }
  const auto& z = d.zigzag();
  for (const auto& r : z.regular) check_labels_below(sig, r, dim);
  for (const auto& s : z.singular) check_labels_below(sig, s, dim);
}

bool globular(const Diagram& a, const Diagram& b) {
  if (a.is_atom()) return true;
  const auto [a0, a1] = boundaries(a);
  const auto [b0, b1] = boundaries(b);
  return a0 == b0 && a1 == b1 && globular(a0, a1);
}

// The unique map x -> k into a cone object, collapsing all heights.
Morphism into_cone(const Diagram& x, const Diagram& k, Atom label) {
  if (x.is_atom()) return Morphism::arrow(x.atom(), k.atom());
  const auto& kz = k.zigzag();
  const auto& xz = x.zigzag();
  if (!(xz.regular.front() == kz.regular[0]) || !(xz.regular.back() == kz.regular[1])) {
    throw Error(ErrorCode::ConeMapMissing, "boundary of a slice differs from the cone's boundary");
  }
  std::vector<Morphism> slices;
  for (const auto& s : xz.singular) slices.push_back(into_cone(s, kz.singular[0], label));
  if (xz.length() == 0 && !(kz.forward[0] == kz.backward[0])) {
    throw Error(ErrorCode::ConeMapMissing, "identity slice cannot map into a cone with distinct legs");
  }
  return Morphism(ZigzagMap{x, k, Monotone::constant(xz.length(), 0, 1), std::move(slices)});
}

Diagram cone(Atom label, const Diagram& s, const Diagram& t) {
  if (s.is_atom()) return cospan(Morphism::arrow(s.atom(), label), Morphism::arrow(t.atom(), label));
  const auto [s0, s1] = boundaries(s);
  const auto k = cone(label, s0, s1);
  return cospan(into_cone(s, k, label), into_cone(t, k, label));
}

}  // namespace

Diagram cone_generator(const LabelSignature& signature, Atom label, const Diagram& source, const Diagram& target) {
  if (label >= signature.size()) throw Error(ErrorCode::UnknownLabel, "label index outside signature");
  const unsigned dim = signature[label].dimension;
  if (dim == 0 || source.dimension() + 1 != dim || target.dimension() + 1 != dim) {
    throw Error(ErrorCode::DimensionMismatch, "generator of dimension " + std::to_string(dim) +
                                                  " needs source and target of dimension " + std::to_string(dim ? dim - 1 : 0));
  }
  if (!globular(source, target)) throw Error(ErrorCode::NotGlobular, "source and target boundaries differ");
  check_labels_below(signature, source, dim);
  check_labels_below(signature, target, dim);
  return cone(label, source, target);
}

namespace {

struct DimensionWalk {
  const LabelSignature& sig;
  std::set<std::pair<const void*, std::size_t>> seen;
  std::set<std::pair<Atom, std::size_t>> seen_atoms;
  std::vector<DimensionViolation> out;
  Path path;

  void walk(const Diagram& d, std::size_t singular) {
    if (d.is_atom()) {
      if (!seen_atoms.insert({d.atom(), singular}).second) return;
      const Atom a = d.atom();
      if (a >= sig.size() || sig[a].dimension > singular) out.push_back({path, a});
      return;
    }
    if (!seen.insert({d.identity_key(), singular}).second) return;
    const auto& z = d.zigzag();
    for (std::size_t i = 0; i < z.regular.size(); ++i) {
      path.push_back(Coordinate::regular(i));
      walk(z.regular[i], singular);
      path.pop_back();
    }
    for (std::size_t i = 0; i < z.length(); ++i) {
      path.push_back(Coordinate::sing(i));
      walk(z.singular[i], singular + 1);
      path.pop_back();
    }
  }
};

void collect_points(const Diagram& d, Path& path, std::vector<std::pair<Path, Atom>>& out) {
  if (d.is_atom()) {
    out.push_back({path, d.atom()});
    return;
  }
  const auto& z = d.zigzag();
  for (std::size_t i = 0; i < z.length(); ++i) {
    path.push_back(Coordinate::sing(i));
    collect_points(z.singular[i], path, out);
    path.pop_back();
  }
}

Path image_of(const Morphism& m, const Path& p) {
  Path out;
  Morphism cur = m;
  for (const auto& c : p) {
    const auto& mm = cur.map();
    out.push_back(Coordinate::sing(mm.sing(c.index)));
    Morphism next = mm.slices[c.index];
    cur = next;
  }
  return out;
}

}  // namespace

std::vector<DimensionViolation> validate_dimensions(const LabelSignature& signature, const Diagram& d) {
  DimensionWalk w{signature, {}, {}, {}, {}};
  w.walk(d, 0);
  return w.out;
}

std::vector<Fusion> find_fusions(const LabelSignature& signature, const Morphism& map) {
  if (map.is_arrow()) return {};
  const auto source = map.source();
  std::vector<std::pair<Path, Atom>> points;
  Path scratch;
  collect_points(source, scratch, points);
  std::map<std::string, Fusion> groups;
  std::map<std::string, std::size_t> counts;
  for (const auto& [p, a] : points) {
    if (a >= signature.size() || signature[a].dimension != source.dimension()) continue;
    auto target = image_of(map, p);
    auto key = format_path(target);
    auto& g = groups[key];
    g.target = target;
    g.labels.push_back(a);
  }
  std::vector<Fusion> out;
  for (auto& [key, g] : groups) {
    if (g.labels.size() > 1) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace anc
