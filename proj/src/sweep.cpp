#include "anc/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "anc/colimit.hpp"
#include "anc/error.hpp"
#include "anc/oracle.hpp"

namespace anc::sweep {

namespace {

using Arrows = std::vector<std::pair<std::size_t, std::size_t>>;

Arrows canonical(std::size_t n, const Arrows& arrows) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Arrows best;
  bool first = true;
  do {
    Arrows mapped;
    for (auto [s, t] : arrows) mapped.emplace_back(perm[s], perm[t]);
    std::sort(mapped.begin(), mapped.end());
    if (first || mapped < best) best = mapped;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::string describe(const DeltaDiagram& d) {
  std::ostringstream os;
  os << "sizes";
  for (auto s : d.sizes) os << " " << s;
  for (std::size_t k = 0; k < d.arrows.size(); ++k) {
    os << "; " << d.shape.arrows[k].source << "->" << d.shape.arrows[k].target << " " << to_string(d.arrows[k]);
  }
  return os.str();
}

std::string describe(const ZigzagDiagram& d, std::size_t poset_index) {
  std::ostringstream os;
  os << "poset#" << poset_index;
  for (const auto& o : d.objects) {
    const auto& z = o.zigzag();
    os << " [r" << z.regular[0].atom();
    for (std::size_t i = 0; i < z.length(); ++i) os << " s" << z.singular[i].atom() << " r" << z.regular[i + 1].atom();
    os << "]";
  }
  for (std::size_t k = 0; k < d.arrows.size(); ++k) {
    os << "; " << d.shape.arrows[k].source << "->" << d.shape.arrows[k].target << " "
       << to_string(d.arrows[k].map().sing);
  }
  return os.str();
}

void merge(Stats& into, const Stats& from) {
  into.instances += from.instances;
  into.colimits += from.colimits;
  into.no_colimit += from.no_colimit;
  into.mismatches += from.mismatches;
  into.preservation += from.preservation;
  for (const auto& e : from.examples) {
    if (into.examples.size() < 8) into.examples.push_back(e);
  }
}

void record_mismatch(Stats& s, std::string what) {
  ++s.mismatches;
  if (s.examples.size() < 8) s.examples.push_back(std::move(what));
}

// Every product of per-arrow choices, in lexicographic order.
template <class T>
void for_each_choice(const std::vector<const std::vector<T>*>& options, const std::function<void(const std::vector<T>&)>& f) {
  std::vector<T> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == options.size()) {
      f(cur);
      return;
    }
    for (const auto& x : *options[k]) {
      cur.push_back(x);
      rec(k + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::vector<DiagramShape> connected_shapes(std::size_t max_nodes, std::size_t max_arrows, bool loops) {
  std::vector<DiagramShape> out;
  for (std::size_t n = 1; n <= max_nodes; ++n) {
    Arrows pairs;
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t t = 0; t < n; ++t) {
        if (loops || s != t) pairs.emplace_back(s, t);
      }
    }
    std::set<Arrows> seen;
    // Multisets of arrows as nondecreasing index sequences.
    std::function<void(std::size_t, Arrows&)> grow = [&](std::size_t from, Arrows& cur) {
      DiagramShape shape;
      shape.nodes = n;
      for (auto [s, t] : cur) shape.add_arrow(s, t);
      if (is_connected(shape)) {
        auto key = canonical(n, cur);
        if (seen.insert(key).second) {
          DiagramShape c;
          c.nodes = n;
          for (auto [s, t] : key) c.add_arrow(s, t);
          out.push_back(c);
        }
      }
      if (cur.size() == max_arrows) return;
      for (std::size_t k = from; k < pairs.size(); ++k) {
        cur.push_back(pairs[k]);
        grow(k, cur);
        cur.pop_back();
      }
    };
    Arrows cur;
    grow(0, cur);
  }
  return out;
}

std::vector<FinitePoset> posets_up_to_iso(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) pairs.emplace_back(i, j);
    }
  }
  std::vector<FinitePoset> out;
  std::set<Arrows> seen;
  for (std::size_t bits = 0; bits < (std::size_t{1} << pairs.size()); ++bits) {
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if ((bits >> k) & 1u) leq[pairs[k].first][pairs[k].second] = true;
    }
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (i != j && leq[i][j] && leq[j][i]) ok = false;
        for (std::size_t k = 0; k < n && ok; ++k) {
          if (leq[i][j] && leq[j][k] && !leq[i][k]) ok = false;
        }
      }
    }
    if (!ok) continue;
    Arrows rel;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && leq[i][j]) rel.emplace_back(i, j);
      }
    }
    if (seen.insert(canonical(n, rel)).second) out.emplace_back(leq);
  }
  return out;
}

Stats run_delta_sweep(const DeltaSweep& config, bool parallel) {
  const auto start = std::chrono::steady_clock::now();
  struct Item {
    const DiagramShape* shape;
    std::vector<std::size_t> sizes;
  };
  const auto shapes = connected_shapes(config.max_nodes, config.max_arrows, config.loops);
  std::vector<Item> items;
  for (const auto& shape : shapes) {
    std::vector<std::size_t> sizes(shape.nodes, config.min_size);
    for (;;) {
      items.push_back({&shape, sizes});
      std::size_t k = 0;
      while (k < sizes.size() && sizes[k] == config.max_size) sizes[k++] = config.min_size;
      if (k == sizes.size()) break;
      ++sizes[k];
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Monotone>> maps;
  for (std::size_t n = config.min_size; n <= config.max_size; ++n) {
    for (std::size_t m = config.min_size; m <= config.max_size; ++m) maps[{n, m}] = oracle::monotone_maps(n, m);
  }

  Stats total;
  const long count = static_cast<long>(items.size());
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (long it = 0; it < count; ++it) {
    const Item& item = items[static_cast<std::size_t>(it)];
    Stats local;
    std::vector<const std::vector<Monotone>*> options;
    for (const auto& a : item.shape->arrows) options.push_back(&maps.at({item.sizes[a.source], item.sizes[a.target]}));
    for_each_choice<Monotone>(options, [&](const std::vector<Monotone>& arrows) {
      DeltaDiagram d{*item.shape, item.sizes, arrows};
      ++local.instances;
      std::optional<DeltaCocone> ours;
      try {
        ours = delta_colimit(d);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoColimit) throw;
      }
      const auto expected = oracle::delta_colimit_oracle(d);
      if (ours.has_value() != expected.has_value()) {
        record_mismatch(local, "verdict differs: " + describe(d));
      } else if (ours && !(*ours == *expected)) {
        record_mismatch(local, "colimit differs: " + describe(d));
      } else if (ours) {
        ++local.colimits;
        ++local.preservation;
      } else {
        ++local.no_colimit;
      }
    });
#pragma omp critical(anc_sweep_merge)
    merge(total, local);
  }
  total.seconds = elapsed(start);
  return total;
}

Stats run_zigzag_sweep(const ZigzagSweep& config, bool parallel) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<FinitePoset> posets;
  for (std::size_t n = 1; n <= config.max_poset; ++n) {
    for (auto& p : posets_up_to_iso(n)) posets.push_back(std::move(p));
  }
  const auto shapes = connected_shapes(config.max_nodes, config.max_arrows, config.loops);

  // One work item per (poset, boundary pair); objects there share endpoints.
  struct Item {
    std::size_t poset;
    Atom a, b;
  };
  std::vector<Item> items;
  for (std::size_t p = 0; p < posets.size(); ++p) {
    for (Atom a = 0; a < posets[p].size(); ++a) {
      for (Atom b = 0; b < posets[p].size(); ++b) items.push_back({p, a, b});
    }
  }

  Stats total;
  const long count = static_cast<long>(items.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (long it = 0; it < count; ++it) {
    const Item& item = items[static_cast<std::size_t>(it)];
    const FinitePoset& poset = posets[item.poset];
    Stats local;
    const auto objects = oracle::zigzags_between(poset, item.a, item.b, config.max_length);
    if (objects.empty()) continue;
    oracle::ZigzagOracle judge(poset, item.a, item.b, config.max_apex);
    std::vector<std::vector<std::vector<Morphism>>> maps(objects.size(), std::vector<std::vector<Morphism>>(objects.size()));
    for (std::size_t x = 0; x < objects.size(); ++x) {
      for (std::size_t y = 0; y < objects.size(); ++y) {
        for (const auto& u : oracle::zigzag_maps(poset, objects[x], objects[y])) {
          std::vector<Morphism> slices;
          for (std::size_t i = 0; i < u.source_size(); ++i) {
            slices.push_back(Morphism::arrow(objects[x].zigzag().singular[i].atom(),
                                             objects[y].zigzag().singular[u(i)].atom()));
          }
          maps[x][y].emplace_back(ZigzagMap{objects[x], objects[y], u, std::move(slices)});
        }
      }
    }
    for (const auto& shape : shapes) {
      std::vector<std::size_t> pick(shape.nodes, 0);
      for (;;) {
        std::vector<const std::vector<Morphism>*> options;
        for (const auto& a : shape.arrows) options.push_back(&maps[pick[a.source]][pick[a.target]]);
        for_each_choice<Morphism>(options, [&](const std::vector<Morphism>& arrows) {
          ZigzagDiagram d{shape, {}, arrows};
          for (auto k : pick) d.objects.push_back(objects[k]);
          ++local.instances;
          std::optional<Cocone> ours;
          ZigzagColimitTrace trace;
          try {
            ours = zigzag_colimit(poset, d, {}, &trace);
          } catch (const Error& e) {
            if (e.code() != ErrorCode::DeltaColimitFailed && e.code() != ErrorCode::BaseColimitFailed) throw;
          }
          const auto expected = judge.colimit(d);
          if (ours.has_value() != expected.has_value()) {
            record_mismatch(local, std::string("verdict differs (") + (ours ? "ours" : "oracle") +
                                       " found one): " + describe(d, item.poset));
            return;
          }
          if (!ours) {
            ++local.no_colimit;
            return;
          }
          bool same = ours->apex == expected->apex;
          for (std::size_t j = 0; j < d.shape.nodes && same; ++j) same = ours->legs[j].map().sing == expected->legs[j];
          if (!same) {
            record_mismatch(local, "colimit differs: " + describe(d, item.poset));
            return;
          }
          ++local.colimits;
          bool preserved = true;
          for (std::size_t j = 0; j < d.shape.nodes; ++j) {
            preserved = preserved && ours->legs[j].map().sing == trace.delta.legs[j];
          }
          if (preserved) ++local.preservation;
        });
        std::size_t k = 0;
        while (k < pick.size() && pick[k] + 1 == objects.size()) pick[k++] = 0;
        if (k == pick.size()) break;
        ++pick[k];
      }
    }
#pragma omp critical(anc_sweep_merge)
    merge(total, local);
  }
  total.seconds = elapsed(start);
  return total;
}

std::string summary(const Stats& s) {
  std::ostringstream os;
  os << s.instances << " instances, " << s.colimits << " colimits, " << s.no_colimit << " without, " << s.mismatches
     << " mismatches, " << s.preservation << " preserved, " << s.seconds << " s";
  return os.str();
}

}  // namespace anc::sweep
