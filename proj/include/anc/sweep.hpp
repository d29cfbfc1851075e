#pragma once

// Exhaustive comparisons of the colimit procedures against the oracles. Each
// sweep has one loop body; `parallel` only toggles the OpenMP pragma, so the
// serial run is the reference for the parallel one.

#include <string>
#include <vector>

#include "anc/category.hpp"
#include "anc/shape.hpp"

namespace anc::sweep {

// Connected shapes up to relabelling of nodes, arrows sorted.
std::vector<DiagramShape> connected_shapes(std::size_t max_nodes, std::size_t max_arrows, bool loops);

// Partial orders on n elements up to isomorphism.
std::vector<FinitePoset> posets_up_to_iso(std::size_t n);

struct Stats {
  std::size_t instances = 0;
  std::size_t colimits = 0;       // both sides found a colimit
  std::size_t no_colimit = 0;     // both sides found none
  std::size_t mismatches = 0;     // verdict or colimit differs
  std::size_t preservation = 0;   // colimits whose leg sing maps equal the Δ legs
  std::vector<std::string> examples;  // first few mismatches
  double seconds = 0;

  bool operator==(const Stats& o) const {
    return instances == o.instances && colimits == o.colimits && no_colimit == o.no_colimit &&
           mismatches == o.mismatches && preservation == o.preservation;
  }
};

struct DeltaSweep {
  std::size_t max_nodes = 3;
  std::size_t max_arrows = 3;
  std::size_t min_size = 0;
  std::size_t max_size = 4;
  bool loops = true;
};

Stats run_delta_sweep(const DeltaSweep& config, bool parallel);

struct ZigzagSweep {
  std::size_t max_poset = 4;
  std::size_t max_nodes = 3;
  std::size_t max_arrows = 2;
  std::size_t max_length = 2;
  std::size_t max_apex = 4;
  bool loops = false;
};

Stats run_zigzag_sweep(const ZigzagSweep& config, bool parallel);

std::string summary(const Stats& s);

}  // namespace anc::sweep
