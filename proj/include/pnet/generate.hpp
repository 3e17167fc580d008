#pragma once

#include <cstdint>
#include <random>

#include "pnet/mell.hpp"
#include "pnet/net.hpp"

namespace pnet {

using Rng = std::mt19937_64;

struct GenConfig {
  int steps = 10;        // construction steps
  int max_arity = 3;
  bool exponentials = true;
  bool units = true;     // 1/bot and !0/?0 leaves
  int redex_weight = 3;  // relative weight of steps that create reducible cuts
};

// Random net built by sequent-style rules (axioms, units, tensor across
// components, par inside a component, cuts across components, jumps inside
// a component), hence acyclic. Cuts and conclusions are shuffled.
Net random_net(Rng& rng, const GenConfig& cfg = {});

struct MellGenConfig {
  int steps = 5;
  int content_steps = 3;  // steps inside each box content
  int max_arity = 2;
  int redex_weight = 2;
  int box_weight = 3;
  std::size_t max_depth = 2;
  std::size_t max_size = 20;
  bool require_box = true;
};

// Random MELL net built the same way, boxes acting as axiom bundles whose
// auxiliary ports only go below quests. Resamples until the size, depth,
// validity and acyclicity limits hold.
MellNet random_mell(Rng& rng, const MellGenConfig& cfg = {});

// Cut indices of one reducible kind, chosen at random (possibly empty).
std::vector<int> random_pure_selection(Rng& rng, const Net& net);
// Any subset of the reducible cuts.
std::vector<int> random_selection(Rng& rng, const Net& net);

}  // namespace pnet
