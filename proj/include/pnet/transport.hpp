#pragma once

#include <cstddef>
#include <vector>

#include "pnet/net.hpp"
#include "pnet/reduce.hpp"
#include "pnet/switching.hpp"

namespace pnet {

// Paths of q are given over Flat(q); transported paths live in Flat(p).
// All operations require a multiplicative (or exponential, or identity)
// step p ->> q and throw NotMultiplicativeStep otherwise.

struct Decomposition {
  // n + 1 straight segments around n maximal slipknots; a segment may be
  // empty (a single vertex).
  std::vector<Path> straights;
  std::vector<Path> slipknots;
  std::vector<int> cuts;  // eliminated cut of p behind each slipknot
  std::vector<std::pair<std::size_t, std::size_t>> spans;  // [first, last] edge position of each slipknot
  // Residual crossings inside straight segments: (edge position, eliminated cut).
  std::vector<std::pair<std::size_t, int>> crossings;
};

enum class ConnectorKind { Bridge, Bounce };

// A path of p bound to one eliminated cut: a bridge replaces a residual
// crossing, a bounce replaces a maximal slipknot.
struct Connector {
  ConnectorKind kind;
  int cut = -1;
  Path path;
};

struct Transported {
  Path path;  // chi- in Flat(p)
  Decomposition decomposition;
  std::vector<Connector> connectors;
  bool valid = false;  // chi- is a path of p
  Switching switching;  // switching of p implied by chi- (when valid)
};

Decomposition decompose(const Net& p, const Net& q, const ReductionRecord& rec, const Path& chi);
Transported transport(const Net& p, const Net& q, const ReductionRecord& rec, const Path& chi);
// Maximum of ln(zeta-) over the prefixes zeta of chi.
std::size_t width(const Net& p, const Net& q, const ReductionRecord& rec, const Path& chi);

// Subpath of chi made of the edges at positions [begin, end).
Path subpath(const Path& chi, std::size_t begin, std::size_t end);

}  // namespace pnet
