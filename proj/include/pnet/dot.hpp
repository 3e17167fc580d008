#pragma once

#include <string>

#include "pnet/mell.hpp"
#include "pnet/net.hpp"

namespace pnet {

// Graphviz text: one node per subtree, solid tree/axiom/cut/box edges,
// dashed jumps. Node ids are subtree addresses.
std::string export_dot(const Net& net);
// Box contents become nested clusters holding one node for the box itself.
std::string export_dot(const MellNet& m);

}  // namespace pnet
