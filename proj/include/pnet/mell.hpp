#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pnet/net.hpp"
#include "pnet/switching.hpp"

namespace pnet {

struct Box;

// A pre-net with promotion boxes. Ports `port(b,i)` of the surface net refer
// to `boxes`; a box content's first conclusion is the principal door (port 0),
// the remaining ones the auxiliary doors 1..arity.
struct MellNet {
  std::vector<Box> boxes;
  Net net;
};

struct Box {
  std::string id;
  int arity = 0;
  MellNet content;
};

std::vector<Issue> validate_mell(const MellNet& m);
void require_valid_mell(const MellNet& m);

struct MellMeasures {
  std::size_t tlsize = 0;
  std::size_t size = 0;
  std::size_t depth = 0;
};
MellMeasures mell_measures(const MellNet& m);

// Surface acyclicity (boxes act as axiom bundles around port 0), recursively
// for every box content.
bool mell_acyclic(const MellNet& m);

std::string mell_canonical_key(const MellNet& m, CanonMode mode = CanonMode::Ordered);
bool mell_alpha_equal(const MellNet& a, const MellNet& b, CanonMode mode = CanonMode::Ordered);

// One family of resource trees per door: families[0] feeds the principal port,
// families[i] the auxiliary port i.
struct BoxReplacement {
  std::vector<std::vector<Tree>> families;
};

// Substitution of replacements for the ports of a (pre-)tree. Returns a single
// tree for trees; an auxiliary port at the root yields its whole family.
// Fresh coweakenings are named "cw_<box>", fresh weakenings "wk_<tag>_<path>".
std::vector<Tree> box_substitute(const Tree& target, const std::map<std::string, BoxReplacement>& r,
                                 const std::string& tag = "t");

enum class JumpPolicy { Deterministic, Exhaustive };

// Where a node of an expansion comes from: the chain of box copies it sits in
// (outermost first, copies numbered from 1) and the subtree of the
// corresponding content whose image it is. `door` is set on roots of the
// outermost copy's conclusions (0 principal, i auxiliary).
struct NodeOrigin {
  std::vector<std::pair<std::string, int>> copies;
  Addr origin;
  int door = -1;
};

struct TaylorElement {
  Net net;
  std::vector<int> attribution;          // conclusion of net -> conclusion of P
  std::vector<NodeOrigin> provenance;    // indexed by Flat(net) node id
  std::string copies;                    // copy tree, e.g. "b:2[b2:0,b2:1]"
};

// All expansions using at most `budget` copies of every box occurrence,
// deduplicated up to alpha-equivalence with unordered !/? premises.
std::vector<TaylorElement> taylor_expand(const MellNet& p, int budget, JumpPolicy policy = JumpPolicy::Deterministic);

struct TaylorBoundReport {
  bool acyclic = true;
  std::size_t ln = 0;
  int jd = 0;
  std::size_t ln_bound = 0;  // 2^depth * size
  std::size_t jd_bound = 0;  // size
  bool ok() const { return acyclic && ln <= ln_bound && static_cast<std::size_t>(jd) <= jd_bound; }
};
TaylorBoundReport taylor_bound_check(const TaylorElement& e, const MellNet& p);

struct UntaylorResult {
  Path path;                                      // in Flat(p.net)
  bool valid = false;                             // path of the surface net of P
  std::vector<std::pair<std::string, int>> visits;  // box copies crossed, in order
  std::map<std::string, int> census;              // box -> number of box paths
  bool census_ok = false;  // <= 2 per box; a double visit is consecutive, meets at the
                           // cocontraction and uses distinct copies
};
// Maps a path of an expansion back to the surface of P.
UntaylorResult untaylor_path(const TaylorElement& e, const MellNet& p, const Path& xi);

}  // namespace pnet
