#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "pnet/net.hpp"

namespace pnet {

// A choice of premise (1-based) for each par/quest node, listed in address
// order.
struct Switching {
  std::vector<int> nodes;
  std::vector<int> choice;

  int choice_for(int node) const;
};

enum class EdgeKind : std::uint8_t { Axiom, Tensor, Par, Jump, Cut, Box };
const char* edge_kind_name(EdgeKind k);

// a/b are Flat node ids. Tensor/Par: a = parent, b = child. Jump: a = leaf,
// b = target. Axiom/Cut/Box: a < b.
struct Edge {
  EdgeKind kind;
  int a, b;
  auto operator<=>(const Edge&) const = default;
  bool operator==(const Edge&) const = default;
  int other(int v) const { return v == a ? b : a; }
};

struct SwitchingGraph {
  int vertices = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbour, edge index)
};

// Edges present whatever the switching, plus every premise edge of every
// par/quest node (the union over all switchings).
SwitchingGraph union_graph(const Flat& f);
SwitchingGraph switching_graph(const Flat& f, const Switching& s);

std::size_t switching_count(const Flat& f, std::size_t cap = static_cast<std::size_t>(-1));
Switching first_switching(const Flat& f);
bool next_switching(const Flat& f, Switching& s);
std::vector<Switching> switchings(const Net& net);
void for_each_switching(const Flat& f, const std::function<bool(const Switching&)>& visit);

struct Path {
  std::vector<int> verts;  // verts.size() == edges.size() + 1
  std::vector<Edge> edges;

  std::size_t length() const { return edges.size(); }
  Path reversed() const;
  bool operator==(const Path&) const = default;
};

// Trail check: consecutive, pairwise distinct edges, each present in g.
bool is_trail(const SwitchingGraph& g, const Path& p);
// Same, against the union graph, additionally requiring at most one premise
// edge per switched node; fills the implied switching (unconstrained nodes
// get premise 1).
bool is_path_of_net(const Flat& f, const Path& p, Switching* implied = nullptr);

struct AcyclicResult {
  bool acyclic = true;
  Path cycle;
  Switching switching;
};
AcyclicResult is_acyclic(const Net& net);
AcyclicResult is_acyclic(const Flat& f);

struct LengthResult {
  std::size_t ln = 0;
  Path witness;
  Switching switching;
};

// Picks the forest method on acyclic nets with few switchings, the trail
// search otherwise.
LengthResult max_path_length(const Net& net);
LengthResult max_path_length(const Flat& f);
// Longest path per switching via double-sweep diameter; requires acyclicity.
LengthResult max_path_length_forest(const Flat& f);
// Longest trail over the union graph with one premise edge per switched node.
LengthResult max_path_length_trails(const Flat& f);

// Every trail under s (including empty ones), each once up to reversal.
std::vector<Path> enumerate_trails(const Flat& f, const Switching& s, std::optional<int> from = std::nullopt,
                                   std::size_t edge_cap = 64);

// Brute-force maximum over all switchings via enumerate_trails.
std::size_t max_trail_by_enumeration(const Flat& f, std::size_t edge_cap = 64);

}  // namespace pnet
