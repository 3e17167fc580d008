#pragma once

#include <map>
#include <string>
#include <vector>

#include "pnet/net.hpp"

namespace pnet {

enum class CutKind { Multiplicative, AxiomCut, Evanescent, ExponentialPair, Clash, Blocked };
const char* cut_kind_name(CutKind k);

struct CutClass {
  CutKind kind = CutKind::Clash;
  int n = 0, m = 0;          // ExponentialPair: arity of the ? side, of the ! side
  bool var_right = false;    // AxiomCut: the variable is the right side
  std::string reason;        // Blocked
};

CutClass classify_cut(const Net& net, int cut);
// Multiplicative, AxiomCut, Evanescent, or ExponentialPair(n, n).
bool is_reducible(const CutClass& c);
std::vector<int> reducible_cuts(const Net& net);

enum class RedirectPolicy { FirstPremise, AnyPremise };

enum class StepKind { Identity, Multiplicative, Axiom, Evanescent, Exponential, Mixed };
const char* step_kind_name(StepKind k);
// Multiplicative or exponential cuts only (the latter behave multiplicatively).
bool is_multiplicative_step(StepKind k);

struct Redirect {
  std::string label;
  Addr from;  // in p
  Addr to;    // in q
};

struct ReductionRecord {
  StepKind kind = StepKind::Identity;
  std::vector<int> eliminated;                       // cut indices of p, ascending
  std::vector<CutKind> eliminated_kinds;             // aligned with `eliminated`
  std::map<int, std::vector<int>> residuals;         // eliminated cut -> its residual cuts in q
  std::vector<std::pair<std::string, Tree>> substitutions;  // (replaced variable, tree), in p
  std::vector<Redirect> redirects;
  std::map<int, std::vector<int>> permutations;      // exponential cut -> sigma (1-based, ? premise i meets ! premise sigma[i-1])
  std::vector<std::pair<int, int>> residual_of;      // per q cut: (eliminated p cut, premise index) or (-1, kept p cut)
  std::vector<int> q_to_p;                           // Flat(q) node -> Flat(p) node
};

struct Reduct {
  Net net;
  ReductionRecord record;
};

// Simultaneous elimination of the selected cuts. Exponential cuts fan out
// into one reduct per permutation; AnyPremise additionally fans out over
// the redirection targets of jumps into eliminated connectives.
std::vector<Reduct> parallel_reduce(const Net& net, const std::vector<int>& cuts,
                                    RedirectPolicy policy = RedirectPolicy::FirstPremise);
// Same with the variable side of every selected axiom cut given explicitly
// (cut index -> 0 left, 1 right). Throws NotReducible on an invalid choice.
std::vector<Reduct> parallel_reduce_oriented(const Net& net, const std::vector<int>& cuts,
                                             const std::map<int, int>& var_side,
                                             RedirectPolicy policy = RedirectPolicy::FirstPremise);
// Every orientation of the selected axiom cuts allowed by the variable
// conditions (circular chains are only detected by the reduction itself).
std::vector<std::map<int, int>> axiom_orientations(const Net& net, const std::vector<int>& cuts);
std::vector<Reduct> reduce_cut(const Net& net, int cut, RedirectPolicy policy = RedirectPolicy::FirstPremise);

// Reduces the selected cuts one after the other, in the given order, following
// them through the intermediate reducts (first reduct at each step).
Net sequential_reduce(const Net& net, const std::vector<int>& order);

// I^0(t) = labels jumping to t; I^{k+1} = labels jumping into an evanescent
// cut whose negative leaf is in I^k. Stops at the first empty level.
std::vector<std::vector<std::string>> jump_chain_sets(const Net& net, const Addr& t);

std::size_t evanescent_cut_count(const Net& net);

}  // namespace pnet
