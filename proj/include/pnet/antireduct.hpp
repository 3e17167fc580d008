#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "pnet/net.hpp"
#include "pnet/reduce.hpp"

namespace pnet {

struct SearchOptions {
  std::size_t size_cap = 0;                 // 0: only the derived size budget applies
  std::size_t candidate_cap = 2'000'000;    // visited candidates before BudgetOverflow
  bool refuse_cyclic_target = true;         // throw CyclicTarget; otherwise search and refuse cyclic candidates
  RedirectPolicy policy = RedirectPolicy::AnyPremise;
};

struct LevelStats {
  std::size_t visited = 0;         // candidate nets built
  std::size_t refused_cyclic = 0;
  std::size_t over_caps = 0;       // pruned by ln, jd or size
  std::size_t rejected = 0;        // failed forward verification
  std::size_t found = 0;
  std::size_t ln_cap = 0;
  std::size_t jd_cap = 0;
  std::size_t size_limit = 0;
  mpz_class size_budget;           // derived from the size bound
};

struct AntireductSet {
  std::vector<Net> nets;           // canonical representatives, sorted by key
  std::vector<std::string> keys;
  std::vector<LevelStats> levels;  // one per step, nearest to the target first
  std::size_t visited() const;
  bool contains(const Net& p) const;
};

// {p | p ->> q, ln(p) <= n, jd(p) <= m, p acyclic}, built by inverse moves
// (grouping cuts under fresh connectives, splicing axiom cuts, grafting
// evanescent cuts) and forward-verified.
AntireductSet antireducts_one_step(const Net& q, std::size_t n, int m, const SearchOptions& opts = {});
// k steps; intermediate levels use the caps implied on reducts of p.
AntireductSet antireducts(const Net& q, int k, std::size_t n, int m, const SearchOptions& opts = {});

struct OracleOptions {
  int vars = 2;                  // variable pairs
  int labels = 2;                // unit leaves
  std::size_t size_cap = 8;
  std::size_t candidate_cap = 50'000'000;
  RedirectPolicy policy = RedirectPolicy::AnyPremise;
};

// Every net within the alphabet and size caps that is acyclic, meets the ln
// and jd caps and reduces to q in k steps. Throws CapExceeded past the cap.
AntireductSet brute_force_antireducts(const Net& q, int k, std::size_t n, int m, const OracleOptions& opts = {});

// Canonical keys of every one-step reduct of p (identity included).
std::set<std::string> one_step_reducts(const Net& p, RedirectPolicy policy = RedirectPolicy::AnyPremise);
// p ->>^k q, identity steps allowed.
bool reduces_to(const Net& p, const Net& q, int k, RedirectPolicy policy = RedirectPolicy::AnyPremise);
bool within_alphabet(const Net& p, int vars, int labels);

}  // namespace pnet
