#include <gtest/gtest.h>

#include "oracle.hpp"
#include "pnet/antireduct.hpp"
#include "pnet/reduce.hpp"
#include "pnet/switching.hpp"
#include "pnet/syntax.hpp"

using namespace pnet;

namespace {

struct Instance {
  const char* q;
  int k;
  std::size_t n;
  int m;
  std::size_t cap;
};

// Tiny instances over the 2-variable/2-label alphabet.
const Instance kInstances[] = {
    {"(; x, x*)", 1, 4, 0, 6},
    {"(; x, x*)", 1, 8, 1, 6},
    {"(; x, x*)", 1, 8, 2, 8},
    {"(<x|y>; x*, y*)", 1, 8, 1, 8},
    {"(; 1@l)", 1, 4, 1, 8},
    {"(;)", 1, 4, 2, 6},
    {"(; bot@m, 1@l) jumps { m -> t2 }", 1, 6, 1, 8},
    {"(; bot@m, 1@l) jumps { m -> t2 }", 2, 8, 2, 8},
    {"(; x, x*)", 2, 8, 1, 8},
    {"(; x, x*)", 2, 8, 2, 8},
    {"(; tensor(x, y), par(x*, y*))", 1, 8, 1, 8},
    {"(<x|y*>; x*, y)", 2, 8, 1, 8},
    {"(; quest(x), bang(x*))", 1, 8, 1, 8},
};

SearchOptions capped(std::size_t cap) {
  SearchOptions o;
  o.size_cap = cap;
  return o;
}

OracleOptions oracle_capped(std::size_t cap) {
  OracleOptions o;
  o.size_cap = cap;
  return o;
}

// Keys of the engine's nets that the oracle can see.
std::vector<std::string> in_oracle_alphabet(const AntireductSet& a) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < a.nets.size(); ++i)
    if (within_alphabet(a.nets[i], 2, 2)) out.push_back(a.keys[i]);
  return out;
}

void expect_sound(const AntireductSet& set, const Net& q, int k, std::size_t n, int m) {
  for (const auto& p : set.nets) {
    EXPECT_TRUE(reduces_to(p, q, k)) << print_net(p);
    EXPECT_TRUE(oracle::acyclic(p)) << print_net(p);
    EXPECT_LE(oracle::ln(p), n) << print_net(p);
    EXPECT_LE(jump_degree(p).max, m) << print_net(p);
  }
}

}  // namespace

TEST(Antireducts, ZeroStepsGiveTheTarget) {
  for (const char* s : {"(; x, x*)", "(;)", "(<x|y>; x*, y*)"}) {
    Net q = parse_net(s);
    AntireductSet a = antireducts(q, 0, 0, 0);
    ASSERT_EQ(a.nets.size(), 1u);
    EXPECT_TRUE(alpha_equal(a.nets[0], q));
    AntireductSet o = brute_force_antireducts(q, 0, 0, 0);
    ASSERT_EQ(o.nets.size(), 1u);
    EXPECT_TRUE(o.contains(q));
  }
}

TEST(Antireducts, OneStepMatchesSingleLevelSearch) {
  for (const char* s : {"(; x, x*)", "(; bot@m, 1@l) jumps { m -> t2 }", "(<x|y>; x*, y*)"}) {
    Net q = parse_net(s);
    EXPECT_EQ(antireducts(q, 1, 6, 1, capped(8)).keys, antireducts_one_step(q, 6, 1, capped(8)).keys) << s;
  }
}

TEST(Antireducts, SingleAxiomContainsOneSplice) {
  Net q = parse_net("(; x, x*)");
  AntireductSet a = antireducts_one_step(q, 4, 0);
  EXPECT_TRUE(a.contains(q));
  EXPECT_TRUE(a.contains(parse_net("(<y|x>; y*, x*)")));
  expect_sound(a, q, 1, 4, 0);
}

TEST(Antireducts, AxiomChainsCountClosedForm) {
  // A chain of L axiom cuts has ln 2L + 1, so L ranges over 0..(n-1)/2.
  Net q = parse_net("(; x, x*)");
  for (std::size_t n = 0; n <= 11; ++n) {
    AntireductSet a = antireducts_one_step(q, n, 0);
    std::size_t want = n == 0 ? 0 : (n + 1) / 2;
    EXPECT_EQ(a.nets.size(), want) << "n = " << n;
    for (const auto& p : a.nets) EXPECT_EQ(p.cuts.size() * 2 + 1, oracle::ln(p));
  }
}

TEST(Antireducts, NoPathBudgetLeavesTheTarget) {
  Net q = parse_net("(; 1@l)");
  AntireductSet a = antireducts_one_step(q, 0, 0);
  ASSERT_EQ(a.nets.size(), 1u);
  EXPECT_TRUE(alpha_equal(a.nets[0], q));
  // A target with a path of length 1 already exceeds a zero cap.
  EXPECT_TRUE(antireducts_one_step(parse_net("(; x, x*)"), 0, 0).nets.empty());
}

TEST(Antireducts, EmptyNetHasNoSelfJumpingEvanescentAntireduct) {
  Net q = parse_net("(;)");
  Net self = parse_net("(<1@l | bot@m>;) jumps { m -> c1.L }");
  EXPECT_EQ(classify_cut(self, 0).kind, CutKind::Blocked);
  AntireductSet a = antireducts(q, 1, 4, 2, capped(6));
  AntireductSet o = brute_force_antireducts(q, 1, 4, 2, oracle_capped(6));
  EXPECT_EQ(in_oracle_alphabet(a), o.keys);
  EXPECT_FALSE(a.contains(self));
  for (const auto& p : a.nets) EXPECT_TRUE(p.cuts.empty()) << print_net(p);
}

TEST(Antireducts, AgreesWithBruteForceOracle) {
  for (const auto& in : kInstances) {
    Net q = parse_net(in.q);
    AntireductSet a = antireducts(q, in.k, in.n, in.m, capped(in.cap));
    AntireductSet o = brute_force_antireducts(q, in.k, in.n, in.m, oracle_capped(in.cap));
    EXPECT_EQ(in_oracle_alphabet(a), o.keys) << in.q << " k=" << in.k << " n=" << in.n << " m=" << in.m;
    EXPECT_FALSE(a.nets.empty()) << in.q;
    EXPECT_GT(a.visited(), 0u);
    EXPECT_EQ(a.levels.size(), static_cast<std::size_t>(in.k));
    expect_sound(a, q, in.k, in.n, in.m);
    for (const auto& p : a.nets) EXPECT_LE(size(p), in.cap);
  }
}

TEST(Antireducts, CyclicTargetIsRefused) {
  Net q = parse_net("(<x0|x0*>;)");
  EXPECT_FALSE(is_acyclic(q).acyclic);
  try {
    antireducts(q, 1, 8, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CyclicTarget);
  }
}

TEST(Antireducts, CyclicTargetSearchIsFiniteAndEmpty) {
  Net q = parse_net("(<x0|x0*>;)");
  SearchOptions o = capped(8);
  o.refuse_cyclic_target = false;
  for (int k = 1; k <= 2; ++k)
    for (std::size_t n : {2u, 4u, 8u})
      for (int m = 0; m <= 2; ++m) {
        AntireductSet a = antireducts(q, k, n, m, o);
        EXPECT_TRUE(a.nets.empty());
        EXPECT_GT(a.visited(), 0u);
        std::size_t refused = 0;
        for (const auto& l : a.levels) refused += l.refused_cyclic;
        EXPECT_GT(refused, 0u);
      }
  EXPECT_TRUE(brute_force_antireducts(q, 2, 8, 2, oracle_capped(8)).nets.empty());
}

TEST(Antireducts, BudgetsAreReported) {
  Net q = parse_net("(; x, x*)");
  SearchOptions o;
  o.candidate_cap = 1;
  try {
    antireducts(q, 1, 9, 1, o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BudgetOverflow);
  }
  OracleOptions oo;
  oo.candidate_cap = 1;
  try {
    brute_force_antireducts(q, 1, 8, 1, oo);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CapExceeded);
  }
  AntireductSet a = antireducts(q, 1, 6, 1);
  ASSERT_EQ(a.levels.size(), 1u);
  EXPECT_GT(a.levels[0].size_budget, 0);
  EXPECT_GE(a.levels[0].visited, a.levels[0].found);
}

TEST(ReducesTo, ForwardCheck) {
  Net p0 = parse_net(
      "( <par(x, x*) | tensor(1@l1, y)>, <y* | bot@m3>, <1@l2 | bot@m4> ; bot@m1, bot@m2, 1@l3 ) "
      "jumps { m1 -> c1.L, m2 -> c2.L, m3 -> c3.L, m4 -> t3 }");
  Net p1 = parse_net("( <x | 1@l1>, <x* | bot@m3> ; bot@m1, bot@m2, 1@l3 ) jumps { m1 -> c1.L, m2 -> c2.R, m3 -> t3 }");
  EXPECT_TRUE(reduces_to(p0, p1, 1));
  EXPECT_TRUE(reduces_to(p0, p0, 0));
  EXPECT_FALSE(reduces_to(p0, p1, 0));
  EXPECT_TRUE(one_step_reducts(p0).count(canonical_key(p1)));
  EXPECT_TRUE(within_alphabet(parse_net("(<x|y>; x*, y*)"), 2, 2));
  EXPECT_FALSE(within_alphabet(parse_net("(<x|y>, <z|z*>; x*, y*)"), 2, 2));
}
