#include <gtest/gtest.h>

#include <set>

#include "oracle.hpp"
#include "pnet/generate.hpp"
#include "pnet/switching.hpp"
#include "pnet/syntax.hpp"

using namespace pnet;

namespace {

const char* kP0 =
    "( <par(x, x*) | tensor(1@l1, y)>, <y* | bot@m3>, <1@l2 | bot@m4> ; bot@m1, bot@m2, 1@l3 ) "
    "jumps { m1 -> c1.L, m2 -> c2.L, m3 -> c3.L, m4 -> t3 }";
const char* kPathNet = "(; tensor(x, y), par(y*, x*))";

// <tensor(x0..xn) | par(x1*..xn*, x0*)>
Net cycle1(int n) {
  std::string t = "tensor(", p = "par(";
  for (int i = 0; i <= n; ++i) t += (i ? ", x" : "x") + std::to_string(i);
  for (int i = 1; i <= n; ++i) p += "x" + std::to_string(i) + "*, ";
  return parse_net("( <" + t + ") | " + p + "x0*)> ; )");
}

// <x0|x1*>, ..., <xn|x0*>
Net cycle1_reduct(int n) {
  std::string s = "( ";
  for (int i = 0; i <= n; ++i)
    s += (i ? ", <x" : "<x") + std::to_string(i) + " | x" + std::to_string((i + 1) % (n + 1)) + "*>";
  return parse_net(s + " ; )");
}

std::size_t census(const Net& net) {
  Flat f(net);
  std::size_t axioms = 0, n = net.cuts.size();
  for (const auto& nd : f.nodes) {
    if (nd.kind == Kind::Var && nd.name.back() == '*') ++axioms;
    if (nd.kind == Kind::Tensor || nd.kind == Kind::Bang) n += nd.kids.size();
    if (nd.kind == Kind::Par || nd.kind == Kind::Quest) ++n;
    if (nd.kind == Kind::Bot || nd.kind == Kind::Weak) ++n;
  }
  return axioms + n;
}

Switching with_choice(const Flat& f, int choice) {
  Switching s = first_switching(f);
  for (auto& c : s.choice) c = choice;
  return s;
}

}  // namespace

TEST(Switchings, ProductOfArities) {
  EXPECT_EQ(switchings(parse_net(kPathNet)).size(), 2u);
  EXPECT_EQ(switchings(parse_net("(; tensor(x, y), x*, y*)")).size(), 1u);
  EXPECT_TRUE(switchings(parse_net("(; tensor(x, y), x*, y*)"))[0].nodes.empty());
  EXPECT_EQ(switchings(parse_net("(; par(x, y), par(x*, y*))")).size(), 4u);
}

TEST(Switchings, OrderIsLexicographic) {
  auto all = switchings(parse_net("(; par(x, y), par(x*, y*, z), z*)"));
  ASSERT_EQ(all.size(), 6u);
  for (std::size_t i = 1; i < all.size(); ++i) {
    std::vector<int> a(all[i - 1].choice.rbegin(), all[i - 1].choice.rend());
    std::vector<int> b(all[i].choice.rbegin(), all[i].choice.rend());
    EXPECT_NE(a, b);
  }
  std::set<std::vector<int>> distinct;
  for (const auto& s : all) distinct.insert(s.choice);
  EXPECT_EQ(distinct.size(), 6u);
}

TEST(SwitchingGraph, SingleAxiom) {
  Flat f(parse_net("(; x, x*)"));
  auto g = switching_graph(f, first_switching(f));
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0].kind, EdgeKind::Axiom);
}

TEST(SwitchingGraph, TensorParPathWithSecondPremise) {
  Flat f(parse_net(kPathNet));
  auto g = switching_graph(f, with_choice(f, 2));
  EXPECT_EQ(g.edges.size(), 5u);
  int axioms = 0, tensors = 0, pars = 0;
  for (const auto& e : g.edges) {
    axioms += e.kind == EdgeKind::Axiom;
    tensors += e.kind == EdgeKind::Tensor;
    if (e.kind == EdgeKind::Par) {
      ++pars;
      EXPECT_EQ(f.nodes[static_cast<std::size_t>(e.b)].name, "x*");
    }
  }
  EXPECT_EQ(axioms, 2);
  EXPECT_EQ(tensors, 2);
  EXPECT_EQ(pars, 1);
}

TEST(SwitchingGraph, RunningExampleHasTwelveEdgesPerSwitching) {
  Net p0 = parse_net(kP0);
  Flat f(p0);
  for (const auto& s : switchings(p0)) EXPECT_EQ(switching_graph(f, s).edges.size(), 12u);
  EXPECT_EQ(census(p0), 12u);
  EXPECT_EQ(oracle::edges_per_switching(p0), 12u);
}

TEST(SwitchingGraph, EdgeCensusRule) {
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    Net p = random_net(rng);
    Flat f(p);
    std::size_t want = census(p);
    Switching s = first_switching(f);
    do {
      EXPECT_EQ(switching_graph(f, s).edges.size(), want);
    } while (next_switching(f, s));
  }
}

TEST(Acyclic, Examples) {
  EXPECT_TRUE(is_acyclic(parse_net(kP0)).acyclic);
  EXPECT_TRUE(is_acyclic(parse_net("(; x, x*)")).acyclic);
  AcyclicResult r = is_acyclic(cycle1(2));
  ASSERT_FALSE(r.acyclic);
  EXPECT_EQ(r.cycle.length(), 4u);
  EXPECT_EQ(r.cycle.verts.front(), r.cycle.verts.back());
  Flat f(cycle1(2));
  EXPECT_TRUE(is_trail(switching_graph(f, r.switching), r.cycle));
}

TEST(Acyclic, AgreesWithOracle) {
  Rng rng(23);
  for (int i = 0; i < 150; ++i) {
    Net p = random_net(rng);
    EXPECT_EQ(is_acyclic(p).acyclic, oracle::acyclic(p));
  }
  for (int n = 0; n <= 4; ++n) {
    EXPECT_EQ(is_acyclic(cycle1(n)).acyclic, oracle::acyclic(cycle1(n)));
    EXPECT_EQ(is_acyclic(cycle1_reduct(n)).acyclic, oracle::acyclic(cycle1_reduct(n)));
  }
}

TEST(PathLength, SingleAxiom) { EXPECT_EQ(max_path_length(parse_net("(; x, x*)")).ln, 1u); }

TEST(PathLength, CyclicExampleAgreesWithTrailOracle) {
  for (int n = 1; n <= 6; ++n) {
    Net p = cycle1(n);
    EXPECT_EQ(max_path_length(p).ln, oracle::ln(p)) << "n = " << n;
  }
  EXPECT_EQ(max_path_length(cycle1(1)).ln, 6u);
}

TEST(PathLength, CyclicReductGrowsLinearly) {
  for (int n = 0; n <= 6; ++n) {
    Net q = cycle1_reduct(n);
    EXPECT_EQ(max_path_length(q).ln, 2u * static_cast<std::size_t>(n + 1));
    EXPECT_EQ(oracle::ln(q), 2u * static_cast<std::size_t>(n + 1));
  }
}

TEST(PathLength, WitnessIsAPath) {
  Rng rng(29);
  for (int i = 0; i < 100; ++i) {
    Net p = random_net(rng);
    Flat f(p);
    LengthResult r = max_path_length(p);
    EXPECT_EQ(r.witness.length(), r.ln);
    EXPECT_TRUE(is_trail(switching_graph(f, r.switching), r.witness));
  }
}

TEST(PathLength, ForestMethodMatchesOracleAndEnumeration) {
  Rng rng(31);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    Net p = random_net(rng);
    Flat f(p);
    if (union_graph(f).edges.size() > 20) continue;
    ++checked;
    std::size_t forest = max_path_length_forest(f).ln;
    EXPECT_EQ(forest, oracle::ln(p)) << print_net(p);
    EXPECT_EQ(forest, max_trail_by_enumeration(f));
  }
  EXPECT_GT(checked, 100);
}

TEST(Trails, SingleAxiom) {
  Flat f(parse_net("(; x, x*)"));
  auto trails = enumerate_trails(f, first_switching(f));
  ASSERT_EQ(trails.size(), 3u);
  std::size_t empty = 0;
  for (const auto& t : trails) empty += t.length() == 0;
  EXPECT_EQ(empty, 2u);
}

TEST(Trails, TensorParPathContainsMaximalPath) {
  Net n = parse_net(kPathNet);
  Flat f(n);
  auto trails = enumerate_trails(f, with_choice(f, 2));
  // par ~ x* ~ x ~ tensor ~ y ~ y*
  std::vector<std::string> want{"par", "x*", "x", "tensor", "y", "y*"};
  bool found = false;
  for (const auto& t : trails) {
    if (t.length() != 5) continue;
    for (const Path& c : {t, t.reversed()}) {
      std::vector<std::string> got;
      for (int v : c.verts) {
        const auto& nd = f.nodes[static_cast<std::size_t>(v)];
        got.push_back(nd.kind == Kind::Var ? nd.name : kind_name(nd.kind));
      }
      found = found || got == want;
    }
  }
  EXPECT_TRUE(found);
}

TEST(Trails, CountAgreesWithIndependentRecount) {
  for (Net p : {cycle1(1), parse_net(kPathNet), parse_net(kP0)}) {
    Flat f(p);
    oracle::Graph g = oracle::build(p);
    std::vector<std::size_t> want;
    oracle::for_each_switching_graph(g, [&](const auto& edges) { want.push_back(oracle::count_trails(g.verts.size(), edges)); });
    std::vector<std::size_t> got;
    Switching s = first_switching(f);
    do got.push_back(enumerate_trails(f, s).size());
    while (next_switching(f, s));
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, want) << print_net(p);
  }
}

TEST(Trails, ReversalAndCap) {
  Rng rng(37);
  for (int i = 0; i < 50; ++i) {
    Net p = random_net(rng);
    Flat f(p);
    Switching s = first_switching(f);
    auto g = switching_graph(f, s);
    for (const auto& t : enumerate_trails(f, s)) {
      EXPECT_TRUE(is_trail(g, t));
      EXPECT_TRUE(is_trail(g, t.reversed()));
      EXPECT_EQ(t.reversed().length(), t.length());
    }
  }
  Net big = random_net(rng, GenConfig{30, 3, true, true, 3});
  Flat fb(big);
  EXPECT_THROW(enumerate_trails(fb, first_switching(fb), std::nullopt, 4), Error);
}

TEST(Trails, DisjointConcatenation) {
  Net n = parse_net(kPathNet);
  Flat f(n);
  Switching s = with_choice(f, 2);
  auto g = switching_graph(f, s);
  auto trails = enumerate_trails(f, s);
  for (const auto& a : trails)
    for (const auto& b : trails) {
      if (a.length() == 0 || b.length() == 0 || a.verts.back() != b.verts.front()) continue;
      std::set<int> va(a.verts.begin(), a.verts.end());
      int shared = 0;
      for (int v : b.verts) shared += va.count(v);
      if (shared != 1) continue;
      Path c = a;
      c.edges.insert(c.edges.end(), b.edges.begin(), b.edges.end());
      c.verts.insert(c.verts.end(), b.verts.begin() + 1, b.verts.end());
      EXPECT_TRUE(is_trail(g, c));
    }
}
