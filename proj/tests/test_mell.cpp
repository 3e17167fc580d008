#include <gtest/gtest.h>

#include <set>

#include "oracle.hpp"
#include "pnet/generate.hpp"
#include "pnet/mell.hpp"
#include "pnet/switching.hpp"
#include "pnet/syntax.hpp"

using namespace pnet;

namespace {

const char* kExMell =
    "box b arity 3 {"
    "  box b' arity 2 { ( ; x*, x, bot@m') jumps { m' -> t2 } }"
    "  ( <port(b',0) | bot@m> ; y*, y, port(b',1), quest(port(b',2)) ) jumps { m -> t2 }"
    "}"
    "( ; quest(port(b,3)), quest(port(b,2), port(b,1)), port(b,0) )";
const char* kCycle2 = "box b arity 1 { ( ; x, x* ) } ( <quest(port(b,1)) | port(b,0)> ; )";

// The worked expansion: two copies of b, the first with no copy of b', the
// second with one.
const char* kWorkedElement =
    "( <!0@l1 | bot@m1>, <bang(x2*) | bot@m2> ; quest(?0@n1, quest(bot@n2)), quest(x2, y1, y2), bang(y1*, y2*) ) "
    "jumps { m1 -> t2.2, m2 -> t2.3, n1 -> c1.L, n2 -> t2.1 }";

std::size_t mell_size(const MellNet& m) {
  std::size_t n = oracle::count_subtrees(m.net);
  for (const auto& b : m.boxes) n += mell_size(b.content);
  return n;
}

std::size_t mell_depth(const MellNet& m) {
  std::size_t d = 0;
  for (const auto& b : m.boxes) d = std::max(d, 1 + mell_depth(b.content));
  return d;
}

std::set<std::string> keys(const std::vector<TaylorElement>& es) {
  std::set<std::string> out;
  for (const auto& e : es) out.insert(canonical_key(e.net, CanonMode::ExponentialMultiset));
  return out;
}

bool has_issue(const MellNet& m, Errc code) {
  for (const auto& i : validate_mell(m))
    if (i.code == code) return true;
  return false;
}

}  // namespace

TEST(MellMeasures, WorkedNet) {
  MellNet p = parse_mell(kExMell);
  EXPECT_TRUE(validate_mell(p).empty());
  MellMeasures m = mell_measures(p);
  EXPECT_EQ(m.tlsize, 6u);
  EXPECT_EQ(m.size, 16u);
  EXPECT_EQ(m.depth, 2u);
  EXPECT_EQ(m.tlsize, oracle::count_subtrees(p.net));
  EXPECT_EQ(m.size, mell_size(p));
  EXPECT_EQ(m.depth, mell_depth(p));
}

TEST(MellMeasures, BoxFree) {
  MellNet p = parse_mell("( <1@l | bot@m> ; x, x* ) jumps { m -> t1 }");
  MellMeasures m = mell_measures(p);
  EXPECT_EQ(m.size, m.tlsize);
  EXPECT_EQ(m.size, 4u);
  EXPECT_EQ(m.depth, 0u);
}

TEST(MellMeasures, RandomNetsAgreeWithRecount) {
  Rng rng(83);
  for (int i = 0; i < 100; ++i) {
    MellNet p = random_mell(rng);
    EXPECT_TRUE(validate_mell(p).empty()) << print_mell(p);
    MellMeasures m = mell_measures(p);
    EXPECT_EQ(m.size, mell_size(p));
    EXPECT_EQ(m.depth, mell_depth(p));
    EXPECT_LE(m.size, 20u);
    EXPECT_LE(m.depth, 2u);
  }
}

TEST(MellValidate, PortRules) {
  EXPECT_TRUE(has_issue(parse_mell("box b arity 1 { ( ; x, x* ) } ( ; tensor(port(b,1), port(b,0)) )"),
                        Errc::PortOutsideQuest));
  EXPECT_TRUE(has_issue(parse_mell("box b arity 1 { ( ; x, x* ) } ( ; quest(port(b,2)), port(b,0) )"),
                        Errc::PortArityMismatch));
  EXPECT_TRUE(has_issue(parse_mell("box b arity 1 { ( ; x, x* ) } ( ; quest(port(b,1)), port(b,0), bot@m ) "
                                   "jumps { m -> t1.1 }"),
                        Errc::JumpToAuxPort));
  EXPECT_THROW(require_valid_mell(parse_mell("box b arity 1 { ( ; x, x* ) } ( ; tensor(port(b,1), port(b,0)) )")),
               Error);
}

TEST(MellAcyclic, Examples) {
  EXPECT_TRUE(mell_acyclic(parse_mell(kExMell)));
  EXPECT_FALSE(mell_acyclic(parse_mell(kCycle2)));
}

TEST(MellAcyclic, BoxFreeAgreesWithSwitchingCheck) {
  Rng rng(89);
  for (int i = 0; i < 100; ++i) {
    Net p = random_net(rng);
    EXPECT_EQ(mell_acyclic(MellNet{{}, p}), is_acyclic(p).acyclic);
  }
  Net cyc = parse_net("( <tensor(x0, x1) | par(x1*, x0*)> ; )");
  EXPECT_FALSE(mell_acyclic(MellNet{{}, cyc}));
}

TEST(BoxSubstitute, EmptyPrincipalFamilyGivesCoweakening) {
  std::map<std::string, BoxReplacement> r{{"b", BoxReplacement{{{}, {}}}}};
  auto out = box_substitute(parse_tree("port(b,0)"), r);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].kind, Kind::Coweak);
  EXPECT_EQ(out[0].name, "cw_b");
  auto q = box_substitute(parse_tree("quest(port(b,1))"), r);
  ASSERT_EQ(q.size(), 1u);
  EXPECT_EQ(q[0].kind, Kind::Weak);
}

TEST(BoxSubstitute, HomomorphicOnConnectives) {
  std::map<std::string, BoxReplacement> r{{"b", BoxReplacement{{{parse_tree("a")}, {}}}}};
  auto out = box_substitute(parse_tree("tensor(port(b,0), z)"), r);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(print_tree(out[0]), print_tree(parse_tree("tensor(bang(a), z)")));
}

TEST(BoxSubstitute, WorkedReplacement) {
  // r = ((x*), (x), (bot@m')) for the inner box
  std::map<std::string, BoxReplacement> r{
      {"b'", BoxReplacement{{{parse_tree("x*")}, {parse_tree("x")}, {parse_tree("bot@m'")}}}}};
  auto principal = box_substitute(parse_tree("port(b',0)"), r);
  ASSERT_EQ(principal.size(), 1u);
  EXPECT_EQ(print_tree(principal[0]), print_tree(parse_tree("bang(x*)")));
  auto aux = box_substitute(parse_tree("port(b',1)"), r);
  ASSERT_EQ(aux.size(), 1u);
  EXPECT_EQ(print_tree(aux[0]), "x");
  auto quest = box_substitute(parse_tree("quest(port(b',2))"), r);
  ASSERT_EQ(quest.size(), 1u);
  EXPECT_EQ(print_tree(quest[0]), print_tree(parse_tree("quest(bot@m')")));
}

TEST(BoxSubstitute, AtomClashIsRejected) {
  std::map<std::string, BoxReplacement> r{{"b", BoxReplacement{{{parse_tree("z")}}}}};
  EXPECT_THROW(box_substitute(parse_tree("tensor(port(b,0), z)"), r), Error);
}

TEST(Taylor, WorkedExampleIsAmongBudgetTwoExpansions) {
  MellNet p = parse_mell(kExMell);
  auto elems = taylor_expand(p, 2);
  // k_b in {0, 1, 2}; the copies of b are unordered, each picking k_b' in {0, 1, 2}.
  EXPECT_EQ(elems.size(), 1u + 3u + 6u);
  Net want = parse_net(kWorkedElement);
  const TaylorElement* hit = nullptr;
  for (const auto& e : elems)
    if (alpha_equal(e.net, want, CanonMode::ExponentialMultiset)) hit = &e;
  ASSERT_NE(hit, nullptr);
  TaylorBoundReport br = taylor_bound_check(*hit, p);
  EXPECT_TRUE(br.ok());
  EXPECT_EQ(br.ln_bound, 64u);
  EXPECT_EQ(br.jd_bound, 16u);
  EXPECT_EQ(br.ln, oracle::ln(hit->net));
  EXPECT_LE(br.ln, 64u);
  EXPECT_LE(br.jd, 16);
}

TEST(Taylor, CyclicBoxExpansions) {
  MellNet p = parse_mell(kCycle2);
  auto zero = taylor_expand(p, 0);
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_TRUE(alpha_equal(zero[0].net, parse_net("( <!0@l | ?0@m> ; ) jumps { m -> c1.L }")));
  for (int n = 1; n <= 4; ++n) {
    auto elems = taylor_expand(p, n);
    EXPECT_EQ(elems.size(), static_cast<std::size_t>(n + 1));
    auto got = keys(elems);
    for (int k = 1; k <= n; ++k) {
      std::string qs = "quest(", bs = "bang(";
      for (int i = 0; i < k; ++i) {
        qs += (i ? ", x" : "x") + std::to_string(i);
        bs += (i ? ", x" : "x") + std::to_string(i) + "*";
      }
      Net pk = parse_net("( <" + qs + ") | " + bs + ")> ; )");
      EXPECT_TRUE(got.count(canonical_key(pk, CanonMode::ExponentialMultiset))) << "k = " << k;
    }
  }
}

TEST(Taylor, BudgetMonotoneAndExhaustiveContainsDeterministic) {
  MellNet p = parse_mell(kExMell);
  std::set<std::string> prev;
  for (int b = 0; b <= 3; ++b) {
    auto cur = keys(taylor_expand(p, b));
    for (const auto& k : prev) EXPECT_TRUE(cur.count(k)) << "budget " << b;
    auto all = keys(taylor_expand(p, b, JumpPolicy::Exhaustive));
    for (const auto& k : cur) EXPECT_TRUE(all.count(k));
    EXPECT_GE(all.size(), cur.size());
    prev = cur;
  }
}

TEST(Taylor, SeededRandomNetsSatisfyBounds) {
  Rng rng(97);
  std::size_t elements = 0;
  for (int i = 0; i < 50; ++i) {
    MellNet p = random_mell(rng);
    ASSERT_TRUE(mell_acyclic(p));
    std::size_t size_p = mell_size(p), depth = mell_depth(p);
    std::size_t ln_bound = (std::size_t{1} << depth) * size_p;
    for (int budget = 0; budget <= 3; ++budget)
      for (const auto& e : taylor_expand(p, budget)) {
        ++elements;
        EXPECT_TRUE(validate_net(e.net).empty()) << print_net(e.net);
        EXPECT_TRUE(oracle::acyclic(e.net)) << print_mell(p) << "\n" << print_net(e.net);
        EXPECT_LE(max_path_length(e.net).ln, ln_bound);
        EXPECT_LE(static_cast<std::size_t>(jump_degree(e.net).max), size_p);
        EXPECT_TRUE(taylor_bound_check(e, p).ok());
        ASSERT_EQ(e.net.conclusions.size(), p.net.conclusions.size());
        std::set<int> image(e.attribution.begin(), e.attribution.end());
        EXPECT_EQ(image.size(), p.net.conclusions.size());
      }
  }
  EXPECT_GT(elements, 500u);
}

TEST(Untaylor, WorkedNetCensus) {
  MellNet p = parse_mell(kExMell);
  std::size_t paths = 0, double_visits = 0;
  for (const auto& e : taylor_expand(p, 2)) {
    Flat f(e.net);
    Switching s = first_switching(f);
    do {
      for (const auto& xi : enumerate_trails(f, s)) {
        ++paths;
        UntaylorResult u = untaylor_path(e, p, xi);
        EXPECT_TRUE(u.valid) << e.copies;
        EXPECT_TRUE(u.census_ok) << e.copies;
        for (const auto& [box, n] : u.census) {
          EXPECT_LE(n, 2) << box;
          double_visits += n == 2;
        }
      }
    } while (next_switching(f, s));
  }
  EXPECT_GT(paths, 10000u);
  EXPECT_GT(double_visits, 0u);
}

TEST(Untaylor, NoCopiesMeansNoBoxPaths) {
  MellNet p = parse_mell(kExMell);
  auto elems = taylor_expand(p, 0);
  ASSERT_EQ(elems.size(), 1u);
  Flat f(elems[0].net);
  for (const auto& xi : enumerate_trails(f, first_switching(f))) {
    UntaylorResult u = untaylor_path(elems[0], p, xi);
    EXPECT_TRUE(u.valid);
    EXPECT_TRUE(u.visits.empty());
  }
}

TEST(Untaylor, MissingProvenance) {
  MellNet p = parse_mell(kExMell);
  TaylorElement e = taylor_expand(p, 1).back();
  e.provenance.clear();
  Flat f(e.net);
  try {
    untaylor_path(e, p, Path{{0}, {}});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::NoProvenance);
  }
}

TEST(Untaylor, SeededRandomNets) {
  Rng rng(101);
  for (int i = 0; i < 20; ++i) {
    MellNet p = random_mell(rng);
    for (const auto& e : taylor_expand(p, 2)) {
      Flat f(e.net);
      if (switching_count(f, 64) > 32) continue;
      Switching s = first_switching(f);
      do {
        for (const auto& xi : enumerate_trails(f, s, std::nullopt, 64)) {
          UntaylorResult u = untaylor_path(e, p, xi);
          EXPECT_TRUE(u.valid);
          EXPECT_TRUE(u.census_ok);
        }
      } while (next_switching(f, s));
    }
  }
}
