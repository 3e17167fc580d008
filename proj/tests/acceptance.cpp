// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <gmpxx.h>

#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "support.hpp"
#include "pnet/antireduct.hpp"
#include "pnet/bounds.hpp"
#include "pnet/generate.hpp"
#include "pnet/mell.hpp"
#include "pnet/reduce.hpp"
#include "pnet/switching.hpp"
#include "pnet/syntax.hpp"
#include "pnet/transport.hpp"

using namespace pnet;

namespace {

const char* kP0 =
    "( <par(x, x*) | tensor(1@l1, y)>, <y* | bot@m3>, <1@l2 | bot@m4> ; bot@m1, bot@m2, 1@l3 ) "
    "jumps { m1 -> c1.L, m2 -> c2.L, m3 -> c3.L, m4 -> t3 }";

const char* kExMell =
    "box b arity 3 {"
    "  box b' arity 2 { ( ; x*, x, bot@m') jumps { m' -> t2 } }"
    "  ( <port(b',0) | bot@m> ; y*, y, port(b',1), quest(port(b',2)) ) jumps { m -> t2 }"
    "}"
    "( ; quest(port(b,3)), quest(port(b,2), port(b,1)), port(b,0) )";

const char* kWorkedElement =
    "( <!0@l1 | bot@m1>, <bang(x2*) | bot@m2> ; quest(?0@n1, quest(bot@n2)), quest(x2, y1, y2), bang(y1*, y2*) ) "
    "jumps { m1 -> t2.2, m2 -> t2.3, n1 -> c1.L, n2 -> t2.1 }";

// Tallies one criterion: cases examined and violations found.
struct Tally {
  std::size_t cases = 0;
  std::size_t violations = 0;
  std::string first;  // first violation, for the report

  void check(bool ok, const std::string& what) {
    if (ok) return;
    if (violations++ == 0) first = what;
  }
};

bool report(int n, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << n << ": " << detail << std::endl;
  return pass;
}

std::string summary(const Tally& t, const std::string& head) {
  std::ostringstream s;
  s << head << "; cases=" << t.cases << " violations=" << t.violations;
  if (t.violations) s << " first: " << t.first;
  return s.str();
}

mpz_class z(std::size_t v) { return mpz_class(static_cast<unsigned long>(v)); }

mpz_class pow_z(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}


// <tensor(x0..xn) | par(x1*..xn*, x0*)>
Net cycle1(int n) {
  std::string t = "tensor(", p = "par(";
  for (int i = 0; i <= n; ++i) t += (i ? ", x" : "x") + std::to_string(i);
  for (int i = 1; i <= n; ++i) p += "x" + std::to_string(i) + "*, ";
  return parse_net("( <" + t + ") | " + p + "x0*)> ; )");
}

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

bool criterion1() {
  Net p0 = parse_net(kP0);
  struct Case {
    const char* name;
    std::vector<int> cuts;
    const char* want;
  };
  const Case cases[] = {
      {"p'_m", {0},
       "( <x | 1@l1>, <x* | y>, <y* | bot@m3>, <1@l2 | bot@m4> ; bot@m1, bot@m2, 1@l3 ) "
       "jumps { m1 -> c1.L, m2 -> c3.L, m3 -> c4.L, m4 -> t3 }"},
      {"p'_a", {1},
       "( <par(x, x*) | tensor(1@l1, bot@m3)>, <1@l2 | bot@m4> ; bot@m1, bot@m2, 1@l3 ) "
       "jumps { m1 -> c1.L, m2 -> c1.R.2, m3 -> c2.L, m4 -> t3 }"},
      {"p'_e", {2},
       "( <par(x, x*) | tensor(1@l1, y)>, <y* | bot@m3> ; bot@m1, bot@m2, 1@l3 ) "
       "jumps { m1 -> c1.L, m2 -> c2.L, m3 -> t3 }"},
      {"p'", {0, 1, 2}, "( <x | 1@l1>, <x* | bot@m3> ; bot@m1, bot@m2, 1@l3 ) jumps { m1 -> c1.L, m2 -> c2.R, m3 -> t3 }"},
  };
  Tally t;
  for (const auto& c : cases) {
    ++t.cases;
    auto rs = parallel_reduce(p0, c.cuts);
    t.check(rs.size() == 1 && alpha_equal(rs[0].net, parse_net(c.want)),
            std::string(c.name) + " got " + (rs.empty() ? "nothing" : print_net(rs[0].net)));
  }
  return report(1, t.violations == 0, summary(t, "p0 reproduces p'_m, p'_a, p'_e, p'"));
}

bool criterion2() {
  Rng rng(2001);
  Tally t;
  std::map<StepKind, std::size_t> kinds;
  while (t.cases < 500) {
    Net p = random_net(rng);
    auto sel = random_pure_selection(rng, p);
    if (sel.empty()) continue;
    auto rs = parallel_reduce(p, sel);
    const Reduct& r = rs[rng() % rs.size()];
    ++t.cases;
    ++kinds[r.record.kind];
    mpz_class sp = z(oracle::count_subtrees(p)), sq = z(oracle::count_subtrees(r.net));
    unsigned long lp = max_path_length(p).ln;
    mpz_class jp = jump_degree(p).max;
    std::string where = print_net(p);
    switch (r.record.kind) {
      case StepKind::Multiplicative:
      case StepKind::Exponential:
        t.check(sp <= 2 * sq, "size m: " + where);
        break;
      case StepKind::Axiom:
        t.check(sp <= (lp + 1) * sq, "size a: " + where);
        break;
      case StepKind::Evanescent:
        t.check(sp <= psi(sq, jp, lp), "size e: " + where);
        t.check(z(r.record.eliminated.size()) <= sq * pow_z(2 * jp, lp + 1), "evanescent count: " + where);
        break;
      default:
        t.check(false, "impure step: " + where);
    }
  }
  std::ostringstream head;
  head << "pure-step size bounds (m=" << kinds[StepKind::Multiplicative] + kinds[StepKind::Exponential]
       << " a=" << kinds[StepKind::Axiom] << " e=" << kinds[StepKind::Evanescent] << ")";
  return report(2, t.violations == 0 && t.cases >= 500, summary(t, head.str()));
}

bool criterion3() {
  auto steps = support::seeded_mult_steps(3001, 300);
  Tally t;
  std::size_t paths = 0, max_paths = 0;
  for (const auto& [p, r] : steps) {
    ++t.cases;
    Flat fp(p), fq(r.net);
    std::string where = print_net(p);
    unsigned long ln_p = max_path_length(fp).ln, ln_q = max_path_length(fq).ln;
    t.check(z(ln_q) <= phi(ln_p), "ln(q) > phi(ln(p)): " + where);
    auto all = support::all_paths(r.net);
    max_paths = std::max(max_paths, all.size());
    t.check(all.size() <= 10000, "more than 10^4 paths: " + where);
    for (const Path& chi : all) {
      ++paths;
      Transported tr = transport(p, r.net, r.record, chi);
      t.check(tr.valid && is_path_of_net(fp, tr.path), "invalid transport: " + where);
      t.check(tr.path.length() <= 3 * chi.length(), "ln(chi-) > 3 ln(chi): " + where);
      t.check(z(chi.length()) <= phi(width(p, r.net, r.record, chi)), "ln(chi) > phi(width): " + where);
      auto spans = support::maximal_slipknots(fq, r.record, chi);
      t.check(support::well_bracketed(spans) && tr.decomposition.spans == spans, "slipknot bracketing: " + where);
      t.check(support::residuals_ok(support::residual_crossings(fp, fq, r.record, chi)),
              "more than 2 residuals: " + where);
    }
  }
  std::ostringstream head;
  head << "transport over all reduct paths (" << paths << " paths, at most " << max_paths << " per reduct)";
  return report(3, t.violations == 0 && t.cases >= 300, summary(t, head.str()));
}

bool criterion4() {
  Rng rng(4001);
  Tally t;
  std::size_t mixed = 0, pure = 0;
  while (t.cases < 1000) {
    Net p = random_net(rng);
    bool want_pure = t.cases % 2 == 0;
    auto sel = want_pure ? random_pure_selection(rng, p) : random_selection(rng, p);
    if (sel.empty()) continue;
    auto rs = parallel_reduce(p, sel);
    const Reduct& r = rs[rng() % rs.size()];
    ++t.cases;
    unsigned long lp = max_path_length(p).ln;
    mpz_class jp = jump_degree(p).max, jq = jump_degree(r.net).max;
    mpz_class sp = z(oracle::count_subtrees(p)), sq = z(oracle::count_subtrees(r.net));
    std::string where = print_net(p);
    switch (r.record.kind) {
      case StepKind::Multiplicative:
      case StepKind::Exponential:
        ++pure;
        t.check(jq <= 2 * jp, "jd m: " + where);
        break;
      case StepKind::Evanescent:
        ++pure;
        t.check(jq <= pow_z(2 * jp, lp + 1), "jd e: " + where);
        break;
      case StepKind::Axiom:
        ++pure;
        t.check(jq <= (lp + 1) * jp, "jd a: " + where);
        break;
      case StepKind::Mixed:
        ++mixed;
        t.check(sp <= psi(2 * (lp + 1) * sq, jp, lp), "size mixed: " + where);
        t.check(jq <= 2 * pow_z(2 * (lp + 1) * jp, lp + 1), "jd mixed: " + where);
        break;
      case StepKind::Identity:
        break;
    }
  }
  std::ostringstream head;
  head << "jump-degree and mixed-step bounds (" << pure << " pure, " << mixed << " mixed)";
  return report(4, t.violations == 0 && t.cases >= 500 && mixed > 0, summary(t, head.str()));
}

bool criterion5() {
  Tally t;
  std::map<std::size_t, std::vector<int>> observed;
  for (int n = 1; n <= 50; ++n) {
    ++t.cases;
    Net p = cycle1(n);
    Reduct r = reduce_cut(p, 0).front();
    t.check(!is_acyclic(p).acyclic && !oracle::acyclic(p), "p_" + std::to_string(n) + " reported acyclic");
    std::size_t ln_p = n <= 6 ? oracle::ln(p) : max_path_length(p).ln;
    std::size_t ln_q = n <= 6 ? oracle::ln(r.net) : max_path_length(r.net).ln;
    observed[ln_p].push_back(n);
    t.check(ln_p == 6, "ln(p_" + std::to_string(n) + ") = " + std::to_string(ln_p));
    t.check(ln_q == 2u * static_cast<std::size_t>(n + 1), "ln(q_" + std::to_string(n) + ") = " + std::to_string(ln_q));
  }
  std::ostringstream head;
  head << "cycle1 nets cyclic, ln(p_n) = 6 and ln(q_n) = 2(n+1) for n = 1..50 (observed ln(p_n):";
  for (const auto& [ln, ns] : observed)
    head << " " << ln << " for n=" << ns.front() << (ns.size() > 1 ? ".." + std::to_string(ns.back()) : "");
  head << ")";
  return report(5, t.violations == 0, summary(t, head.str()));
}

bool criterion6() {
  Rng rng(6001);
  Tally t;
  while (t.cases < 2000) {
    Net p = random_net(rng);
    auto sel = t.cases % 2 ? random_selection(rng, p) : random_pure_selection(rng, p);
    if (sel.empty()) continue;
    auto rs = parallel_reduce(p, sel);
    const Reduct& r = rs[rng() % rs.size()];
    ++t.cases;
    t.check(is_acyclic(r.net).acyclic && oracle::acyclic(r.net), "cyclic reduct of " + print_net(p));
  }
  return report(6, t.violations == 0 && t.cases >= 2000, summary(t, "acyclic reducts of acyclic nets"));
}

bool criterion7() {
  Rng rng(7001);
  Tally t;
  std::size_t nets = 0, elements = 0, paths = 0;
  while (nets < 50) {
    MellNet P = random_mell(rng);
    std::size_t size_P = mell_size(P), depth = mell_depth(P);
    if (depth > 2 || size_P > 20 || !mell_acyclic(P)) continue;
    ++nets;
    std::size_t ln_bound = (std::size_t{1} << depth) * size_P;
    for (int budget = 0; budget <= 3; ++budget)
      for (const auto& e : taylor_expand(P, budget)) {
        ++elements;
        ++t.cases;
        std::string where = print_mell(P) + " element " + e.copies;
        t.check(oracle::acyclic(e.net), "cyclic element: " + where);
        t.check(max_path_length(e.net).ln <= ln_bound, "ln bound: " + where);
        t.check(static_cast<std::size_t>(jump_degree(e.net).max) <= size_P, "jd bound: " + where);
        Flat f(e.net);
        Switching s = first_switching(f);
        do {
          for (const auto& xi : enumerate_trails(f, s, std::nullopt, 64)) {
            ++paths;
            UntaylorResult u = untaylor_path(e, P, xi);
            bool census = u.valid;
            for (const auto& [box, visits] : u.census) census = census && visits <= 2;
            t.check(census, "box-visit census: " + where);
          }
        } while (next_switching(f, s));
      }
  }
  MellNet ex = parse_mell(kExMell);
  Net want = parse_net(kWorkedElement);
  bool worked = false;
  for (const auto& e : taylor_expand(ex, 2)) worked = worked || alpha_equal(e.net, want, CanonMode::ExponentialMultiset);
  t.check(worked, "worked expansion missing at budget 2");
  std::ostringstream head;
  head << "Taylor expansions of " << nets << " MELL nets at budget <= 3 (" << elements << " elements, " << paths
       << " paths censused), worked element " << (worked ? "found" : "missing");
  return report(7, t.violations == 0 && nets >= 50, summary(t, head.str()));
}

bool criterion8() {
  struct Instance {
    const char* q;
    int k;
    std::size_t n;
    int m;
    std::size_t cap;
  };
  const Instance instances[] = {
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
  Tally t;
  std::ostringstream visited;
  std::size_t found = 0;
  for (const auto& in : instances) {
    ++t.cases;
    Net q = parse_net(in.q);
    SearchOptions so;
    so.size_cap = in.cap;
    OracleOptions oo;
    oo.size_cap = in.cap;
    AntireductSet a = antireducts(q, in.k, in.n, in.m, so);
    AntireductSet o = brute_force_antireducts(q, in.k, in.n, in.m, oo);
    visited << (t.cases > 1 ? "," : "") << a.visited() << "/" << o.visited();
    std::vector<std::string> seen;
    for (std::size_t i = 0; i < a.nets.size(); ++i) {
      const Net& p = a.nets[i];
      ++found;
      t.check(reduces_to(p, q, in.k) && oracle::acyclic(p) && oracle::ln(p) <= in.n && jump_degree(p).max <= in.m &&
                  size(p) <= in.cap,
              std::string("unsound antireduct of ") + in.q + ": " + print_net(p));
      if (within_alphabet(p, 2, 2)) seen.push_back(a.keys[i]);
    }
    t.check(seen == o.keys, std::string("oracle disagreement on ") + in.q + " k=" + std::to_string(in.k));
  }

  // Cyclic target: refused by default, finite and empty when searched.
  Net cyc = parse_net("(<x0|x0*>;)");
  std::size_t grid = 0, refused = 0;
  for (int k = 0; k <= 2; ++k)
    for (std::size_t n = 0; n <= 8; ++n)
      for (int m = 0; m <= 2; ++m) {
        ++grid;
        try {
          antireducts(cyc, k, n, m);
          t.check(false, "cyclic target accepted");
        } catch (const Error& e) {
          t.check(e.code() == Errc::CyclicTarget, "cyclic target: wrong error");
        }
        SearchOptions so;
        so.size_cap = 8;
        so.refuse_cyclic_target = false;
        AntireductSet a = antireducts(cyc, k, n, m, so);
        for (const auto& l : a.levels) refused += l.refused_cyclic;
        for (const auto& p : a.nets) t.check(oracle::acyclic(p) || k == 0, "cyclic intermediate kept: " + print_net(p));
      }
  std::ostringstream head;
  head << "antireducts sound and equal to the oracle on " << t.cases << " instances (" << found
       << " antireducts; visited engine/oracle " << visited.str() << "); cyclic target refused and finite on " << grid
       << " (k,n,m) points, " << refused << " cyclic candidates refused";
  return report(8, t.violations == 0, summary(t, head.str()));
}

bool criterion9() {
  Rng rng(9001);
  Tally t;
  std::size_t tries = 0;
  while (t.cases < 1000 && tries < 100000) {
    ++tries;
    GenConfig cfg;
    cfg.steps = 3 + static_cast<int>(rng() % 8);
    Net p = random_net(rng, cfg);
    Flat f(p);
    if (union_graph(f).edges.size() > 24) continue;
    ++t.cases;
    std::size_t forest = max_path_length_forest(f).ln, trails = max_trail_by_enumeration(f);
    t.check(forest == trails, "forest " + std::to_string(forest) + " vs trails " + std::to_string(trails) + ": " +
                                  print_net(p));
  }
  return report(9, t.violations == 0 && t.cases >= 1000,
                summary(t, "forest-diameter length equals trail enumeration on nets with <= 24 edges"));
}

bool criterion10() {
  Rng rng(10001);
  Tally t;
  std::size_t nested = 0;
  for (int i = 0; i < 500; ++i) {
    ++t.cases;
    Net p = random_net(rng);
    std::string text = print_net(p);
    Net back = parse_net(text);
    t.check(alpha_equal(back, p) && print_net(back) == text, "net: " + text);
  }
  for (int i = 0; i < 500; ++i) {
    ++t.cases;
    MellNet m = random_mell(rng);
    nested += mell_depth(m) >= 2;
    std::string text = print_mell(m);
    MellNet back = parse_mell(text);
    t.check(mell_alpha_equal(back, m) && print_mell(back) == text, "mell: " + text);
  }
  std::ostringstream head;
  head << "parse/print round trips (500 nets, 500 MELL nets, " << nested << " with nested boxes)";
  return report(10, t.violations == 0 && nested > 0, summary(t, head.str()));
}

}  // namespace

int main() {
  const std::vector<std::function<bool()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                      criterion6, criterion7, criterion8, criterion9, criterion10};
  int failed = 0;
  for (const auto& c : criteria) {
    try {
      failed += !c();
    } catch (const std::exception& e) {
      std::cout << "FAIL criterion " << (&c - criteria.data()) + 1 << ": exception " << e.what() << std::endl;
      ++failed;
    }
  }
  std::cout << (10 - failed) << "/10 criteria passed" << std::endl;
  return failed ? 1 : 0;
}
