#include "pnet/reduce.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <set>

#include "pnet/syntax.hpp"

namespace pnet {

const char* cut_kind_name(CutKind k) {
  switch (k) {
    case CutKind::Multiplicative: return "multiplicative";
    case CutKind::AxiomCut: return "axiom";
    case CutKind::Evanescent: return "evanescent";
    case CutKind::ExponentialPair: return "exponential";
    case CutKind::Clash: return "clash";
    case CutKind::Blocked: return "blocked";
  }
  return "?";
}

const char* step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::Identity: return "identity";
    case StepKind::Multiplicative: return "multiplicative";
    case StepKind::Axiom: return "axiom";
    case StepKind::Evanescent: return "evanescent";
    case StepKind::Exponential: return "exponential";
    case StepKind::Mixed: return "mixed";
  }
  return "?";
}

bool is_multiplicative_step(StepKind k) { return k == StepKind::Multiplicative || k == StepKind::Exponential; }

namespace {

bool has_atom(const Tree& t, const std::string& name) {
  if (t.kind == Kind::Var && t.name == name) return true;
  return std::any_of(t.kids.begin(), t.kids.end(), [&](const Tree& k) { return has_atom(k, name); });
}

bool evanescent_shape(Kind a, Kind b) {
  return (a == Kind::One && b == Kind::Bot) || (a == Kind::Coweak && b == Kind::Weak);
}

}  // namespace

CutClass classify_cut(const Net& net, int cut) {
  if (cut < 0 || cut >= static_cast<int>(net.cuts.size())) throw Error(Errc::NoSuchCut, "c" + std::to_string(cut + 1));
  const Cut& c = net.cuts[static_cast<std::size_t>(cut)];
  const Tree& l = c.left;
  const Tree& r = c.right;
  CutClass out;
  if (l.kind == Kind::Var || r.kind == Kind::Var) {
    if (l.kind == Kind::Var && !has_atom(r, dual_name(l.name))) {
      out.kind = CutKind::AxiomCut;
    } else if (r.kind == Kind::Var && !has_atom(l, dual_name(r.name))) {
      out.kind = CutKind::AxiomCut;
      out.var_right = true;
    } else {
      out.kind = CutKind::Blocked;
      out.reason = "dual-in-other-side";
    }
    return out;
  }
  if (evanescent_shape(l.kind, r.kind) || evanescent_shape(r.kind, l.kind)) {
    const Tree& neg = is_negative_leaf(l.kind) ? l : r;
    auto it = net.jumps.find(neg.name);
    Addr la{true, cut, false, {}}, ra{true, cut, true, {}};
    if (it != net.jumps.end() && (it->second == la || it->second == ra)) {
      out.kind = CutKind::Blocked;
      out.reason = "self-jump";
    } else {
      out.kind = CutKind::Evanescent;
    }
    return out;
  }
  auto arity = [](const Tree& t) { return is_leaf(t.kind) ? 0 : static_cast<int>(t.kids.size()); };
  if ((l.kind == Kind::Tensor && r.kind == Kind::Par) || (l.kind == Kind::Par && r.kind == Kind::Tensor)) {
    out.kind = l.kids.size() == r.kids.size() ? CutKind::Multiplicative : CutKind::Clash;
    return out;
  }
  auto is_q = [](Kind k) { return k == Kind::Quest || k == Kind::Weak; };
  auto is_b = [](Kind k) { return k == Kind::Bang || k == Kind::Coweak; };
  if ((is_q(l.kind) && is_b(r.kind)) || (is_b(l.kind) && is_q(r.kind))) {
    out.kind = CutKind::ExponentialPair;
    out.n = is_q(l.kind) ? arity(l) : arity(r);
    out.m = is_b(l.kind) ? arity(l) : arity(r);
    return out;
  }
  out.kind = CutKind::Clash;
  return out;
}

bool is_reducible(const CutClass& c) {
  return c.kind == CutKind::Multiplicative || c.kind == CutKind::AxiomCut || c.kind == CutKind::Evanescent ||
         (c.kind == CutKind::ExponentialPair && c.n == c.m && c.n > 0);
}

std::vector<int> reducible_cuts(const Net& net) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(net.cuts.size()); ++i)
    if (is_reducible(classify_cut(net, i))) out.push_back(i);
  return out;
}

namespace {

enum class Role : std::uint8_t { Keep, ConnRoot, Evan, AxVar, AxDual };

struct Plan {
  const Net& p;
  Flat f;
  std::vector<int> sel;
  std::vector<CutClass> cls;           // per selected cut
  std::vector<Role> role;
  std::vector<int> subst;              // AxVar/AxDual -> tree root replacing it
  std::vector<int> evneg;              // Evan roots -> negative leaf node of the cut
  std::vector<int> cut_sel;            // p cut -> position in sel or -1
  std::vector<std::vector<int>> sigma; // per selected cut (exponential only)

  explicit Plan(const Net& net) : p(net), f(net) {}
};

// Picks the variable side of every selected axiom cut so that no chosen
// variable is the dual of another chosen variable.
std::vector<int> orient_axioms(const Plan& pl) {
  const Flat& f = pl.f;
  std::size_t n = pl.sel.size();
  std::vector<std::array<bool, 2>> cand(n, {false, false});
  for (std::size_t i = 0; i < n; ++i) {
    if (pl.cls[i].kind != CutKind::AxiomCut) continue;
    const Tree& tl = pl.p.cuts[static_cast<std::size_t>(pl.sel[i])].left;
    const Tree& tr = pl.p.cuts[static_cast<std::size_t>(pl.sel[i])].right;
    cand[i][0] = tl.kind == Kind::Var && !has_atom(tr, dual_name(tl.name));
    cand[i][1] = tr.kind == Kind::Var && !has_atom(tl, dual_name(tr.name));
  }
  // end node -> (selected index, side) for variable roots of selected axiom cuts
  std::map<int, std::pair<int, int>> end_of;
  for (std::size_t i = 0; i < n; ++i) {
    if (pl.cls[i].kind != CutKind::AxiomCut) continue;
    auto [l, r] = f.cut_roots[static_cast<std::size_t>(pl.sel[i])];
    if (cand[i][0]) end_of[l] = {static_cast<int>(i), 0};
    if (cand[i][1]) end_of[r] = {static_cast<int>(i), 1};
  }
  auto root_at = [&](std::size_t i, int side) {
    auto [l, r] = f.cut_roots[static_cast<std::size_t>(pl.sel[i])];
    return side ? r : l;
  };
  std::function<bool(std::vector<int>&, std::size_t, int)> assign = [&](std::vector<int>& ch, std::size_t i,
                                                                       int side) -> bool {
    if (ch[i] == side) return true;
    if (ch[i] >= 0 || !cand[i][static_cast<std::size_t>(side)]) return false;
    ch[i] = side;
    int v = root_at(i, side);
    auto d = f.atom.find(dual_name(f.nodes[static_cast<std::size_t>(v)].name));
    if (d == f.atom.end()) return true;
    auto e = end_of.find(d->second);
    if (e == end_of.end()) return true;
    auto [j, jside] = e->second;
    if (static_cast<std::size_t>(j) == i) return false;
    if (ch[static_cast<std::size_t>(j)] == jside) return false;
    return assign(ch, static_cast<std::size_t>(j), 1 - jside);
  };
  std::vector<int> ch(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (pl.cls[i].kind != CutKind::AxiomCut || ch[i] >= 0) continue;
    if (cand[i][0] != cand[i][1] && !assign(ch, i, cand[i][0] ? 0 : 1))
      throw Error(Errc::NotReducible, "axiom cuts cannot be oriented");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (pl.cls[i].kind != CutKind::AxiomCut || ch[i] >= 0) continue;
    bool done = false;
    for (int side : {0, 1}) {
      std::vector<int> trial = ch;
      if (assign(trial, i, side)) {
        ch = std::move(trial);
        done = true;
        break;
      }
    }
    if (!done) throw Error(Errc::NotReducible, "axiom cuts cannot be oriented");
  }
  return ch;
}

struct Builder {
  const Plan& pl;
  std::vector<char> on_stack;
  std::size_t built = 0;

  explicit Builder(const Plan& plan) : pl(plan), on_stack(plan.f.nodes.size(), 0) {}

  Tree build(int v) {
    const auto& nd = pl.f.nodes[static_cast<std::size_t>(v)];
    if (on_stack[static_cast<std::size_t>(v)])
      throw Error(Errc::NotReducible, "circular axiom substitution");
    if (pl.role[static_cast<std::size_t>(v)] == Role::AxDual) {
      on_stack[static_cast<std::size_t>(v)] = 1;
      Tree t = build(pl.subst[static_cast<std::size_t>(v)]);
      on_stack[static_cast<std::size_t>(v)] = 0;
      return t;
    }
    Tree t;
    t.kind = nd.kind;
    t.name = nd.name;
    t.port = nd.port;
    t.uid = v;
    ++built;
    for (int k : nd.kids) t.kids.push_back(build(k));
    return t;
  }
};

void clear_uids(Tree& t) {
  t.uid = -1;
  for (Tree& k : t.kids) clear_uids(k);
}

// Eligible final targets of a jump into node v.
void resolve_targets(const Plan& pl, int v, bool any, std::vector<char>& visiting, std::set<int>& out) {
  const auto& f = pl.f;
  std::size_t uv = static_cast<std::size_t>(v);
  switch (pl.role[uv]) {
    case Role::Keep:
      out.insert(v);
      return;
    case Role::AxVar:
    case Role::AxDual:
      resolve_targets(pl, pl.subst[uv], any, visiting, out);
      return;
    case Role::Evan: {
      int neg = pl.evneg[uv];
      if (visiting[static_cast<std::size_t>(neg)]) throw Error(Errc::CyclicJumpChain, f.nodes[static_cast<std::size_t>(neg)].name);
      visiting[static_cast<std::size_t>(neg)] = 1;
      resolve_targets(pl, f.jump.at(f.nodes[static_cast<std::size_t>(neg)].name), any, visiting, out);
      visiting[static_cast<std::size_t>(neg)] = 0;
      return;
    }
    case Role::ConnRoot: {
      const auto& nd = f.nodes[uv];
      if (any) {
        for (int k : nd.kids) resolve_targets(pl, k, any, visiting, out);
        return;
      }
      int ci = f.cut_of[uv];
      int si = pl.cut_sel[static_cast<std::size_t>(ci)];
      const auto& sg = pl.sigma[static_cast<std::size_t>(si)];
      int premise = 1;
      if (!sg.empty() && nd.kind == Kind::Quest) {
        // the ? premise that meets the first ! premise
        premise = static_cast<int>(std::find(sg.begin(), sg.end(), 1) - sg.begin()) + 1;
      }
      resolve_targets(pl, nd.kids[static_cast<std::size_t>(premise - 1)], any, visiting, out);
      return;
    }
  }
}

Reduct build_reduct(const Plan& pl, const std::map<std::string, int>& targets) {
  const Flat& f = pl.f;
  const Net& p = pl.p;
  Builder b(pl);
  Reduct out;
  Net& q = out.net;
  ReductionRecord& rec = out.record;
  for (int r : f.conclusion_roots) q.conclusions.push_back(b.build(r));
  for (int c = 0; c < static_cast<int>(p.cuts.size()); ++c) {
    auto [l, r] = f.cut_roots[static_cast<std::size_t>(c)];
    int si = pl.cut_sel[static_cast<std::size_t>(c)];
    if (si < 0) {
      q.cuts.push_back(Cut{b.build(l), b.build(r)});
      rec.residual_of.emplace_back(-1, c);
      continue;
    }
    const CutClass& cc = pl.cls[static_cast<std::size_t>(si)];
    if (cc.kind != CutKind::Multiplicative && cc.kind != CutKind::ExponentialPair) continue;
    const auto& lk = f.nodes[static_cast<std::size_t>(l)].kids;
    const auto& rk = f.nodes[static_cast<std::size_t>(r)].kids;
    const auto& sg = pl.sigma[static_cast<std::size_t>(si)];
    bool quest_left = f.nodes[static_cast<std::size_t>(l)].kind == Kind::Quest;
    auto& res = rec.residuals[c];
    for (std::size_t i = 0; i < lk.size(); ++i) {
      int li = static_cast<int>(i), ri = static_cast<int>(i);
      if (!sg.empty()) {
        // residual i joins the i-th ? premise with the sigma(i)-th ! premise
        if (quest_left) {
          ri = sg[i] - 1;
        } else {
          li = sg[i] - 1;
        }
      }
      res.push_back(static_cast<int>(q.cuts.size()));
      q.cuts.push_back(Cut{b.build(lk[static_cast<std::size_t>(li)]), b.build(rk[static_cast<std::size_t>(ri)])});
      rec.residual_of.emplace_back(c, static_cast<int>(i) + 1);
    }
    if (!sg.empty()) rec.permutations[c] = sg;
  }
  std::size_t removed = 0;
  for (std::size_t i = 0; i < pl.sel.size(); ++i) removed += 2;
  if (b.built != f.nodes.size() - removed) throw Error(Errc::NotReducible, "axiom substitution chain is not well founded");

  Flat fq(q);
  std::map<int, int> p_to_q;
  rec.q_to_p.resize(fq.nodes.size());
  for (std::size_t i = 0; i < fq.nodes.size(); ++i) {
    rec.q_to_p[i] = fq.nodes[i].uid;
    p_to_q[fq.nodes[i].uid] = static_cast<int>(i);
  }
  for (const auto& [label, target] : targets) {
    Addr to = fq.nodes[static_cast<std::size_t>(p_to_q.at(target))].addr;
    q.jumps[label] = to;
    int old = f.jump.at(label);
    if (old != target || pl.role[static_cast<std::size_t>(old)] != Role::Keep)
      rec.redirects.push_back(Redirect{label, f.nodes[static_cast<std::size_t>(old)].addr, to});
  }
  for (Tree& t : q.conclusions) clear_uids(t);
  for (Cut& c : q.cuts) {
    clear_uids(c.left);
    clear_uids(c.right);
  }
  return out;
}

}  // namespace

namespace {

std::vector<Reduct> reduce_impl(const Net& net, const std::vector<int>& cuts_in, RedirectPolicy policy,
                                const std::map<int, int>* sides) {
  require_valid(net);
  std::vector<int> sel = cuts_in;
  std::sort(sel.begin(), sel.end());
  sel.erase(std::unique(sel.begin(), sel.end()), sel.end());

  Plan pl(net);
  const Flat& f = pl.f;
  pl.sel = sel;
  pl.cut_sel.assign(net.cuts.size(), -1);
  pl.role.assign(f.nodes.size(), Role::Keep);
  pl.subst.assign(f.nodes.size(), -1);
  pl.evneg.assign(f.nodes.size(), -1);
  pl.sigma.assign(sel.size(), {});
  for (std::size_t i = 0; i < sel.size(); ++i) {
    CutClass c = classify_cut(net, sel[i]);
    if (c.kind == CutKind::ExponentialPair && c.n != c.m) return {};
    if (c.kind == CutKind::Blocked && c.reason == "self-jump")
      throw Error(Errc::EvanescentSelfJump, "c" + std::to_string(sel[i] + 1));
    if (!is_reducible(c))
      throw Error(Errc::NotReducible, std::string(cut_kind_name(c.kind)) + " cut c" + std::to_string(sel[i] + 1));
    pl.cls.push_back(c);
    pl.cut_sel[static_cast<std::size_t>(sel[i])] = static_cast<int>(i);
  }

  ReductionRecord base;
  base.eliminated = sel;
  bool has_m = false, has_x = false, has_a = false, has_e = false;
  for (const CutClass& c : pl.cls) {
    base.eliminated_kinds.push_back(c.kind);
    has_m |= c.kind == CutKind::Multiplicative;
    has_x |= c.kind == CutKind::ExponentialPair;
    has_a |= c.kind == CutKind::AxiomCut;
    has_e |= c.kind == CutKind::Evanescent;
  }
  int sorts = int(has_m || has_x) + int(has_a) + int(has_e);
  if (sel.empty()) base.kind = StepKind::Identity;
  else if (sorts > 1) base.kind = StepKind::Mixed;
  else if (has_a) base.kind = StepKind::Axiom;
  else if (has_e) base.kind = StepKind::Evanescent;
  else if (has_x) base.kind = StepKind::Exponential;
  else base.kind = StepKind::Multiplicative;

  std::vector<int> orient;
  if (sides) {
    orient.assign(sel.size(), -1);
    std::set<std::string> chosen;
    for (std::size_t i = 0; i < sel.size(); ++i) {
      if (pl.cls[i].kind != CutKind::AxiomCut) continue;
      auto it = sides->find(sel[i]);
      if (it == sides->end()) throw Error(Errc::NotReducible, "no orientation for c" + std::to_string(sel[i] + 1));
      const Cut& c = net.cuts[static_cast<std::size_t>(sel[i])];
      const Tree& v = it->second ? c.right : c.left;
      const Tree& t = it->second ? c.left : c.right;
      if (v.kind != Kind::Var || has_atom(t, dual_name(v.name)))
        throw Error(Errc::NotReducible, "bad orientation for c" + std::to_string(sel[i] + 1));
      orient[i] = it->second;
      chosen.insert(v.name);
    }
    for (const auto& x : chosen)
      if (chosen.count(dual_name(x))) throw Error(Errc::NotReducible, "both ends of an axiom chosen");
  } else {
    orient = orient_axioms(pl);
  }
  for (std::size_t i = 0; i < sel.size(); ++i) {
    auto [l, r] = f.cut_roots[static_cast<std::size_t>(sel[i])];
    const CutClass& c = pl.cls[i];
    if (c.kind == CutKind::AxiomCut) {
      int v = orient[i] ? r : l;
      int t = orient[i] ? l : r;
      int d = f.atom.at(dual_name(f.nodes[static_cast<std::size_t>(v)].name));
      pl.role[static_cast<std::size_t>(v)] = Role::AxVar;
      pl.subst[static_cast<std::size_t>(v)] = t;
      pl.role[static_cast<std::size_t>(d)] = Role::AxDual;
      pl.subst[static_cast<std::size_t>(d)] = t;
      const Tree& tt = orient[i] ? net.cuts[static_cast<std::size_t>(sel[i])].left : net.cuts[static_cast<std::size_t>(sel[i])].right;
      base.substitutions.emplace_back(f.nodes[static_cast<std::size_t>(d)].name, tt);
    } else if (c.kind == CutKind::Evanescent) {
      int neg = is_negative_leaf(f.nodes[static_cast<std::size_t>(l)].kind) ? l : r;
      for (int v : {l, r}) {
        pl.role[static_cast<std::size_t>(v)] = Role::Evan;
        pl.evneg[static_cast<std::size_t>(v)] = neg;
      }
    } else {
      pl.role[static_cast<std::size_t>(l)] = Role::ConnRoot;
      pl.role[static_cast<std::size_t>(r)] = Role::ConnRoot;
    }
  }
  // A var-var axiom cut whose variable side is substituted away by a
  // neighbouring cut in the same selection would be lost; orient_axioms rules
  // this out, so every AxVar keeps its role.

  // Exponential fan-out.
  std::vector<std::size_t> exp_idx;
  for (std::size_t i = 0; i < sel.size(); ++i)
    if (pl.cls[i].kind == CutKind::ExponentialPair) exp_idx.push_back(i);
  std::vector<std::vector<std::vector<int>>> perms;
  std::size_t total = 1;
  for (std::size_t i : exp_idx) {
    std::vector<int> s(static_cast<std::size_t>(pl.cls[i].n));
    std::iota(s.begin(), s.end(), 1);
    std::vector<std::vector<int>> all;
    do {
      all.push_back(s);
    } while (std::next_permutation(s.begin(), s.end()));
    total *= all.size();
    if (total > 100000) throw Error(Errc::CapExceeded, "too many exponential reducts");
    perms.push_back(std::move(all));
  }

  std::vector<Reduct> out;
  std::vector<std::size_t> pick(exp_idx.size(), 0);
  while (true) {
    for (std::size_t k = 0; k < exp_idx.size(); ++k) pl.sigma[exp_idx[k]] = perms[k][pick[k]];

    // Jump targets of the surviving negative leaves.
    std::vector<std::pair<std::string, std::vector<int>>> options;
    for (const auto& [label, target] : f.jump) {
      int leaf = f.atom.at(label);
      if (pl.role[static_cast<std::size_t>(leaf)] == Role::Evan) continue;
      std::vector<char> visiting(f.nodes.size(), 0);
      std::set<int> ts;
      resolve_targets(pl, target, policy == RedirectPolicy::AnyPremise, visiting, ts);
      options.emplace_back(label, std::vector<int>(ts.begin(), ts.end()));
    }
    std::vector<std::size_t> jp(options.size(), 0);
    while (true) {
      std::map<std::string, int> targets;
      for (std::size_t k = 0; k < options.size(); ++k) targets[options[k].first] = options[k].second[jp[k]];
      Reduct r = build_reduct(pl, targets);
      r.record.kind = base.kind;
      r.record.eliminated = base.eliminated;
      r.record.eliminated_kinds = base.eliminated_kinds;
      r.record.substitutions = base.substitutions;
      out.push_back(std::move(r));
      if (out.size() > 100000) throw Error(Errc::CapExceeded, "too many reducts");
      std::size_t k = options.size();
      while (k > 0 && ++jp[k - 1] == options[k - 1].second.size()) jp[--k] = 0;
      if (k == 0) break;
    }
    std::size_t k = exp_idx.size();
    while (k > 0 && ++pick[k - 1] == perms[k - 1].size()) pick[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

}  // namespace

std::vector<Reduct> parallel_reduce(const Net& net, const std::vector<int>& cuts, RedirectPolicy policy) {
  return reduce_impl(net, cuts, policy, nullptr);
}

std::vector<Reduct> parallel_reduce_oriented(const Net& net, const std::vector<int>& cuts,
                                             const std::map<int, int>& var_side, RedirectPolicy policy) {
  return reduce_impl(net, cuts, policy, &var_side);
}

std::vector<std::map<int, int>> axiom_orientations(const Net& net, const std::vector<int>& cuts) {
  std::vector<int> ax;
  std::vector<std::array<bool, 2>> ok;
  for (int c : cuts) {
    if (classify_cut(net, c).kind != CutKind::AxiomCut) continue;
    const Cut& k = net.cuts[static_cast<std::size_t>(c)];
    ax.push_back(c);
    ok.push_back({k.left.kind == Kind::Var && !has_atom(k.right, dual_name(k.left.name)),
                  k.right.kind == Kind::Var && !has_atom(k.left, dual_name(k.right.name))});
  }
  std::vector<std::map<int, int>> out;
  std::map<int, int> cur;
  std::function<void(std::size_t, std::set<std::string>&)> rec = [&](std::size_t i, std::set<std::string>& chosen) {
    if (i == ax.size()) {
      out.push_back(cur);
      return;
    }
    const Cut& k = net.cuts[static_cast<std::size_t>(ax[i])];
    for (int side : {0, 1}) {
      if (!ok[i][static_cast<std::size_t>(side)]) continue;
      const std::string& v = side ? k.right.name : k.left.name;
      if (chosen.count(dual_name(v))) continue;
      chosen.insert(v);
      cur[ax[i]] = side;
      rec(i + 1, chosen);
      cur.erase(ax[i]);
      chosen.erase(v);
    }
  };
  std::set<std::string> chosen;
  rec(0, chosen);
  return out;
}

std::vector<Reduct> reduce_cut(const Net& net, int cut, RedirectPolicy policy) {
  if (cut < 0 || cut >= static_cast<int>(net.cuts.size())) throw Error(Errc::NoSuchCut, "c" + std::to_string(cut + 1));
  return parallel_reduce(net, {cut}, policy);
}

Net sequential_reduce(const Net& net, const std::vector<int>& order) {
  Net cur = net;
  std::vector<int> pos(net.cuts.size());
  std::iota(pos.begin(), pos.end(), 0);
  for (int c : order) {
    if (c < 0 || c >= static_cast<int>(pos.size()) || pos[static_cast<std::size_t>(c)] < 0)
      throw Error(Errc::NoSuchCut, "c" + std::to_string(c + 1));
    auto rs = reduce_cut(cur, pos[static_cast<std::size_t>(c)]);
    if (rs.empty()) throw Error(Errc::NotReducible, "empty reduct set");
    const auto& rec = rs.front().record;
    std::map<int, int> moved;
    for (std::size_t i = 0; i < rec.residual_of.size(); ++i)
      if (rec.residual_of[i].first < 0) moved[rec.residual_of[i].second] = static_cast<int>(i);
    for (int& p : pos) {
      if (p < 0) continue;
      auto it = moved.find(p);
      p = it == moved.end() ? -1 : it->second;
    }
    cur = rs.front().net;
  }
  return cur;
}

std::vector<std::vector<std::string>> jump_chain_sets(const Net& net, const Addr& t) {
  Flat f(net);
  int target = f.find(t);
  std::vector<std::vector<std::string>> levels;
  if (target < 0) return levels;
  // negative leaf of an evanescent-shaped cut -> both roots
  std::map<std::string, std::pair<int, int>> evan;
  for (auto [l, r] : f.cut_roots) {
    Kind kl = f.nodes[static_cast<std::size_t>(l)].kind, kr = f.nodes[static_cast<std::size_t>(r)].kind;
    if (evanescent_shape(kl, kr)) evan[f.nodes[static_cast<std::size_t>(r)].name] = {l, r};
    else if (evanescent_shape(kr, kl)) evan[f.nodes[static_cast<std::size_t>(l)].name] = {l, r};
  }
  std::set<std::string> seen;
  std::set<int> into{target};
  while (true) {
    std::vector<std::string> level;
    for (const auto& [label, tgt] : f.jump)
      if (into.count(tgt) && !seen.count(label)) level.push_back(label);
    if (level.empty()) break;
    into.clear();
    for (const std::string& l : level) {
      seen.insert(l);
      auto it = evan.find(l);
      if (it != evan.end()) {
        into.insert(it->second.first);
        into.insert(it->second.second);
      }
    }
    levels.push_back(std::move(level));
  }
  return levels;
}

std::size_t evanescent_cut_count(const Net& net) {
  std::size_t n = 0;
  for (const Cut& c : net.cuts)
    if (evanescent_shape(c.left.kind, c.right.kind) || evanescent_shape(c.right.kind, c.left.kind)) ++n;
  return n;
}

}  // namespace pnet
