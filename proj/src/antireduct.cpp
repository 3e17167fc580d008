#include "pnet/antireduct.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include "pnet/bounds.hpp"
#include "pnet/switching.hpp"

namespace pnet {

std::size_t AntireductSet::visited() const {
  std::size_t v = 0;
  for (const auto& l : levels) v += l.visited;
  return v;
}

bool AntireductSet::contains(const Net& p) const {
  return std::binary_search(keys.begin(), keys.end(), canonical_key(p));
}

namespace {

constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();
// Caps past this are treated as unbounded; the size limit still applies.
constexpr unsigned long kCapCeiling = 4096;

void number_tree(Tree& t, int& next) {
  t.uid = next++;
  for (auto& k : t.kids) number_tree(k, next);
}

int number_uids(Net& net) {
  int next = 0;
  for (auto& c : net.conclusions) number_tree(c, next);
  for (auto& c : net.cuts) {
    number_tree(c.left, next);
    number_tree(c.right, next);
  }
  return next;
}

std::map<std::string, int> jump_uids(const Net& net) {
  Flat f(net);
  std::map<std::string, int> out;
  for (const auto& [label, v] : f.jump) out[label] = f.nodes[static_cast<std::size_t>(v)].uid;
  return out;
}

void set_jumps(Net& net, const std::map<std::string, int>& by_uid) {
  Flat f(net);
  std::map<int, Addr> at;
  for (const auto& nd : f.nodes) at[nd.uid] = nd.addr;
  net.jumps.clear();
  for (const auto& [label, uid] : by_uid) net.jumps[label] = at.at(uid);
}

Tree* subtree_at(Net& net, const Addr& a) {
  Tree* t = a.in_cut ? (a.right ? &net.cuts[static_cast<std::size_t>(a.index)].right
                                : &net.cuts[static_cast<std::size_t>(a.index)].left)
                     : &net.conclusions[static_cast<std::size_t>(a.index)];
  for (int i : a.path) t = &t->kids[static_cast<std::size_t>(i - 1)];
  return t;
}

void collect_names(const Tree& t, std::set<std::string>& out) {
  if (t.kind == Kind::Var) {
    out.insert(t.name);
    out.insert(dual_name(t.name));
  } else if (is_leaf(t.kind)) {
    out.insert(t.name);
  }
  for (const auto& k : t.kids) collect_names(k, out);
}

std::set<std::string> names_of(const Net& net) {
  std::set<std::string> out;
  for (const auto& c : net.conclusions) collect_names(c, out);
  for (const auto& c : net.cuts) {
    collect_names(c.left, out);
    collect_names(c.right, out);
  }
  return out;
}

std::string fresh_name(std::set<std::string>& used, const std::string& prefix) {
  for (int i = 1;; ++i) {
    std::string n = prefix + std::to_string(i);
    if (!used.count(n) && !used.count(n + "*")) {
      used.insert(n);
      used.insert(n + "*");
      return n;
    }
  }
}

std::size_t clamp_size(const mpz_class& v) {
  if (!v.fits_ulong_p() || v.get_ui() == kUnbounded) return kUnbounded;
  return v.get_ui();
}

// Search state of one antireduct level.
struct Level {
  std::size_t ln_cap = kUnbounded;
  std::size_t jd_cap = kUnbounded;
  std::size_t size_limit = kUnbounded;
  LevelStats* stats = nullptr;
  std::size_t* total = nullptr;
  std::size_t candidate_cap = 0;

  void visit() {
    ++stats->visited;
    if (++*total > candidate_cap)
      throw Error(Errc::BudgetOverflow, "antireduct search visited more than " + std::to_string(candidate_cap) +
                                            " candidates");
  }
  // Size, acyclicity and ln hold for every intermediate net of a reduction
  // from an admissible antireduct.
  bool admissible(const Net& n) {
    visit();
    if (size(n) > size_limit) {
      ++stats->over_caps;
      return false;
    }
    Flat f(n);
    if (!is_acyclic(f).acyclic) {
      ++stats->refused_cyclic;
      return false;
    }
    if (ln_cap != kUnbounded && max_path_length(f).ln > ln_cap) {
      ++stats->over_caps;
      return false;
    }
    return true;
  }
};

std::size_t room(const Level& L, std::size_t sz) {
  if (L.size_limit == kUnbounded) return kUnbounded;
  return sz >= L.size_limit ? 0 : (L.size_limit - sz) / 2;
}

// ---- inverse multiplicative and exponential steps ----

struct GroupAlt {
  Cut cut;
  std::map<int, int> root_to_connective;  // uid of a premise root -> uid of its new connective
};

std::vector<GroupAlt> group_alternatives(const Net& q, const std::vector<int>& members, int pos_uid, int neg_uid) {
  std::vector<GroupAlt> out;
  int r = static_cast<int>(members.size());
  std::vector<int> perm(static_cast<std::size_t>(r));
  for (bool exponential : {false, true}) {
    for (int mask = 0; mask < (1 << r); ++mask) {
      std::vector<const Tree*> pos, neg;
      for (int i = 0; i < r; ++i) {
        const Cut& c = q.cuts[static_cast<std::size_t>(members[static_cast<std::size_t>(i)])];
        bool flip = (mask >> i) & 1;
        pos.push_back(flip ? &c.right : &c.left);
        neg.push_back(flip ? &c.left : &c.right);
      }
      std::map<int, int> conn;
      for (int i = 0; i < r; ++i) {
        conn[pos[static_cast<std::size_t>(i)]->uid] = pos_uid;
        conn[neg[static_cast<std::size_t>(i)]->uid] = neg_uid;
      }
      auto build = [&](const std::vector<int>& pp, const std::vector<int>& np) {
        std::vector<Tree> pk, nk;
        for (int i : pp) pk.push_back(*pos[static_cast<std::size_t>(i)]);
        for (int i : np) nk.push_back(*neg[static_cast<std::size_t>(i)]);
        Tree a = Tree::node(exponential ? Kind::Bang : Kind::Tensor, std::move(pk));
        Tree b = Tree::node(exponential ? Kind::Quest : Kind::Par, std::move(nk));
        a.uid = pos_uid;
        b.uid = neg_uid;
        out.push_back(GroupAlt{Cut{std::move(a), std::move(b)}, conn});
      };
      std::iota(perm.begin(), perm.end(), 0);
      if (!exponential) {
        // The premise pairing is fixed by the cuts; only their order varies.
        do build(perm, perm);
        while (std::next_permutation(perm.begin(), perm.end()));
      } else {
        std::vector<int> other(perm);
        do {
          std::iota(other.begin(), other.end(), 0);
          do build(perm, other);
          while (std::next_permutation(other.begin(), other.end()));
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
    }
  }
  return out;
}

// Nets r with r ->>m q: a subset of q's cuts partitioned into groups, each
// group becoming the residuals of one eliminated connective cut.
std::vector<Net> inverse_multiplicative(const Net& q0, Level& L) {
  Net q = q0;
  int next = number_uids(q);
  auto jumps = jump_uids(q);
  int n = static_cast<int>(q.cuts.size());
  std::size_t base = size(q);
  std::vector<Net> out;
  std::set<std::string> seen;
  std::vector<int> grp(static_cast<std::size_t>(n), -1);
  int groups = 0;

  auto emit = [&]() {
    std::vector<std::vector<int>> members(static_cast<std::size_t>(groups));
    std::vector<Cut> kept;
    for (int i = 0; i < n; ++i) {
      if (grp[static_cast<std::size_t>(i)] < 0) kept.push_back(q.cuts[static_cast<std::size_t>(i)]);
      else members[static_cast<std::size_t>(grp[static_cast<std::size_t>(i)])].push_back(i);
    }
    std::vector<std::vector<GroupAlt>> alts;
    for (int g = 0; g < groups; ++g)
      alts.push_back(group_alternatives(q, members[static_cast<std::size_t>(g)], next + 2 * g, next + 2 * g + 1));
    std::vector<std::size_t> pick(static_cast<std::size_t>(groups), 0);
    std::function<void(int)> over_groups = [&](int g) {
      if (g < groups) {
        for (std::size_t a = 0; a < alts[static_cast<std::size_t>(g)].size(); ++a) {
          pick[static_cast<std::size_t>(g)] = a;
          over_groups(g + 1);
        }
        return;
      }
      Net r;
      r.conclusions = q.conclusions;
      r.cuts = kept;
      std::map<int, int> conn;
      for (int h = 0; h < groups; ++h) {
        const GroupAlt& ga = alts[static_cast<std::size_t>(h)][pick[static_cast<std::size_t>(h)]];
        r.cuts.push_back(ga.cut);
        conn.insert(ga.root_to_connective.begin(), ga.root_to_connective.end());
      }
      // Labels on a grouped premise root may have jumped to its connective.
      std::vector<std::string> movable;
      for (const auto& [label, uid] : jumps)
        if (conn.count(uid)) movable.push_back(label);
      std::map<std::string, int> cur = jumps;
      std::function<void(std::size_t)> over_jumps = [&](std::size_t i) {
        if (i == movable.size()) {
          Net c = r;
          set_jumps(c, cur);
          if (!L.admissible(c)) return;
          if (seen.insert(canonical_key(c)).second) out.push_back(std::move(c));
          return;
        }
        const std::string& lab = movable[i];
        int orig = jumps.at(lab);
        cur[lab] = orig;
        over_jumps(i + 1);
        cur[lab] = conn.at(orig);
        over_jumps(i + 1);
        cur[lab] = orig;
      };
      over_jumps(0);
    };
    over_groups(0);
  };

  std::function<void(int)> assign = [&](int i) {
    if (i == n) {
      emit();
      return;
    }
    grp[static_cast<std::size_t>(i)] = -1;
    assign(i + 1);
    for (int g = 0; g < groups; ++g) {
      grp[static_cast<std::size_t>(i)] = g;
      assign(i + 1);
    }
    if (room(L, base) >= static_cast<std::size_t>(groups + 1)) {
      grp[static_cast<std::size_t>(i)] = groups++;
      assign(i + 1);
      --groups;
    }
    grp[static_cast<std::size_t>(i)] = -1;
  };
  assign(0);
  return out;
}

// ---- inverse axiom steps ----

// One move: a subtree t becomes a fresh x* and the cut <x|t> is added.
std::vector<Net> axiom_moves(const Net& r0) {
  Net r = r0;
  int next = number_uids(r);
  auto jumps = jump_uids(r);
  std::set<std::string> used = names_of(r);
  std::string x = fresh_name(used, "a");
  Flat f(r);
  std::vector<Net> out;
  for (const auto& nd : f.nodes) {
    Net n = r;
    Tree* t = subtree_at(n, nd.addr);
    Tree moved = std::move(*t);
    *t = Tree::var(dual_name(x));
    t->uid = next;
    Tree xv = Tree::var(x);
    xv.uid = next + 1;
    n.cuts.push_back(Cut{std::move(xv), std::move(moved)});
    std::vector<std::string> movable;
    for (const auto& [label, uid] : jumps)
      if (uid == nd.uid) movable.push_back(label);
    std::map<std::string, int> cur = jumps;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == movable.size()) {
        Net c = n;
        set_jumps(c, cur);
        out.push_back(std::move(c));
        return;
      }
      for (int target : {nd.uid, next, next + 1}) {
        cur[movable[i]] = target;
        rec(i + 1);
      }
      cur[movable[i]] = nd.uid;
    };
    rec(0);
  }
  return out;
}

std::vector<Net> inverse_axiom_closure(const std::vector<Net>& start, Level& L) {
  std::vector<Net> all = start;
  std::set<std::string> seen;
  for (const auto& s : start) seen.insert(canonical_key(s));
  std::vector<Net> frontier = start;
  while (!frontier.empty()) {
    std::vector<Net> nxt;
    for (const auto& r : frontier) {
      if (room(L, size(r)) < 1) continue;
      for (auto& m : axiom_moves(r)) {
        if (!L.admissible(m)) continue;
        if (!seen.insert(canonical_key(m)).second) continue;
        all.push_back(m);
        nxt.push_back(std::move(m));
      }
    }
    frontier = std::move(nxt);
  }
  return all;
}

// ---- inverse evanescent steps ----

// Grafts trees of evanescent cuts: each node X may receive new cuts whose
// negative leaf jumps to X, and the labels on X may move onto their leaves.
class Grafter {
 public:
  Grafter(const Net& base, Level& L, std::function<void(Net)> emit)
      : base_(base), flat_(base), L_(L), emit_(std::move(emit)) {
    used_ = names_of(base);
    n_ = flat_.size();
    base_size_ = size(base);
    for (const auto& [label, v] : flat_.jump) tgt_[label] = v;
    for (int i = 0; i < n_; ++i) order_.push_back(i);
  }

  void run() { dfs(0); }

 private:
  const Net& base_;
  Flat flat_;
  Level& L_;
  std::function<void(Net)> emit_;
  std::set<std::string> used_;
  int n_ = 0;
  std::size_t base_size_ = 0;
  std::vector<int> kinds_;  // per new cut: 0 for 1/bot, 1 for !0/?0
  std::vector<std::pair<std::string, std::string>> names_;
  std::map<std::string, int> tgt_;
  std::vector<int> order_;

  const std::pair<std::string, std::string>& names(std::size_t j) {
    while (names_.size() <= j) {
      std::string a = fresh_name(used_, "e");
      std::string b = fresh_name(used_, "w");
      names_.emplace_back(a, b);
    }
    return names_[j];
  }

  Net build() {
    Net n = base_;
    int base_cuts = static_cast<int>(base_.cuts.size());
    for (std::size_t j = 0; j < kinds_.size(); ++j) {
      const auto& nm = names(j);
      Tree l = Tree::leaf(kinds_[j] ? Kind::Coweak : Kind::One, nm.first);
      Tree r = Tree::leaf(kinds_[j] ? Kind::Weak : Kind::Bot, nm.second);
      n.cuts.push_back(Cut{std::move(l), std::move(r)});
    }
    n.jumps.clear();
    for (const auto& [label, id] : tgt_) {
      if (id < n_) {
        n.jumps[label] = flat_.nodes[static_cast<std::size_t>(id)].addr;
      } else {
        int off = id - n_;
        n.jumps[label] = Addr{true, base_cuts + off / 2, off % 2 == 1, {}};
      }
    }
    return n;
  }

  void dfs(std::size_t idx) {
    if (idx == order_.size()) {
      emit_(build());
      return;
    }
    int x = order_[idx];
    std::vector<std::string> here;
    for (const auto& [label, id] : tgt_)
      if (id == x) here.push_back(label);
    std::size_t s = here.size();
    std::size_t free = room(L_, base_size_ + 2 * kinds_.size());
    std::size_t cmax = std::min(L_.jd_cap, free);
    if (s <= L_.jd_cap) dfs(idx + 1);
    for (std::size_t c = 1; c <= cmax; ++c) {
      // kinds as a nondecreasing sequence: the first `ones` cuts are 1/bot
      for (std::size_t ones = 0; ones <= c; ++ones) {
        std::size_t first = kinds_.size();
        for (std::size_t j = 0; j < c; ++j) kinds_.push_back(j < ones ? 0 : 1);
        names(first + c);
        std::function<void(std::size_t, std::size_t)> place = [&](std::size_t i, std::size_t stays) {
          if (i == s) {
            for (std::size_t j = 0; j < c; ++j) {
              const std::string& mu = names_[first + j].second;
              tgt_[mu] = x;
            }
            Net partial = build();
            if (L_.admissible(partial)) {
              for (std::size_t j = 0; j < c; ++j) {
                order_.push_back(n_ + 2 * static_cast<int>(first + j));
                order_.push_back(n_ + 2 * static_cast<int>(first + j) + 1);
              }
              dfs(idx + 1);
              order_.resize(order_.size() - 2 * c);
            }
            for (std::size_t j = 0; j < c; ++j) tgt_.erase(names_[first + j].second);
            return;
          }
          const std::string& lab = here[i];
          if (stays + 1 + c <= L_.jd_cap) {
            tgt_[lab] = x;
            place(i + 1, stays + 1);
          }
          for (std::size_t j = 0; j < c; ++j) {
            for (int side : {0, 1}) {
              tgt_[lab] = n_ + 2 * static_cast<int>(first + j) + side;
              place(i + 1, stays);
            }
          }
          tgt_[lab] = x;
        };
        place(0, 0);
        kinds_.resize(first);
      }
    }
  }
};

// ---- forward checks ----

struct KindCounts {
  std::array<int, 10> n{};
};

void count_kinds(const Tree& t, KindCounts& k) {
  ++k.n[static_cast<std::size_t>(t.kind)];
  for (const auto& c : t.kids) count_kinds(c, k);
}

KindCounts count_kinds(const Net& net) {
  KindCounts k;
  for (const auto& c : net.conclusions) count_kinds(c, k);
  for (const auto& c : net.cuts) {
    count_kinds(c.left, k);
    count_kinds(c.right, k);
  }
  return k;
}

std::map<std::string, Net> reducts_by_subsets(const Net& p, RedirectPolicy policy,
                                              const std::function<bool(std::size_t)>& subset_size_ok) {
  std::map<std::string, Net> out;
  auto red = reducible_cuts(p);
  std::size_t r = red.size();
  if (r > 20) throw Error(Errc::CapExceeded, "too many reducible cuts to enumerate subsets");
  for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
    std::vector<int> sel;
    for (std::size_t i = 0; i < r; ++i)
      if ((mask >> i) & 1) sel.push_back(red[i]);
    if (!subset_size_ok(sel.size())) continue;
    if (sel.empty()) {
      out.emplace(canonical_key(p), p);
      continue;
    }
    for (const auto& orient : axiom_orientations(p, sel)) {
      std::vector<Reduct> rs;
      try {
        rs = parallel_reduce_oriented(p, sel, orient, policy);
      } catch (const Error&) {
        continue;
      }
      for (auto& rd : rs) {
        std::string k = canonical_key(rd.net);
        out.emplace(std::move(k), std::move(rd.net));
      }
    }
  }
  return out;
}

// p ->> q in one step; the step eliminates exactly (size p - size q)/2 cuts.
bool verify_one_step(const Net& p, const Net& q, const std::string& qkey, RedirectPolicy policy) {
  std::size_t sp = size(p), sq = size(q);
  if (sp < sq || (sp - sq) % 2) return false;
  std::size_t e = (sp - sq) / 2;
  auto red = reducible_cuts(p);
  if (red.size() < e) return false;
  if (e == 0) return canonical_key(p) == qkey;
  std::size_t r = red.size();
  std::vector<bool> pick(r, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(e), true);
  do {
    std::vector<int> sel;
    for (std::size_t i = 0; i < r; ++i)
      if (pick[i]) sel.push_back(red[i]);
    for (const auto& orient : axiom_orientations(p, sel)) {
      std::vector<Reduct> rs;
      try {
        rs = parallel_reduce_oriented(p, sel, orient, policy);
      } catch (const Error&) {
        continue;
      }
      for (const auto& rd : rs)
        if (rd.net.conclusions.size() == q.conclusions.size() && rd.net.cuts.size() == q.cuts.size() &&
            canonical_key(rd.net) == qkey)
          return true;
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return false;
}

void finish(AntireductSet& out, std::map<std::string, Net>& found) {
  for (auto& [k, n] : found) {
    out.keys.push_back(k);
    out.nets.push_back(std::move(n));
  }
}

// Antireducts of one target at the given caps, forward-verified.
void one_level(const Net& q, Level& L, RedirectPolicy policy, std::map<std::string, Net>& found) {
  std::string qkey = canonical_key(q);
  auto r2 = inverse_multiplicative(q, L);
  auto r1 = inverse_axiom_closure(r2, L);
  std::set<std::string> seen;
  for (const auto& base : r1) {
    Grafter g(base, L, [&](Net p) {
      if (jump_degree(p).max > static_cast<long long>(std::min<std::size_t>(L.jd_cap, 1u << 30))) {
        ++L.stats->over_caps;
        return;
      }
      std::string key = canonical_key(p);
      if (found.count(key) || !seen.insert(key).second) return;
      if (!verify_one_step(p, q, qkey, policy)) {
        ++L.stats->rejected;
        return;
      }
      ++L.stats->found;
      found.emplace(std::move(key), std::move(p));
    });
    g.run();
  }
}

struct Caps {
  std::vector<std::size_t> ln, jd, size;  // indexed by distance from the antireduct
  std::vector<mpz_class> budget;           // -1 when unbounded
};

Caps derive_caps(const Net& q, int k, std::size_t n, int m, std::size_t size_cap) {
  Caps c;
  std::size_t kk = static_cast<std::size_t>(k);
  c.ln.assign(kk + 1, kUnbounded);
  c.jd.assign(kk + 1, kUnbounded);
  c.size.assign(kk + 1, kUnbounded);
  c.budget.assign(kk + 1, mpz_class(-1));
  c.ln[0] = n;
  c.jd[0] = static_cast<std::size_t>(m);
  for (std::size_t d = 0; d < kk; ++d) {
    if (c.ln[d] <= kCapCeiling) {
      mpz_class v = phi(c.ln[d]);
      if (v <= kCapCeiling) c.ln[d + 1] = v.get_ui();
      if (c.jd[d] <= kCapCeiling) {
        mpz_class t = theta(c.ln[d], mpz_class(static_cast<unsigned long>(c.jd[d])));
        if (t <= kCapCeiling) c.jd[d + 1] = t.get_ui();
      }
    }
  }
  mpz_class s = static_cast<unsigned long>(size(q));
  bool bounded = true;
  c.budget[kk] = s;
  for (std::size_t d = kk; d-- > 0;) {
    if (!bounded || c.ln[d] == kUnbounded || c.jd[d] == kUnbounded) {
      bounded = false;
      continue;
    }
    s = psi_size_ln_jd(2 * (c.ln[d] + 1) * s, c.ln[d], mpz_class(static_cast<unsigned long>(c.jd[d])));
    c.budget[d] = s;
  }
  for (std::size_t d = 0; d <= kk; ++d) {
    std::size_t lim = c.budget[d] < 0 ? kUnbounded : clamp_size(c.budget[d]);
    if (size_cap) lim = std::min(lim, size_cap);
    c.size[d] = lim;
  }
  return c;
}

}  // namespace

AntireductSet antireducts_one_step(const Net& q, std::size_t n, int m, const SearchOptions& opts) {
  return antireducts(q, 1, n, m, opts);
}

AntireductSet antireducts(const Net& q, int k, std::size_t n, int m, const SearchOptions& opts) {
  if (k < 0 || m < 0) throw Error(Errc::CapExceeded, "negative step count or jump-degree cap");
  require_valid(q);
  bool cyclic = !is_acyclic(q).acyclic;
  if (cyclic && opts.refuse_cyclic_target) throw Error(Errc::CyclicTarget, "target net is cyclic");
  AntireductSet out;
  Caps caps = derive_caps(q, k, n, m, opts.size_cap);
  std::map<std::string, Net> current;
  std::size_t kk = static_cast<std::size_t>(k);
  if (k == 0) {
    current.emplace(canonical_key(q), q);
    finish(out, current);
    return out;
  }
  // Level searches re-derive q itself as the identity antireduct under their own caps.
  current.emplace(canonical_key(q), q);
  std::size_t total = 0;
  for (std::size_t step = 1; step <= kk; ++step) {
    std::size_t d = kk - step;
    LevelStats st;
    st.ln_cap = caps.ln[d];
    st.jd_cap = caps.jd[d];
    st.size_limit = caps.size[d];
    st.size_budget = caps.budget[d];
    Level L{caps.ln[d], caps.jd[d], caps.size[d], &st, &total, opts.candidate_cap};
    std::map<std::string, Net> next;
    for (const auto& [key, target] : current) one_level(target, L, opts.policy, next);
    out.levels.push_back(st);
    current = std::move(next);
  }
  finish(out, current);
  return out;
}

// ---- forward reduction helpers ----

std::set<std::string> one_step_reducts(const Net& p, RedirectPolicy policy) {
  std::set<std::string> out;
  for (auto& [k, n] : reducts_by_subsets(p, policy, [](std::size_t) { return true; })) out.insert(k);
  return out;
}

bool reduces_to(const Net& p, const Net& q, int k, RedirectPolicy policy) {
  std::string qkey = canonical_key(q);
  std::size_t sq = size(q);
  std::map<std::string, Net> frontier{{canonical_key(p), p}};
  std::set<std::string> seen;
  for (int i = 0;; ++i) {
    if (frontier.count(qkey)) return true;
    if (i == k) return false;
    std::map<std::string, Net> next;
    for (const auto& [key, net] : frontier) {
      if (!seen.insert(key).second) continue;
      std::size_t sp = size(net);
      auto ok = [&](std::size_t cuts) { return sp >= sq + 2 * cuts; };
      for (auto& [k2, r] : reducts_by_subsets(net, policy, ok))
        if (size(r) >= sq) next.emplace(k2, std::move(r));
    }
    frontier = std::move(next);
  }
}

bool within_alphabet(const Net& p, int vars, int labels) {
  KindCounts k = count_kinds(p);
  auto at = [&](Kind x) { return k.n[static_cast<std::size_t>(x)]; };
  int units = at(Kind::One) + at(Kind::Bot) + at(Kind::Coweak) + at(Kind::Weak);
  return at(Kind::Port) == 0 && at(Kind::Var) <= 2 * vars && units <= labels;
}

// ---- brute-force oracle ----

namespace {

struct Code {
  Kind kind;
  int arity;
  auto operator<=>(const Code&) const = default;
};

Kind root_kind(const std::vector<Code>& t) { return t.front().kind; }

bool redex_shaped(Kind a, int na, Kind b, int nb) {
  if (a == Kind::Var || b == Kind::Var) return true;
  if (a > b) {
    std::swap(a, b);
    std::swap(na, nb);
  }
  if (a == Kind::One && b == Kind::Bot) return true;
  if (a == Kind::Coweak && b == Kind::Weak) return true;
  if (a == Kind::Tensor && b == Kind::Par) return na == nb;
  if (a == Kind::Bang && b == Kind::Quest) return na == nb;
  return false;
}

class Oracle {
 public:
  Oracle(const Net& q, int k, std::size_t n, int m, const OracleOptions& o)
      : q_(q), k_(k), n_(n), m_(m), o_(o), qkey_(canonical_key(q)) {
    qk_ = count_kinds(q);
    for (const auto& c : q.conclusions) qroots_.push_back(c.kind);
    for (std::size_t i = 0; i < q.cuts.size(); ++i) {
      const Cut& c = q.cuts[i];
      if (!redex_shaped(c.left.kind, static_cast<int>(c.left.kids.size()), c.right.kind,
                        static_cast<int>(c.right.kids.size())))
        ++q_stuck_;
    }
  }

  AntireductSet run() {
    std::size_t sq = size(q_);
    for (std::size_t s = sq; s <= o_.size_cap; s += 2) {
      total_ = s;
      e_ = (s - sq) / 2;
      std::size_t c = q_.conclusions.size();
      for (std::size_t cuts = 0; c + 2 * cuts <= s; ++cuts) {
        roots_ = c + 2 * cuts;
        trees_.assign(roots_, {});
        counts_ = KindCounts{};
        stuck_ = 0;
        shaped_ = 0;
        gen_root(0, 0);
      }
    }
    AntireductSet out;
    finish(out, found_);
    out.levels.push_back(stats_);
    return out;
  }

 private:
  const Net& q_;
  int k_;
  std::size_t n_;
  int m_;
  OracleOptions o_;
  std::string qkey_;
  KindCounts qk_;
  std::vector<Kind> qroots_;
  int q_stuck_ = 0;
  std::size_t total_ = 0, e_ = 0, roots_ = 0;
  std::vector<std::vector<Code>> trees_;
  KindCounts counts_;
  int stuck_ = 0, shaped_ = 0;
  LevelStats stats_;
  std::map<std::string, Net> found_;
  std::set<std::string> seen_;

  std::size_t used() const {
    std::size_t u = 0;
    for (const auto& t : trees_) u += t.size();
    return u;
  }

  int at(Kind x) const { return counts_.n[static_cast<std::size_t>(x)]; }
  int units() const { return at(Kind::One) + at(Kind::Bot) + at(Kind::Coweak) + at(Kind::Weak); }

  // Reduction removes nodes in dual pairs, so these differences are invariant.
  bool balanced() const {
    auto diff = [](const KindCounts& k, Kind a, Kind b) {
      return k.n[static_cast<std::size_t>(a)] - k.n[static_cast<std::size_t>(b)];
    };
    for (auto [a, b] : {std::pair{Kind::Tensor, Kind::Par}, std::pair{Kind::Bang, Kind::Quest},
                        std::pair{Kind::One, Kind::Bot}, std::pair{Kind::Coweak, Kind::Weak}})
      if (diff(counts_, a, b) != diff(qk_, a, b)) return false;
    for (std::size_t i = 0; i < counts_.n.size(); ++i)
      if (counts_.n[i] < qk_.n[i]) return false;
    return at(Kind::Var) % 2 == 0;
  }

  void gen_root(std::size_t r, std::size_t u) {
    if (r == roots_) {
      if (u == total_ && balanced() && (k_ != 1 || static_cast<std::size_t>(shaped_) >= e_)) expand();
      return;
    }
    gen_node(r, u, 1);
  }

  // pending: nodes still owed to the current tree
  void gen_node(std::size_t r, std::size_t u, std::size_t pending) {
    if (pending == 0) {
      if (!root_done(r)) return;
      int old_stuck = stuck_, old_shaped = shaped_;
      bool ok = true;
      std::size_t c = q_.conclusions.size();
      if (r >= c && (r - c) % 2 == 1) {
        const auto& l = trees_[r - 1];
        const auto& t = trees_[r];
        if (redex_shaped(l[0].kind, l[0].arity, t[0].kind, t[0].arity)) ++shaped_;
        else ++stuck_;
        ok = stuck_ <= q_stuck_;
      }
      if (ok) gen_root(r + 1, u);
      stuck_ = old_stuck;
      shaped_ = old_shaped;
      return;
    }
    std::size_t left_roots = roots_ - r - 1;
    if (u + pending + left_roots > total_) return;
    auto& t = trees_[r];
    auto leaf = [&](Kind kd) {
      t.push_back({kd, 0});
      ++counts_.n[static_cast<std::size_t>(kd)];
      gen_node(r, u + 1, pending - 1);
      --counts_.n[static_cast<std::size_t>(kd)];
      t.pop_back();
    };
    if (at(Kind::Var) < 2 * o_.vars) leaf(Kind::Var);
    if (units() < o_.labels)
      for (Kind kd : {Kind::One, Kind::Bot, Kind::Coweak, Kind::Weak}) leaf(kd);
    for (Kind kd : {Kind::Tensor, Kind::Par, Kind::Bang, Kind::Quest}) {
      for (std::size_t a = 1; u + 1 + pending - 1 + a + left_roots <= total_; ++a) {
        t.push_back({kd, static_cast<int>(a)});
        ++counts_.n[static_cast<std::size_t>(kd)];
        gen_node(r, u + 1, pending - 1 + a);
        --counts_.n[static_cast<std::size_t>(kd)];
        t.pop_back();
      }
    }
  }

  bool root_done(std::size_t r) const {
    std::size_t c = q_.conclusions.size();
    if (r < c) {
      Kind want = qroots_[r], got = root_kind(trees_[r]);
      return got == want || got == Kind::Var;
    }
    std::size_t j = (r - c) / 2;
    if ((r - c) % 2 == 0) {
      // left side; cuts are ordered, so compare with the previous left side
      if (j > 0 && trees_[r] < trees_[r - 2]) return false;
      return true;
    }
    if (trees_[r] < trees_[r - 1]) return false;
    if (j > 0 && trees_[r - 1] == trees_[r - 3] && trees_[r] < trees_[r - 2]) return false;
    return true;
  }

  Tree decode(const std::vector<Code>& codes, std::size_t& i, int& vars, int& units) const {
    const Code& c = codes[i++];
    if (c.kind == Kind::Var) return Tree::var("#" + std::to_string(vars++));
    if (is_leaf(c.kind)) return Tree::leaf(c.kind, "u" + std::to_string(++units));
    std::vector<Tree> kids;
    for (int a = 0; a < c.arity; ++a) kids.push_back(decode(codes, i, vars, units));
    return Tree::node(c.kind, std::move(kids));
  }

  void expand() {
    Net skel;
    int vars = 0, units = 0;
    std::size_t c = q_.conclusions.size();
    for (std::size_t r = 0; r < roots_; ++r) {
      std::size_t i = 0;
      Tree t = decode(trees_[r], i, vars, units);
      if (r < c) skel.conclusions.push_back(std::move(t));
      else if ((r - c) % 2 == 0) skel.cuts.push_back(Cut{std::move(t), Tree{}});
      else skel.cuts.back().right = std::move(t);
    }
    // Pair the variable slots into axioms.
    std::vector<int> mate(static_cast<std::size_t>(vars), -1);
    std::function<void()> match = [&]() {
      int first = -1;
      for (int i = 0; i < vars; ++i)
        if (mate[static_cast<std::size_t>(i)] < 0) {
          first = i;
          break;
        }
      if (first < 0) {
        with_matching(skel, mate);
        return;
      }
      for (int j = first + 1; j < vars; ++j) {
        if (mate[static_cast<std::size_t>(j)] >= 0) continue;
        mate[static_cast<std::size_t>(first)] = j;
        mate[static_cast<std::size_t>(j)] = first;
        match();
        mate[static_cast<std::size_t>(first)] = -1;
        mate[static_cast<std::size_t>(j)] = -1;
      }
    };
    match();
  }

  static void rename_vars(Tree& t, const std::vector<int>& mate) {
    if (t.kind == Kind::Var) {
      int i = std::stoi(t.name.substr(1));
      int lo = std::min(i, mate[static_cast<std::size_t>(i)]);
      t.name = "v" + std::to_string(lo) + (i == lo ? "" : "*");
    }
    for (auto& k : t.kids) rename_vars(k, mate);
  }

  void with_matching(const Net& skel, const std::vector<int>& mate) {
    Net net = skel;
    for (auto& t : net.conclusions) rename_vars(t, mate);
    for (auto& c : net.cuts) {
      rename_vars(c.left, mate);
      rename_vars(c.right, mate);
    }
    Flat f(net);
    std::vector<std::string> labels;
    for (const auto& nd : f.nodes)
      if (is_negative_leaf(nd.kind)) labels.push_back(nd.name);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == labels.size()) {
        consider(net);
        return;
      }
      for (const auto& nd : f.nodes) {
        net.jumps[labels[i]] = nd.addr;
        rec(i + 1);
      }
      net.jumps.erase(labels[i]);
    };
    rec(0);
  }

  void consider(const Net& p) {
    if (++stats_.visited > o_.candidate_cap)
      throw Error(Errc::CapExceeded, "oracle visited more than " + std::to_string(o_.candidate_cap) + " candidates");
    if (!validate_net(p).empty()) return;
    if (jump_degree(p).max > m_) {
      ++stats_.over_caps;
      return;
    }
    Flat f(p);
    if (!is_acyclic(f).acyclic) {
      ++stats_.refused_cyclic;
      return;
    }
    if (max_path_length(f).ln > n_) {
      ++stats_.over_caps;
      return;
    }
    std::string key = canonical_key(p);
    if (!seen_.insert(key).second) return;
    if (!reduces_to(p, q_, k_, o_.policy)) {
      ++stats_.rejected;
      return;
    }
    ++stats_.found;
    found_.emplace(std::move(key), p);
  }
};

}  // namespace

AntireductSet brute_force_antireducts(const Net& q, int k, std::size_t n, int m, const OracleOptions& opts) {
  require_valid(q);
  if (k == 0) {
    AntireductSet out;
    std::map<std::string, Net> one{{canonical_key(q), q}};
    finish(out, one);
    out.levels.push_back(LevelStats{});
    return out;
  }
  Oracle o(q, k, n, m, opts);
  return o.run();
}

}  // namespace pnet
