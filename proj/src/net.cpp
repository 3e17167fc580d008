#include "pnet/net.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

#include "pnet/syntax.hpp"

namespace pnet {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Var: return "var";
    case Kind::One: return "one";
    case Kind::Bot: return "bot";
    case Kind::Coweak: return "coweak";
    case Kind::Weak: return "weak";
    case Kind::Tensor: return "tensor";
    case Kind::Par: return "par";
    case Kind::Bang: return "bang";
    case Kind::Quest: return "quest";
    case Kind::Port: return "port";
  }
  return "?";
}

bool is_leaf(Kind k) {
  return k == Kind::Var || k == Kind::One || k == Kind::Bot || k == Kind::Coweak ||
         k == Kind::Weak || k == Kind::Port;
}
bool is_positive_leaf(Kind k) { return k == Kind::One || k == Kind::Coweak; }
bool is_negative_leaf(Kind k) { return k == Kind::Bot || k == Kind::Weak; }
bool is_switched(Kind k) { return k == Kind::Par || k == Kind::Quest; }
bool is_multiplicative(Kind k) { return k == Kind::Tensor || k == Kind::Bang; }

Tree Tree::var(std::string n) {
  Tree t;
  t.kind = Kind::Var;
  t.name = std::move(n);
  return t;
}

Tree Tree::leaf(Kind k, std::string n) {
  Tree t;
  t.kind = k;
  t.name = std::move(n);
  return t;
}

Tree Tree::node(Kind k, std::vector<Tree> kids) {
  Tree t;
  t.kind = k;
  t.kids = std::move(kids);
  return t;
}

Tree Tree::port_of(std::string box, int index) {
  Tree t;
  t.kind = Kind::Port;
  t.name = std::move(box);
  t.port = index;
  return t;
}

bool Tree::operator==(const Tree& o) const {
  return kind == o.kind && name == o.name && port == o.port && kids == o.kids;
}

std::string dual_name(const std::string& var) {
  if (!var.empty() && var.back() == '*') return var.substr(0, var.size() - 1);
  return var + "*";
}

std::string port_key(const std::string& box, int index) {
  return box + "#" + std::to_string(index);
}

std::string addr_string(const Addr& a) {
  std::string s;
  if (a.in_cut) {
    s = "c" + std::to_string(a.index + 1) + (a.right ? ".R" : ".L");
  } else {
    s = "t" + std::to_string(a.index + 1);
  }
  for (int i : a.path) s += "." + std::to_string(i);
  return s;
}

const char* errc_name(Errc e) {
  switch (e) {
    case Errc::DuplicateAtom: return "DuplicateAtom";
    case Errc::UnpairedVariable: return "UnpairedVariable";
    case Errc::MissingJump: return "MissingJump";
    case Errc::BadJumpTarget: return "BadJumpTarget";
    case Errc::NullaryConnective: return "NullaryConnective";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::NoSuchCut: return "NoSuchCut";
    case Errc::NotReducible: return "NotReducible";
    case Errc::EvanescentSelfJump: return "EvanescentSelfJump";
    case Errc::CyclicJumpChain: return "CyclicJumpChain";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::NotMultiplicativeStep: return "NotMultiplicativeStep";
    case Errc::CyclicInput: return "CyclicInput";
    case Errc::PortOutsideQuest: return "PortOutsideQuest";
    case Errc::PortArityMismatch: return "PortArityMismatch";
    case Errc::JumpToAuxPort: return "JumpToAuxPort";
    case Errc::JumpAcrossDepth: return "JumpAcrossDepth";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::NoProvenance: return "NoProvenance";
    case Errc::CyclicTarget: return "CyclicTarget";
    case Errc::BudgetOverflow: return "BudgetOverflow";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& msg)
    : std::runtime_error(std::string(errc_name(code)) + (msg.empty() ? "" : ": " + msg)),
      code_(code) {}

const Tree& root_of(const Net& net, const Addr& a) {
  if (a.in_cut) {
    const Cut& c = net.cuts.at(static_cast<std::size_t>(a.index));
    return a.right ? c.right : c.left;
  }
  return net.conclusions.at(static_cast<std::size_t>(a.index));
}

const Tree* resolve(const Net& net, const Addr& a) {
  if (a.index < 0) return nullptr;
  if (a.in_cut ? a.index >= static_cast<int>(net.cuts.size())
               : a.index >= static_cast<int>(net.conclusions.size()))
    return nullptr;
  const Tree* t = &root_of(net, a);
  for (int i : a.path) {
    if (i < 1 || i > static_cast<int>(t->kids.size())) return nullptr;
    t = &t->kids[static_cast<std::size_t>(i - 1)];
  }
  return t;
}

namespace {

void collect_atoms(const Tree& t, const Addr& at, std::vector<std::pair<const Tree*, Addr>>& out,
                   std::vector<Issue>& issues) {
  if (t.kind == Kind::Var || is_positive_leaf(t.kind) || is_negative_leaf(t.kind) ||
      t.kind == Kind::Port) {
    out.emplace_back(&t, at);
    return;
  }
  if (t.kids.empty()) issues.push_back({Errc::NullaryConnective, addr_string(at)});
  Addr sub = at;
  for (std::size_t i = 0; i < t.kids.size(); ++i) {
    sub.path.push_back(static_cast<int>(i + 1));
    collect_atoms(t.kids[i], sub, out, issues);
    sub.path.pop_back();
  }
}

template <class F>
void for_each_root(const Net& net, F&& f) {
  for (std::size_t i = 0; i < net.conclusions.size(); ++i) {
    Addr a;
    a.index = static_cast<int>(i);
    f(net.conclusions[i], a);
  }
  for (std::size_t i = 0; i < net.cuts.size(); ++i) {
    Addr a;
    a.in_cut = true;
    a.index = static_cast<int>(i);
    f(net.cuts[i].left, a);
    a.right = true;
    f(net.cuts[i].right, a);
  }
}

}  // namespace

std::vector<Issue> validate_net(const Net& net) {
  std::vector<Issue> issues;
  std::vector<std::pair<const Tree*, Addr>> atoms;
  for_each_root(net, [&](const Tree& t, const Addr& a) { collect_atoms(t, a, atoms, issues); });

  std::map<std::string, int> seen;
  std::set<std::string> vars, negatives;
  for (auto& [t, a] : atoms) {
    std::string key = t->kind == Kind::Port ? port_key(t->name, t->port) : t->name;
    if (key.empty()) {
      issues.push_back({Errc::DuplicateAtom, "<empty>"});
      continue;
    }
    if (seen[key]++ == 1) issues.push_back({Errc::DuplicateAtom, key});
    if (t->kind == Kind::Var) vars.insert(t->name);
    if (is_negative_leaf(t->kind)) negatives.insert(t->name);
  }
  for (const auto& v : vars)
    if (!vars.count(dual_name(v))) issues.push_back({Errc::UnpairedVariable, v});
  for (const auto& m : negatives)
    if (!net.jumps.count(m)) issues.push_back({Errc::MissingJump, m});
  for (const auto& [label, target] : net.jumps) {
    if (!negatives.count(label) || resolve(net, target) == nullptr)
      issues.push_back({Errc::BadJumpTarget, label + " -> " + addr_string(target)});
  }
  return issues;
}

void require_valid(const Net& net) {
  auto issues = validate_net(net);
  if (!issues.empty()) throw Error(issues.front().code, issues.front().subject);
}

std::size_t size(const Tree& t) {
  std::size_t n = 1;
  for (const auto& k : t.kids) n += size(k);
  return n;
}

std::size_t size(const Net& net) {
  std::size_t n = 0;
  for (const auto& t : net.conclusions) n += size(t);
  for (const auto& c : net.cuts) n += size(c.left) + size(c.right);
  return n;
}

JumpDegree jump_degree(const Net& net) {
  JumpDegree jd;
  for (const auto& [label, target] : net.jumps) {
    int v = ++jd.per_subtree[target];
    jd.max = std::max(jd.max, v);
  }
  return jd;
}

Flat::Flat(const Net& net) {
  std::function<int(const Tree&, const Addr&, int, int, int)> add =
      [&](const Tree& t, const Addr& a, int parent, int ci, int root) -> int {
    int id = static_cast<int>(nodes.size());
    nodes.push_back(Node{t.kind, t.name, t.port, {}, parent, ci, root < 0 ? id : root, a, t.uid});
    if (t.kind == Kind::Port) {
      atom[port_key(t.name, t.port)] = id;
    } else if (is_leaf(t.kind)) {
      atom[t.name] = id;
    }
    Addr sub = a;
    int r = root < 0 ? id : root;
    for (std::size_t i = 0; i < t.kids.size(); ++i) {
      sub.path.push_back(static_cast<int>(i + 1));
      int k = add(t.kids[i], sub, id, static_cast<int>(i + 1), r);
      nodes[static_cast<std::size_t>(id)].kids.push_back(k);
      sub.path.pop_back();
    }
    return id;
  };
  for (std::size_t i = 0; i < net.conclusions.size(); ++i) {
    Addr a;
    a.index = static_cast<int>(i);
    conclusion_roots.push_back(add(net.conclusions[i], a, -1, 0, -1));
  }
  for (std::size_t i = 0; i < net.cuts.size(); ++i) {
    Addr a;
    a.in_cut = true;
    a.index = static_cast<int>(i);
    int l = add(net.cuts[i].left, a, -1, 0, -1);
    a.right = true;
    int r = add(net.cuts[i].right, a, -1, 0, -1);
    cut_roots.emplace_back(l, r);
  }
  cut_of.assign(nodes.size(), -1);
  for (std::size_t i = 0; i < cut_roots.size(); ++i) {
    cut_of[static_cast<std::size_t>(cut_roots[i].first)] = static_cast<int>(i);
    cut_of[static_cast<std::size_t>(cut_roots[i].second)] = static_cast<int>(i);
  }
  for (const auto& [label, target] : net.jumps) {
    int t = find(target);
    if (t >= 0) jump[label] = t;
  }
}

int Flat::find(const Addr& a) const {
  int id = -1;
  if (a.in_cut) {
    if (a.index < 0 || a.index >= static_cast<int>(cut_roots.size())) return -1;
    id = a.right ? cut_roots[static_cast<std::size_t>(a.index)].second
                 : cut_roots[static_cast<std::size_t>(a.index)].first;
  } else {
    if (a.index < 0 || a.index >= static_cast<int>(conclusion_roots.size())) return -1;
    id = conclusion_roots[static_cast<std::size_t>(a.index)];
  }
  for (int i : a.path) {
    const auto& k = nodes[static_cast<std::size_t>(id)].kids;
    if (i < 1 || i > static_cast<int>(k.size())) return -1;
    id = k[static_cast<std::size_t>(i - 1)];
  }
  return id;
}

// ---------------------------------------------------------------------------
// Canonical labelling: colour refinement over the net graph, then
// individualisation of the first non-trivial cell, keeping the smallest
// printed form over all leaves of the search tree.

namespace {

struct CanonGraph {
  // (label, index, neighbour) per node
  std::vector<std::vector<std::tuple<int, int, int>>> adj;
  std::vector<int> initial;
};

CanonGraph build_canon_graph(const Net& net, const Flat& f, CanonMode mode,
                             const std::map<std::string, std::string>* box_keys) {
  CanonGraph g;
  std::size_t n = f.nodes.size();
  g.adj.resize(n);
  std::vector<int> concl_index(n, 0);
  for (std::size_t i = 0; i < f.conclusion_roots.size(); ++i)
    concl_index[static_cast<std::size_t>(f.conclusion_roots[i])] = static_cast<int>(i + 1);

  using Key = std::tuple<int, int, std::string, int, int>;
  std::vector<Key> keys(n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto& nd = f.nodes[v];
    std::string bk;
    if (nd.kind == Kind::Port && box_keys) {
      auto it = box_keys->find(nd.name);
      if (it != box_keys->end()) bk = it->second;
    }
    keys[v] = Key{static_cast<int>(nd.kind), nd.port, bk, concl_index[v], f.cut_of[v] >= 0 ? 1 : 0};
  }
  std::vector<Key> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  g.initial.resize(n);
  for (std::size_t v = 0; v < n; ++v)
    g.initial[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());

  for (std::size_t v = 0; v < n; ++v) {
    const auto& nd = f.nodes[v];
    bool unordered = mode == CanonMode::ExponentialMultiset &&
                     (nd.kind == Kind::Bang || nd.kind == Kind::Quest);
    for (int k : nd.kids) {
      int idx = unordered ? 0 : f.nodes[static_cast<std::size_t>(k)].child_index;
      g.adj[v].emplace_back(0, idx, k);
      g.adj[static_cast<std::size_t>(k)].emplace_back(1, idx, static_cast<int>(v));
    }
    if (nd.kind == Kind::Var) {
      auto it = f.atom.find(dual_name(nd.name));
      if (it != f.atom.end()) g.adj[v].emplace_back(2, 0, it->second);
    }
  }
  for (const auto& [l, r] : f.cut_roots) {
    g.adj[static_cast<std::size_t>(l)].emplace_back(3, 0, r);
    g.adj[static_cast<std::size_t>(r)].emplace_back(3, 0, l);
  }
  for (const auto& [label, target] : f.jump) {
    auto it = f.atom.find(label);
    if (it == f.atom.end()) continue;
    g.adj[static_cast<std::size_t>(it->second)].emplace_back(4, 0, target);
    g.adj[static_cast<std::size_t>(target)].emplace_back(5, 0, it->second);
  }
  // ports of one box are tied to the lowest-index port present
  std::map<std::string, int> anchor;
  for (std::size_t v = 0; v < n; ++v) {
    const auto& nd = f.nodes[v];
    if (nd.kind != Kind::Port) continue;
    auto it = anchor.find(nd.name);
    if (it == anchor.end() || f.nodes[static_cast<std::size_t>(it->second)].port > nd.port)
      anchor[nd.name] = static_cast<int>(v);
  }
  for (std::size_t v = 0; v < n; ++v) {
    const auto& nd = f.nodes[v];
    if (nd.kind != Kind::Port) continue;
    int a = anchor[nd.name];
    if (a == static_cast<int>(v)) continue;
    g.adj[v].emplace_back(6, nd.port, a);
    g.adj[static_cast<std::size_t>(a)].emplace_back(7, nd.port, static_cast<int>(v));
  }
  (void)net;
  return g;
}

int count_colors(const std::vector<int>& c) {
  int m = -1;
  for (int x : c) m = std::max(m, x);
  return m + 1;
}

void refine(const CanonGraph& g, std::vector<int>& colors) {
  std::size_t n = colors.size();
  int count = count_colors(colors);
  while (true) {
    using Sig = std::pair<int, std::vector<std::tuple<int, int, int>>>;
    std::vector<Sig> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<std::tuple<int, int, int>> nb;
      nb.reserve(g.adj[v].size());
      for (auto [lab, idx, u] : g.adj[v]) nb.emplace_back(lab, idx, colors[static_cast<std::size_t>(u)]);
      std::sort(nb.begin(), nb.end());
      sig[v] = Sig{colors[v], std::move(nb)};
    }
    std::vector<const Sig*> order;
    order.reserve(n);
    for (auto& s : sig) order.push_back(&s);
    std::sort(order.begin(), order.end(), [](const Sig* a, const Sig* b) { return *a < *b; });
    std::map<const Sig*, int> rank;
    int r = -1;
    const Sig* prev = nullptr;
    for (const Sig* s : order) {
      if (!prev || *prev != *s) ++r;
      rank[s] = r;
      prev = s;
    }
    for (std::size_t v = 0; v < n; ++v) colors[v] = rank[&sig[v]];
    int nc = r + 1;
    if (nc == count) break;
    count = nc;
  }
}

struct LeafBuild {
  Net net;
  std::map<std::string, std::string> box_rename;
};

LeafBuild build_leaf(const Net& net, const Flat& f, CanonMode mode, const std::vector<int>& colors) {
  (void)net;
  LeafBuild out;
  std::vector<Addr> new_addr(f.nodes.size());
  std::map<std::string, std::string> rename;
  std::map<std::string, std::string>& box_rename = out.box_rename;
  int nv = 0, npos = 0, nneg = 0, nbox = 0;

  std::function<Tree(int, const Addr&)> build = [&](int v, const Addr& a) -> Tree {
    const auto& nd = f.nodes[static_cast<std::size_t>(v)];
    new_addr[static_cast<std::size_t>(v)] = a;
    Tree t;
    t.kind = nd.kind;
    t.port = nd.port;
    if (nd.kind == Kind::Var) {
      auto it = rename.find(nd.name);
      if (it == rename.end()) {
        std::string base = "v" + std::to_string(++nv);
        rename[nd.name] = base;
        rename[dual_name(nd.name)] = base + "*";
        t.name = base;
      } else {
        t.name = it->second;
      }
    } else if (is_positive_leaf(nd.kind)) {
      t.name = rename[nd.name] = "l" + std::to_string(++npos);
    } else if (is_negative_leaf(nd.kind)) {
      t.name = rename[nd.name] = "m" + std::to_string(++nneg);
    } else if (nd.kind == Kind::Port) {
      auto it = box_rename.find(nd.name);
      if (it == box_rename.end()) it = box_rename.emplace(nd.name, "b" + std::to_string(++nbox)).first;
      t.name = it->second;
    }
    std::vector<int> kids = nd.kids;
    if (mode == CanonMode::ExponentialMultiset && (nd.kind == Kind::Bang || nd.kind == Kind::Quest)) {
      std::sort(kids.begin(), kids.end(), [&](int x, int y) {
        return colors[static_cast<std::size_t>(x)] < colors[static_cast<std::size_t>(y)];
      });
    }
    Addr sub = a;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      sub.path.push_back(static_cast<int>(i + 1));
      t.kids.push_back(build(kids[i], sub));
      sub.path.pop_back();
    }
    return t;
  };

  for (std::size_t i = 0; i < f.conclusion_roots.size(); ++i) {
    Addr a;
    a.index = static_cast<int>(i);
    out.net.conclusions.push_back(build(f.conclusion_roots[i], a));
  }
  std::vector<std::pair<int, int>> cuts = f.cut_roots;
  for (auto& [l, r] : cuts)
    if (colors[static_cast<std::size_t>(r)] < colors[static_cast<std::size_t>(l)]) std::swap(l, r);
  std::sort(cuts.begin(), cuts.end(), [&](auto& x, auto& y) {
    return colors[static_cast<std::size_t>(x.first)] < colors[static_cast<std::size_t>(y.first)];
  });
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    Addr a;
    a.in_cut = true;
    a.index = static_cast<int>(i);
    Cut c;
    c.left = build(cuts[i].first, a);
    a.right = true;
    c.right = build(cuts[i].second, a);
    out.net.cuts.push_back(std::move(c));
  }
  for (const auto& [label, target] : f.jump)
    out.net.jumps[rename[label]] = new_addr[static_cast<std::size_t>(target)];
  return out;
}

}  // namespace

Net canonicalize(const Net& net, CanonMode mode, const std::map<std::string, std::string>* box_keys,
                 std::map<std::string, std::string>* box_rename) {
  Flat f(net);
  CanonGraph g = build_canon_graph(net, f, mode, box_keys);
  std::optional<LeafBuild> best;
  std::string best_text;
  std::size_t leaves = 0;

  std::function<void(std::vector<int>)> search = [&](std::vector<int> colors) {
    refine(g, colors);
    int nc = count_colors(colors);
    if (nc == static_cast<int>(colors.size())) {
      ++leaves;
      LeafBuild lb = build_leaf(net, f, mode, colors);
      std::string text = print_net(lb.net);
      if (!best || text < best_text) {
        best_text = std::move(text);
        best = std::move(lb);
      }
      return;
    }
    std::vector<int> cnt(static_cast<std::size_t>(nc), 0);
    for (int c : colors) ++cnt[static_cast<std::size_t>(c)];
    int cell = 0;
    while (cnt[static_cast<std::size_t>(cell)] < 2) ++cell;
    for (std::size_t v = 0; v < colors.size(); ++v) {
      if (colors[v] != cell) continue;
      std::vector<int> next(colors.size());
      for (std::size_t u = 0; u < colors.size(); ++u) next[u] = 2 * colors[u] + 1;
      next[v] = 2 * cell;
      // re-rank to 0..k-1
      std::vector<int> vals = next;
      std::sort(vals.begin(), vals.end());
      vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
      for (auto& x : next) x = static_cast<int>(std::lower_bound(vals.begin(), vals.end(), x) - vals.begin());
      search(std::move(next));
      if (leaves >= kCanonLeafCap) break;
    }
  };
  search(g.initial);
  if (box_rename) *box_rename = best->box_rename;
  return best->net;
}

std::string canonical_key(const Net& net, CanonMode mode) {
  return print_net(canonicalize(net, mode));
}

bool alpha_equal(const Net& a, const Net& b, CanonMode mode) {
  return canonical_key(a, mode) == canonical_key(b, mode);
}

}  // namespace pnet
