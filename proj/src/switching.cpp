#include "pnet/switching.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace pnet {

const char* edge_kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::Axiom: return "axiom";
    case EdgeKind::Tensor: return "tensor";
    case EdgeKind::Par: return "par";
    case EdgeKind::Jump: return "jump";
    case EdgeKind::Cut: return "cut";
    case EdgeKind::Box: return "box";
  }
  return "?";
}

int Switching::choice_for(int node) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == node) return choice[i];
  return 0;
}

namespace {

void add_edge(SwitchingGraph& g, Edge e) {
  int idx = static_cast<int>(g.edges.size());
  g.edges.push_back(e);
  g.adj[static_cast<std::size_t>(e.a)].emplace_back(e.b, idx);
  if (e.a != e.b) g.adj[static_cast<std::size_t>(e.b)].emplace_back(e.a, idx);
}

SwitchingGraph build(const Flat& f, const Switching* s) {
  SwitchingGraph g;
  g.vertices = f.size();
  g.adj.resize(f.nodes.size());
  std::map<std::string, int> box0;
  for (std::size_t v = 0; v < f.nodes.size(); ++v)
    if (f.nodes[v].kind == Kind::Port && f.nodes[v].port == 0) box0[f.nodes[v].name] = static_cast<int>(v);

  std::size_t sw = 0;
  for (std::size_t v = 0; v < f.nodes.size(); ++v) {
    const auto& nd = f.nodes[v];
    int iv = static_cast<int>(v);
    if (nd.kind == Kind::Var) {
      auto it = f.atom.find(dual_name(nd.name));
      if (it != f.atom.end() && it->second > iv) add_edge(g, Edge{EdgeKind::Axiom, iv, it->second});
    } else if (is_multiplicative(nd.kind)) {
      for (int k : nd.kids) add_edge(g, Edge{EdgeKind::Tensor, iv, k});
    } else if (is_switched(nd.kind)) {
      if (s) {
        int c = s->choice[sw++];
        add_edge(g, Edge{EdgeKind::Par, iv, nd.kids[static_cast<std::size_t>(c - 1)]});
      } else {
        for (int k : nd.kids) add_edge(g, Edge{EdgeKind::Par, iv, k});
      }
    } else if (nd.kind == Kind::Port && nd.port > 0) {
      auto it = box0.find(nd.name);
      if (it != box0.end())
        add_edge(g, Edge{EdgeKind::Box, std::min(iv, it->second), std::max(iv, it->second)});
    }
  }
  for (const auto& [label, target] : f.jump) {
    auto it = f.atom.find(label);
    if (it != f.atom.end()) add_edge(g, Edge{EdgeKind::Jump, it->second, target});
  }
  for (const auto& [l, r] : f.cut_roots) add_edge(g, Edge{EdgeKind::Cut, std::min(l, r), std::max(l, r)});
  return g;
}

std::vector<int> switched_nodes(const Flat& f) {
  std::vector<int> out;
  for (std::size_t v = 0; v < f.nodes.size(); ++v)
    if (is_switched(f.nodes[v].kind)) out.push_back(static_cast<int>(v));
  return out;
}

}  // namespace

SwitchingGraph union_graph(const Flat& f) { return build(f, nullptr); }
SwitchingGraph switching_graph(const Flat& f, const Switching& s) { return build(f, &s); }

std::size_t switching_count(const Flat& f, std::size_t cap) {
  std::size_t n = 1;
  for (int v : switched_nodes(f)) {
    std::size_t k = f.nodes[static_cast<std::size_t>(v)].kids.size();
    if (k == 0) continue;
    if (n > cap / k) return cap;
    n *= k;
  }
  return std::min(n, cap);
}

Switching first_switching(const Flat& f) {
  Switching s;
  s.nodes = switched_nodes(f);
  s.choice.assign(s.nodes.size(), 1);
  return s;
}

bool next_switching(const Flat& f, Switching& s) {
  for (std::size_t i = s.nodes.size(); i-- > 0;) {
    int arity = static_cast<int>(f.nodes[static_cast<std::size_t>(s.nodes[i])].kids.size());
    if (s.choice[i] < arity) {
      ++s.choice[i];
      for (std::size_t j = i + 1; j < s.nodes.size(); ++j) s.choice[j] = 1;
      return true;
    }
  }
  return false;
}

void for_each_switching(const Flat& f, const std::function<bool(const Switching&)>& visit) {
  Switching s = first_switching(f);
  do {
    if (!visit(s)) return;
  } while (next_switching(f, s));
}

std::vector<Switching> switchings(const Net& net) {
  Flat f(net);
  std::vector<Switching> out;
  for_each_switching(f, [&](const Switching& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

Path Path::reversed() const {
  Path r;
  r.verts.assign(verts.rbegin(), verts.rend());
  r.edges.assign(edges.rbegin(), edges.rend());
  return r;
}

bool is_trail(const SwitchingGraph& g, const Path& p) {
  if (p.verts.size() != p.edges.size() + 1) return false;
  std::set<Edge> present(g.edges.begin(), g.edges.end());
  std::set<Edge> used;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    const Edge& e = p.edges[i];
    if (!present.count(e) || !used.insert(e).second) return false;
    bool fits = (e.a == p.verts[i] && e.b == p.verts[i + 1]) || (e.b == p.verts[i] && e.a == p.verts[i + 1]);
    if (!fits) return false;
  }
  return true;
}

bool is_path_of_net(const Flat& f, const Path& p, Switching* implied) {
  SwitchingGraph g = union_graph(f);
  if (!is_trail(g, p)) return false;
  std::map<int, int> chosen;
  for (const Edge& e : p.edges) {
    if (e.kind != EdgeKind::Par) continue;
    auto [it, fresh] = chosen.emplace(e.a, e.b);
    if (!fresh && it->second != e.b) return false;
  }
  if (implied) {
    *implied = first_switching(f);
    for (std::size_t i = 0; i < implied->nodes.size(); ++i) {
      auto it = chosen.find(implied->nodes[i]);
      if (it == chosen.end()) continue;
      const auto& kids = f.nodes[static_cast<std::size_t>(implied->nodes[i])].kids;
      implied->choice[i] = static_cast<int>(std::find(kids.begin(), kids.end(), it->second) - kids.begin()) + 1;
    }
  }
  return true;
}

namespace {

constexpr std::size_t kSwitchingSweepCap = std::size_t{1} << 12;

Switching implied_switching(const Flat& f, const std::vector<int>& chosen) {
  Switching s = first_switching(f);
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    int c = chosen[static_cast<std::size_t>(s.nodes[i])];
    if (c < 0) continue;
    const auto& kids = f.nodes[static_cast<std::size_t>(s.nodes[i])].kids;
    s.choice[i] = static_cast<int>(std::find(kids.begin(), kids.end(), c) - kids.begin()) + 1;
  }
  return s;
}

// Depth-first search over trails of the union graph, at most one premise
// edge per switched node.
struct TrailSearch {
  const Flat& f;
  SwitchingGraph g;
  std::vector<char> used;
  std::vector<int> chosen;
  std::vector<int> verts;
  std::vector<int> edges;

  explicit TrailSearch(const Flat& fl) : f(fl), g(union_graph(fl)) {
    used.assign(g.edges.size(), 0);
    chosen.assign(fl.nodes.size(), -1);
  }

  bool can_use(int ei) const {
    if (used[static_cast<std::size_t>(ei)]) return false;
    const Edge& e = g.edges[static_cast<std::size_t>(ei)];
    return e.kind != EdgeKind::Par || chosen[static_cast<std::size_t>(e.a)] < 0;
  }
  void push(int ei, int w) {
    const Edge& e = g.edges[static_cast<std::size_t>(ei)];
    used[static_cast<std::size_t>(ei)] = 1;
    if (e.kind == EdgeKind::Par) chosen[static_cast<std::size_t>(e.a)] = e.b;
    verts.push_back(w);
    edges.push_back(ei);
  }
  void pop() {
    int ei = edges.back();
    const Edge& e = g.edges[static_cast<std::size_t>(ei)];
    used[static_cast<std::size_t>(ei)] = 0;
    if (e.kind == EdgeKind::Par) chosen[static_cast<std::size_t>(e.a)] = -1;
    verts.pop_back();
    edges.pop_back();
  }
  Path current() const {
    Path p;
    p.verts = verts;
    for (int ei : edges) p.edges.push_back(g.edges[static_cast<std::size_t>(ei)]);
    return p;
  }
};

}  // namespace

AcyclicResult is_acyclic(const Net& net) { return is_acyclic(Flat(net)); }

AcyclicResult is_acyclic(const Flat& f) {
  AcyclicResult res;
  if (switching_count(f, kSwitchingSweepCap + 1) <= kSwitchingSweepCap) {
    for_each_switching(f, [&](const Switching& s) {
      SwitchingGraph g = switching_graph(f, s);
      std::vector<int> parent(static_cast<std::size_t>(g.vertices));
      std::iota(parent.begin(), parent.end(), 0);
      std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
      };
      // forest built so far, to recover the cycle
      std::vector<std::vector<std::pair<int, int>>> forest(static_cast<std::size_t>(g.vertices));
      for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
        const Edge& e = g.edges[ei];
        int ra = find(e.a), rb = find(e.b);
        if (ra != rb) {
          parent[static_cast<std::size_t>(ra)] = rb;
          forest[static_cast<std::size_t>(e.a)].emplace_back(e.b, static_cast<int>(ei));
          forest[static_cast<std::size_t>(e.b)].emplace_back(e.a, static_cast<int>(ei));
          continue;
        }
        // path e.b ~> e.a in the forest, then close with e
        std::vector<int> prev(static_cast<std::size_t>(g.vertices), -2), pedge(static_cast<std::size_t>(g.vertices), -1);
        std::deque<int> q{e.b};
        prev[static_cast<std::size_t>(e.b)] = -1;
        while (!q.empty()) {
          int u = q.front();
          q.pop_front();
          if (u == e.a) break;
          for (auto [w, wi] : forest[static_cast<std::size_t>(u)]) {
            if (prev[static_cast<std::size_t>(w)] != -2) continue;
            prev[static_cast<std::size_t>(w)] = u;
            pedge[static_cast<std::size_t>(w)] = wi;
            q.push_back(w);
          }
        }
        Path cyc;
        cyc.verts.push_back(e.a);
        for (int u = e.a; u != e.b; u = prev[static_cast<std::size_t>(u)]) {
          cyc.edges.push_back(g.edges[static_cast<std::size_t>(pedge[static_cast<std::size_t>(u)])]);
          cyc.verts.push_back(prev[static_cast<std::size_t>(u)]);
        }
        cyc.edges.push_back(e);
        cyc.verts.push_back(e.a);
        res.acyclic = false;
        res.cycle = std::move(cyc);
        res.switching = s;
        return false;
      }
      return true;
    });
    return res;
  }
  TrailSearch ts(f);
  std::function<bool(int, int)> dfs = [&](int start, int u) -> bool {
    for (auto [w, ei] : ts.g.adj[static_cast<std::size_t>(u)]) {
      if (!ts.can_use(ei)) continue;
      bool on_path = std::find(ts.verts.begin(), ts.verts.end(), w) != ts.verts.end();
      if (on_path && w != start) continue;
      ts.push(ei, w);
      if (w == start) return true;
      if (dfs(start, w)) return true;
      ts.pop();
    }
    return false;
  };
  for (int s = 0; s < f.size(); ++s) {
    ts.verts = {s};
    if (dfs(s, s)) {
      res.acyclic = false;
      res.cycle = ts.current();
      res.switching = implied_switching(f, ts.chosen);
      return res;
    }
  }
  return res;
}

LengthResult max_path_length(const Net& net) { return max_path_length(Flat(net)); }

LengthResult max_path_length(const Flat& f) {
  if (switching_count(f, kSwitchingSweepCap + 1) <= kSwitchingSweepCap && is_acyclic(f).acyclic)
    return max_path_length_forest(f);
  return max_path_length_trails(f);
}

LengthResult max_path_length_forest(const Flat& f) {
  LengthResult best;
  best.switching = first_switching(f);
  if (f.size() > 0) best.witness.verts = {0};
  for_each_switching(f, [&](const Switching& s) {
    SwitchingGraph g = switching_graph(f, s);
    std::size_t n = static_cast<std::size_t>(g.vertices);
    std::vector<int> comp(n, -1);
    auto bfs = [&](int src, std::vector<int>& dist, std::vector<int>& pedge) {
      dist.assign(n, -1);
      pedge.assign(n, -1);
      std::deque<int> q{src};
      dist[static_cast<std::size_t>(src)] = 0;
      int far = src;
      while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        if (dist[static_cast<std::size_t>(u)] > dist[static_cast<std::size_t>(far)]) far = u;
        for (auto [w, ei] : g.adj[static_cast<std::size_t>(u)]) {
          if (dist[static_cast<std::size_t>(w)] >= 0) continue;
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
          pedge[static_cast<std::size_t>(w)] = ei;
          q.push_back(w);
        }
      }
      return far;
    };
    std::vector<int> dist, pedge;
    std::vector<char> seen(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
      if (seen[v]) continue;
      int a = bfs(static_cast<int>(v), dist, pedge);
      for (std::size_t u = 0; u < n; ++u)
        if (dist[u] >= 0) seen[u] = 1;
      int b = bfs(a, dist, pedge);
      std::size_t d = static_cast<std::size_t>(dist[static_cast<std::size_t>(b)]);
      if (d > best.ln) {
        best.ln = d;
        best.switching = s;
        Path p;
        p.verts.push_back(b);
        for (int u = b; u != a;) {
          const Edge& e = g.edges[static_cast<std::size_t>(pedge[static_cast<std::size_t>(u)])];
          p.edges.push_back(e);
          u = e.other(u);
          p.verts.push_back(u);
        }
        best.witness = p.reversed();
      }
    }
    return true;
  });
  return best;
}

LengthResult max_path_length_trails(const Flat& f) {
  LengthResult best;
  best.switching = first_switching(f);
  if (f.size() > 0) best.witness.verts = {0};
  TrailSearch ts(f);
  std::function<void(int)> dfs = [&](int u) {
    if (ts.edges.size() > best.ln) {
      best.ln = ts.edges.size();
      best.witness = ts.current();
      best.switching = implied_switching(f, ts.chosen);
    }
    for (auto [w, ei] : ts.g.adj[static_cast<std::size_t>(u)]) {
      if (!ts.can_use(ei)) continue;
      ts.push(ei, w);
      dfs(w);
      ts.pop();
    }
  };
  for (int s = 0; s < f.size(); ++s) {
    ts.verts = {s};
    dfs(s);
  }
  return best;
}

std::vector<Path> enumerate_trails(const Flat& f, const Switching& s, std::optional<int> from,
                                   std::size_t edge_cap) {
  SwitchingGraph g = switching_graph(f, s);
  if (g.edges.size() > edge_cap)
    throw Error(Errc::CapExceeded, std::to_string(g.edges.size()) + " edges > " + std::to_string(edge_cap));
  std::vector<Path> out;
  std::vector<char> used(g.edges.size(), 0);
  Path cur;
  auto keep = [&](const Path& p) {
    if (from) return true;
    Path r = p.reversed();
    return std::tie(p.verts, p.edges) <= std::tie(r.verts, r.edges);
  };
  std::function<void(int)> dfs = [&](int u) {
    if (keep(cur)) out.push_back(cur);
    for (auto [w, ei] : g.adj[static_cast<std::size_t>(u)]) {
      if (used[static_cast<std::size_t>(ei)]) continue;
      used[static_cast<std::size_t>(ei)] = 1;
      cur.verts.push_back(w);
      cur.edges.push_back(g.edges[static_cast<std::size_t>(ei)]);
      dfs(w);
      cur.verts.pop_back();
      cur.edges.pop_back();
      used[static_cast<std::size_t>(ei)] = 0;
    }
  };
  for (int v = 0; v < g.vertices; ++v) {
    if (from && *from != v) continue;
    cur.verts = {v};
    cur.edges.clear();
    dfs(v);
  }
  return out;
}

std::size_t max_trail_by_enumeration(const Flat& f, std::size_t edge_cap) {
  std::size_t best = 0;
  for_each_switching(f, [&](const Switching& s) {
    for (const Path& p : enumerate_trails(f, s, std::nullopt, edge_cap)) best = std::max(best, p.length());
    return true;
  });
  return best;
}

}  // namespace pnet
