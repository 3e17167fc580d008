#include "pnet/transport.hpp"

#include <algorithm>
#include <map>

namespace pnet {

namespace {

void require_step(const ReductionRecord& rec) {
  if (rec.kind != StepKind::Identity && !is_multiplicative_step(rec.kind))
    throw Error(Errc::NotMultiplicativeStep, std::string("path transport needs a multiplicative step, got ") +
                                                 step_kind_name(rec.kind));
}

struct Ctx {
  const Net& p;
  const Net& q;
  const ReductionRecord& rec;
  Flat fp, fq;

  Ctx(const Net& p_, const Net& q_, const ReductionRecord& r) : p(p_), q(q_), rec(r), fp(p_), fq(q_) {
    if (rec.q_to_p.size() != fq.nodes.size()) throw Error(Errc::NotApplicable, "record does not describe q");
  }

  int P(int v) const { return rec.q_to_p[static_cast<std::size_t>(v)]; }
  int parent(int pv) const { return fp.nodes[static_cast<std::size_t>(pv)].parent; }

  // Eliminated cut of p behind a residual cut edge of q, or -1.
  int residual_cut(const Edge& e) const {
    if (e.kind != EdgeKind::Cut) return -1;
    int k = fq.cut_of[static_cast<std::size_t>(e.a)];
    if (k < 0 || static_cast<std::size_t>(k) >= rec.residual_of.size()) return -1;
    return rec.residual_of[static_cast<std::size_t>(k)].first;
  }

  int p_jump(const Edge& e) const { return fp.jump.at(fq.nodes[static_cast<std::size_t>(e.a)].name); }
  bool redirected(const Edge& e) const { return e.kind == EdgeKind::Jump && p_jump(e) != P(e.b); }

  Edge map_edge(const Edge& e) const {
    switch (e.kind) {
      case EdgeKind::Tensor:
      case EdgeKind::Par:
        return Edge{e.kind, P(e.a), P(e.b)};
      case EdgeKind::Jump:
        return Edge{e.kind, P(e.a), p_jump(e)};
      default: {
        int a = P(e.a), b = P(e.b);
        return Edge{e.kind, std::min(a, b), std::max(a, b)};
      }
    }
  }

  Edge premise_edge(int root, int premise) const {
    Kind k = fp.nodes[static_cast<std::size_t>(root)].kind;
    return Edge{is_switched(k) ? EdgeKind::Par : EdgeKind::Tensor, root, premise};
  }
};

[[noreturn]] void no_decomposition(const std::string& why) {
  throw Error(Errc::CyclicInput, "path has no slipknot decomposition (" + why + "); p must be acyclic");
}

Decomposition decompose_impl(const Ctx& cx, const Path& chi) {
  Decomposition d;
  std::map<int, std::vector<std::size_t>> pos;
  for (std::size_t i = 0; i < chi.edges.size(); ++i) {
    int c = cx.residual_cut(chi.edges[i]);
    if (c >= 0) pos[c].push_back(i);
  }
  struct Span {
    std::size_t b, e;
    int cut;
  };
  std::vector<Span> spans;
  for (const auto& [c, v] : pos) {
    if (v.size() > 2) no_decomposition("three residuals of one cut");
    if (v.size() == 2) spans.push_back(Span{v[0], v[1], c});
  }
  for (const auto& s : spans)
    for (const auto& t : spans) {
      if (s.cut == t.cut) continue;
      bool disjoint = s.e < t.b || t.e < s.b;
      bool nested = (s.b < t.b && t.e < s.e) || (t.b < s.b && s.e < t.e);
      if (!disjoint && !nested) no_decomposition("crossing slipknots");
    }
  std::vector<Span> maximal;
  for (const auto& s : spans) {
    bool inner = std::any_of(spans.begin(), spans.end(), [&](const Span& t) { return t.b < s.b && s.e < t.e; });
    if (!inner) maximal.push_back(s);
  }
  std::sort(maximal.begin(), maximal.end(), [](const Span& a, const Span& b) { return a.b < b.b; });
  std::size_t at = 0;
  for (const auto& s : maximal) {
    d.straights.push_back(subpath(chi, at, s.b));
    d.slipknots.push_back(subpath(chi, s.b, s.e + 1));
    d.cuts.push_back(s.cut);
    d.spans.emplace_back(s.b, s.e);
    at = s.e + 1;
  }
  d.straights.push_back(subpath(chi, at, chi.edges.size()));
  for (const auto& [c, v] : pos)
    if (v.size() == 1) d.crossings.emplace_back(v[0], c);
  std::sort(d.crossings.begin(), d.crossings.end());
  return d;
}

// A contact of the path with the region of an eliminated cut (its two
// roots, the cut edge and the premise edges): either the crossing of one
// of its residuals, or a redirected jump whose target in p is one of its
// roots.
struct Contact {
  std::size_t pos;
  int cut;
  bool residual;
};

class Builder {
 public:
  Builder(const Ctx& cx, int start) : cx_(cx) { out_.verts.push_back(start); }

  int cur() const { return out_.verts.back(); }

  void push(const Edge& e, int conn = -1) {
    int next = e.other(cur());
    out_.edges.push_back(e);
    out_.verts.push_back(next);
    if (conn >= 0) {
      Path& cp = conns_[static_cast<std::size_t>(conn)].path;
      cp.edges.push_back(e);
      cp.verts.push_back(next);
    }
  }

  // Moves to the p vertex pv, descending from a pending root if needed.
  void reach(int pv) {
    if (pending_ && cur() != pv && cx_.parent(pv) == cur()) push(cx_.premise_edge(cur(), pv), pending_conn_);
    pending_ = false;
    if (cur() != pv) throw Error(Errc::NotApplicable, "transported segments do not meet");
  }

  // The path stands on a root of p; the q path stands on the premise pv.
  void hold(int pv, int conn, bool descend_at_end) {
    pending_pv_ = pv;
    pending_ = pv != cur();
    pending_conn_ = conn;
    descend_at_end_ = descend_at_end;
  }

  void drop_pending() { pending_ = false; }

  int open(ConnectorKind k, int cut) {
    conns_.push_back(Connector{k, cut, Path{{cur()}, {}}});
    return static_cast<int>(conns_.size()) - 1;
  }

  void finish() {
    // Bridges and bounces at the end of the path stop at the premise.
    if (pending_ && descend_at_end_) push(cx_.premise_edge(cur(), pending_pv_), pending_conn_);
    pending_ = false;
  }

  Path& path() { return out_; }
  std::vector<Connector>& connectors() { return conns_; }

 private:
  const Ctx& cx_;
  Path out_;
  std::vector<Connector> conns_;
  bool pending_ = false, descend_at_end_ = false;
  int pending_conn_ = -1;
  int pending_pv_ = -1;
};

Transported transport_impl(const Ctx& cx, const Path& chi) {
  Transported t;
  t.decomposition = decompose_impl(cx, chi);

  std::map<int, std::vector<Contact>> by_cut;
  for (std::size_t i = 0; i < chi.edges.size(); ++i) {
    const Edge& e = chi.edges[i];
    if (int c = cx.residual_cut(e); c >= 0) {
      by_cut[c].push_back(Contact{i, c, true});
    } else if (e.kind == EdgeKind::Jump && cx.redirected(e)) {
      int c = cx.fp.cut_of[static_cast<std::size_t>(cx.p_jump(e))];
      if (c < 0) throw Error(Errc::NotApplicable, "redirected jump outside an eliminated cut");
      by_cut[c].push_back(Contact{i, c, false});
    }
  }
  struct Span {
    Contact first, last;
    bool crosses_residual;
  };
  std::vector<Span> spans;
  for (const auto& [c, v] : by_cut)
    spans.push_back(Span{v.front(), v.back(), std::any_of(v.begin(), v.end(), [](const Contact& k) { return k.residual; })});
  for (const auto& s : spans)
    for (const auto& o : spans) {
      if (s.first.cut == o.first.cut) continue;
      bool disjoint = s.last.pos < o.first.pos || o.last.pos < s.first.pos;
      bool nested = (s.first.pos < o.first.pos && o.last.pos < s.last.pos) ||
                    (o.first.pos < s.first.pos && s.last.pos < o.last.pos);
      if (!disjoint && !nested) no_decomposition("interleaved contacts with two eliminated cuts");
    }
  std::map<std::size_t, Span> maximal;
  for (const auto& s : spans) {
    bool inner = std::any_of(spans.begin(), spans.end(), [&](const Span& o) {
      return o.first.pos < s.first.pos && s.last.pos < o.last.pos;
    });
    if (!inner) maximal.emplace(s.first.pos, s);
  }

  auto is_leaf_to_target = [&](const Contact& k) {
    return !k.residual && chi.verts[k.pos] == chi.edges[k.pos].a;
  };

  int start = cx.P(chi.verts.front());
  if (auto it = maximal.find(0); it != maximal.end()) {
    const Contact& k = it->second.first;
    if (!k.residual && !is_leaf_to_target(k)) start = cx.p_jump(chi.edges[0]);
  }
  Builder b(cx, start);

  for (std::size_t i = 0; i < chi.edges.size();) {
    const Edge& e = chi.edges[i];
    auto it = maximal.find(i);
    if (it == maximal.end()) {
      b.reach(cx.P(chi.verts[i]));
      b.push(cx.map_edge(e));
      ++i;
      continue;
    }
    const Span& s = it->second;
    const Contact& first = s.first;
    const Contact& last = s.last;
    int conn = -1;
    auto open = [&] {
      if (s.crosses_residual) conn = b.open(ConnectorKind::Bridge, first.cut);
    };

    // Entry into the region.
    if (is_leaf_to_target(first)) {
      b.reach(cx.P(chi.verts[i]));
      b.push(cx.map_edge(e));
      open();
    } else {
      int x = cx.P(chi.verts[i]);
      int root = cx.parent(x);
      if (b.cur() == root) {
        b.drop_pending();
        open();
      } else {
        b.reach(x);
        open();
        b.push(cx.premise_edge(root, x), conn);
      }
    }

    // Exit root of the region.
    const Edge& le = chi.edges[last.pos];
    int w = chi.verts[last.pos + 1];
    int exit_root = last.residual ? cx.parent(cx.P(w)) : cx.p_jump(le);
    if (b.cur() != exit_root) {
      int a = b.cur();
      if (cx.fp.cut_of[static_cast<std::size_t>(a)] != last.cut || cx.fp.cut_of[static_cast<std::size_t>(exit_root)] != last.cut)
        no_decomposition("contacts do not share a region");
      b.push(Edge{EdgeKind::Cut, std::min(a, exit_root), std::max(a, exit_root)}, conn);
    }
    if (last.residual) {
      b.hold(cx.P(w), conn, true);
    } else if (is_leaf_to_target(last)) {
      b.hold(cx.P(w), conn, false);
    } else {
      b.push(cx.map_edge(le));
    }
    i = last.pos + 1;
  }
  b.finish();
  t.path = b.path();
  t.connectors = b.connectors();
  for (auto& c : t.connectors) {
    bool crosses = std::any_of(c.path.edges.begin(), c.path.edges.end(), [](const Edge& e) { return e.kind == EdgeKind::Cut; });
    c.kind = crosses ? ConnectorKind::Bridge : ConnectorKind::Bounce;
  }
  t.valid = is_path_of_net(cx.fp, t.path, &t.switching);
  return t;
}

}  // namespace

Path subpath(const Path& chi, std::size_t begin, std::size_t end) {
  Path out;
  out.verts.assign(chi.verts.begin() + static_cast<std::ptrdiff_t>(begin),
                   chi.verts.begin() + static_cast<std::ptrdiff_t>(end) + 1);
  out.edges.assign(chi.edges.begin() + static_cast<std::ptrdiff_t>(begin),
                   chi.edges.begin() + static_cast<std::ptrdiff_t>(end));
  return out;
}

Decomposition decompose(const Net& p, const Net& q, const ReductionRecord& rec, const Path& chi) {
  require_step(rec);
  Ctx cx(p, q, rec);
  if (!is_path_of_net(cx.fq, chi)) throw Error(Errc::NotApplicable, "not a path of q");
  return decompose_impl(cx, chi);
}

Transported transport(const Net& p, const Net& q, const ReductionRecord& rec, const Path& chi) {
  require_step(rec);
  Ctx cx(p, q, rec);
  if (!is_path_of_net(cx.fq, chi)) throw Error(Errc::NotApplicable, "not a path of q");
  return transport_impl(cx, chi);
}

std::size_t width(const Net& p, const Net& q, const ReductionRecord& rec, const Path& chi) {
  require_step(rec);
  Ctx cx(p, q, rec);
  if (!is_path_of_net(cx.fq, chi)) throw Error(Errc::NotApplicable, "not a path of q");
  std::size_t w = 0;
  for (std::size_t k = 0; k <= chi.edges.size(); ++k) w = std::max(w, transport_impl(cx, subpath(chi, 0, k)).path.length());
  return w;
}

}  // namespace pnet
