#include "pnet/mell.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "pnet/syntax.hpp"

namespace pnet {

namespace {

bool is_aux(const Tree& t) { return t.kind == Kind::Port && t.port >= 1; }

Addr child_addr(Addr a, int i) {
  a.path.push_back(i);
  return a;
}

template <class F>
void for_each_surface_root(const Net& net, F&& f) {
  for (std::size_t i = 0; i < net.conclusions.size(); ++i)
    f(net.conclusions[i], Addr{false, static_cast<int>(i), false, {}}, true);
  for (std::size_t i = 0; i < net.cuts.size(); ++i) {
    f(net.cuts[i].left, Addr{true, static_cast<int>(i), false, {}}, false);
    f(net.cuts[i].right, Addr{true, static_cast<int>(i), true, {}}, false);
  }
}

void collect_negative_labels(const MellNet& m, std::set<std::string>& out) {
  std::function<void(const Tree&)> walk = [&](const Tree& t) {
    if (is_negative_leaf(t.kind)) out.insert(t.name);
    for (const auto& k : t.kids) walk(k);
  };
  for_each_surface_root(m.net, [&](const Tree& t, const Addr&, bool) { walk(t); });
  for (const auto& b : m.boxes) collect_negative_labels(b.content, out);
}

void validate_level(const MellNet& m, const std::string& where, const std::set<std::string>& all_labels,
                    std::vector<Issue>& out) {
  std::string pre = where.empty() ? "" : where + ": ";
  std::map<std::string, const Box*> boxes;
  for (const auto& b : m.boxes)
    if (!boxes.emplace(b.id, &b).second) out.push_back({Errc::DuplicateAtom, pre + "box " + b.id});

  std::set<std::string> here;
  std::map<std::string, std::set<int>> ports;
  std::function<void(const Tree&, const Tree*, bool)> walk = [&](const Tree& t, const Tree* parent, bool concl) {
    if (is_negative_leaf(t.kind)) here.insert(t.name);
    if (t.kind == Kind::Bang || t.kind == Kind::Coweak)
      out.push_back({Errc::NotApplicable, pre + "resource connective " + kind_name(t.kind)});
    if (t.kind == Kind::Port) {
      auto it = boxes.find(t.name);
      if (it == boxes.end() || t.port < 0 || t.port > it->second->arity)
        out.push_back({Errc::PortArityMismatch, pre + port_key(t.name, t.port)});
      else
        ports[t.name].insert(t.port);
      if (t.port >= 1 && !concl && (parent == nullptr || parent->kind != Kind::Quest))
        out.push_back({Errc::PortOutsideQuest, pre + port_key(t.name, t.port)});
    }
    for (const auto& k : t.kids) walk(k, &t, false);
  };
  for_each_surface_root(m.net, [&](const Tree& t, const Addr&, bool concl) { walk(t, nullptr, concl); });

  for (const auto& b : m.boxes)
    for (int i = 0; i <= b.arity; ++i)
      if (!ports[b.id].count(i)) out.push_back({Errc::PortArityMismatch, pre + "missing " + port_key(b.id, i)});

  std::set<std::string> across;
  for (const auto& [label, target] : m.net.jumps) {
    if (!here.count(label) && all_labels.count(label)) {
      out.push_back({Errc::JumpAcrossDepth, pre + label});
      across.insert(label);
    }
    const Tree* r = resolve(m.net, target);
    if (r && is_aux(*r)) out.push_back({Errc::JumpToAuxPort, pre + label + " -> " + addr_string(target)});
  }
  for (const auto& is : validate_net(m.net)) {
    if (is.code == Errc::BadJumpTarget && across.count(is.subject.substr(0, is.subject.find(' ')))) continue;
    out.push_back({is.code, pre + is.subject});
  }

  for (const auto& b : m.boxes) {
    const auto& c = b.content.net.conclusions;
    std::string sub = where.empty() ? b.id : where + "/" + b.id;
    if (c.empty() || static_cast<int>(c.size()) != b.arity + 1)
      out.push_back({Errc::PortArityMismatch, sub + ": " + std::to_string(c.size()) + " conclusions for arity " +
                                                  std::to_string(b.arity)});
    if (!c.empty() && is_aux(c.front()))
      out.push_back({Errc::PortOutsideQuest, sub + ": principal door is an auxiliary port"});
    validate_level(b.content, sub, all_labels, out);
  }
}

std::string box_content_key(const MellNet& m, CanonMode mode);

std::string level_key(const MellNet& m, CanonMode mode) {
  std::map<std::string, std::string> keys;
  for (const auto& b : m.boxes) keys[b.id] = "[" + std::to_string(b.arity) + ":" + box_content_key(b.content, mode) + "]";
  std::map<std::string, std::string> rename;
  std::string s = print_net(canonicalize(m.net, mode, &keys, &rename));
  std::map<std::string, std::string> by_new;
  std::vector<std::string> loose;
  for (const auto& [id, k] : keys) {
    auto it = rename.find(id);
    if (it != rename.end())
      by_new[it->second] = k;
    else
      loose.push_back(k);
  }
  std::sort(loose.begin(), loose.end());
  for (const auto& [id, k] : by_new) s += " box " + id + " " + k;
  for (const auto& k : loose) s += " box ? " + k;
  return s;
}

std::string box_content_key(const MellNet& m, CanonMode mode) { return level_key(m, mode); }

// ---------------------------------------------------------------------------
// Substitution

std::string tag_of(const Addr& a) {
  std::string s = addr_string(a);
  for (char& ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
  return s;
}

struct CreatedWeak {
  std::string label;
  int uid;
  std::vector<std::string> boxes;  // box of each premise, in premise order
};

struct Subst {
  std::map<std::string, std::vector<std::vector<Tree>>>* fam = nullptr;
  std::map<std::string, int> principal_uid;
  std::function<int()> fresh_uid = [] { return -1; };
  std::function<std::string(const Addr&)> weak_name;
  std::function<void(const Addr&, int)> on_image = [](const Addr&, int) {};
  std::vector<CreatedWeak> created;

  std::vector<Tree>& family(const Tree& port) {
    auto it = fam->find(port.name);
    if (it == fam->end() || port.port >= static_cast<int>(it->second.size()))
      throw Error(Errc::NotApplicable, "no replacement for " + port_key(port.name, port.port));
    return it->second[static_cast<std::size_t>(port.port)];
  }

  std::vector<Tree> run(const Tree& t, const Addr& a) {
    if (t.kind == Kind::Port && t.port >= 1) return family(t);
    Tree out;
    if (t.kind == Kind::Port) {
      auto& f0 = family(t);
      auto pu = principal_uid.find(t.name);
      int uid = pu != principal_uid.end() ? pu->second : fresh_uid();
      out = f0.empty() ? Tree::leaf(Kind::Coweak, "cw_" + t.name) : Tree::node(Kind::Bang, f0);
      out.uid = uid;
    } else if (t.kind == Kind::Quest) {
      std::vector<Tree> kids;
      for (std::size_t i = 0; i < t.kids.size(); ++i) {
        auto part = run(t.kids[i], child_addr(a, static_cast<int>(i + 1)));
        for (auto& k : part) kids.push_back(std::move(k));
      }
      if (kids.empty()) {
        out = Tree::leaf(Kind::Weak, weak_name(a));
        out.uid = fresh_uid();
        CreatedWeak cw{out.name, out.uid, {}};
        for (const auto& k : t.kids) cw.boxes.push_back(k.name);
        created.push_back(std::move(cw));
      } else {
        out = Tree::node(Kind::Quest, std::move(kids));
        out.uid = fresh_uid();
      }
    } else {
      out = t;
      out.kids.clear();
      for (std::size_t i = 0; i < t.kids.size(); ++i) {
        auto part = run(t.kids[i], child_addr(a, static_cast<int>(i + 1)));
        if (part.size() != 1) throw Error(Errc::PortOutsideQuest, "auxiliary port below " + std::string(kind_name(t.kind)));
        out.kids.push_back(std::move(part.front()));
      }
      out.uid = fresh_uid();
    }
    on_image(a, out.uid);
    return {std::move(out)};
  }
};

void collect_atom_bases(const Tree& t, std::set<std::string>& out) {
  if (t.kind == Kind::Var) {
    out.insert(t.name.back() == '*' ? t.name.substr(0, t.name.size() - 1) : t.name);
  } else if (is_leaf(t.kind)) {
    out.insert(t.name);
  }
  for (const auto& k : t.kids) collect_atom_bases(k, out);
}

void collect_atom_bases(const Net& n, std::set<std::string>& out) {
  for (const auto& t : n.conclusions) collect_atom_bases(t, out);
  for (const auto& c : n.cuts) {
    collect_atom_bases(c.left, out);
    collect_atom_bases(c.right, out);
  }
}

void rename_tree(Tree& t, const std::function<std::string(const std::string&)>& f) {
  if (t.kind == Kind::Var) {
    bool star = t.name.back() == '*';
    t.name = f(star ? t.name.substr(0, t.name.size() - 1) : t.name) + (star ? "*" : "");
  } else if (is_leaf(t.kind) && t.kind != Kind::Port) {
    t.name = f(t.name);
  }
  for (auto& k : t.kids) rename_tree(k, f);
}

void reuid(Tree& t, std::map<int, int>& m, const std::function<int()>& fresh) {
  int u = fresh();
  if (t.uid >= 0) m[t.uid] = u;
  t.uid = u;
  for (auto& k : t.kids) reuid(k, m, fresh);
}

// ---------------------------------------------------------------------------
// Taylor expansion

// An expansion with uid-based jumps and provenance; net.jumps is filled by finalize().
struct Pre {
  Net net;
  std::map<std::string, int> jump_uid;
  std::vector<int> attribution;
  std::map<int, NodeOrigin> prov;
  std::string copies;
};

void finalize(Pre& e) {
  Flat f(e.net);
  std::map<int, Addr> at;
  for (const auto& n : f.nodes) at[n.uid] = n.addr;
  e.net.jumps.clear();
  for (const auto& [label, uid] : e.jump_uid) e.net.jumps[label] = at.at(uid);
}

constexpr std::size_t kExpansionCap = 200000;

std::vector<std::vector<int>> multisets(int n, int budget) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int from) {
    out.push_back(cur);
    if (static_cast<int>(cur.size()) == budget) return;
    for (int i = from; i < n; ++i) {
      cur.push_back(i);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<Pre> expand(const MellNet& P, int budget, JumpPolicy policy);

std::vector<Pre> assemble(const MellNet& P, const std::vector<std::vector<Pre>>& inner,
                          const std::vector<std::vector<int>>& chosen, JumpPolicy policy) {
  int next_uid = 0;
  std::function<int()> fresh = [&] { return next_uid++; };

  std::set<std::string> used;
  collect_atom_bases(P.net, used);
  for (const auto& b : P.boxes) used.insert("cw_" + b.id);
  std::function<void(const Tree&, const Addr&)> weak_names = [&](const Tree& t, const Addr& a) {
    if (t.kind == Kind::Quest) used.insert("wk_" + tag_of(a));
    for (std::size_t i = 0; i < t.kids.size(); ++i) weak_names(t.kids[i], child_addr(a, static_cast<int>(i + 1)));
  };
  for_each_surface_root(P.net, [&](const Tree& t, const Addr& a, bool) { weak_names(t, a); });

  Pre out;
  std::map<std::string, std::vector<std::vector<Tree>>> fam;
  std::vector<Cut> copy_cuts;
  std::vector<std::string> copy_desc;
  int g = 0;
  for (std::size_t bi = 0; bi < P.boxes.size(); ++bi) {
    const Box& b = P.boxes[bi];
    auto& families = fam[b.id];
    families.assign(static_cast<std::size_t>(b.arity) + 1, {});
    std::vector<std::string> inner_desc;
    for (std::size_t j = 0; j < chosen[bi].size(); ++j) {
      Pre c = inner[bi][static_cast<std::size_t>(chosen[bi][j])];
      int copy = static_cast<int>(j + 1);
      inner_desc.push_back(c.copies);
      std::set<std::string> bases;
      collect_atom_bases(c.net, bases);
      std::string suffix = "_" + std::to_string(++g);
      auto clash = [&] {
        for (const auto& s : bases)
          if (used.count(s + suffix)) return true;
        return false;
      };
      while (clash()) suffix += "'";
      for (const auto& s : bases) used.insert(s + suffix);
      auto ren = [&](const std::string& s) { return s + suffix; };

      std::map<int, int> m;
      for (auto& t : c.net.conclusions) {
        reuid(t, m, fresh);
        rename_tree(t, ren);
      }
      for (auto& k : c.net.cuts) {
        reuid(k.left, m, fresh);
        reuid(k.right, m, fresh);
        rename_tree(k.left, ren);
        rename_tree(k.right, ren);
      }
      for (const auto& [label, uid] : c.jump_uid) out.jump_uid[ren(label)] = m.at(uid);
      for (auto& [uid, o] : c.prov) {
        NodeOrigin no = o;
        no.copies.insert(no.copies.begin(), {b.id, copy});
        no.door = -1;
        out.prov[m.at(uid)] = std::move(no);
      }
      for (std::size_t ci = 0; ci < c.net.conclusions.size(); ++ci) {
        int door = c.attribution[ci];
        out.prov[c.net.conclusions[ci].uid].door = door;
        families[static_cast<std::size_t>(door)].push_back(std::move(c.net.conclusions[ci]));
      }
      for (auto& k : c.net.cuts) copy_cuts.push_back(std::move(k));
    }
    std::string d = b.id + ":" + std::to_string(chosen[bi].size());
    bool nested = std::any_of(inner_desc.begin(), inner_desc.end(), [](const std::string& s) { return !s.empty(); });
    if (nested) {
      d += "[";
      for (std::size_t j = 0; j < inner_desc.size(); ++j) d += (j ? "," : "") + inner_desc[j];
      d += "]";
    }
    copy_desc.push_back(d);
  }
  for (std::size_t i = 0; i < copy_desc.size(); ++i) out.copies += (i ? ";" : "") + copy_desc[i];

  Subst s;
  s.fam = &fam;
  s.fresh_uid = fresh;
  for (const auto& b : P.boxes) s.principal_uid[b.id] = fresh();
  s.weak_name = [](const Addr& a) { return "wk_" + tag_of(a); };
  std::map<Addr, int> image;
  s.on_image = [&](const Addr& a, int uid) {
    image[a] = uid;
    out.prov[uid] = NodeOrigin{{}, a, -1};
  };

  for (std::size_t i = 0; i < P.net.cuts.size(); ++i) {
    auto l = s.run(P.net.cuts[i].left, Addr{true, static_cast<int>(i), false, {}});
    auto r = s.run(P.net.cuts[i].right, Addr{true, static_cast<int>(i), true, {}});
    if (l.size() != 1 || r.size() != 1) throw Error(Errc::PortOutsideQuest, "auxiliary port in a cut");
    out.net.cuts.push_back(Cut{std::move(l.front()), std::move(r.front())});
  }
  for (auto& k : copy_cuts) out.net.cuts.push_back(std::move(k));
  for (std::size_t i = 0; i < P.net.conclusions.size(); ++i) {
    for (auto& t : s.run(P.net.conclusions[i], Addr{false, static_cast<int>(i), false, {}})) {
      out.net.conclusions.push_back(std::move(t));
      out.attribution.push_back(static_cast<int>(i));
    }
  }
  for (const auto& [label, target] : P.net.jumps) out.jump_uid[label] = image.at(target);

  // Created weakenings jump to the substituted principal port of a box
  // behind one of their (now empty) premises.
  std::vector<std::vector<std::string>> options;
  for (const auto& cw : s.created) {
    std::vector<std::string> o;
    for (const auto& b : cw.boxes)
      if (std::find(o.begin(), o.end(), b) == o.end()) o.push_back(b);
    if (policy == JumpPolicy::Deterministic) o.resize(1);
    options.push_back(std::move(o));
  }
  std::vector<Pre> result;
  std::vector<std::size_t> pick(options.size(), 0);
  while (true) {
    Pre e = out;
    for (std::size_t k = 0; k < options.size(); ++k)
      e.jump_uid[s.created[k].label] = s.principal_uid.at(options[k][pick[k]]);
    result.push_back(std::move(e));
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == options[k].size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return result;
}

std::string pre_key(const Pre& e) {
  std::string k = canonical_key(e.net, CanonMode::ExponentialMultiset) + " |";
  for (int a : e.attribution) k += " " + std::to_string(a);
  return k;
}

std::vector<Pre> expand(const MellNet& P, int budget, JumpPolicy policy) {
  std::vector<std::vector<Pre>> inner;
  std::vector<std::vector<std::vector<int>>> choices;
  std::size_t combos = 1;
  for (const auto& b : P.boxes) {
    inner.push_back(expand(b.content, budget, policy));
    choices.push_back(multisets(static_cast<int>(inner.back().size()), budget));
    combos *= choices.back().size();
    if (combos > kExpansionCap) throw Error(Errc::CapExceeded, "expansion of " + std::to_string(combos) + "+ combinations");
  }
  std::vector<Pre> out;
  std::set<std::string> seen;
  std::vector<std::size_t> idx(P.boxes.size(), 0);
  while (true) {
    std::vector<std::vector<int>> chosen;
    for (std::size_t b = 0; b < idx.size(); ++b) chosen.push_back(choices[b][idx[b]]);
    for (auto& e : assemble(P, inner, chosen, policy)) {
      finalize(e);
      if (seen.insert(pre_key(e)).second) out.push_back(std::move(e));
      if (out.size() > kExpansionCap) throw Error(Errc::CapExceeded, "too many expansions");
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

}  // namespace

std::vector<Issue> validate_mell(const MellNet& m) {
  std::vector<Issue> out;
  std::set<std::string> labels;
  collect_negative_labels(m, labels);
  validate_level(m, "", labels, out);
  return out;
}

void require_valid_mell(const MellNet& m) {
  auto issues = validate_mell(m);
  if (!issues.empty()) throw Error(issues.front().code, issues.front().subject);
}

MellMeasures mell_measures(const MellNet& m) {
  MellMeasures r;
  r.tlsize = size(m.net);
  r.size = r.tlsize;
  for (const auto& b : m.boxes) {
    auto c = mell_measures(b.content);
    r.size += c.size;
    r.depth = std::max(r.depth, c.depth + 1);
  }
  return r;
}

bool mell_acyclic(const MellNet& m) {
  if (!is_acyclic(m.net).acyclic) return false;
  return std::all_of(m.boxes.begin(), m.boxes.end(), [](const Box& b) { return mell_acyclic(b.content); });
}

std::string mell_canonical_key(const MellNet& m, CanonMode mode) { return level_key(m, mode); }

bool mell_alpha_equal(const MellNet& a, const MellNet& b, CanonMode mode) {
  return mell_canonical_key(a, mode) == mell_canonical_key(b, mode);
}

std::vector<Tree> box_substitute(const Tree& target, const std::map<std::string, BoxReplacement>& r,
                                 const std::string& tag) {
  std::map<std::string, std::vector<std::vector<Tree>>> fam;
  std::set<std::string> seen;
  auto check = [&](const Tree& t) {
    std::set<std::string> names;
    std::function<void(const Tree&)> walk = [&](const Tree& x) {
      if (x.kind == Kind::Var || (is_leaf(x.kind) && x.kind != Kind::Port)) names.insert(x.name);
      for (const auto& k : x.kids) walk(k);
    };
    walk(t);
    for (const auto& n : names)
      if (!seen.insert(n).second) throw Error(Errc::NotApplicable, "atom " + n + " occurs twice");
  };
  check(target);
  for (const auto& [box, rep] : r) {
    fam[box] = rep.families;
    for (const auto& f : rep.families)
      for (const auto& t : f) check(t);
  }
  Subst s;
  s.fam = &fam;
  s.weak_name = [&](const Addr& a) {
    std::string n = "wk_" + tag;
    for (int i : a.path) n += "_" + std::to_string(i);
    return n;
  };
  return s.run(target, Addr{});
}

std::vector<TaylorElement> taylor_expand(const MellNet& p, int budget, JumpPolicy policy) {
  require_valid_mell(p);
  if (budget < 0) throw Error(Errc::NotApplicable, "negative copy budget");
  for (const auto& t : p.net.conclusions)
    if (is_aux(t)) throw Error(Errc::NotApplicable, "auxiliary port among the conclusions");
  std::vector<TaylorElement> out;
  std::set<std::string> seen;
  for (auto& e : expand(p, budget, policy)) {
    if (!seen.insert(canonical_key(e.net, CanonMode::ExponentialMultiset)).second) continue;
    TaylorElement t;
    t.net = std::move(e.net);
    t.attribution = std::move(e.attribution);
    t.copies = std::move(e.copies);
    Flat f(t.net);
    for (const auto& n : f.nodes) {
      auto it = e.prov.find(n.uid);
      if (it == e.prov.end()) throw Error(Errc::NoProvenance, addr_string(n.addr));
      t.provenance.push_back(it->second);
    }
    out.push_back(std::move(t));
  }
  return out;
}

TaylorBoundReport taylor_bound_check(const TaylorElement& e, const MellNet& p) {
  TaylorBoundReport r;
  Flat f(e.net);
  r.acyclic = is_acyclic(f).acyclic;
  r.ln = max_path_length(f).ln;
  r.jd = jump_degree(e.net).max;
  auto m = mell_measures(p);
  r.ln_bound = (std::size_t{1} << m.depth) * m.size;
  r.jd_bound = m.size;
  return r;
}

UntaylorResult untaylor_path(const TaylorElement& e, const MellNet& p, const Path& xi) {
  Flat fe(e.net), fp(p.net);
  if (e.provenance.size() != fe.nodes.size()) throw Error(Errc::NoProvenance, "provenance does not match the net");
  if (xi.verts.empty() || xi.verts.size() != xi.edges.size() + 1) throw Error(Errc::NotApplicable, "malformed path");
  auto inner = [&](int v) { return !e.provenance[static_cast<std::size_t>(v)].copies.empty(); };
  auto copy_of = [&](int v) { return e.provenance[static_cast<std::size_t>(v)].copies.front(); };
  auto door = [&](int v) { return e.provenance[static_cast<std::size_t>(v)].door; };
  auto up = [&](int v) {
    int u = fp.find(e.provenance[static_cast<std::size_t>(v)].origin);
    if (u < 0) throw Error(Errc::NoProvenance, "origin outside the surface");
    return u;
  };
  auto port = [&](const std::string& b, int i) {
    auto it = fp.atom.find(port_key(b, i));
    if (it == fp.atom.end()) throw Error(Errc::NoProvenance, "missing " + port_key(b, i));
    return it->second;
  };

  UntaylorResult r;
  bool broken = false;
  auto start = [&](int v) { r.path.verts.push_back(v); };
  auto step = [&](Edge ed, int to) {
    if (r.path.verts.back() != ed.other(to) || (ed.a != to && ed.b != to)) broken = true;
    r.path.edges.push_back(ed);
    r.path.verts.push_back(to);
  };
  auto box_edge = [](int x, int y) { return Edge{EdgeKind::Box, std::min(x, y), std::max(x, y)}; };
  // Enter a copy of b at door i from the outer node q (for i > 0), ending at port 0.
  auto enter = [&](const std::string& b, int i, int q) {
    if (i <= 0) return;
    int ai = port(b, i), a0 = port(b, 0);
    step(Edge{EdgeKind::Par, q, ai}, ai);
    step(box_edge(ai, a0), a0);
  };
  auto leave = [&](const std::string& b, int i, int q) {
    if (i <= 0) return;
    int ai = port(b, i), a0 = port(b, 0);
    step(box_edge(ai, a0), ai);
    step(Edge{EdgeKind::Par, q, ai}, q);
  };

  struct Seg {
    std::pair<std::string, int> copy;
    int entry = -1, exit = -1;
    std::size_t outer_before = 0;
  };
  std::vector<Seg> segs;
  std::size_t outer_since = 0;
  const std::size_t n = xi.edges.size();
  std::size_t k = 0;
  auto edge_inner = [&](std::size_t pos) { return inner(xi.verts[pos]) && inner(xi.verts[pos + 1]); };
  // Consumes inner edges, then the exit boundary if any; returns the exit door or -1.
  auto run_inside = [&](Seg& sg) {
    while (k < n && edge_inner(k)) ++k;
    if (k == n) return;
    int s = xi.verts[k], t = xi.verts[k + 1];
    if (inner(t) || copy_of(s) != sg.copy) {
      broken = true;
      ++k;
      return;
    }
    sg.exit = door(s);
    leave(sg.copy.first, sg.exit, up(t));
    ++k;
  };

  int v0 = xi.verts[0];
  if (inner(v0)) {
    Seg sg{copy_of(v0), -1, -1, 0};
    std::size_t save = k;
    while (save < n && edge_inner(save)) ++save;
    if (save < n) {
      int s = xi.verts[save];
      int d = door(s);
      start(d > 0 ? port(sg.copy.first, d) : port(sg.copy.first, 0));
      k = save;
      int t = xi.verts[k + 1];
      sg.exit = d;
      if (d > 0) step(Edge{EdgeKind::Par, up(t), port(sg.copy.first, d)}, up(t));
      ++k;
    } else {
      start(port(sg.copy.first, 0));
      k = n;
    }
    segs.push_back(sg);
  } else {
    start(up(v0));
  }

  while (k < n) {
    const Edge& ed = xi.edges[k];
    int from = xi.verts[k], to = xi.verts[k + 1];
    if (!inner(from) && !inner(to)) {
      int U = up(from), V = up(to);
      switch (ed.kind) {
        case EdgeKind::Axiom:
        case EdgeKind::Cut:
          step(Edge{ed.kind, std::min(U, V), std::max(U, V)}, V);
          break;
        case EdgeKind::Tensor:
        case EdgeKind::Par:
          step(Edge{ed.kind, up(ed.a), up(ed.b)}, V);
          break;
        case EdgeKind::Jump: {
          int leaf = up(ed.a), target = up(ed.b);
          const auto& ln = fp.nodes[static_cast<std::size_t>(leaf)];
          if (ln.kind == Kind::Quest) {
            const std::string& b = fp.nodes[static_cast<std::size_t>(target)].name;
            int ai = -1;
            for (int kid : ln.kids)
              if (fp.nodes[static_cast<std::size_t>(kid)].kind == Kind::Port &&
                  fp.nodes[static_cast<std::size_t>(kid)].name == b) {
                ai = kid;
                break;
              }
            if (ai < 0) throw Error(Errc::NoProvenance, "created jump without a matching premise");
            if (from == ed.a) {
              step(Edge{EdgeKind::Par, leaf, ai}, ai);
              step(box_edge(ai, target), target);
            } else {
              step(box_edge(ai, target), ai);
              step(Edge{EdgeKind::Par, leaf, ai}, leaf);
            }
          } else {
            step(Edge{EdgeKind::Jump, leaf, target}, V);
          }
          break;
        }
        case EdgeKind::Box:
          broken = true;
          break;
      }
      ++outer_since;
      ++k;
    } else if (!inner(from) && inner(to)) {
      Seg sg{copy_of(to), door(to), -1, outer_since};
      outer_since = 0;
      enter(sg.copy.first, sg.entry, up(from));
      ++k;
      run_inside(sg);
      segs.push_back(sg);
    } else {
      broken = true;
      ++k;
    }
  }

  for (const auto& sg : segs) {
    r.visits.push_back(sg.copy);
    ++r.census[sg.copy.first];
  }
  r.census_ok = true;
  std::map<std::string, std::vector<std::size_t>> where;
  for (std::size_t i = 0; i < segs.size(); ++i) where[segs[i].copy.first].push_back(i);
  for (const auto& [b, idx] : where) {
    if (idx.size() > 2) r.census_ok = false;
    if (idx.size() == 2) {
      const Seg& s1 = segs[idx[0]];
      const Seg& s2 = segs[idx[1]];
      if (idx[1] != idx[0] + 1 || s2.outer_before != 0 || s1.exit != 0 || s2.entry != 0 ||
          s1.copy.second == s2.copy.second)
        r.census_ok = false;
    }
  }
  r.valid = !broken && is_path_of_net(fp, r.path);
  return r;
}

}  // namespace pnet
