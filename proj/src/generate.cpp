#include "pnet/generate.hpp"

#include <algorithm>
#include <map>

#include "pnet/reduce.hpp"

namespace pnet {

namespace {

struct Component {
  std::vector<Tree> concl;
  std::vector<Cut> cuts;
  std::vector<int> uids;  // every subtree, for jump targets
  std::vector<Tree> aux;  // auxiliary ports, only usable as quest premises
};

struct Names {
  int vars = 0, labels = 0, boxes = 0;
};

class Gen {
 public:
  Gen(Rng& rng, const GenConfig& cfg) : rng_(rng), cfg_(cfg) {}
  Gen(Rng& rng, const GenConfig& cfg, const MellGenConfig& mcfg, int depth, bool content, Names* names)
      : rng_(rng), cfg_(cfg), mcfg_(&mcfg), depth_(depth), content_(content), names_(names) {}

  Net run() {
    add_axiom();
    for (int s = 0; s < cfg_.steps; ++s) {
      step();
      absorb_empty();
    }
    return finish();
  }

  MellNet run_mell() {
    add_axiom();
    for (int s = 0; s < cfg_.steps; ++s) {
      step();
      absorb_empty();
    }
    MellNet m;
    m.boxes = std::move(boxes_);
    // Leftover auxiliary ports: wrapped in a quest, or kept as conclusions of a content.
    for (auto& c : comps_) {
      for (auto& a : c.aux) {
        if (content_ && coin()) {
          c.concl.push_back(std::move(a));
        } else {
          std::vector<Tree> kids;
          kids.push_back(std::move(a));
          c.concl.push_back(fresh(Tree::node(Kind::Quest, std::move(kids)), c));
        }
      }
      c.aux.clear();
    }
    m.net = finish();
    if (content_) {
      auto& cs = m.net.conclusions;
      auto it = std::find_if(cs.begin(), cs.end(), [](const Tree& t) { return t.kind != Kind::Port || t.port == 0; });
      std::rotate(cs.begin(), it, it + 1);
      Flat f(m.net);
      std::map<int, Addr> at;
      for (const auto& n : f.nodes) at[n.uid] = n.addr;
      for (const auto& [label, uid] : jumps_) m.net.jumps[label] = at.at(uid);
    }
    return m;
  }

 private:
  Rng& rng_;
  const GenConfig& cfg_;
  std::vector<Component> comps_;
  std::map<std::string, int> jumps_;
  int uid_ = 0;
  const MellGenConfig* mcfg_ = nullptr;
  int depth_ = 0;
  bool content_ = false;
  Names own_names_;
  Names* names_ = &own_names_;
  std::vector<Box> boxes_;

  bool mell() const { return mcfg_ != nullptr; }

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool coin() { return pick(2) == 0; }

  Tree fresh(Tree t, Component& c) {
    t.uid = uid_++;
    c.uids.push_back(t.uid);
    return t;
  }

  Component& add_axiom() {
    std::string x = "x" + std::to_string(++names_->vars);
    comps_.emplace_back();
    Component& c = comps_.back();
    c.concl.push_back(fresh(Tree::var(x), c));
    c.concl.push_back(fresh(Tree::var(dual_name(x)), c));
    return c;
  }

  Component& add_unit(bool exponential) {
    comps_.emplace_back();
    Component& c = comps_.back();
    std::string l = "l" + std::to_string(++names_->labels);
    c.concl.push_back(fresh(Tree::leaf(exponential ? Kind::Coweak : Kind::One, l), c));
    return c;
  }

  // A negative leaf jumping to a random subtree of the component.
  void add_counit(Component& c, bool exponential) {
    std::string m = "m" + std::to_string(++names_->labels);
    int target = c.uids[static_cast<std::size_t>(pick(static_cast<int>(c.uids.size())))];
    c.concl.push_back(fresh(Tree::leaf(exponential ? Kind::Weak : Kind::Bot, m), c));
    jumps_[m] = target;
  }

  // Components left without conclusions are mixed into another one, so
  // every component can always give a conclusion.
  void absorb_empty() {
    for (std::size_t i = 0; i < comps_.size();) {
      if (!comps_[i].concl.empty()) {
        ++i;
        continue;
      }
      if (comps_.size() == 1) add_axiom();
      std::size_t j = i == 0 ? 1 : 0;
      merge({static_cast<int>(i), static_cast<int>(j)});
      i = 0;
    }
  }

  Tree take(Component& c, int i) {
    Tree t = std::move(c.concl[static_cast<std::size_t>(i)]);
    c.concl.erase(c.concl.begin() + i);
    return t;
  }

  // Merges the listed components into the first; indices are invalidated.
  int merge(std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    int into = ids.front();
    for (std::size_t k = ids.size(); k-- > 1;) {
      Component& src = comps_[static_cast<std::size_t>(ids[k])];
      Component& dst = comps_[static_cast<std::size_t>(into)];
      for (auto& t : src.concl) dst.concl.push_back(std::move(t));
      for (auto& c : src.cuts) dst.cuts.push_back(std::move(c));
      for (auto& a : src.aux) dst.aux.push_back(std::move(a));
      dst.uids.insert(dst.uids.end(), src.uids.begin(), src.uids.end());
      comps_.erase(comps_.begin() + ids[k]);
    }
    return into;
  }

  std::vector<int> distinct_components(int k) {
    std::vector<int> all(comps_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    std::shuffle(all.begin(), all.end(), rng_);
    all.resize(static_cast<std::size_t>(k));
    return all;
  }

  int component_with(int k, int avoid = -1) {
    std::vector<int> ok;
    for (std::size_t i = 0; i < comps_.size(); ++i)
      if (static_cast<int>(i) != avoid && static_cast<int>(comps_[i].concl.size()) >= k) ok.push_back(static_cast<int>(i));
    if (ok.empty()) return -1;
    return ok[static_cast<std::size_t>(pick(static_cast<int>(ok.size())))];
  }

  // One conclusion from each listed component, combined by a positive connective.
  Tree positive(Kind k, const std::vector<int>& ids) {
    std::vector<Tree> kids;
    for (int id : ids) {
      Component& c = comps_[static_cast<std::size_t>(id)];
      kids.push_back(take(c, pick(static_cast<int>(c.concl.size()))));
    }
    Tree t = Tree::node(k, std::move(kids));
    t.uid = uid_++;
    comps_[static_cast<std::size_t>(ids.front())].uids.push_back(t.uid);
    return t;
  }

  // n conclusions of one component combined by a negative connective.
  Tree negative(Kind k, int id, int n) {
    Component& c = comps_[static_cast<std::size_t>(id)];
    std::vector<Tree> kids;
    for (int i = 0; i < n; ++i) kids.push_back(take(c, pick(static_cast<int>(c.concl.size()))));
    return fresh(Tree::node(k, std::move(kids)), c);
  }

  int arity(int lo) { return lo + pick(std::max(1, cfg_.max_arity - lo + 1)); }

  void tensor_step(bool bang) {
    int n = arity(bang ? 1 : 2);
    if (static_cast<int>(comps_.size()) < n) return;
    auto ids = distinct_components(n);
    Tree t = positive(bang ? Kind::Bang : Kind::Tensor, ids);
    int into = merge(ids);
    comps_[static_cast<std::size_t>(into)].concl.push_back(std::move(t));
  }

  void par_step(bool quest) {
    int n = arity(quest ? 1 : 2);
    int id = component_with(n);
    if (id < 0) return;
    Tree t = negative(quest ? Kind::Quest : Kind::Par, id, n);
    comps_[static_cast<std::size_t>(id)].concl.push_back(std::move(t));
  }

  // A quest over some auxiliary ports (and possibly other conclusions) of one component.
  void aux_quest_step() {
    std::vector<int> ok;
    for (std::size_t i = 0; i < comps_.size(); ++i)
      if (!comps_[i].aux.empty()) ok.push_back(static_cast<int>(i));
    if (ok.empty()) return;
    Component& c = comps_[static_cast<std::size_t>(ok[static_cast<std::size_t>(pick(static_cast<int>(ok.size())))])];
    std::vector<Tree> kids;
    int na = 1 + pick(static_cast<int>(c.aux.size()));
    for (int i = 0; i < na; ++i) {
      int k = pick(static_cast<int>(c.aux.size()));
      kids.push_back(std::move(c.aux[static_cast<std::size_t>(k)]));
      c.aux.erase(c.aux.begin() + k);
    }
    if (c.concl.size() > 1 && coin()) kids.push_back(take(c, pick(static_cast<int>(c.concl.size()))));
    std::shuffle(kids.begin(), kids.end(), rng_);
    c.concl.push_back(fresh(Tree::node(Kind::Quest, std::move(kids)), c));
  }

  // A box around a random content one level down; its ports form a new component.
  Component* box_step() {
    if (depth_ <= 0) return nullptr;
    GenConfig inner = cfg_;
    inner.steps = mcfg_->content_steps;
    MellNet content = Gen(rng_, inner, *mcfg_, depth_ - 1, true, names_).run_mell();
    Box b;
    b.id = "b" + std::to_string(++names_->boxes);
    b.arity = static_cast<int>(content.net.conclusions.size()) - 1;
    b.content = std::move(content);
    comps_.emplace_back();
    Component& c = comps_.back();
    c.concl.push_back(fresh(Tree::port_of(b.id, 0), c));
    for (int i = 1; i <= b.arity; ++i) {
      Tree a = Tree::port_of(b.id, i);
      a.uid = uid_++;
      c.aux.push_back(std::move(a));
    }
    boxes_.push_back(std::move(b));
    return &c;
  }

  // <port(b,0) | quest(...)>, the quest built in another component.
  void box_redex() {
    if (comps_.empty()) return;
    int other = pick(static_cast<int>(comps_.size()));
    if (comps_[static_cast<std::size_t>(other)].concl.empty()) return;
    if (box_step() == nullptr) return;
    int bi = static_cast<int>(comps_.size()) - 1;
    Tree q = negative(Kind::Quest, other, 1 + pick(static_cast<int>(
                                                  std::min<std::size_t>(2, comps_[static_cast<std::size_t>(other)].concl.size()))));
    Tree p0 = take(comps_[static_cast<std::size_t>(bi)], 0);
    cut_between(bi, std::move(p0), other, std::move(q));
  }

  void cut_between(int a, Tree l, int b, Tree r) {
    Cut c = coin() ? Cut{std::move(l), std::move(r)} : Cut{std::move(r), std::move(l)};
    int into = merge({a, b});
    comps_[static_cast<std::size_t>(into)].cuts.push_back(std::move(c));
  }

  void generic_cut() {
    if (comps_.size() < 2) return;
    auto ids = distinct_components(2);
    Component& a = comps_[static_cast<std::size_t>(ids[0])];
    Component& b = comps_[static_cast<std::size_t>(ids[1])];
    if (a.concl.size() + b.concl.size() < 3) return;
    Tree l = take(a, pick(static_cast<int>(a.concl.size())));
    Tree r = take(b, pick(static_cast<int>(b.concl.size())));
    cut_between(ids[0], std::move(l), ids[1], std::move(r));
  }

  // <tensor(...) | par(...)> or <bang(...) | quest(...)> of equal arity.
  void connective_redex(bool exponential) {
    int lo = exponential ? 1 : 2;
    if (static_cast<int>(comps_.size()) < lo + 1) add_axiom();
    if (static_cast<int>(comps_.size()) < lo + 1) add_axiom();
    std::size_t widest = 0;
    for (const auto& c : comps_) widest = std::max(widest, c.concl.size());
    int n = std::min({arity(lo), static_cast<int>(widest), static_cast<int>(comps_.size()) - 1});
    int neg = n >= lo ? component_with(n) : -1;
    if (neg < 0) return;
    std::vector<int> others;
    for (std::size_t i = 0; i < comps_.size(); ++i)
      if (static_cast<int>(i) != neg) others.push_back(static_cast<int>(i));
    std::shuffle(others.begin(), others.end(), rng_);
    others.resize(static_cast<std::size_t>(n));
    Tree s = negative(exponential ? Kind::Quest : Kind::Par, neg, n);
    Tree t = positive(exponential ? Kind::Bang : Kind::Tensor, others);
    std::vector<int> ids = others;
    ids.push_back(neg);
    int into = merge(ids);
    Component& c = comps_[static_cast<std::size_t>(into)];
    c.cuts.push_back(coin() ? Cut{std::move(t), std::move(s)} : Cut{std::move(s), std::move(t)});
  }

  // <x | t> with a fresh axiom, t a conclusion of another component.
  void axiom_redex() {
    int other = pick(static_cast<int>(comps_.size()));
    Component& ax = add_axiom();
    int axi = static_cast<int>(comps_.size()) - 1;
    Tree x = take(ax, coin() ? 0 : 1);
    Component& o = comps_[static_cast<std::size_t>(other)];
    Tree t = take(o, pick(static_cast<int>(o.concl.size())));
    cut_between(axi, std::move(x), other, std::move(t));
  }

  // <1 | bot> (or <!0 | ?0>) with the negative leaf jumping inside its component.
  void evanescent_redex() {
    bool exp = cfg_.exponentials && coin();
    int id = pick(static_cast<int>(comps_.size()));
    add_counit(comps_[static_cast<std::size_t>(id)], exp);
    Component& c = comps_[static_cast<std::size_t>(id)];
    Tree neg = take(c, static_cast<int>(c.concl.size()) - 1);
    add_unit(exp);
    int ui = static_cast<int>(comps_.size()) - 1;
    Tree pos = take(comps_.back(), 0);
    cut_between(id, std::move(neg), ui, std::move(pos));
  }

  void mell_step() {
    // axiom, one, bot, weak, tensor, par, quest, aux quest, generic cut, mult redex, axiom redex, evanescent, box, box redex
    std::vector<int> w = {3, 1, 1, 1, 2, 2, 1, 3, 1, cfg_.redex_weight, cfg_.redex_weight, 1, 0, 0};
    if (depth_ > 0) w[12] = mcfg_->box_weight, w[13] = mcfg_->box_weight;
    std::discrete_distribution<int> d(w.begin(), w.end());
    auto any = [&]() -> Component& { return comps_[static_cast<std::size_t>(pick(static_cast<int>(comps_.size())))]; };
    switch (d(rng_)) {
      case 0: add_axiom(); break;
      case 1: add_unit(false); break;
      case 2: add_counit(any(), false); break;
      case 3: add_counit(any(), true); break;
      case 4: tensor_step(false); break;
      case 5: par_step(false); break;
      case 6: par_step(true); break;
      case 7: aux_quest_step(); break;
      case 8: generic_cut(); break;
      case 9: connective_redex(false); break;
      case 10: axiom_redex(); break;
      case 11: {
        int id = pick(static_cast<int>(comps_.size()));
        add_counit(comps_[static_cast<std::size_t>(id)], false);
        Component& c = comps_[static_cast<std::size_t>(id)];
        Tree neg = take(c, static_cast<int>(c.concl.size()) - 1);
        add_unit(false);
        int ui = static_cast<int>(comps_.size()) - 1;
        Tree pos = take(comps_.back(), 0);
        cut_between(id, std::move(neg), ui, std::move(pos));
        break;
      }
      case 12: box_step(); break;
      case 13: box_redex(); break;
    }
  }

  void step() {
    if (mell()) return mell_step();
    std::vector<int> w = {3, 1, 1, 2, 2, 1, 1};  // axiom, unit, counit, tensor, par, bang, quest
    w.push_back(1);                                // generic cut
    w.push_back(cfg_.redex_weight);                // multiplicative redex
    w.push_back(cfg_.redex_weight);                // exponential redex
    w.push_back(cfg_.redex_weight);                // axiom redex
    w.push_back(cfg_.redex_weight);                // evanescent redex
    if (!cfg_.units) w[1] = w[2] = w[11] = 0;
    if (!cfg_.exponentials) w[5] = w[6] = w[9] = 0;
    std::discrete_distribution<int> d(w.begin(), w.end());
    switch (d(rng_)) {
      case 0: add_axiom(); break;
      case 1: add_unit(cfg_.exponentials && coin()); break;
      case 2: add_counit(comps_[static_cast<std::size_t>(pick(static_cast<int>(comps_.size())))], cfg_.exponentials && coin()); break;
      case 3: tensor_step(false); break;
      case 4: par_step(false); break;
      case 5: tensor_step(true); break;
      case 6: par_step(true); break;
      case 7: generic_cut(); break;
      case 8: connective_redex(false); break;
      case 9: connective_redex(true); break;
      case 10: axiom_redex(); break;
      case 11: evanescent_redex(); break;
    }
  }

  Net finish() {
    Net net;
    for (auto& c : comps_) {
      for (auto& t : c.concl) net.conclusions.push_back(std::move(t));
      for (auto& k : c.cuts) net.cuts.push_back(std::move(k));
    }
    std::shuffle(net.conclusions.begin(), net.conclusions.end(), rng_);
    std::shuffle(net.cuts.begin(), net.cuts.end(), rng_);
    Flat f(net);
    std::map<int, Addr> at;
    for (const auto& n : f.nodes) at[n.uid] = n.addr;
    for (const auto& [label, uid] : jumps_) net.jumps[label] = at.at(uid);
    return net;
  }
};

}  // namespace

Net random_net(Rng& rng, const GenConfig& cfg) { return Gen(rng, cfg).run(); }

MellNet random_mell(Rng& rng, const MellGenConfig& cfg) {
  GenConfig g;
  g.steps = cfg.steps;
  g.max_arity = cfg.max_arity;
  g.redex_weight = cfg.redex_weight;
  for (;;) {
    Names names;
    MellNet m = Gen(rng, g, cfg, cfg.max_depth, false, &names).run_mell();
    auto ms = mell_measures(m);
    if (ms.size <= cfg.max_size && ms.depth <= cfg.max_depth && (!cfg.require_box || !m.boxes.empty()) &&
        validate_mell(m).empty() && mell_acyclic(m))
      return m;
  }
}

std::vector<int> random_pure_selection(Rng& rng, const Net& net) {
  std::map<CutKind, std::vector<int>> by_kind;
  for (int c : reducible_cuts(net)) by_kind[classify_cut(net, c).kind].push_back(c);
  if (by_kind.empty()) return {};
  auto it = by_kind.begin();
  std::advance(it, std::uniform_int_distribution<int>(0, static_cast<int>(by_kind.size()) - 1)(rng));
  std::vector<int> out;
  for (int c : it->second)
    if (std::bernoulli_distribution(0.6)(rng)) out.push_back(c);
  if (out.empty()) out.push_back(it->second.front());
  return out;
}

std::vector<int> random_selection(Rng& rng, const Net& net) {
  std::vector<int> out;
  for (int c : reducible_cuts(net))
    if (std::bernoulli_distribution(0.5)(rng)) out.push_back(c);
  return out;
}

}  // namespace pnet
