#include "pnet/verify.hpp"

#include <json.hpp>

#include <functional>
#include <map>

#include "pnet/bounds.hpp"
#include "pnet/mell.hpp"
#include "pnet/reduce.hpp"
#include "pnet/switching.hpp"
#include "pnet/syntax.hpp"
#include "pnet/transport.hpp"

namespace pnet {

std::size_t VerifyReport::failures() const {
  std::size_t n = 0;
  for (const auto& p : properties) n += p.failures;
  return n;
}

std::string VerifyReport::to_json(int indent) const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["cases"] = cases;
  j["failures"] = failures();
  j["properties"] = nlohmann::ordered_json::array();
  for (const auto& p : properties) {
    nlohmann::ordered_json e;
    e["property"] = p.property;
    e["cases"] = p.cases;
    e["failures"] = p.failures;
    e["witnesses"] = p.witnesses;
    j["properties"].push_back(std::move(e));
  }
  return j.dump(indent);
}

namespace {

class Suite {
 public:
  explicit Suite(std::size_t max_witnesses) : max_witnesses_(max_witnesses) {}

  // Runs one property case; an exception counts as a failure.
  void check(const std::string& name, const std::string& witness, const std::function<bool()>& body) {
    auto& r = slot(name);
    ++r.cases;
    bool ok = false;
    std::string why;
    try {
      ok = body();
    } catch (const std::exception& e) {
      why = std::string(" (") + e.what() + ")";
    }
    if (ok) return;
    ++r.failures;
    if (r.witnesses.size() < max_witnesses_) r.witnesses.push_back(witness + why);
  }

  std::vector<PropertyResult> results() const { return order_; }

 private:
  std::size_t max_witnesses_;
  std::vector<PropertyResult> order_;
  std::map<std::string, std::size_t> index_;

  PropertyResult& slot(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return order_[it->second];
    index_[name] = order_.size();
    order_.push_back(PropertyResult{name, 0, 0, {}});
    return order_.back();
  }
};

}  // namespace

VerifyReport run_verify(std::uint64_t seed, std::size_t cases, const VerifyConfig& cfg) {
  VerifyReport report;
  report.seed = seed;
  report.cases = cases;
  Suite suite(cfg.max_witnesses);
  for (std::size_t i = 0; i < cases; ++i) {
    std::seed_seq ss{seed, static_cast<std::uint64_t>(i)};
    Rng rng(ss);
    Net p = random_net(rng, cfg.net);
    std::string text = print_net(p);

    suite.check("roundtrip", text, [&] { return alpha_equal(parse_net(print_net(p)), p); });

    Flat fp(p);
    auto edges = union_graph(fp).edges.size();
    if (edges <= cfg.trail_edge_cap)
      suite.check("ln_oracle", text, [&] {
        return max_path_length_forest(fp).ln == max_trail_by_enumeration(fp, cfg.trail_edge_cap);
      });

    auto sel = (i % 2) ? random_selection(rng, p) : random_pure_selection(rng, p);
    std::vector<Reduct> reducts;
    suite.check("reduce", text, [&] {
      reducts = parallel_reduce(p, sel, RedirectPolicy::FirstPremise);
      return !reducts.empty();
    });
    if (!reducts.empty()) {
      Reduct& rd = reducts.front();
      if (cfg.mutate) rd.net.conclusions.push_back(Tree::leaf(Kind::One, "mutant"));
      const Net& q = rd.net;
      std::string w = text + " => " + print_net(q);
      suite.check("reduct_accounting", w, [&] {
        return size(p) == size(q) + 2 * rd.record.eliminated.size() && p.conclusions.size() == q.conclusions.size() &&
               validate_net(q).empty();
      });
      suite.check("acyclicity_preserved", w, [&] { return is_acyclic(q).acyclic; });
      suite.check("bounds", w, [&] { return check_bounds(p, q, rd.record).ok(); });
      if (is_multiplicative_step(rd.record.kind) && rd.record.kind != StepKind::Identity) {
        suite.check("transport", w, [&] {
          LengthResult lq = max_path_length(q);
          const Path& chi = lq.witness;
          Transported t = transport(p, q, rd.record, chi);
          std::size_t wd = width(p, q, rd.record, chi);
          return t.valid && t.path.length() <= 3 * chi.length() && mpz_class(chi.length()) <= phi(wd);
        });
      }
    }

    if (cfg.taylor_every && i % cfg.taylor_every == 0) {
      MellNet m = random_mell(rng, cfg.mell);
      std::string mt = print_mell(m);
      suite.check("taylor_bounds", mt, [&] {
        for (const auto& e : taylor_expand(m, cfg.taylor_budget))
          if (!taylor_bound_check(e, m).ok()) return false;
        return true;
      });
    }
  }
  report.properties = suite.results();
  return report;
}

}  // namespace pnet
