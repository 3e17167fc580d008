// pnet: command-line front end for the proof-net engine.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "pnet/antireduct.hpp"
#include "pnet/bounds.hpp"
#include "pnet/dot.hpp"
#include "pnet/mell.hpp"
#include "pnet/reduce.hpp"
#include "pnet/switching.hpp"
#include "pnet/syntax.hpp"
#include "pnet/verify.hpp"

using namespace pnet;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MellNet load(const std::string& path) {
  try {
    return parse_mell(slurp(path));
  } catch (const Error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Net load_plain(const std::string& path) {
  MellNet m = load(path);
  if (!m.boxes.empty()) throw UsageError(path + ": command needs a net without boxes");
  return m.net;
}

void emit(bool as_json, const json& j, const std::string& text) {
  if (as_json) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

std::vector<int> parse_cut_list(const std::string& list) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty() && (item[0] == 'c' || item[0] == 'C')) item.erase(0, 1);
    try {
      out.push_back(std::stoi(item) - 1);
    } catch (const std::exception&) {
      throw UsageError("bad cut index '" + item + "'");
    }
  }
  return out;
}

int cmd_check(const std::string& file, bool as_json) {
  MellNet m = load(file);
  auto issues = validate_mell(m);
  bool acyclic = issues.empty() && mell_acyclic(m);
  json j;
  j["valid"] = issues.empty();
  j["acyclic"] = acyclic;
  j["issues"] = json::array();
  std::ostringstream os;
  for (const auto& is : issues) {
    j["issues"].push_back({{"code", errc_name(is.code)}, {"subject", is.subject}});
    os << errc_name(is.code) << ": " << is.subject << "\n";
  }
  if (issues.empty()) os << (acyclic ? "valid, acyclic\n" : "valid, cyclic\n");
  emit(as_json, j, os.str());
  return acyclic ? kOk : kFailure;
}

int cmd_measure(const std::string& file, bool as_json) {
  MellNet m = load(file);
  require_valid_mell(m);
  MellMeasures mm = mell_measures(m);
  bool acyclic = mell_acyclic(m);
  std::size_t ln = max_path_length(m.net).ln;
  int jd = jump_degree(m.net).max;
  json j{{"size", mm.size}, {"toplevel_size", mm.tlsize}, {"depth", mm.depth},
         {"ln", ln},        {"jd", jd},                   {"acyclic", acyclic}};
  std::ostringstream os;
  os << "size " << mm.size << "\nln " << ln << "\njd " << jd << "\ndepth " << mm.depth << "\n";
  if (!acyclic) os << "cyclic\n";
  emit(as_json, j, os.str());
  return kOk;
}

int cmd_reduce(const std::string& file, const std::string& cuts, const std::string& policy, bool as_json) {
  Net p = load_plain(file);
  require_valid(p);
  RedirectPolicy pol = policy == "any" ? RedirectPolicy::AnyPremise : RedirectPolicy::FirstPremise;
  std::vector<int> sel = cuts.empty() ? reducible_cuts(p) : parse_cut_list(cuts);
  auto reducts = parallel_reduce(p, sel, pol);
  json j;
  j["step"] = reducts.empty() ? "identity" : step_kind_name(reducts.front().record.kind);
  j["reducts"] = json::array();
  std::ostringstream os;
  bool ok = true;
  for (const auto& r : reducts) {
    BoundReport br;
    bool have_bounds = is_acyclic(p).acyclic;
    if (have_bounds) br = check_bounds(p, r.net, r.record);
    ok = ok && (!have_bounds || br.ok());
    json e{{"net", print_net(r.net)}, {"size", size(r.net)}};
    if (have_bounds) e["bounds_ok"] = br.ok();
    j["reducts"].push_back(e);
    os << print_net(r.net) << "\n";
  }
  emit(as_json, j, os.str());
  return ok ? kOk : kFailure;
}

int cmd_taylor(const std::string& file, int budget, bool all_jumps, bool as_json) {
  MellNet m = load(file);
  auto elems = taylor_expand(m, budget, all_jumps ? JumpPolicy::Exhaustive : JumpPolicy::Deterministic);
  json j;
  j["budget"] = budget;
  j["elements"] = json::array();
  std::ostringstream os;
  bool ok = true;
  for (const auto& e : elems) {
    auto rep = taylor_bound_check(e, m);
    ok = ok && rep.ok();
    j["elements"].push_back({{"net", print_net(e.net)},
                             {"copies", e.copies},
                             {"ln", rep.ln},
                             {"jd", rep.jd},
                             {"bounds_ok", rep.ok()}});
    os << e.copies << "\t" << print_net(e.net) << "\n";
  }
  emit(as_json, j, os.str());
  return ok ? kOk : kFailure;
}

json stats_json(const LevelStats& s) {
  json j{{"visited", s.visited},        {"refused_cyclic", s.refused_cyclic}, {"over_caps", s.over_caps},
         {"rejected", s.rejected},      {"found", s.found},                   {"size_limit", s.size_limit},
         {"size_budget", s.size_budget < 0 ? std::string("unbounded") : s.size_budget.get_str()}};
  return j;
}

int cmd_antireducts(const std::string& file, int k, std::size_t ln, int jd, bool oracle, std::size_t size_cap,
                    bool allow_cyclic, bool as_json) {
  Net q = load_plain(file);
  AntireductSet set;
  if (oracle) {
    OracleOptions o;
    if (size_cap) o.size_cap = size_cap;
    set = brute_force_antireducts(q, k, ln, jd, o);
  } else {
    SearchOptions o;
    o.size_cap = size_cap;
    o.refuse_cyclic_target = !allow_cyclic;
    set = antireducts(q, k, ln, jd, o);
  }
  json j;
  j["count"] = set.nets.size();
  j["visited"] = set.visited();
  j["levels"] = json::array();
  for (const auto& l : set.levels) j["levels"].push_back(stats_json(l));
  j["nets"] = json::array();
  std::ostringstream os;
  for (const auto& n : set.nets) {
    j["nets"].push_back(print_net(n));
    os << print_net(n) << "\n";
  }
  os << "# " << set.nets.size() << " antireducts, " << set.visited() << " candidates visited\n";
  emit(as_json, j, os.str());
  return kOk;
}

int cmd_verify(std::uint64_t seed, std::size_t cases, bool mutate, bool as_json) {
  VerifyConfig cfg;
  cfg.mutate = mutate;
  VerifyReport r = run_verify(seed, cases, cfg);
  std::ostringstream os;
  for (const auto& p : r.properties) {
    os << p.property << ": " << p.cases << " cases, " << p.failures << " failures\n";
    for (const auto& w : p.witnesses) os << "  " << w << "\n";
  }
  if (as_json) std::cout << r.to_json() << "\n";
  else std::cout << os.str();
  return r.failures() ? kFailure : kOk;
}

int cmd_dot(const std::string& file) {
  MellNet m = load(file);
  require_valid_mell(m);
  std::cout << (m.boxes.empty() ? export_dot(m.net) : export_dot(m));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proof nets with jumps: cut elimination, path bounds, Taylor expansion, antireducts"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output");

  std::string file;
  auto* check = app.add_subcommand("check", "Validate a net and test acyclicity");
  check->add_option("file", file, "Net file")->required();

  auto* measure = app.add_subcommand("measure", "Print size, ln, jd and depth");
  measure->add_option("file", file, "Net file")->required();

  std::string cuts, policy = "first";
  auto* reduce = app.add_subcommand("reduce", "Parallel reduction of selected cuts");
  reduce->add_option("file", file, "Net file")->required();
  reduce->add_option("--cuts", cuts, "Comma-separated 1-based cut indices (default: every reducible cut)");
  reduce->add_option("--policy", policy, "Jump redirection policy")->check(CLI::IsMember({"first", "any"}));

  int budget = 1;
  bool all_jumps = false;
  auto* taylor = app.add_subcommand("taylor", "Taylor expansion up to a copy budget");
  taylor->add_option("file", file, "MELL net file")->required();
  taylor->add_option("--budget", budget, "Copies per box occurrence")->check(CLI::NonNegativeNumber);
  taylor->add_flag("--all-jumps", all_jumps, "Every jump target for created weakenings");

  int k = 1, jd = 0;
  std::size_t ln = 0, size_cap = 0;
  bool oracle = false, allow_cyclic = false;
  auto* anti = app.add_subcommand("antireducts", "Nets reducing to the given one");
  anti->add_option("file", file, "Target net file")->required();
  anti->add_option("-k", k, "Reduction steps")->check(CLI::NonNegativeNumber);
  anti->add_option("--ln", ln, "Path length cap")->required();
  anti->add_option("--jd", jd, "Jump degree cap")->required()->check(CLI::NonNegativeNumber);
  anti->add_option("--size-cap", size_cap, "Size cap (0: derived budget only)");
  anti->add_flag("--oracle", oracle, "Brute-force enumeration over a 2-variable/2-label alphabet");
  anti->add_flag("--allow-cyclic", allow_cyclic, "Search from a cyclic target instead of refusing");

  std::uint64_t seed = 42;
  std::size_t cases = 100;
  bool mutate = false;
  auto* verify = app.add_subcommand("verify", "Run the seeded property suites");
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--cases", cases, "Number of random nets");
  verify->add_flag("--mutate", mutate, "Corrupt the reducer to self-test the harness");

  auto* dot = app.add_subcommand("dot", "Graphviz export");
  dot->add_option("file", file, "Net file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(file, as_json);
    if (*measure) return cmd_measure(file, as_json);
    if (*reduce) return cmd_reduce(file, cuts, policy, as_json);
    if (*taylor) return cmd_taylor(file, budget, all_jumps, as_json);
    if (*anti) return cmd_antireducts(file, k, ln, jd, oracle, size_cap, allow_cyclic, as_json);
    if (*verify) return cmd_verify(seed, cases, mutate, as_json);
    if (*dot) return cmd_dot(file);
  } catch (const UsageError& e) {
    std::cerr << "pnet: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "pnet: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
