#pragma once

// Seeded fixtures and brute-force scans shared by the transport tests and
// the acceptance run.

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "pnet/generate.hpp"
#include "pnet/reduce.hpp"
#include "pnet/switching.hpp"

namespace support {

using namespace pnet;

struct Step {
  Net p;
  Reduct r;
};

// Seeded multiplicative (or exponential) steps on nets small enough that
// every reduct path can be enumerated.
inline std::vector<Step> seeded_mult_steps(std::uint64_t seed, int want) {
  Rng rng(seed);
  std::vector<Step> out;
  for (int i = 0; static_cast<int>(out.size()) < want && i < 20000; ++i) {
    GenConfig cfg;
    cfg.steps = 4 + i % 6;
    Net p = random_net(rng, cfg);
    std::vector<int> sel;
    for (int c : reducible_cuts(p)) {
      CutKind k = classify_cut(p, c).kind;
      if ((k == CutKind::Multiplicative || k == CutKind::ExponentialPair) && rng() % 3) sel.push_back(c);
    }
    if (sel.empty()) continue;
    auto rs = parallel_reduce(p, sel);
    Reduct r = rs[rng() % rs.size()];
    if (switching_count(Flat(r.net), 2000) > 200) continue;
    out.push_back(Step{p, r});
  }
  return out;
}

// Every trail of every switching of q, each edge sequence once.
inline std::vector<Path> all_paths(const Net& q) {
  Flat f(q);
  std::set<std::vector<Edge>> seen;
  std::vector<Path> out;
  Switching s = first_switching(f);
  do {
    for (auto& t : enumerate_trails(f, s, std::nullopt, 64))
      if (seen.insert(t.edges).second) out.push_back(t);
  } while (next_switching(f, s));
  return out;
}

inline int cut_of_edge(const Flat& f, const Edge& e) { return f.cut_of[static_cast<std::size_t>(e.a)]; }

// Maximal slipknots by brute force: spans [i, j] of cut edges that are
// distinct residuals of one eliminated cut, not contained in another span.
inline std::vector<std::pair<std::size_t, std::size_t>> maximal_slipknots(const Flat& fq, const ReductionRecord& rec,
                                                                          const Path& chi) {
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  for (std::size_t i = 0; i < chi.edges.size(); ++i)
    for (std::size_t j = i + 1; j < chi.edges.size(); ++j) {
      if (chi.edges[i].kind != EdgeKind::Cut || chi.edges[j].kind != EdgeKind::Cut) continue;
      int a = cut_of_edge(fq, chi.edges[i]), b = cut_of_edge(fq, chi.edges[j]);
      auto ra = rec.residual_of[static_cast<std::size_t>(a)], rb = rec.residual_of[static_cast<std::size_t>(b)];
      if (a != b && ra.first >= 0 && ra.first == rb.first) spans.emplace_back(i, j);
    }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& s : spans) {
    bool inner = false;
    for (const auto& t : spans) inner = inner || (t != s && t.first <= s.first && s.second <= t.second);
    if (!inner) out.push_back(s);
  }
  return out;
}

// Maximal spans are pairwise disjoint and in order.
inline bool well_bracketed(const std::vector<std::pair<std::size_t, std::size_t>>& spans) {
  for (std::size_t i = 1; i < spans.size(); ++i)
    if (spans[i - 1].second >= spans[i].first) return false;
  return true;
}

// For each eliminated cut, whether each residual crossing of chi enters from
// the tensor (or bang) side.
inline std::map<int, std::vector<bool>> residual_crossings(const Flat& fp, const Flat& fq, const ReductionRecord& rec,
                                                           const Path& chi) {
  std::map<int, std::vector<bool>> out;
  for (std::size_t i = 0; i < chi.edges.size(); ++i) {
    if (chi.edges[i].kind != EdgeKind::Cut) continue;
    auto res = rec.residual_of[static_cast<std::size_t>(cut_of_edge(fq, chi.edges[i]))];
    if (res.first < 0) continue;
    int u = rec.q_to_p[static_cast<std::size_t>(chi.verts[i])];
    Kind parent = fp.nodes[static_cast<std::size_t>(fp.nodes[static_cast<std::size_t>(u)].parent)].kind;
    out[res.first].push_back(is_multiplicative(parent));
  }
  return out;
}

// At most two crossings per cut; two go tensor -> par, then par -> tensor.
inline bool residuals_ok(const std::map<int, std::vector<bool>>& crossings) {
  for (const auto& [c, dirs] : crossings) {
    if (dirs.size() > 2) return false;
    if (dirs.size() == 2 && !(dirs[0] && !dirs[1])) return false;
  }
  return true;
}

}  // namespace support
