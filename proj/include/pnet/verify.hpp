#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pnet/generate.hpp"

namespace pnet {

struct PropertyResult {
  std::string property;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> witnesses;  // printed nets of the first failures
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::vector<PropertyResult> properties;
  std::size_t failures() const;
  std::string to_json(int indent = 2) const;
};

struct VerifyConfig {
  GenConfig net{8, 3, true, true, 3};
  MellGenConfig mell;
  int taylor_budget = 2;
  std::size_t taylor_every = 5;   // one MELL case per this many net cases
  std::size_t trail_edge_cap = 24;
  std::size_t max_witnesses = 3;
  bool mutate = false;            // corrupt every reduct (harness self-test)
};

// Seeded random nets through every property suite; failures are data.
VerifyReport run_verify(std::uint64_t seed, std::size_t cases, const VerifyConfig& cfg = {});

}  // namespace pnet
