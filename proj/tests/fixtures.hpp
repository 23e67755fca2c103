#pragma once

#include <vector>

#include "mmlp/instance.hpp"

namespace fixtures {

using mmlp::Instance;
using mmlp::SparseRow;

inline SparseRow row(std::int64_t id, std::vector<std::pair<mmlp::AgentId, double>> coeffs) {
  SparseRow out{id, {}};
  for (auto [a, v] : coeffs) out.entries.push_back({a, v});
  return out;
}

/// 1 agent, a = 1, c = 1.
inline Instance minimal() { return Instance({0}, {row(0, {{0, 1.0}})}, {row(0, {{0, 1.0}})}); }

/// Path 0-1-2-3-4 through size-2 resources; each agent has a private beneficiary.
inline Instance path5() {
  std::vector<SparseRow> res, ben;
  for (int v = 0; v < 4; ++v) res.push_back(row(v, {{v, 1.0}, {v + 1, 1.0}}));
  for (int v = 0; v < 5; ++v) ben.push_back(row(v, {{v, 1.0}}));
  return Instance({0, 1, 2, 3, 4}, res, ben);
}

/// Cycle of 6 agents: resource i and beneficiary i both on {i, i+1 mod 6}.
inline Instance cycle6() {
  std::vector<SparseRow> res, ben;
  for (int v = 0; v < 6; ++v) {
    res.push_back(row(v, {{v, 1.0}, {(v + 1) % 6, 1.0}}));
    ben.push_back(row(v, {{v, 1.0}, {(v + 1) % 6, 1.0}}));
  }
  return Instance({0, 1, 2, 3, 4, 5}, res, ben);
}

}  // namespace fixtures
