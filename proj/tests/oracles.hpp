#pragma once

// Test-only reference computations. None of these share code paths with the
// library routines they check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "mmlp/assignment.hpp"
#include "mmlp/instance.hpp"
#include "mmlp/maxmin.hpp"

namespace oracle {

using mmlp::AgentId;
using mmlp::Instance;

/// All-pairs hop distances by Floyd-Warshall over "shares a row" adjacency.
inline std::map<std::pair<AgentId, AgentId>, int> all_distances(const Instance& inst) {
  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  const auto agents = inst.agents();
  const std::size_t n = agents.size();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  auto pos = [&](AgentId a) {
    return static_cast<std::size_t>(std::find(agents.begin(), agents.end(), a) - agents.begin());
  };
  for (auto rows : {inst.resources(), inst.beneficiaries()}) {
    for (const auto& row : rows) {
      for (const auto& a : row.entries) {
        for (const auto& b : row.entries) {
          if (a.agent != b.agent) d[pos(a.agent)][pos(b.agent)] = 1;
        }
      }
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  std::map<std::pair<AgentId, AgentId>, int> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (d[i][j] < kInf) out[{agents[i], agents[j]}] = d[i][j];
  return out;
}

inline std::vector<AgentId> ball(const std::map<std::pair<AgentId, AgentId>, int>& dist,
                                 const Instance& inst, AgentId v, int r) {
  std::vector<AgentId> out;
  for (AgentId u : inst.agents()) {
    auto it = dist.find({v, u});
    if (it != dist.end() && it->second <= r) out.push_back(u);
  }
  return out;
}

/// gamma(r) as the pair (numerator, denominator) of the maximising ball ratio,
/// compared by cross-multiplication.
inline std::pair<long, long> growth(const Instance& inst, int r) {
  const auto dist = all_distances(inst);
  std::pair<long, long> best{1, 1};
  for (AgentId v : inst.agents()) {
    const long outer = static_cast<long>(ball(dist, inst, v, r + 1).size());
    const long inner = static_cast<long>(ball(dist, inst, v, r).size());
    if (outer * best.second > best.first * inner) best = {outer, inner};
  }
  return best;
}

/// Brute-force max-min value over the grid {0, step, 2 step, ...}^n, clipped to
/// the box x_v <= 1 / max_i a_iv implied by each agent's own rows.
inline double grid_search_omega(const Instance& inst, double step) {
  const auto agents = inst.agents();
  const std::size_t n = agents.size();
  std::vector<double> upper(n, std::numeric_limits<double>::infinity());
  for (const auto& row : inst.resources()) {
    for (const auto& e : row.entries) {
      auto i = static_cast<std::size_t>(std::find(agents.begin(), agents.end(), e.agent) -
                                        agents.begin());
      upper[i] = std::min(upper[i], 1.0 / e.value);
    }
  }
  std::vector<int> steps(n);
  for (std::size_t i = 0; i < n; ++i) steps[i] = static_cast<int>(std::floor(upper[i] / step + 1e-9));

  std::map<AgentId, double> x;
  double best = 0.0;
  std::vector<int> idx(n, 0);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) x[agents[i]] = idx[i] * step;
    bool ok = true;
    for (const auto& row : inst.resources()) {
      double s = 0.0;
      for (const auto& e : row.entries) s += e.value * x[e.agent];
      if (s > 1.0 + 1e-12) {
        ok = false;
        break;
      }
    }
    if (ok) {
      double w = std::numeric_limits<double>::infinity();
      for (const auto& row : inst.beneficiaries()) {
        double s = 0.0;
        for (const auto& e : row.entries) s += e.value * x[e.agent];
        w = std::min(w, s);
      }
      best = std::max(best, w);
    }
    std::size_t k = 0;
    while (k < n && ++idx[k] > steps[k]) idx[k++] = 0;
    if (k == n) break;
  }
  return best;
}

/// Local averaging evaluated from the global instance: the local LPs are the
/// partial restrictions to B(u, R) and all ball sizes come from all_distances.
inline mmlp::Assignment global_local_average(const Instance& inst, int R) {
  const auto dist = all_distances(inst);
  std::map<AgentId, mmlp::Assignment> local;
  for (AgentId u : inst.agents()) {
    const auto sub = mmlp::restrict(inst, ball(dist, inst, u, R), mmlp::RestrictMode::Partial);
    local[u] = sub.beneficiaries().empty() ? mmlp::Assignment::zeros(sub)
                                           : mmlp::solve_maxmin(sub).x;
  }
  Eigen::VectorXd values(static_cast<Eigen::Index>(inst.num_agents()));
  for (std::size_t jdx = 0; jdx < inst.num_agents(); ++jdx) {
    const AgentId j = inst.agents()[jdx];
    const auto inner = ball(dist, inst, j, R);
    double sum = 0.0;
    for (AgentId u : inner) sum += local.at(u)[j];
    double beta = std::numeric_limits<double>::infinity();
    for (auto r : inst.resources_of(jdx)) {
      std::set<AgentId> united;
      std::size_t smallest = std::numeric_limits<std::size_t>::max();
      for (const auto& e : inst.resources()[r].entries) {
        const auto b = ball(dist, inst, e.agent, R);
        smallest = std::min(smallest, b.size());
        united.insert(b.begin(), b.end());
      }
      beta = std::min(beta, static_cast<double>(smallest) / static_cast<double>(united.size()));
    }
    values(static_cast<Eigen::Index>(jdx)) = beta / static_cast<double>(inner.size()) * sum;
  }
  return mmlp::Assignment({inst.agents().begin(), inst.agents().end()}, values);
}

}  // namespace oracle
