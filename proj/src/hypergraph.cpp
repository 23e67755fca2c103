#include "mmlp/hypergraph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "mmlp/error.hpp"

namespace mmlp {

Hypergraph::Hypergraph(const Instance& instance)
    : agents_(instance.agents().begin(), instance.agents().end()) {
  incidence_.resize(agents_.size());
  for (RowKind kind : {RowKind::Resource, RowKind::Beneficiary}) {
    const auto rows = instance.rows(kind);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      Hyperedge edge{kind, r, {}};
      for (const auto& e : rows[r].entries) {
        if (auto idx = instance.index_of(e.agent)) edge.members.push_back(*idx);
      }
      edge.members.erase(std::unique(edge.members.begin(), edge.members.end()),
                         edge.members.end());
      for (auto m : edge.members) incidence_[m].push_back(edges_.size());
      edges_.push_back(std::move(edge));
    }
  }

  adjacency_.resize(agents_.size());
  for (std::size_t v = 0; v < agents_.size(); ++v) {
    auto& adj = adjacency_[v];
    for (auto e : incidence_[v]) {
      for (auto u : edges_[e].members) {
        if (u != v) adj.push_back(u);
      }
    }
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
}

std::size_t Hypergraph::index_of(AgentId agent) const {
  auto it = std::lower_bound(agents_.begin(), agents_.end(), agent);
  if (it == agents_.end() || *it != agent) {
    throw UnknownAgent("unknown agent " + std::to_string(agent));
  }
  return static_cast<std::size_t>(it - agents_.begin());
}

std::vector<int> Hypergraph::distances(std::size_t source, int max_radius) const {
  std::vector<int> dist(agents_.size(), -1);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    if (dist[v] >= max_radius) continue;
    for (auto u : adjacency_[v]) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

std::vector<std::size_t> Hypergraph::ball_indices(std::size_t v, int radius) const {
  if (radius < 0) throw std::invalid_argument("ball: negative radius");
  const auto dist = distances(v, radius);
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < dist.size(); ++u) {
    if (dist[u] >= 0) out.push_back(u);
  }
  return out;
}

std::size_t Hypergraph::ball_size(std::size_t v, int radius) const {
  const auto dist = distances(v, radius);
  return static_cast<std::size_t>(std::count_if(dist.begin(), dist.end(),
                                                [](int d) { return d >= 0; }));
}

std::vector<AgentId> Hypergraph::ball(AgentId v, int radius) const {
  std::vector<AgentId> out;
  for (auto idx : ball_indices(index_of(v), radius)) out.push_back(agents_[idx]);
  return out;
}

Ratio Hypergraph::growth(int radius) const {
  if (agents_.empty()) throw std::invalid_argument("growth: empty instance");
  if (radius < 0) throw std::invalid_argument("growth: negative radius");
  Ratio best(1);
  for (std::size_t v = 0; v < agents_.size(); ++v) {
    const auto dist = distances(v, radius + 1);
    std::int64_t inner = 0, outer = 0;
    for (int d : dist) {
      if (d < 0) continue;
      ++outer;
      if (d <= radius) ++inner;
    }
    best = std::max(best, Ratio(outer, inner));
  }
  return best;
}

std::vector<AgentId> neighbourhood_ball(const Instance& instance, AgentId v, int radius) {
  return Hypergraph(instance).ball(v, radius);
}

Ratio growth_factor(const Instance& instance, int radius) {
  return Hypergraph(instance).growth(radius);
}

}  // namespace mmlp
