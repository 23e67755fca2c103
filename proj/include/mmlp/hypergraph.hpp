#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mmlp/instance.hpp"
#include "mmlp/rational.hpp"

namespace mmlp {

/// One hyperedge V_i or V_k, tagged by the row it came from.
struct Hyperedge {
  RowKind kind;
  std::size_t row;                   // index into Instance::rows(kind)
  std::vector<std::size_t> members;  // agent indices, ascending
};

/// Communication hypergraph of an instance: vertices are agents, hyperedges are
/// the supports of all resource and beneficiary rows. Two agents are adjacent
/// iff they share a hyperedge. Immutable after construction.
class Hypergraph {
 public:
  explicit Hypergraph(const Instance& instance);

  std::size_t num_vertices() const { return agents_.size(); }
  std::span<const AgentId> agents() const { return agents_; }
  std::span<const Hyperedge> hyperedges() const { return edges_; }
  std::span<const std::size_t> neighbours(std::size_t v) const { return adjacency_[v]; }
  std::span<const std::size_t> incident_edges(std::size_t v) const { return incidence_[v]; }

  /// Hop distances from `source`, or -1 beyond `max_radius` / unreachable.
  std::vector<int> distances(std::size_t source, int max_radius) const;
  /// B_H(v, r) as ascending agent indices.
  std::vector<std::size_t> ball_indices(std::size_t v, int radius) const;
  /// |B_H(v, r)|.
  std::size_t ball_size(std::size_t v, int radius) const;
  /// B_H(v, r) as ascending agent ids; throws UnknownAgent.
  std::vector<AgentId> ball(AgentId v, int radius) const;

  /// gamma(r) = max_v |B(v, r+1)| / |B(v, r)|, exact.
  Ratio growth(int radius) const;

  std::size_t index_of(AgentId agent) const;

 private:
  std::vector<AgentId> agents_;
  std::vector<Hyperedge> edges_;
  std::vector<std::vector<std::size_t>> incidence_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

std::vector<AgentId> neighbourhood_ball(const Instance& instance, AgentId v, int radius);
Ratio growth_factor(const Instance& instance, int radius);

}  // namespace mmlp
