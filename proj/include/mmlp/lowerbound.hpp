#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mmlp/assignment.hpp"
#include "mmlp/generators.hpp"
#include "mmlp/instance.hpp"
#include "mmlp/io.hpp"
#include "mmlp/local.hpp"

namespace mmlp {

/// Complete (d, D)-ary hypertree. Nodes are numbered in level order (root is
/// node 0). A node at even level l < h spans a type I hyperedge with d new
/// children; a node at odd level spans a type II hyperedge with D children.
struct Hypertree {
  enum class EdgeType { I, II };
  struct Edge {
    EdgeType type;
    std::size_t parent;
    std::vector<std::size_t> children;
  };

  int d = 1;
  int D = 1;
  int height = 0;
  std::vector<int> level;  // per node
  std::vector<Edge> edges;

  std::size_t num_nodes() const { return level.size(); }
  std::vector<std::size_t> level_sizes() const;
  std::vector<std::size_t> nodes_at(int l) const;
  std::vector<std::size_t> leaves() const { return nodes_at(height); }
};

/// |T(l)|: (dD)^(l/2) for even l, (dD)^((l-1)/2) d for odd l.
std::size_t hypertree_level_size(int d, int D, int level);

Hypertree build_hypertree(int d, int D, int height, std::size_t node_cap = kDefaultNodeCap);

/// Simple bipartite graph with sides [0, n) and [n, 2n).
struct BipartiteTemplate {
  std::size_t n_per_side = 0;
  std::size_t degree = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (left, right)
  std::optional<std::size_t> girth;  // nullopt: the graph is a forest

  std::size_t num_vertices() const { return 2 * n_per_side; }
  /// Edge indices incident to each vertex, ascending.
  std::vector<std::vector<std::size_t>> incident_edges() const;
};

/// Shortest cycle length of an undirected multigraph (parallel edges count as a
/// 2-cycle), by BFS from every vertex. nullopt if there is no cycle.
std::optional<std::size_t> girth(std::size_t num_vertices,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& edges);

/// Smallest per-side size a degree-regular bipartite graph of this girth can
/// have: sum_{t < girth/2} (degree - 1)^t, saturated at SIZE_MAX.
std::size_t bipartite_moore_bound(std::size_t degree, std::size_t min_girth);

/// degree-regular bipartite graph with girth >= min_girth, built as a union of
/// `degree` random perfect matchings. Each matching is drawn greedily while
/// rejecting pairs that would close a short cycle, then the whole graph is
/// checked by girth(). Deterministic in `seed`.
BipartiteTemplate build_regular_bipartite(std::size_t degree, std::size_t min_girth,
                                          std::size_t n_per_side, std::uint64_t seed,
                                          std::size_t max_attempts = 200);

struct LowerBoundParams {
  int d = 2;
  int D = 1;
  int r = 1;
  int R = 2;
  std::uint64_t seed = 1;
  std::size_t n_per_side = 0;  // 0: 4 x the Moore bound
  std::size_t node_cap = kDefaultNodeCap;
};

/// Bookkeeping of the adversarial construction. Tree q holds the agents
/// [q * tree_size, (q + 1) * tree_size); local node t of tree q is agent
/// q * tree_size + t, with the level of t given by tree_levels[t].
struct LowerBoundMeta {
  LowerBoundParams params;
  std::size_t template_degree = 0;
  std::size_t min_girth = 0;
  BipartiteTemplate templ;
  std::size_t tree_size = 0;
  int tree_height = 0;
  std::vector<int> tree_levels;
  std::vector<std::pair<AgentId, AgentId>> type3;  // one per template edge

  // Filled in by select_p_and_build_Sprime.
  std::vector<double> delta;
  std::optional<std::size_t> p;
  std::optional<AgentId> root;

  std::size_t num_trees() const { return templ.num_vertices(); }
  std::size_t tree_of(AgentId agent) const {
    return static_cast<std::size_t>(agent) / tree_size;
  }
  AgentId agent(std::size_t tree, std::size_t local) const {
    return static_cast<AgentId>(tree * tree_size + local);
  }
  std::vector<AgentId> tree_agents(std::size_t tree) const;
  std::vector<AgentId> level_agents(std::size_t tree, int level) const;
  std::vector<AgentId> leaves(std::size_t tree) const { return level_agents(tree, tree_height); }
  /// The pairing f on leaves.
  AgentId partner(AgentId leaf) const;
};

/// d^R D^(R-1), the template degree (= number of leaves per tree).
std::size_t lowerbound_template_degree(int d, int D, int R);

/// Builds the instance S: one hypertree of height 2R-1 per template vertex,
/// leaves paired along template edges. Type I edges are resources with a = 1,
/// type II edges are beneficiaries with c = 1/D, pairs {v, f(v)} are
/// beneficiaries with c = 1. The template has girth >= 4r + 2.
std::pair<Instance, LowerBoundMeta> build_instance_S(const LowerBoundParams& params);

/// delta(q) = sum over leaves v of T_q of x_v - x_f(v).
std::vector<double> leaf_imbalance(const LowerBoundMeta& meta, const Assignment& x);

/// Picks p (the lowest-id maximiser of delta, which is >= 0 since the deltas
/// sum to 0) and restricts S strictly to T_p plus the radius-2r balls around
/// the leaves of T_p. Ids are preserved.
std::pair<Instance, LowerBoundMeta> select_p_and_build_Sprime(const Instance& S,
                                                              const LowerBoundMeta& meta,
                                                              const Assignment& x);

/// x_v = 1 iff the distance from the root of T_p to v in S' is even.
Assignment parity_solution(const Instance& Sprime, const LowerBoundMeta& meta);

struct AdversaryReport {
  LowerBoundParams params;
  std::string algorithm;
  int algorithm_horizon = 0;
  std::size_t template_degree = 0;
  std::size_t min_girth = 0;
  std::optional<std::size_t> template_girth;
  std::size_t agents_S = 0;
  std::size_t agents_Sprime = 0;

  double delta_sum = 0.0;
  double delta_min = 0.0;
  double delta_max = 0.0;
  std::size_t p = 0;
  AgentId root = 0;

  double omega_S = 0.0;
  double omega_Sprime = 0.0;
  bool feasible_S = false;
  bool feasible_Sprime = false;
  /// 1 / omega_alg(S'); nullopt when omega_alg(S') = 0 (unbounded ratio).
  std::optional<double> certified_ratio;

  bool identical_views = false;
  bool identical_choices = false;
  bool sprime_acyclic = false;
  bool sprime_valid = false;
  bool parity_feasible = false;
  bool parity_rows_exact = false;  // every row of S' evaluates to 1
  double parity_omega = 0.0;

  std::vector<double> level_sums;
  std::vector<bool> level_pair_bounds;  // S(2j) + S(2j+1) <= (dD)^j
  bool level_bounds_hold = false;

  /// Delta_VI / 2 + 1/2 - 1 / (2 Delta_VK - 2) with Delta_VI = d+1, Delta_VK = D+1.
  double theoretical_floor = 0.0;
};

double inapproximability_floor(int d, int D);

/// Runs `algorithm` on S, builds S', runs it again on S' and checks the
/// structural claims of the construction. Refuses algorithms whose horizon
/// exceeds r.
AdversaryReport adversarial_lower_bound(const LocalAlgorithm& algorithm,
                                        const LowerBoundParams& params);

Json to_json(const LowerBoundParams& params);
Json to_json(const LowerBoundMeta& meta);
Json to_json(const AdversaryReport& report);

}  // namespace mmlp
