#pragma once

#include <span>
#include <vector>

#include "mmlp/hypergraph.hpp"
#include "mmlp/instance.hpp"

namespace mmlp {

/// Coefficient a_iu or c_ku known to member u, keyed by row id.
struct KnownCoefficient {
  std::int64_t row = 0;
  double value = 0.0;

  bool operator==(const KnownCoefficient&) const = default;
};

/// Startup knowledge of a single agent: I_u, K_u and its own coefficients.
struct MemberKnowledge {
  AgentId agent = 0;
  std::vector<KnownCoefficient> resources;      // sorted by row id
  std::vector<KnownCoefficient> beneficiaries;  // sorted by row id

  bool operator==(const MemberKnowledge&) const = default;
};

/// Identities of the agents in V_i or V_k.
struct MembershipList {
  std::int64_t row = 0;
  std::vector<AgentId> agents;  // ascending

  bool operator==(const MembershipList&) const = default;
};

/// Everything the agent `center` may see with horizon r: the startup knowledge
/// of every agent in B_H(center, r), plus the membership lists of all rows that
/// touch those agents. Coefficients of agents outside the ball never appear.
struct View {
  AgentId center = 0;
  int horizon = 0;
  std::vector<AgentId> members;           // B_H(center, horizon), ascending
  std::vector<MemberKnowledge> knowledge;  // parallel to members
  std::vector<MembershipList> resource_lists;
  std::vector<MembershipList> beneficiary_lists;

  bool operator==(const View&) const = default;

  bool is_member(AgentId agent) const;
  /// Throws std::out_of_range for non-members.
  const MemberKnowledge& knowledge_of(AgentId agent) const;
  const MembershipList& resource_list(std::int64_t row) const;
  const MembershipList& beneficiary_list(std::int64_t row) const;

  /// Agents sharing a row with `member`.
  std::vector<AgentId> neighbours(AgentId member) const;
  /// B_H(source, radius) computed from view data only. Throws std::logic_error
  /// if the search would need adjacency of an agent outside the view.
  std::vector<AgentId> ball(AgentId source, int radius) const;
};

View extract_view(const Instance& instance, const Hypergraph& graph, AgentId v, int horizon);
View extract_view(const Instance& instance, AgentId v, int horizon);

/// Partial restriction of the view-visible instance to `agent_set` (a subset of
/// the members): resources touching the set with clipped support and
/// beneficiaries whose whole support lies inside the set.
Instance local_subinstance(const View& view, std::span<const AgentId> agent_set);

}  // namespace mmlp
