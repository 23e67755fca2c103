#include "mmlp/view.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace mmlp {

namespace {

const MembershipList& find_list(const std::vector<MembershipList>& lists, std::int64_t row) {
  auto it = std::lower_bound(lists.begin(), lists.end(), row,
                             [](const MembershipList& l, std::int64_t r) { return l.row < r; });
  if (it == lists.end() || it->row != row) {
    throw std::out_of_range("row " + std::to_string(row) + " not visible in view");
  }
  return *it;
}

}  // namespace

bool View::is_member(AgentId agent) const {
  return std::binary_search(members.begin(), members.end(), agent);
}

const MemberKnowledge& View::knowledge_of(AgentId agent) const {
  auto it = std::lower_bound(members.begin(), members.end(), agent);
  if (it == members.end() || *it != agent) {
    throw std::out_of_range("agent " + std::to_string(agent) + " is not a view member");
  }
  return knowledge[static_cast<std::size_t>(it - members.begin())];
}

const MembershipList& View::resource_list(std::int64_t row) const {
  return find_list(resource_lists, row);
}

const MembershipList& View::beneficiary_list(std::int64_t row) const {
  return find_list(beneficiary_lists, row);
}

std::vector<AgentId> View::neighbours(AgentId member) const {
  const auto& k = knowledge_of(member);
  std::vector<AgentId> out;
  for (const auto& c : k.resources) {
    const auto& list = resource_list(c.row).agents;
    out.insert(out.end(), list.begin(), list.end());
  }
  for (const auto& c : k.beneficiaries) {
    const auto& list = beneficiary_list(c.row).agents;
    out.insert(out.end(), list.begin(), list.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::erase(out, member);
  return out;
}

std::vector<AgentId> View::ball(AgentId source, int radius) const {
  std::map<AgentId, int> dist{{source, 0}};
  std::deque<AgentId> queue{source};
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    const int dv = dist[v];
    if (dv >= radius) continue;
    if (!is_member(v)) {
      throw std::logic_error("ball of radius " + std::to_string(radius) + " around " +
                             std::to_string(source) + " leaves the view of " +
                             std::to_string(center));
    }
    for (auto u : neighbours(v)) {
      if (dist.emplace(u, dv + 1).second) queue.push_back(u);
    }
  }
  std::vector<AgentId> out;
  out.reserve(dist.size());
  for (const auto& [a, d] : dist) out.push_back(a);
  return out;
}

View extract_view(const Instance& instance, const Hypergraph& graph, AgentId v, int horizon) {
  if (horizon < 0) throw std::invalid_argument("extract_view: negative horizon");
  View view;
  view.center = v;
  view.horizon = horizon;
  const auto ball = graph.ball_indices(graph.index_of(v), horizon);

  std::set<std::size_t> resource_rows, beneficiary_rows;
  for (auto idx : ball) {
    const AgentId agent = instance.agents()[idx];
    view.members.push_back(agent);
    MemberKnowledge k{agent, {}, {}};
    for (auto r : instance.resources_of(idx)) {
      const auto& row = instance.resources()[r];
      k.resources.push_back({row.id, coefficient(row, agent)});
      resource_rows.insert(r);
    }
    for (auto r : instance.beneficiaries_of(idx)) {
      const auto& row = instance.beneficiaries()[r];
      k.beneficiaries.push_back({row.id, coefficient(row, agent)});
      beneficiary_rows.insert(r);
    }
    view.knowledge.push_back(std::move(k));
  }

  auto lists = [](std::span<const SparseRow> rows, const std::set<std::size_t>& picked) {
    std::vector<MembershipList> out;
    for (auto r : picked) {
      MembershipList list{rows[r].id, {}};
      for (const auto& e : rows[r].entries) list.agents.push_back(e.agent);
      out.push_back(std::move(list));
    }
    return out;
  };
  view.resource_lists = lists(instance.resources(), resource_rows);
  view.beneficiary_lists = lists(instance.beneficiaries(), beneficiary_rows);
  return view;
}

View extract_view(const Instance& instance, AgentId v, int horizon) {
  return extract_view(instance, Hypergraph(instance), v, horizon);
}

Instance local_subinstance(const View& view, std::span<const AgentId> agent_set) {
  std::vector<AgentId> agents(agent_set.begin(), agent_set.end());
  std::sort(agents.begin(), agents.end());
  agents.erase(std::unique(agents.begin(), agents.end()), agents.end());
  auto inside = [&agents](AgentId a) { return std::binary_search(agents.begin(), agents.end(), a); };

  std::map<std::int64_t, SparseRow> resources, beneficiaries;
  for (AgentId a : agents) {
    const auto& k = view.knowledge_of(a);
    for (const auto& c : k.resources) {
      auto& row = resources[c.row];
      row.id = c.row;
      row.entries.push_back({a, c.value});
    }
    for (const auto& c : k.beneficiaries) {
      const auto& list = view.beneficiary_list(c.row).agents;
      if (!std::all_of(list.begin(), list.end(), inside)) continue;
      auto& row = beneficiaries[c.row];
      row.id = c.row;
      row.entries.push_back({a, c.value});
    }
  }

  auto flatten = [](std::map<std::int64_t, SparseRow>& rows) {
    std::vector<SparseRow> out;
    out.reserve(rows.size());
    for (auto& [id, row] : rows) out.push_back(std::move(row));
    return out;
  };
  return Instance(std::move(agents), flatten(resources), flatten(beneficiaries));
}

}  // namespace mmlp
