#include "mmlp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "mmlp/error.hpp"

namespace mmlp {

double coefficient(const SparseRow& row, AgentId agent) {
  auto it = std::lower_bound(row.entries.begin(), row.entries.end(), agent,
                             [](const Entry& e, AgentId a) { return e.agent < a; });
  return it != row.entries.end() && it->agent == agent ? it->value : 0.0;
}

namespace {

void canonicalise(std::vector<SparseRow>& rows) {
  for (auto& row : rows) {
    std::stable_sort(row.entries.begin(), row.entries.end(),
                     [](const Entry& a, const Entry& b) { return a.agent < b.agent; });
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SparseRow& a, const SparseRow& b) { return a.id < b.id; });
}

}  // namespace

Instance::Instance(std::vector<AgentId> agents, std::vector<SparseRow> resources,
                   std::vector<SparseRow> beneficiaries)
    : agents_(std::move(agents)),
      resources_(std::move(resources)),
      beneficiaries_(std::move(beneficiaries)) {
  std::sort(agents_.begin(), agents_.end());
  canonicalise(resources_);
  canonicalise(beneficiaries_);

  resources_of_.resize(agents_.size());
  beneficiaries_of_.resize(agents_.size());
  auto index_rows = [this](const std::vector<SparseRow>& rows,
                           std::vector<std::vector<std::size_t>>& incidence) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const auto& e : rows[r].entries) {
        if (auto idx = index_of(e.agent)) {
          auto& list = incidence[*idx];
          if (list.empty() || list.back() != r) list.push_back(r);
        }
      }
    }
  };
  index_rows(resources_, resources_of_);
  index_rows(beneficiaries_, beneficiaries_of_);
}

std::optional<std::size_t> Instance::index_of(AgentId agent) const {
  auto it = std::lower_bound(agents_.begin(), agents_.end(), agent);
  if (it == agents_.end() || *it != agent) return std::nullopt;
  return static_cast<std::size_t>(it - agents_.begin());
}

std::size_t Instance::require_index(AgentId agent) const {
  if (auto idx = index_of(agent)) return *idx;
  throw UnknownAgent("unknown agent " + std::to_string(agent));
}

namespace {

const SparseRow* find_row(const std::vector<SparseRow>& rows, std::int64_t id) {
  auto it = std::lower_bound(rows.begin(), rows.end(), id,
                             [](const SparseRow& r, std::int64_t v) { return r.id < v; });
  return it != rows.end() && it->id == id ? &*it : nullptr;
}

}  // namespace

const SparseRow* Instance::find_resource(ResourceId id) const {
  return find_row(resources_, id);
}

const SparseRow* Instance::find_beneficiary(BeneficiaryId id) const {
  return find_row(beneficiaries_, id);
}

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::EmptyAgentSet: return "empty agent set";
    case Violation::Kind::DuplicateAgent: return "duplicate agent id";
    case Violation::Kind::DuplicateRowId: return "duplicate row id";
    case Violation::Kind::DuplicateEntry: return "duplicate entry";
    case Violation::Kind::UnknownAgent: return "unknown agent";
    case Violation::Kind::EmptySupport: return "empty support";
    case Violation::Kind::EmptyResourceSet: return "empty I_v";
    case Violation::Kind::NonpositiveCoefficient: return "nonpositive coefficient";
    case Violation::Kind::NonfiniteCoefficient: return "nonfinite coefficient";
  }
  return "unknown";
}

bool ValidationReport::has(Violation::Kind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

ValidationReport validate(const Instance& instance) {
  ValidationReport report;
  auto add = [&report](Violation::Kind kind, std::string detail) {
    report.violations.push_back({kind, std::move(detail)});
  };

  const auto agents = instance.agents();
  if (agents.empty()) add(Violation::Kind::EmptyAgentSet, "no agents");
  for (std::size_t i = 1; i < agents.size(); ++i) {
    if (agents[i] == agents[i - 1]) {
      add(Violation::Kind::DuplicateAgent, "agent " + std::to_string(agents[i]));
    }
  }

  for (RowKind kind : {RowKind::Resource, RowKind::Beneficiary}) {
    const char* label = kind == RowKind::Resource ? "resource " : "beneficiary ";
    const auto rows = instance.rows(kind);
    std::size_t max_support = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& row = rows[r];
      const std::string name = label + std::to_string(row.id);
      if (r > 0 && rows[r - 1].id == row.id) add(Violation::Kind::DuplicateRowId, name);
      if (row.entries.empty()) add(Violation::Kind::EmptySupport, name);
      for (std::size_t e = 0; e < row.entries.size(); ++e) {
        const auto& entry = row.entries[e];
        const std::string where = name + " agent " + std::to_string(entry.agent);
        if (e > 0 && row.entries[e - 1].agent == entry.agent) {
          add(Violation::Kind::DuplicateEntry, where);
        }
        if (!instance.contains(entry.agent)) add(Violation::Kind::UnknownAgent, where);
        if (!std::isfinite(entry.value)) {
          add(Violation::Kind::NonfiniteCoefficient, where);
        } else if (entry.value <= 0.0) {
          add(Violation::Kind::NonpositiveCoefficient, where);
        }
      }
      max_support = std::max(max_support, row.entries.size());
    }
    (kind == RowKind::Resource ? report.bounds.delta_VI : report.bounds.delta_VK) =
        max_support;
  }

  for (std::size_t v = 0; v < agents.size(); ++v) {
    const auto n_res = instance.resources_of(v).size();
    const auto n_ben = instance.beneficiaries_of(v).size();
    if (n_res == 0) {
      add(Violation::Kind::EmptyResourceSet, "agent " + std::to_string(agents[v]));
    }
    report.bounds.delta_IV = std::max(report.bounds.delta_IV, n_res);
    report.bounds.delta_KV = std::max(report.bounds.delta_KV, n_ben);
  }
  return report;
}

Instance restrict(const Instance& instance, std::span<const AgentId> agent_set,
                  RestrictMode mode) {
  if (agent_set.empty()) throw std::invalid_argument("restrict: empty agent set");
  std::vector<AgentId> kept(agent_set.begin(), agent_set.end());
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  for (AgentId a : kept) {
    if (!instance.contains(a)) {
      throw UnknownAgent("restrict: agent " + std::to_string(a) + " not in instance");
    }
  }
  auto inside = [&kept](AgentId a) { return std::binary_search(kept.begin(), kept.end(), a); };

  auto filter = [&](std::span<const SparseRow> rows, bool allow_clip) {
    std::vector<SparseRow> out;
    for (const auto& row : rows) {
      SparseRow clipped{row.id, {}};
      for (const auto& e : row.entries) {
        if (inside(e.agent)) clipped.entries.push_back(e);
      }
      if (clipped.entries.empty()) continue;
      if (clipped.entries.size() == row.entries.size() || allow_clip) {
        out.push_back(std::move(clipped));
      }
    }
    return out;
  };

  return Instance(kept, filter(instance.resources(), mode == RestrictMode::Partial),
                  filter(instance.beneficiaries(), false));
}

}  // namespace mmlp
