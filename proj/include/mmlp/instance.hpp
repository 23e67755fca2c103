#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mmlp {

using AgentId = std::int64_t;
using ResourceId = std::int64_t;
using BeneficiaryId = std::int64_t;

/// One nonzero of a sparse row: agent and coefficient.
struct Entry {
  AgentId agent = 0;
  double value = 0.0;

  bool operator==(const Entry&) const = default;
};

/// A resource row a_i or a beneficiary row c_k, keyed by its id.
struct SparseRow {
  std::int64_t id = 0;
  std::vector<Entry> entries;  // sorted by agent

  bool operator==(const SparseRow&) const = default;
};

enum class RowKind { Resource, Beneficiary };

/// Coefficient of `agent` in `row`, or 0 when the agent is not in the support.
double coefficient(const SparseRow& row, AgentId agent);

/// A max-min LP instance: maximise min_k c_k x subject to A x <= 1, x >= 0.
///
/// The constructor only canonicalises (sorts agents, rows by id and entries by
/// agent); it never rejects data, so malformed instances can be inspected with
/// validate(). Entries naming unknown agents are kept in the rows but are not
/// indexed.
class Instance {
 public:
  Instance() = default;
  Instance(std::vector<AgentId> agents, std::vector<SparseRow> resources,
           std::vector<SparseRow> beneficiaries);

  std::span<const AgentId> agents() const { return agents_; }
  std::span<const SparseRow> resources() const { return resources_; }
  std::span<const SparseRow> beneficiaries() const { return beneficiaries_; }
  std::span<const SparseRow> rows(RowKind kind) const {
    return kind == RowKind::Resource ? resources() : beneficiaries();
  }

  std::size_t num_agents() const { return agents_.size(); }
  bool empty() const { return agents_.empty(); }

  std::optional<std::size_t> index_of(AgentId agent) const;
  bool contains(AgentId agent) const { return index_of(agent).has_value(); }
  /// Like index_of but throws UnknownAgent.
  std::size_t require_index(AgentId agent) const;

  /// Row indices (into resources()) of I_v for the agent at `agent_index`.
  std::span<const std::size_t> resources_of(std::size_t agent_index) const {
    return resources_of_[agent_index];
  }
  /// Row indices (into beneficiaries()) of K_v.
  std::span<const std::size_t> beneficiaries_of(std::size_t agent_index) const {
    return beneficiaries_of_[agent_index];
  }
  std::span<const std::size_t> rows_of(RowKind kind, std::size_t agent_index) const {
    return kind == RowKind::Resource ? resources_of(agent_index)
                                     : beneficiaries_of(agent_index);
  }

  const SparseRow* find_resource(ResourceId id) const;
  const SparseRow* find_beneficiary(BeneficiaryId id) const;

  bool operator==(const Instance& other) const {
    return agents_ == other.agents_ && resources_ == other.resources_ &&
           beneficiaries_ == other.beneficiaries_;
  }

 private:
  std::vector<AgentId> agents_;
  std::vector<SparseRow> resources_;
  std::vector<SparseRow> beneficiaries_;
  std::vector<std::vector<std::size_t>> resources_of_;
  std::vector<std::vector<std::size_t>> beneficiaries_of_;
};

/// Maximum support sizes |V_i|, |V_k|, |I_v|, |K_v| over an instance.
struct DegreeBounds {
  std::size_t delta_VI = 0;
  std::size_t delta_VK = 0;
  std::size_t delta_IV = 0;
  std::size_t delta_KV = 0;

  bool operator==(const DegreeBounds&) const = default;
};

struct Violation {
  enum class Kind {
    EmptyAgentSet,
    DuplicateAgent,
    DuplicateRowId,
    DuplicateEntry,
    UnknownAgent,
    EmptySupport,
    EmptyResourceSet,  // some agent has I_v = {}
    NonpositiveCoefficient,
    NonfiniteCoefficient,
  };
  Kind kind;
  std::string detail;
};

std::string to_string(Violation::Kind kind);

struct ValidationReport {
  std::vector<Violation> violations;
  DegreeBounds bounds;

  bool valid() const { return violations.empty(); }
  bool has(Violation::Kind kind) const;
};

ValidationReport validate(const Instance& instance);

/// How rows crossing the boundary of the kept agent set are treated.
///  - Strict: keep a row only if its whole support lies inside the set.
///  - Partial: resources touching the set are kept with their support clipped to
///    the set; beneficiaries are kept only if fully inside.
enum class RestrictMode { Strict, Partial };

/// Sub-instance on `agent_set` (which must be a nonempty subset of the agents).
/// Ids and coefficients are preserved.
Instance restrict(const Instance& instance, std::span<const AgentId> agent_set,
                  RestrictMode mode);

}  // namespace mmlp
