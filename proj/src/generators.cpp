#include "mmlp/generators.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "mmlp/error.hpp"
#include "mmlp/rng.hpp"

namespace mmlp {

Instance gen_torus(const TorusParams& p) {
  if (p.dim < 1) throw std::invalid_argument("torus: dim must be >= 1");
  if (p.side < 3) throw std::invalid_argument("torus: side must be >= 3");
  std::size_t cells = 1;
  for (int t = 0; t < p.dim; ++t) {
    cells *= static_cast<std::size_t>(p.side);
    if (cells > p.node_cap) {
      throw CapacityExceeded("torus: more than " + std::to_string(p.node_cap) + " cells");
    }
  }

  const auto n = static_cast<std::int64_t>(p.side);
  auto shift = [n](std::int64_t cell, std::int64_t stride, std::int64_t delta) {
    const auto coord = (cell / stride) % n;
    const auto moved = ((coord + delta) % n + n) % n;
    return cell + (moved - coord) * stride;
  };

  Rng rng(p.seed);
  auto coeff = [&]() { return p.perturb ? rng.uniform(0.5, 1.0) : 1.0; };
  auto make_row = [&](std::int64_t z, std::int64_t delta) {
    SparseRow row{z, {{z, coeff()}}};
    std::int64_t stride = 1;
    for (int t = 0; t < p.dim; ++t, stride *= n) row.entries.push_back({shift(z, stride, delta), coeff()});
    return row;
  };

  std::vector<AgentId> agents(cells);
  std::vector<SparseRow> resources, beneficiaries;
  for (std::size_t z = 0; z < cells; ++z) agents[z] = static_cast<AgentId>(z);
  for (auto z : agents) resources.push_back(make_row(z, +1));
  for (auto z : agents) beneficiaries.push_back(make_row(z, -1));
  return Instance(std::move(agents), std::move(resources), std::move(beneficiaries));
}

Instance gen_random(const RandomParams& p) {
  if (p.n_agents < 1) throw std::invalid_argument("random: need at least one agent");
  if (p.max_support < 1) throw std::invalid_argument("random: max_support must be >= 1");
  if (!(p.coeff_min > 0.0) || p.coeff_max < p.coeff_min) {
    throw std::invalid_argument("random: coefficient range must satisfy 0 < min <= max");
  }
  Rng rng(p.seed);
  const std::size_t n = p.n_agents;
  std::vector<AgentId> agents(n);
  for (std::size_t v = 0; v < n; ++v) agents[v] = static_cast<AgentId>(v);

  auto make_rows = [&](std::size_t count, std::vector<std::size_t>& load) {
    std::vector<SparseRow> rows;
    for (std::size_t r = 0; r < count; ++r) {
      std::vector<AgentId> open;
      for (std::size_t v = 0; v < n; ++v) {
        if (load[v] < p.max_support) open.push_back(agents[v]);
      }
      if (open.empty()) break;
      const auto size = std::min<std::size_t>(open.size(), 1 + rng.below(p.max_support));
      rng.shuffle(open);
      SparseRow row{static_cast<std::int64_t>(rows.size()), {}};
      for (std::size_t t = 0; t < size; ++t) {
        row.entries.push_back({open[t], rng.uniform(p.coeff_min, p.coeff_max)});
        ++load[static_cast<std::size_t>(open[t])];
      }
      rows.push_back(std::move(row));
    }
    return rows;
  };

  std::vector<std::size_t> resource_load(n, 0), beneficiary_load(n, 0);
  auto resources = make_rows(n, resource_load);
  auto beneficiaries = make_rows(std::max<std::size_t>(1, (n + 1) / 2), beneficiary_load);
  for (std::size_t v = 0; v < n; ++v) {
    if (resource_load[v] == 0) {
      resources.push_back({static_cast<std::int64_t>(resources.size()),
                           {{agents[v], rng.uniform(p.coeff_min, p.coeff_max)}}});
    }
  }
  return Instance(std::move(agents), std::move(resources), std::move(beneficiaries));
}

}  // namespace mmlp
