#pragma once

#include <cstdint>

#include "mmlp/instance.hpp"

namespace mmlp {

inline constexpr std::size_t kDefaultNodeCap = 200'000;

struct TorusParams {
  int dim = 2;
  int side = 8;
  bool perturb = false;
  std::uint64_t seed = 0;
  std::size_t node_cap = kDefaultNodeCap;
};

/// Toroidal grid Z_n^d. Each cell z is an agent with one resource on
/// {z, z+e_1, ..., z+e_d} and one beneficiary on {z, z-e_1, ..., z-e_d}.
/// Unperturbed coefficients are all 1, so x = 1/(d+1) makes every row exactly
/// 1 and the optimum is 1 (total benefit equals total resource usage, which is
/// at most |I| = |K|). Perturbed coefficients are uniform in [1/2, 1].
/// Agent, resource and beneficiary ids are the cell index sum_t z_t n^t.
Instance gen_torus(const TorusParams& params);

struct RandomParams {
  std::size_t n_agents = 10;
  std::size_t max_support = 3;
  double coeff_min = 0.5;
  double coeff_max = 1.0;
  std::uint64_t seed = 0;
};

/// Random sparse instance with n resources and ceil(n/2) beneficiaries. Every
/// row has 1..max_support members and no agent joins more than max_support rows
/// of either kind; agents left without a resource get a private one.
Instance gen_random(const RandomParams& params);

}  // namespace mmlp
