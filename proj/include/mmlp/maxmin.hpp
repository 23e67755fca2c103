#pragma once

#include "mmlp/assignment.hpp"
#include "mmlp/instance.hpp"
#include "mmlp/simplex.hpp"

namespace mmlp {

/// max omega  s.t.  sum_v a_iv x_v <= 1 (each resource),
///                  omega - sum_v c_kv x_v <= 0 (each beneficiary),
///                  x >= 0, omega free.
/// Column 0 is omega, then agents ascending; rows are resources then
/// beneficiaries, each in id order. Throws EmptyBeneficiarySet.
LinearProgram<double> assemble_maxmin_lp(const Instance& instance);

struct MaxMinSolution {
  Assignment x;
  double omega = 0.0;
};

/// Canonical optimum of the max-min LP of `instance` (global oracle, and the
/// local LPs of the averaging algorithm). Throws SolverFailure if the solver
/// returns anything but a feasible optimum.
MaxMinSolution solve_maxmin(const Instance& instance);

}  // namespace mmlp
