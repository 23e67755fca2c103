#include "mmlp/maxmin.hpp"

#include <string>

#include "mmlp/error.hpp"

namespace mmlp {

LinearProgram<double> assemble_maxmin_lp(const Instance& instance) {
  if (instance.beneficiaries().empty()) throw EmptyBeneficiarySet();
  const auto n = static_cast<Eigen::Index>(instance.num_agents()) + 1;
  const auto n_res = static_cast<Eigen::Index>(instance.resources().size());
  const auto m = n_res + static_cast<Eigen::Index>(instance.beneficiaries().size());

  LinearProgram<double> lp;
  lp.variables.push_back({LpVariable::Kind::Omega, 0});
  lp.nonnegative.push_back(false);
  for (AgentId a : instance.agents()) {
    lp.variables.push_back({LpVariable::Kind::Agent, a});
    lp.nonnegative.push_back(true);
  }
  lp.objective = Eigen::VectorXd::Unit(n, 0);
  lp.constraints = Eigen::MatrixXd::Zero(m, n);
  lp.rhs = Eigen::VectorXd::Zero(m);

  auto column = [&instance](AgentId a) {
    return static_cast<Eigen::Index>(instance.require_index(a)) + 1;
  };
  Eigen::Index r = 0;
  for (const auto& row : instance.resources()) {
    for (const auto& e : row.entries) lp.constraints(r, column(e.agent)) = e.value;
    lp.rhs(r++) = 1.0;
  }
  for (const auto& row : instance.beneficiaries()) {
    lp.constraints(r, 0) = 1.0;
    for (const auto& e : row.entries) lp.constraints(r, column(e.agent)) = -e.value;
    ++r;
  }
  return lp;
}

MaxMinSolution solve_maxmin(const Instance& instance) {
  const auto lp = assemble_maxmin_lp(instance);
  const auto sol = solve_deterministic(lp);
  if (sol.status != LpStatus::Optimal) {
    throw SolverFailure(std::string("max-min LP reported ") + to_string(sol.status));
  }
  const Eigen::VectorXd residual = lp.constraints * sol.values - lp.rhs;
  if (residual.size() > 0 && residual.maxCoeff() > 1e-9) {
    throw SolverFailure("max-min LP solution violates a row by " +
                        std::to_string(residual.maxCoeff()));
  }
  MaxMinSolution out;
  out.x = Assignment({instance.agents().begin(), instance.agents().end()},
                     sol.values.tail(sol.values.size() - 1));
  out.omega = sol.values(0);
  return out;
}

}  // namespace mmlp
