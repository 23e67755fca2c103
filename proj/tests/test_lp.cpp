#include <doctest.h>

#include "fixtures.hpp"
#include "mmlp/evaluation.hpp"
#include "mmlp/generators.hpp"
#include "mmlp/maxmin.hpp"
#include "oracles.hpp"

using namespace mmlp;
using fixtures::row;

namespace {

LinearProgram<double> dense_lp(std::vector<std::vector<double>> a, std::vector<double> b,
                               std::vector<double> c, std::vector<bool> nonneg) {
  LinearProgram<double> lp;
  const auto m = static_cast<Eigen::Index>(a.size());
  const auto n = static_cast<Eigen::Index>(c.size());
  lp.constraints.resize(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) lp.constraints(i, j) = a[i][j];
  lp.rhs = Eigen::Map<Eigen::VectorXd>(b.data(), m);
  lp.objective = Eigen::Map<Eigen::VectorXd>(c.data(), n);
  lp.nonnegative = nonneg;
  lp.variables.resize(c.size());
  return lp;
}

}  // namespace

TEST_CASE("assemble_maxmin_lp: layout") {
  const auto lp = assemble_maxmin_lp(fixtures::minimal());
  CHECK(lp.variables[0].kind == LpVariable::Kind::Omega);
  CHECK(lp.variables[1] == LpVariable{LpVariable::Kind::Agent, 0});
  CHECK_FALSE(lp.nonnegative[0]);
  CHECK(lp.nonnegative[1]);
  Eigen::MatrixXd expected(2, 2);
  expected << 0, 1, 1, -1;
  CHECK(lp.constraints == expected);
  CHECK(lp.rhs == Eigen::Vector2d(1, 0));
  CHECK_THROWS_AS(assemble_maxmin_lp(Instance({0}, {row(0, {{0, 1}})}, {})), EmptyBeneficiarySet);
}

TEST_CASE("solve_maxmin: small optima") {
  const auto single = solve_maxmin(fixtures::minimal());
  CHECK(single.omega == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(single.x[0] == doctest::Approx(1.0).epsilon(1e-12));

  const Instance shared({0, 1}, {row(0, {{0, 1}, {1, 1}})}, {row(0, {{0, 1}}), row(1, {{1, 1}})});
  CHECK(solve_maxmin(shared).omega == doctest::Approx(0.5).epsilon(1e-12));

  const Instance heavy({0}, {row(0, {{0, 2}})}, {row(0, {{0, 1}}), row(1, {{0, 2}})});
  const auto h = solve_maxmin(heavy);
  CHECK(h.omega == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(h.x[0] == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(solve_maxmin(Instance({0}, {row(0, {{0, 1}})}, {})), EmptyBeneficiarySet);
}

TEST_CASE("solve_maxmin: uniform torus has optimum 1") {
  for (int dim : {1, 2}) {
    const auto inst = gen_torus({dim, 6, false, 0});
    CHECK(std::abs(solve_maxmin(inst).omega - 1.0) <= 1e-9);
  }
}

TEST_CASE("solve_deterministic: textbook LP") {
  // max 3x + 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18
  const auto lp = dense_lp({{1, 0}, {0, 2}, {3, 2}}, {4, 12, 18}, {3, 5}, {true, true});
  const auto sol = solve_deterministic(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(36.0));
  CHECK(sol.values(0) == doctest::Approx(2.0));
  CHECK(sol.values(1) == doctest::Approx(6.0));
}

TEST_CASE("solve_deterministic: two-phase, infeasible and unbounded") {
  // min x + 2y  s.t.  x + y >= 2, x <= 1, y <= 3
  const auto lp = dense_lp({{-1, -1}, {1, 0}, {0, 1}}, {-2, 1, 3}, {-1, -2}, {true, true});
  const auto sol = solve_deterministic(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(-3.0));

  CHECK(solve_deterministic(dense_lp({{1}}, {-1}, {1}, {true})).status == LpStatus::Infeasible);
  CHECK(solve_deterministic(dense_lp({{-1}}, {0}, {1}, {true})).status == LpStatus::Unbounded);

  // Free variable: max -|z| style, z free, z >= -3 and z <= -1 -> max z = -1.
  const auto free_lp = dense_lp({{-1}, {1}}, {3, -1}, {1}, {false});
  const auto f = solve_deterministic(free_lp);
  REQUIRE(f.status == LpStatus::Optimal);
  CHECK(f.values(0) == doctest::Approx(-1.0));
}

TEST_CASE("solve_deterministic: degenerate ties follow the Bland path") {
  // max x + y  s.t.  x + y <= 1: every point of the segment is optimal; the
  // lowest-index column enters first.
  const auto lp = dense_lp({{1, 1}}, {1}, {1, 1}, {true, true});
  const auto a = solve_deterministic(lp);
  const auto b = solve_deterministic(lp);
  CHECK(a.values(0) == 1.0);
  CHECK(a.values(1) == 0.0);
  CHECK((a.values.array() == b.values.array()).all());
  CHECK(a.pivots == b.pivots);
}

TEST_CASE("solve_deterministic: scalar-generic") {
  LinearProgram<long double> lp;
  lp.variables.resize(2);
  lp.constraints.resize(3, 2);
  lp.constraints << 1, 0, 0, 2, 3, 2;
  lp.rhs.resize(3);
  lp.rhs << 4, 12, 18;
  lp.objective.resize(2);
  lp.objective << 3, 5;
  lp.nonnegative = {true, true};
  const auto sol = solve_deterministic(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(static_cast<double>(sol.objective) == doctest::Approx(36.0));
}

TEST_CASE("oracle cross-check: simplex vs grid search on tiny instances") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = gen_random({1 + seed % 3, 2, 0.5, 1.0, 7000 + seed});
    const double grid = oracle::grid_search_omega(inst, 1e-2);
    const double simplex = solve_maxmin(inst).omega;
    CHECK(std::abs(simplex - grid) <= 2e-2);
    CHECK(simplex >= grid - 1e-9);  // the grid only sees feasible points
  }
}

TEST_CASE("property: oracle solutions are feasible, consistent and deterministic") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = gen_random({2 + seed % 15, 1 + seed % 4, 0.25, 2.0, seed});
    const auto sol = solve_maxmin(inst);
    for (double load : resource_loads(inst, sol.x)) CHECK(load <= 1.0 + 1e-9);
    for (double benefit : benefits(inst, sol.x)) CHECK(sol.omega <= benefit + 1e-9);
    CHECK((sol.x.values().array() >= 0.0).all());
    CHECK(std::abs(objective(inst, sol.x) - sol.omega) <= 1e-9);
    CHECK(solve_maxmin(inst).x == sol.x);
  }
}

TEST_CASE("property: scaling a beneficiary up never lowers the optimum") {
  // Unique argmin: benefits at the optimum are 1 (k0) and 2 (k1).
  const Instance base({0}, {row(0, {{0, 1}})}, {row(0, {{0, 1}}), row(1, {{0, 2}})});
  const Instance scaled({0}, {row(0, {{0, 1}})}, {row(0, {{0, 1.5}}), row(1, {{0, 2}})});
  CHECK(solve_maxmin(scaled).omega >= solve_maxmin(base).omega - 1e-12);
  CHECK(solve_maxmin(scaled).omega == doctest::Approx(1.5));

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = gen_random({8, 3, 0.5, 1.0, 500 + seed});
    const auto sol = solve_maxmin(inst);
    const auto b = benefits(inst, sol.x);
    const auto k = static_cast<std::size_t>(std::min_element(b.begin(), b.end()) - b.begin());
    std::vector<SparseRow> ben(inst.beneficiaries().begin(), inst.beneficiaries().end());
    for (auto& e : ben[k].entries) e.value *= 1.7;
    // Same x gains exactly the factor on that row.
    const Instance bumped({inst.agents().begin(), inst.agents().end()},
                          {inst.resources().begin(), inst.resources().end()}, ben);
    CHECK(benefits(bumped, sol.x)[k] == doctest::Approx(1.7 * b[k]));
    CHECK(solve_maxmin(bumped).omega >= sol.omega - 1e-9);
  }
}

TEST_CASE("solve_maxmin: perturbed tori stay feasible over long pivot sequences") {
  for (auto [side, seed] : {std::pair{8, 6}, {8, 2024}, {10, 10}, {10, 1}}) {
    const auto inst = gen_torus({2, side, true, static_cast<std::uint64_t>(seed)});
    const auto sol = solve_maxmin(inst);
    CHECK(feasibility(inst, sol.x).feasible);
    CHECK(std::abs(objective(inst, sol.x) - sol.omega) <= 1e-9);
  }
}
