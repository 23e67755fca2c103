#include <doctest.h>

#include "fixtures.hpp"
#include "mmlp/evaluation.hpp"
#include "mmlp/generators.hpp"
#include "mmlp/local.hpp"
#include "mmlp/lowerbound.hpp"
#include "mmlp/maxmin.hpp"

using namespace mmlp;
using fixtures::row;

namespace {

Assignment make(const Instance& inst, std::vector<double> v) {
  return Assignment({inst.agents().begin(), inst.agents().end()},
                    Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
}

}  // namespace

TEST_CASE("feasibility: examples") {
  const Instance shared({0, 1}, {row(0, {{0, 1}, {1, 1}})}, {row(0, {{0, 1}}), row(1, {{1, 1}})});
  const auto zero = feasibility(shared, Assignment::zeros(shared));
  CHECK(zero.feasible);
  CHECK(zero.max_violation == -1.0);
  const auto over = feasibility(shared, make(shared, {1, 1}));
  CHECK_FALSE(over.feasible);
  CHECK(over.max_violation == 1.0);
  CHECK(feasibility(shared, make(shared, {0.5, 0.5 + 1e-10})).feasible);
  CHECK_FALSE(feasibility(shared, make(shared, {0.5, 0.5 + 1e-8})).feasible);
  CHECK_THROWS_AS(feasibility(shared, Assignment::zeros(fixtures::minimal())),
                  std::invalid_argument);
}

TEST_CASE("objective, loads and benefits") {
  const Instance inst({0, 1}, {row(0, {{0, 1}, {1, 2}})},
                      {row(0, {{0, 1}}), row(1, {{0, 0.5}, {1, 3}})});
  const auto x = make(inst, {0.25, 0.125});
  CHECK(resource_loads(inst, x) == std::vector<double>{0.5});
  CHECK(benefits(inst, x) == std::vector<double>{0.25, 0.5});
  CHECK(objective(inst, x) == 0.25);
  CHECK_THROWS_AS(objective(Instance({0}, {row(0, {{0, 1}})}, {}), Assignment::zeros(fixtures::minimal())),
                  EmptyBeneficiarySet);
}

TEST_CASE("approximation ratio") {
  const auto inst = gen_random({8, 3, 0.5, 1.0, 12});
  const auto opt = solve_maxmin(inst);
  const auto r = approximation_ratio(inst, opt.x);
  REQUIRE(r.status == RatioResult::Status::Finite);
  CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-9));

  const auto safe = run_local(inst, SafeAlgorithm{});
  const auto rs = approximation_ratio(inst, safe);
  REQUIRE(rs.status == RatioResult::Status::Finite);
  CHECK(rs.ratio >= 1.0 - 1e-9);

  CHECK(approximation_ratio(inst, Assignment::zeros(inst)).status == RatioResult::Status::Unbounded);
  const auto capped = approximation_ratio(inst, safe, 4);
  CHECK(capped.status == RatioResult::Status::OracleUnavailable);
  CHECK_FALSE(capped.omega_star.has_value());
}

TEST_CASE("level sums on S'") {
  const auto [S, meta] = build_instance_S({2, 1, 1, 2, 1});
  const auto [Sp, mp] = select_p_and_build_Sprime(S, meta, Assignment::zeros(S));
  const auto parity = parity_solution(Sp, mp);
  const auto sums = level_sums(mp, parity);
  CHECK(sums == std::vector<double>{1, 0, 2, 0});
  CHECK(level_pair_bounds(2, 1, sums) == std::vector<bool>{true, true});
  CHECK(level_pair_bounds(2, 1, {1, 0.5, 2, 0}) == std::vector<bool>{false, true});
  CHECK_THROWS_AS(level_sums(meta, Assignment::zeros(S)), std::invalid_argument);
}

TEST_CASE("acyclic") {
  CHECK(acyclic(fixtures::minimal()));
  CHECK(acyclic(fixtures::path5()));
  CHECK_FALSE(acyclic(fixtures::cycle6()));
  // Two rows sharing two agents close a cycle.
  CHECK_FALSE(acyclic(Instance({0, 1}, {row(0, {{0, 1}, {1, 1}})}, {row(0, {{0, 1}, {1, 1}})})));
}

TEST_CASE("averaging certificate") {
  const auto c = averaging_certificate(fixtures::path5(), 1);
  CHECK(c.gamma_product == Ratio(3, 1) * Ratio(5, 3));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = gen_random({3 + seed, 3, 0.5, 1.0, 60 + seed});
    for (int R : {1, 2}) {
      const auto cert = averaging_certificate(inst, R);
      CHECK(cert.benefit_factor * cert.resource_factor <= cert.gamma_product);
      CHECK(cert.beta == doctest::Approx(1.0 / cert.resource_factor.to_double()));
      CHECK(cert.m.size() == inst.beneficiaries().size());
      CHECK(cert.N.size() == inst.resources().size());
    }
  }
  CHECK_THROWS_AS(averaging_certificate(fixtures::path5(), 0), std::invalid_argument);
}

TEST_CASE("property: local averaging meets its per-beneficiary bound") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto inst = gen_random({4 + seed % 9, 3, 0.5, 1.0, 8800 + seed});
    const double omega_star = solve_maxmin(inst).omega;
    for (int R : {1, 2}) {
      const auto x = run_local(inst, LocalAverageAlgorithm({R}));
      const auto cert = averaging_certificate(inst, R);
      const auto b = benefits(inst, x);
      for (std::size_t k = 0; k < b.size(); ++k) {
        const double bound = cert.beta * static_cast<double>(cert.m[k]) /
                             static_cast<double>(cert.M[k]) * omega_star;
        CHECK(b[k] >= bound - 1e-9);
      }
      CHECK(feasibility(inst, x).feasible);
      CHECK(objective(inst, x) * cert.gamma_product.to_double() >= omega_star - 1e-9);
    }
  }
}

TEST_CASE("evaluation report and CSV") {
  const auto inst = gen_random({6, 2, 0.5, 1.0, 3});
  const auto x = run_local(inst, SafeAlgorithm{});
  EvaluationOptions opts;
  opts.averaging_R = 1;
  const auto report = evaluate(inst, x, opts);
  CHECK(report.feasible);
  CHECK(report.omega == objective(inst, x));
  REQUIRE(report.omega_star.has_value());
  CHECK(report.certificate.has_value());
  const auto j = to_json(report);
  CHECK(j.contains("ratio"));
  const auto header = csv_header();
  const auto line = csv_row("inst.json", "safe", report);
  CHECK(std::count(header.begin(), header.end(), ',') == std::count(line.begin(), line.end(), ','));
  CHECK(line.rfind("inst.json,safe,", 0) == 0);
}
