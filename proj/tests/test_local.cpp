#include <doctest.h>

#include <limits>

#include "fixtures.hpp"
#include "mmlp/evaluation.hpp"
#include "mmlp/generators.hpp"
#include "mmlp/hypergraph.hpp"
#include "mmlp/local.hpp"
#include "mmlp/maxmin.hpp"
#include "oracles.hpp"

using namespace mmlp;
using fixtures::row;

namespace {

class NegativeAlgorithm final : public LocalAlgorithm {
 public:
  std::string name() const override { return "negative"; }
  int horizon() const override { return 0; }
  double decide(const View& view) const override { return view.center == 1 ? -0.5 : 0.0; }
};

class NanAlgorithm final : public LocalAlgorithm {
 public:
  std::string name() const override { return "nan"; }
  int horizon() const override { return 0; }
  double decide(const View&) const override { return std::numeric_limits<double>::quiet_NaN(); }
};

// Rescales every coefficient held by an agent outside `keep`.
Instance rescale_outside(const Instance& inst, const std::vector<AgentId>& keep, double factor) {
  auto scale = [&](std::span<const SparseRow> rows) {
    std::vector<SparseRow> out(rows.begin(), rows.end());
    for (auto& r : out)
      for (auto& e : r.entries)
        if (!std::binary_search(keep.begin(), keep.end(), e.agent)) e.value *= factor;
    return out;
  };
  return Instance({inst.agents().begin(), inst.agents().end()}, scale(inst.resources()),
                  scale(inst.beneficiaries()));
}

}  // namespace

TEST_CASE("zero algorithm") {
  const auto x = run_local(fixtures::path5(), ZeroAlgorithm{});
  CHECK((x.values().array() == 0.0).all());
  CHECK(feasibility(fixtures::path5(), x).feasible);
}

TEST_CASE("safe algorithm: examples") {
  CHECK(run_local(fixtures::minimal(), SafeAlgorithm{})[0] == 1.0);

  const Instance shared({0, 1}, {row(0, {{0, 1}, {1, 1}})}, {row(0, {{0, 1}}), row(1, {{1, 1}})});
  const auto x = run_local(shared, SafeAlgorithm{});
  CHECK(x[0] == 0.5);
  CHECK(x[1] == 0.5);

  // Agent 1 sits in a size-2 resource and a size-3 resource with a = 2.
  const Instance mixed({0, 1, 2, 3},
                       {row(0, {{0, 1}, {1, 1}}), row(1, {{1, 2}, {2, 1}, {3, 1}})},
                       {row(0, {{0, 1}, {1, 1}, {2, 1}, {3, 1}})});
  const auto y = run_local(mixed, SafeAlgorithm{});
  CHECK(y[0] == 0.5);
  CHECK(y[1] == doctest::Approx(1.0 / 6.0));
  CHECK(y[2] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("safe algorithm: feasible and within Delta_VI of the optimum") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = gen_random({3 + seed % 10, 3, 0.5, 1.0, 900 + seed});
    const auto x = run_local(inst, SafeAlgorithm{});
    CHECK(feasibility(inst, x).feasible);
    const auto bounds = validate(inst).bounds;
    CHECK(objective(inst, x) * static_cast<double>(bounds.delta_VI) >=
          solve_maxmin(inst).omega - 1e-9);
  }
}

TEST_CASE("local averaging: examples") {
  const LocalAverageAlgorithm alg({1});
  CHECK(alg.horizon() == 3);
  CHECK(run_local(fixtures::minimal(), alg)[0] == doctest::Approx(1.0));

  const auto c6 = fixtures::cycle6();
  const auto x = run_local(c6, alg);
  CHECK(feasibility(c6, x).feasible);
  const Hypergraph g(c6);
  const double bound = g.growth(0).to_double() * g.growth(1).to_double();
  CHECK(bound == doctest::Approx(5.0));
  CHECK(objective(c6, x) * bound >= 1.0 - 1e-9);

  // A view smaller than the horizon is refused.
  CHECK_THROWS(alg.decide(extract_view(c6, 0, 2)));
}

TEST_CASE("local averaging matches the global-route reference") {
  for (int R : {1, 2}) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const auto inst = gen_random({4 + seed, 3, 0.5, 1.0, 3100 + seed});
      const auto x = run_local(inst, LocalAverageAlgorithm({R}));
      const auto ref = oracle::global_local_average(inst, R);
      for (AgentId v : inst.agents()) CHECK(x[v] == doctest::Approx(ref[v]).epsilon(1e-9));
    }
  }
  const auto torus = gen_torus({2, 6, true, 3});
  const auto x = run_local(torus, LocalAverageAlgorithm({1}));
  const auto ref = oracle::global_local_average(torus, 1);
  for (AgentId v : torus.agents()) CHECK(x[v] == doctest::Approx(ref[v]).epsilon(1e-9));
}

TEST_CASE("local LP solutions agree across views") {
  const auto inst = gen_random({12, 3, 0.5, 1.0, 77});
  const Hypergraph g(inst);
  const int R = 1;
  for (AgentId u : inst.agents()) {
    const auto near = g.ball(u, R);
    const auto own = local_lp_solution(extract_view(inst, g, u, 2 * R + 1), u, R);
    for (AgentId j : near) {
      const auto other = local_lp_solution(extract_view(inst, g, j, 2 * R + 1), u, R);
      CHECK(other == own);
    }
  }
}

TEST_CASE("run_local: worker count does not change the output") {
  const auto inst = gen_torus({2, 8, true, 11});
  for (const auto& alg : {make_algorithm("safe"), make_algorithm("local-avg", 1)}) {
    const auto one = run_local(inst, *alg, {1});
    CHECK(run_local(inst, *alg, {3}) == one);
    CHECK(run_local(inst, *alg, {8}) == one);
  }
}

TEST_CASE("run_local: rejects bad decisions") {
  CHECK_THROWS_AS(run_local(fixtures::path5(), NegativeAlgorithm{}), AlgorithmOutputError);
  CHECK_THROWS_AS(run_local(fixtures::path5(), NanAlgorithm{}), AlgorithmOutputError);
}

TEST_CASE("make_algorithm") {
  CHECK(make_algorithm("zero")->horizon() == 0);
  CHECK(make_algorithm("safe")->horizon() == 1);
  CHECK(make_algorithm("local-avg", 2)->horizon() == 5);
  CHECK_THROWS_AS(make_algorithm("greedy"), std::invalid_argument);
  CHECK_THROWS_AS(make_algorithm("local-avg", 0), std::invalid_argument);
}

TEST_CASE("property: decisions depend only on the horizon view") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = gen_random({16, 2, 0.5, 1.0, 4400 + seed});
    const Hypergraph g(inst);
    const AgentId v = inst.agents()[seed % inst.num_agents()];
    for (const auto& alg : {make_algorithm("safe"), make_algorithm("local-avg", 1)}) {
      const auto keep = g.ball(v, alg->horizon());
      const auto mutated = rescale_outside(inst, keep, 0.6);
      const auto before = extract_view(inst, v, alg->horizon());
      const auto after = extract_view(mutated, v, alg->horizon());
      CHECK(before == after);
      CHECK(alg->decide(before) == alg->decide(after));
      CHECK(run_local(inst, *alg)[v] == run_local(mutated, *alg)[v]);
    }
  }
}
