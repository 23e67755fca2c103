#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "mmlp/assignment.hpp"
#include "mmlp/instance.hpp"
#include "mmlp/view.hpp"

namespace mmlp {

/// A deterministic local algorithm: x_v is a pure function of the radius
/// horizon() view of v. The horizon is fixed per configuration and never
/// depends on the instance.
class LocalAlgorithm {
 public:
  virtual ~LocalAlgorithm() = default;
  virtual std::string name() const = 0;
  virtual int horizon() const = 0;
  virtual double decide(const View& view) const = 0;
};

/// Baseline that always answers 0.
class ZeroAlgorithm final : public LocalAlgorithm {
 public:
  std::string name() const override { return "zero"; }
  int horizon() const override { return 0; }
  double decide(const View&) const override { return 0.0; }
};

/// x_v = min over i in I_v of 1 / (a_iv |V_i|). Registered with horizon 1,
/// although |V_i| is already part of v's own startup knowledge.
class SafeAlgorithm final : public LocalAlgorithm {
 public:
  std::string name() const override { return "safe"; }
  int horizon() const override { return 1; }
  double decide(const View& view) const override;
};

struct LocalAvgParams {
  int R = 1;  // inner ball radius; the executor horizon is 2R + 1
};

/// Averaging of local LP optima over balls of radius R.
///
/// For each u in V^j = B(j, R), agent j solves the max-min LP restricted to
/// V^u = B(u, R) (resources clipped to V^u, beneficiaries fully inside V^u)
/// and then picks
///   x_j = beta_j / |V^j| * sum_{u in V^j} x^u_j,
///   beta_j = min_{i in I_j} n_i / N_i,
/// with N_i = |union of V^v over v in V_i| and n_i = min |V^v| over v in V_i.
/// The result is feasible on every instance and within gamma(R-1) gamma(R) of
/// the optimum.
class LocalAverageAlgorithm final : public LocalAlgorithm {
 public:
  explicit LocalAverageAlgorithm(LocalAvgParams params);

  std::string name() const override { return "local-avg"; }
  int horizon() const override { return 2 * params_.R + 1; }
  double decide(const View& view) const override;

  const LocalAvgParams& params() const { return params_; }

 private:
  LocalAvgParams params_;
};

/// x^u of the local LP around `u`, computed from `view`. The assignment is over
/// B(u, R); it is all zeros when no beneficiary fits inside that ball.
Assignment local_lp_solution(const View& view, AgentId u, int R);

/// Builds "zero", "safe" or "local-avg" (the latter uses `R`).
std::unique_ptr<LocalAlgorithm> make_algorithm(std::string_view name, int R = 1);

struct RunOptions {
  unsigned workers = 1;
};

/// Runs `algorithm` at every agent on its own view and collects the result in
/// agent order. The output does not depend on `workers`. Throws
/// AlgorithmOutputError for negative or non-finite decisions.
Assignment run_local(const Instance& instance, const LocalAlgorithm& algorithm,
                     RunOptions options = {});

}  // namespace mmlp
