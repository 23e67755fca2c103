#include "mmlp/local.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "mmlp/error.hpp"
#include "mmlp/hypergraph.hpp"
#include "mmlp/maxmin.hpp"

namespace mmlp {

double SafeAlgorithm::decide(const View& view) const {
  const auto& own = view.knowledge_of(view.center);
  if (own.resources.empty()) {
    throw std::invalid_argument("safe: agent " + std::to_string(view.center) +
                                " has no resources");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : own.resources) {
    const auto size = static_cast<double>(view.resource_list(c.row).agents.size());
    best = std::min(best, 1.0 / (c.value * size));
  }
  return best;
}

LocalAverageAlgorithm::LocalAverageAlgorithm(LocalAvgParams params) : params_(params) {
  if (params_.R < 1) throw std::invalid_argument("local-avg: R must be positive");
}

Assignment local_lp_solution(const View& view, AgentId u, int R) {
  const auto ball = view.ball(u, R);
  const auto sub = local_subinstance(view, ball);
  if (sub.beneficiaries().empty()) return Assignment::zeros(sub);
  return solve_maxmin(sub).x;
}

double LocalAverageAlgorithm::decide(const View& view) const {
  const int R = params_.R;
  if (view.horizon < horizon()) {
    throw std::invalid_argument("local-avg: view horizon " + std::to_string(view.horizon) +
                                " is below " + std::to_string(horizon()));
  }
  const AgentId j = view.center;

  const auto inner = view.ball(j, R);
  double sum = 0.0;
  for (AgentId u : inner) sum += local_lp_solution(view, u, R)[j];

  double beta = std::numeric_limits<double>::infinity();
  for (const auto& c : view.knowledge_of(j).resources) {
    std::vector<AgentId> united;
    std::size_t smallest = std::numeric_limits<std::size_t>::max();
    for (AgentId v : view.resource_list(c.row).agents) {
      const auto ball = view.ball(v, R);
      smallest = std::min(smallest, ball.size());
      united.insert(united.end(), ball.begin(), ball.end());
    }
    std::sort(united.begin(), united.end());
    united.erase(std::unique(united.begin(), united.end()), united.end());
    beta = std::min(beta, static_cast<double>(smallest) / static_cast<double>(united.size()));
  }
  if (!std::isfinite(beta)) {
    throw std::invalid_argument("local-avg: agent " + std::to_string(j) + " has no resources");
  }
  return beta / static_cast<double>(inner.size()) * sum;
}

std::unique_ptr<LocalAlgorithm> make_algorithm(std::string_view name, int R) {
  if (name == "zero") return std::make_unique<ZeroAlgorithm>();
  if (name == "safe") return std::make_unique<SafeAlgorithm>();
  if (name == "local-avg") return std::make_unique<LocalAverageAlgorithm>(LocalAvgParams{R});
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

Assignment run_local(const Instance& instance, const LocalAlgorithm& algorithm,
                     RunOptions options) {
  const Hypergraph graph(instance);
  const auto agents = instance.agents();
  const int horizon = algorithm.horizon();
  Eigen::VectorXd values(static_cast<Eigen::Index>(agents.size()));
  std::vector<std::exception_ptr> failures(agents.size());

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        const double x = algorithm.decide(extract_view(instance, graph, agents[i], horizon));
        if (!std::isfinite(x) || x < 0.0) {
          throw AlgorithmOutputError(algorithm.name() + " returned " + std::to_string(x) +
                                     " for agent " + std::to_string(agents[i]));
        }
        values(static_cast<Eigen::Index>(i)) = x;
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  const std::size_t workers =
      std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(agents.size(), 1));
  if (workers == 1) {
    work(0, agents.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (agents.size() + workers - 1) / workers;
    for (std::size_t begin = 0; begin < agents.size(); begin += chunk) {
      pool.emplace_back(work, begin, std::min(agents.size(), begin + chunk));
    }
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return Assignment({agents.begin(), agents.end()}, std::move(values));
}

}  // namespace mmlp
