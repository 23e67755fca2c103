#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmlp/error.hpp"
#include "mmlp/instance.hpp"

namespace mmlp {

/// Activities x_v, stored densely in ascending agent order.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::vector<AgentId> agents, Eigen::VectorXd values)
      : agents_(std::move(agents)), values_(std::move(values)) {
    if (static_cast<Eigen::Index>(agents_.size()) != values_.size()) {
      throw std::invalid_argument("Assignment: size mismatch");
    }
    if (!std::is_sorted(agents_.begin(), agents_.end())) {
      throw std::invalid_argument("Assignment: agents must be ascending");
    }
  }

  static Assignment zeros(const Instance& instance) {
    return Assignment({instance.agents().begin(), instance.agents().end()},
                      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(instance.num_agents())));
  }

  std::span<const AgentId> agents() const { return agents_; }
  const Eigen::VectorXd& values() const { return values_; }
  std::size_t size() const { return agents_.size(); }

  double operator[](AgentId agent) const { return values_(position(agent)); }
  double& operator[](AgentId agent) { return values_(position(agent)); }

  bool covers(const Instance& instance) const {
    return std::equal(agents_.begin(), agents_.end(), instance.agents().begin(),
                      instance.agents().end());
  }

  bool operator==(const Assignment& other) const {
    return agents_ == other.agents_ && values_.size() == other.values_.size() &&
           (values_.array() == other.values_.array()).all();
  }

 private:
  Eigen::Index position(AgentId agent) const {
    auto it = std::lower_bound(agents_.begin(), agents_.end(), agent);
    if (it == agents_.end() || *it != agent) {
      throw UnknownAgent("assignment has no value for agent " + std::to_string(agent));
    }
    return static_cast<Eigen::Index>(it - agents_.begin());
  }

  std::vector<AgentId> agents_;
  Eigen::VectorXd values_;
};

}  // namespace mmlp
