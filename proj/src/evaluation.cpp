#include "mmlp/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mmlp/error.hpp"
#include "mmlp/hypergraph.hpp"
#include "mmlp/lowerbound.hpp"
#include "mmlp/maxmin.hpp"

namespace mmlp {

namespace {

void require_domain(const Instance& instance, const Assignment& x) {
  if (!x.covers(instance)) {
    throw std::invalid_argument("assignment domain does not match the instance's agents");
  }
}

std::vector<double> row_sums(std::span<const SparseRow> rows, const Assignment& x) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    double s = 0.0;
    for (const auto& e : row.entries) s += e.value * x[e.agent];
    out.push_back(s);
  }
  return out;
}

}  // namespace

std::vector<double> resource_loads(const Instance& instance, const Assignment& x) {
  require_domain(instance, x);
  return row_sums(instance.resources(), x);
}

std::vector<double> benefits(const Instance& instance, const Assignment& x) {
  require_domain(instance, x);
  return row_sums(instance.beneficiaries(), x);
}

FeasibilityResult feasibility(const Instance& instance, const Assignment& x, double tol) {
  const auto loads = resource_loads(instance, x);
  FeasibilityResult out;
  out.max_violation = -std::numeric_limits<double>::infinity();
  for (double s : loads) out.max_violation = std::max(out.max_violation, s - 1.0);
  const bool nonneg = x.size() == 0 || x.values().minCoeff() >= -tol;
  out.feasible = out.max_violation <= tol && nonneg;
  return out;
}

double objective(const Instance& instance, const Assignment& x) {
  if (instance.beneficiaries().empty()) throw EmptyBeneficiarySet();
  const auto b = benefits(instance, x);
  return *std::min_element(b.begin(), b.end());
}

std::string to_string(RatioResult::Status status) {
  switch (status) {
    case RatioResult::Status::Finite: return "finite";
    case RatioResult::Status::Unbounded: return "unbounded";
    case RatioResult::Status::OracleUnavailable: return "oracle unavailable";
  }
  return "unknown";
}

RatioResult approximation_ratio(const Instance& instance, const Assignment& x,
                                std::size_t oracle_cap) {
  RatioResult out;
  if (instance.num_agents() > oracle_cap) return out;
  out.omega_star = solve_maxmin(instance).omega;
  const double omega = objective(instance, x);
  if (omega <= 0.0) {
    out.status = RatioResult::Status::Unbounded;
    return out;
  }
  out.status = RatioResult::Status::Finite;
  out.ratio = *out.omega_star / omega;
  return out;
}

std::vector<double> level_sums(const LowerBoundMeta& meta, const Assignment& x) {
  if (!meta.p || meta.tree_levels.empty()) {
    throw std::invalid_argument("level_sums: meta has no selected tree");
  }
  std::vector<double> sums(static_cast<std::size_t>(meta.tree_height) + 1, 0.0);
  for (std::size_t t = 0; t < meta.tree_size; ++t) {
    sums[static_cast<std::size_t>(meta.tree_levels[t])] += x[meta.agent(*meta.p, t)];
  }
  return sums;
}

std::vector<bool> level_pair_bounds(int d, int D, const std::vector<double>& sums, double tol) {
  std::vector<bool> out;
  double cap = 1.0;
  for (std::size_t j = 0; 2 * j + 1 < sums.size(); ++j) {
    out.push_back(sums[2 * j] + sums[2 * j + 1] <= cap + tol);
    cap *= static_cast<double>(d) * static_cast<double>(D);
  }
  return out;
}

bool acyclic(const Instance& instance) {
  const std::size_t n = instance.num_agents();
  const std::size_t total = n + instance.resources().size() + instance.beneficiaries().size();
  std::vector<std::size_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t node = n;
  for (RowKind kind : {RowKind::Resource, RowKind::Beneficiary}) {
    for (const auto& row : instance.rows(kind)) {
      for (const auto& e : row.entries) {
        const auto a = find(instance.require_index(e.agent));
        const auto b = find(node);
        if (a == b) return false;
        parent[a] = b;
      }
      ++node;
    }
  }
  return true;
}

AveragingCertificate averaging_certificate(const Instance& instance, int R) {
  if (R < 1) throw std::invalid_argument("averaging_certificate: R must be >= 1");
  const Hypergraph graph(instance);
  std::vector<std::vector<std::size_t>> balls(instance.num_agents());
  for (std::size_t v = 0; v < balls.size(); ++v) balls[v] = graph.ball_indices(v, R);

  AveragingCertificate cert;
  cert.R = R;
  cert.benefit_factor = Ratio(1);
  cert.resource_factor = Ratio(1);
  for (const auto& row : instance.beneficiaries()) {
    std::vector<std::size_t> common;
    std::size_t largest = 0;
    bool first = true;
    for (const auto& e : row.entries) {
      const auto& ball = balls[instance.require_index(e.agent)];
      largest = std::max(largest, ball.size());
      if (first) {
        common = ball;
        first = false;
      } else {
        std::vector<std::size_t> next;
        std::set_intersection(common.begin(), common.end(), ball.begin(), ball.end(),
                              std::back_inserter(next));
        common.swap(next);
      }
    }
    cert.m.push_back(common.size());
    cert.M.push_back(largest);
    cert.benefit_factor = std::max(cert.benefit_factor,
                                   Ratio(static_cast<std::int64_t>(largest),
                                         static_cast<std::int64_t>(common.size())));
  }
  cert.beta = std::numeric_limits<double>::infinity();
  for (const auto& row : instance.resources()) {
    std::vector<std::size_t> united;
    std::size_t smallest = std::numeric_limits<std::size_t>::max();
    for (const auto& e : row.entries) {
      const auto& ball = balls[instance.require_index(e.agent)];
      smallest = std::min(smallest, ball.size());
      united.insert(united.end(), ball.begin(), ball.end());
    }
    std::sort(united.begin(), united.end());
    united.erase(std::unique(united.begin(), united.end()), united.end());
    cert.N.push_back(united.size());
    cert.n.push_back(smallest);
    cert.beta = std::min(cert.beta, static_cast<double>(smallest) / static_cast<double>(united.size()));
    cert.resource_factor = std::max(cert.resource_factor,
                                    Ratio(static_cast<std::int64_t>(united.size()),
                                          static_cast<std::int64_t>(smallest)));
  }
  cert.gamma_product = graph.growth(R - 1) * graph.growth(R);
  return cert;
}

EvaluationReport evaluate(const Instance& instance, const Assignment& x,
                          const EvaluationOptions& options) {
  EvaluationReport rep;
  const auto feas = feasibility(instance, x, options.tol);
  rep.feasible = feas.feasible;
  rep.max_violation = feas.max_violation;
  rep.benefits = benefits(instance, x);
  rep.omega = objective(instance, x);
  rep.ratio = approximation_ratio(instance, x, options.oracle_cap);
  rep.omega_star = rep.ratio.omega_star;
  if (options.averaging_R) {
    const Hypergraph graph(instance);
    rep.certificate = graph.growth(*options.averaging_R - 1) * graph.growth(*options.averaging_R);
  }
  return rep;
}

Json to_json(const EvaluationReport& r) {
  Json doc{{"feasible", r.feasible},
           {"max_violation", r.max_violation},
           {"omega", r.omega},
           {"omega_star", r.omega_star ? Json(*r.omega_star) : Json(nullptr)},
           {"ratio_status", to_string(r.ratio.status)},
           {"ratio", r.ratio.status == RatioResult::Status::Finite ? Json(r.ratio.ratio)
                                                                   : Json(nullptr)}};
  if (r.certificate) {
    doc["certificate"] = r.certificate->to_string();
    doc["certificate_value"] = r.certificate->to_double();
  } else {
    doc["certificate"] = nullptr;
  }
  doc["benefits"] = r.benefits;
  return doc;
}

std::string csv_header() {
  return "instance,algorithm,feasible,max_violation,omega,omega_star,ratio_status,ratio,certificate";
}

std::string csv_row(const std::string& instance_name, const std::string& algorithm,
                    const EvaluationReport& r) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << instance_name << ',' << algorithm << ',' << (r.feasible ? "true" : "false") << ','
      << r.max_violation << ',' << r.omega << ',';
  if (r.omega_star) out << *r.omega_star;
  out << ',' << to_string(r.ratio.status) << ',';
  if (r.ratio.status == RatioResult::Status::Finite) out << r.ratio.ratio;
  out << ',';
  if (r.certificate) out << r.certificate->to_string();
  return out.str();
}

}  // namespace mmlp
