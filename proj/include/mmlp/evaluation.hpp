#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mmlp/assignment.hpp"
#include "mmlp/instance.hpp"
#include "mmlp/io.hpp"
#include "mmlp/rational.hpp"

namespace mmlp {

struct LowerBoundMeta;

inline constexpr std::size_t kDefaultOracleCap = 200;

struct FeasibilityResult {
  bool feasible = false;
  /// max_i (sum_v a_iv x_v - 1); negative when every resource has slack.
  double max_violation = 0.0;
};

/// Throws std::invalid_argument if the assignment is not over the instance's agents.
FeasibilityResult feasibility(const Instance& instance, const Assignment& x, double tol = 1e-9);

/// sum_v a_iv x_v per resource, in row order.
std::vector<double> resource_loads(const Instance& instance, const Assignment& x);
/// sum_v c_kv x_v per beneficiary, in row order.
std::vector<double> benefits(const Instance& instance, const Assignment& x);
/// omega = min_k sum_v c_kv x_v. Throws EmptyBeneficiarySet.
double objective(const Instance& instance, const Assignment& x);

struct RatioResult {
  enum class Status { Finite, Unbounded, OracleUnavailable };
  Status status = Status::OracleUnavailable;
  double ratio = 0.0;  // omega* / omega when Finite
  std::optional<double> omega_star;
};

std::string to_string(RatioResult::Status status);

/// omega* / omega(x) with omega* from the exact oracle, if the instance has at
/// most `oracle_cap` agents.
RatioResult approximation_ratio(const Instance& instance, const Assignment& x,
                                std::size_t oracle_cap = kDefaultOracleCap);

/// S(l) = sum of x_v over level l of T_p, for l = 0 .. 2R-1.
std::vector<double> level_sums(const LowerBoundMeta& meta, const Assignment& x);

/// Checks S(2j) + S(2j+1) <= (dD)^j for j = 0 .. R-1 (the j = 0 entry is
/// S(0) + S(1) <= 1).
std::vector<bool> level_pair_bounds(int d, int D, const std::vector<double>& sums,
                                    double tol = 1e-9);

/// True iff the agent/hyperedge incidence graph is a forest.
bool acyclic(const Instance& instance);

/// Quantities behind the averaging algorithm's guarantee, recomputed from the
/// full hypergraph: V^j = B(j, R), S_k = intersection of V^j over j in V_k,
/// U_i = union of V^j over j in V_i.
struct AveragingCertificate {
  int R = 1;
  std::vector<std::size_t> m;  // |S_k| per beneficiary
  std::vector<std::size_t> M;  // max |V^j|, j in V_k
  std::vector<std::size_t> N;  // |U_i| per resource
  std::vector<std::size_t> n;  // min |V^j|, j in V_i
  double beta = 0.0;           // min_i n_i / N_i
  Ratio benefit_factor;        // max_k M_k / m_k
  Ratio resource_factor;       // max_i N_i / n_i
  Ratio gamma_product;         // gamma(R-1) gamma(R)
};

AveragingCertificate averaging_certificate(const Instance& instance, int R);

struct EvaluationOptions {
  std::size_t oracle_cap = kDefaultOracleCap;
  double tol = 1e-9;
  std::optional<int> averaging_R;  // attach the gamma(R-1) gamma(R) certificate
};

struct EvaluationReport {
  bool feasible = false;
  double max_violation = 0.0;
  double omega = 0.0;
  std::optional<double> omega_star;
  RatioResult ratio;
  std::optional<Ratio> certificate;
  std::vector<double> benefits;
};

EvaluationReport evaluate(const Instance& instance, const Assignment& x,
                          const EvaluationOptions& options = {});

Json to_json(const EvaluationReport& report);
std::string csv_header();
/// One CSV line (no newline) labelled by instance and algorithm names.
std::string csv_row(const std::string& instance_name, const std::string& algorithm,
                    const EvaluationReport& report);

}  // namespace mmlp
