#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmlp/error.hpp"

namespace mmlp {

/// Column label of a linear program; variables are kept in canonical order.
struct LpVariable {
  enum class Kind { Omega, Agent, Other };
  Kind kind = Kind::Other;
  std::int64_t id = 0;

  bool operator==(const LpVariable&) const = default;
};

/// maximise objective' x  subject to  constraints x <= rhs, and x_j >= 0 where
/// nonnegative[j] holds (other variables are free in sign).
template <typename Scalar>
struct LinearProgram {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  std::vector<LpVariable> variables;
  Vector objective;
  Matrix constraints;
  Vector rhs;
  std::vector<bool> nonnegative;

  Eigen::Index num_variables() const { return static_cast<Eigen::Index>(variables.size()); }
  Eigen::Index num_constraints() const { return constraints.rows(); }

  void check_shape() const {
    const auto n = num_variables();
    if (objective.size() != n || constraints.cols() != n || rhs.size() != constraints.rows() ||
        static_cast<Eigen::Index>(nonnegative.size()) != n) {
      throw std::invalid_argument("LinearProgram: inconsistent dimensions");
    }
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

template <typename Scalar>
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  typename LinearProgram<Scalar>::Vector values;
  Scalar objective = Scalar(0);
  std::size_t pivots = 0;
};

template <typename Scalar>
struct SimplexTolerances {
  Scalar pivot = Scalar(1e-12);        // reduced cost counted as negative
  Scalar element = Scalar(1e-9);       // smallest usable pivot element
  Scalar feasibility = Scalar(1e-9);   // phase-1 residual accepted as feasible
  std::size_t max_pivots = 1'000'000;
  std::size_t refactor_every = 32;     // pivots between tableau rebuilds
};

namespace detail {

/// Dense two-phase tableau simplex with Bland's rule. Columns are ordered
/// structural (free variables split into +/- halves, adjacent), then slacks,
/// then artificials; every choice is the lowest eligible index, so the pivot
/// path and the returned vertex depend only on the input.
template <typename Scalar>
class DenseSimplex {
 public:
  using Vector = typename LinearProgram<Scalar>::Vector;
  using Matrix = typename LinearProgram<Scalar>::Matrix;

  DenseSimplex(const LinearProgram<Scalar>& lp, const SimplexTolerances<Scalar>& tol)
      : lp_(lp), tol_(tol) {
    lp.check_shape();
    for (Eigen::Index j = 0; j < lp.num_variables(); ++j) {
      split_.push_back({j, Scalar(1)});
      if (!lp.nonnegative[static_cast<std::size_t>(j)]) split_.push_back({j, Scalar(-1)});
    }
    m_ = lp.num_constraints();
    n_struct_ = static_cast<Eigen::Index>(split_.size());
    for (Eigen::Index r = 0; r < m_; ++r) {
      if (lp.rhs(r) < Scalar(0)) ++n_art_;
    }
    n_cols_ = n_struct_ + m_ + n_art_;
    tableau_ = Matrix::Zero(m_ + 1, n_cols_ + 1);
    basis_.resize(static_cast<std::size_t>(m_));

    Eigen::Index art = 0;
    for (Eigen::Index r = 0; r < m_; ++r) {
      const Scalar sign = lp.rhs(r) < Scalar(0) ? Scalar(-1) : Scalar(1);
      for (Eigen::Index c = 0; c < n_struct_; ++c) {
        const auto& s = split_[static_cast<std::size_t>(c)];
        tableau_(r, c) = sign * s.sign * lp.constraints(r, s.variable);
      }
      tableau_(r, n_struct_ + r) = sign;
      tableau_(r, n_cols_) = sign * lp.rhs(r);
      if (sign < Scalar(0)) {
        const auto col = n_struct_ + m_ + art++;
        tableau_(r, col) = Scalar(1);
        basis_[static_cast<std::size_t>(r)] = col;
      } else {
        basis_[static_cast<std::size_t>(r)] = n_struct_ + r;
      }
    }
    initial_ = tableau_.topRows(m_);
  }

  LpSolution<Scalar> solve() {
    LpSolution<Scalar> result;
    if (n_art_ > 0) {
      Vector cost = Vector::Zero(n_cols_);
      cost.tail(n_art_).setConstant(Scalar(-1));
      price(cost);
      if (!iterate(n_cols_, result.pivots)) {
        throw SolverFailure("simplex: phase 1 reported unbounded");
      }
      if (tableau_(m_, n_cols_) < -tol_.feasibility) {
        result.status = LpStatus::Infeasible;
        return result;
      }
      drive_out_artificials(result.pivots);
    }

    Vector cost = Vector::Zero(n_cols_);
    for (Eigen::Index c = 0; c < n_struct_; ++c) {
      const auto& s = split_[static_cast<std::size_t>(c)];
      cost(c) = s.sign * lp_.objective(s.variable);
    }
    price(cost);
    if (!iterate(n_struct_ + m_, result.pivots)) {
      result.status = LpStatus::Unbounded;
      return result;
    }

    Vector split_values = Vector::Zero(n_cols_);
    for (Eigen::Index r = 0; r < m_; ++r) {
      split_values(basis_[static_cast<std::size_t>(r)]) = tableau_(r, n_cols_);
    }
    result.values = Vector::Zero(lp_.num_variables());
    for (Eigen::Index c = 0; c < n_struct_; ++c) {
      const auto& s = split_[static_cast<std::size_t>(c)];
      result.values(s.variable) += s.sign * split_values(c);
    }
    for (Eigen::Index j = 0; j < lp_.num_variables(); ++j) {
      // Basic values may carry round-off of the order of the pivot tolerance.
      if (lp_.nonnegative[static_cast<std::size_t>(j)] && result.values(j) < Scalar(0)) {
        result.values(j) = Scalar(0);
      }
    }
    result.objective = lp_.objective.dot(result.values);
    result.status = LpStatus::Optimal;
    return result;
  }

 private:
  struct SplitColumn {
    Eigen::Index variable;
    Scalar sign;
  };

  // Objective row holds reduced costs c_B B^-1 A - c; last entry is the value.
  void price(const Vector& cost) {
    cost_ = cost;
    tableau_.row(m_).setZero();
    tableau_.row(m_).head(n_cols_) = -cost.transpose();
    for (Eigen::Index r = 0; r < m_; ++r) {
      const Scalar cb = cost(basis_[static_cast<std::size_t>(r)]);
      if (cb != Scalar(0)) tableau_.row(m_) += cb * tableau_.row(r);
    }
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    tableau_.row(row) /= tableau_(row, col);
    for (Eigen::Index r = 0; r <= m_; ++r) {
      if (r == row) continue;
      const Scalar factor = tableau_(r, col);
      if (factor != Scalar(0)) tableau_.row(r) -= factor * tableau_.row(row);
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  /// Recomputes B^-1 [A | b] and the reduced costs from the original data,
  /// discarding the round-off accumulated by successive eliminations.
  void refactor() {
    Matrix basis(m_, m_);
    for (Eigen::Index r = 0; r < m_; ++r) basis.col(r) = initial_.col(basis_[static_cast<std::size_t>(r)]);
    tableau_.topRows(m_) = basis.partialPivLu().solve(initial_);
    for (Eigen::Index r = 0; r < m_; ++r) tableau_(r, basis_[static_cast<std::size_t>(r)]) = Scalar(1);
    price(cost_);
  }

  /// Runs Bland pivots over columns [0, n_eligible). False means unbounded.
  bool iterate(Eigen::Index n_eligible, std::size_t& pivots) {
    std::size_t since_refactor = 0;
    for (;;) {
      Eigen::Index entering = -1;
      for (Eigen::Index c = 0; c < n_eligible; ++c) {
        if (tableau_(m_, c) < -tol_.pivot) {
          entering = c;
          break;
        }
      }
      if (entering < 0) {
        if (since_refactor == 0) return true;
        refactor();
        since_refactor = 0;
        continue;
      }

      Eigen::Index leaving = -1;
      Scalar best = std::numeric_limits<Scalar>::infinity();
      for (Eigen::Index r = 0; r < m_; ++r) {
        const Scalar a = tableau_(r, entering);
        if (a <= tol_.element) continue;
        // Round-off can leave a basic value marginally below zero; it is a
        // degenerate row, not a negative step.
        const Scalar ratio = std::max(tableau_(r, n_cols_), Scalar(0)) / a;
        const bool tie = std::abs(ratio - best) <= tol_.pivot;
        if ((!tie && ratio < best) ||
            (tie && basis_[static_cast<std::size_t>(r)] <
                        basis_[static_cast<std::size_t>(leaving)])) {
          best = ratio;
          leaving = r;
        }
      }
      if (leaving < 0) return false;
      pivot(leaving, entering);
      if (++pivots > tol_.max_pivots) {
        throw SolverFailure("simplex: pivot limit exceeded");
      }
      if (++since_refactor >= tol_.refactor_every) {
        refactor();
        since_refactor = 0;
      }
    }
  }

  void drive_out_artificials(std::size_t& pivots) {
    const auto first_art = n_struct_ + m_;
    for (Eigen::Index r = 0; r < m_; ++r) {
      if (basis_[static_cast<std::size_t>(r)] < first_art) continue;
      for (Eigen::Index c = 0; c < first_art; ++c) {
        if (std::abs(tableau_(r, c)) > tol_.pivot) {
          pivot(r, c);
          ++pivots;
          break;
        }
      }
      // A row with no usable column is redundant; its artificial stays at 0.
    }
  }

  const LinearProgram<Scalar>& lp_;
  SimplexTolerances<Scalar> tol_;
  std::vector<SplitColumn> split_;
  Eigen::Index m_ = 0;
  Eigen::Index n_struct_ = 0;
  Eigen::Index n_art_ = 0;
  Eigen::Index n_cols_ = 0;
  Matrix tableau_;
  Matrix initial_;
  Vector cost_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace detail

/// Solves `lp` with the deterministic Bland-rule simplex. Repeated calls on the
/// same program return bit-identical results.
template <typename Scalar>
LpSolution<Scalar> solve_deterministic(const LinearProgram<Scalar>& lp,
                                       const SimplexTolerances<Scalar>& tol = {}) {
  return detail::DenseSimplex<Scalar>(lp, tol).solve();
}

}  // namespace mmlp
