#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace freqsec::conic {

struct LinearRow {
  enum class Kind { LessEq, Eq };
  Eigen::RowVectorXd coefficients; // dense over all program variables
  double rhs = 0.0;
  Kind kind = Kind::LessEq;
  std::string name;
};

/// Rotated second-order cone u*v >= w^2 with u, v >= 0; all three expressions
/// affine in the program variables.
struct RsocBlock {
  Eigen::RowVectorXd u_coefficients;
  double u_constant = 0.0;
  Eigen::RowVectorXd v_coefficients;
  double v_constant = 0.0;
  Eigen::RowVectorXd w_coefficients;
  double w_constant = 0.0;
  std::string name;
};

/// Activation record: row `row` is enforced when binary `binary` is one and
/// relaxed by `big_m` when it is zero.
struct BigMLink {
  std::size_t binary = 0;
  std::size_t row = 0;
  double big_m = 0.0;
};

/// Mixed-integer rotated-SOC program in decision-variable space.
struct ConicProgram {
  std::vector<std::string> variable_names;
  Eigen::VectorXd lower, upper;
  std::vector<std::size_t> binaries;
  std::vector<LinearRow> rows;
  std::vector<RsocBlock> cones;
  std::vector<BigMLink> links;
  Eigen::VectorXd objective;
  double objective_constant = 0.0;

  /// Indices of the nadir-interval selector binaries, in interval order.
  std::vector<std::size_t> interval_selectors;

  std::size_t num_variables() const { return variable_names.size(); }
  std::size_t add_variable(std::string name, double lo, double hi, bool binary = false);
  std::ptrdiff_t find_variable(std::string_view name) const;

  Eigen::RowVectorXd zero_row() const {
    return Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(num_variables()));
  }
};

struct SolveResult {
  enum class Status { Optimal, Infeasible, GapReached };
  Status status = Status::Infeasible;
  double objective = 0.0;
  Eigen::VectorXd values; // primal point by variable index, empty when infeasible
  double duality_gap = 0.0; // relative
  long node_count = 0;
  std::ptrdiff_t active_interval = -1; // position in interval_selectors, -1 if none

  // per-node relaxation bounds in evaluation order, for bound-monotonicity checks
  std::vector<std::pair<long, double>> node_bounds;

  double value_of(const ConicProgram& program, std::string_view name) const;
};

/// Point feasibility check against rows, cones, bounds and big-M gating at a
/// relative tolerance; used for round-trip validation of solver output.
bool point_feasible(const ConicProgram& program, const Eigen::VectorXd& x, double rel_tol = 1e-6);

}  // namespace freqsec::conic
