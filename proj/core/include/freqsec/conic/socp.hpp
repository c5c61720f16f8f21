#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace freqsec::conic {

/// Cone layout of the inequality slack: first `nonneg` coordinates belong to
/// the non-negative orthant, followed by one second-order cone per entry of
/// `soc` (each entry is that cone's dimension, >= 2).
struct ConeDims {
  Eigen::Index nonneg = 0;
  std::vector<Eigen::Index> soc;

  Eigen::Index total() const {
    Eigen::Index m = nonneg;
    for (Eigen::Index q : soc) m += q;
    return m;
  }
  // barrier degree: one per orthant coordinate, one per second-order cone
  double degree() const { return double(nonneg) + double(soc.size()); }
};

/// min c'x  s.t.  A x = b,  G x + s = h,  s in K.
struct StandardForm {
  Eigen::VectorXd c;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::MatrixXd G;
  Eigen::VectorXd h;
  ConeDims dims;
};

enum class IpmStatus {
  Optimal,
  PrimalInfeasible,
  DualInfeasible,
  MaxIterations,
  NumericalProblem,
};

struct IpmOptions {
  int max_iterations = 200;
  double feas_tol = 1e-8;
  double rel_gap_tol = 1e-8;
  double abs_gap_tol = 1e-9;
  // looser thresholds accepted when the iteration stalls near the solution
  double acceptable_tol = 1e-6;
  double step_fraction = 0.98;
  bool collect_trace = true;
};

struct IpmSolution {
  IpmStatus status = IpmStatus::NumericalProblem;
  Eigen::VectorXd x, y, z, s; // de-homogenized for Optimal, certificate otherwise
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double rel_gap = 0.0;
  double primal_res = 0.0;
  double dual_res = 0.0;
  int iterations = 0;
  std::string trace; // one line per iteration
};

/// Primal-dual interior-point solver on the homogeneous self-dual embedding,
/// Nesterov-Todd scaling and Mehrotra correction, dense linear algebra.
IpmSolution solve_standard_form(const StandardForm& problem, const IpmOptions& options = {});

}  // namespace freqsec::conic
