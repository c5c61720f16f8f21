#pragma once

// internal: fixed-variable substitution of a ConicProgram into IPM standard
// form; shared between the relaxation solver and branch-and-bound

#include <string>
#include <vector>

#include "freqsec/conic/program.hpp"
#include "freqsec/conic/socp.hpp"

namespace freqsec::conic::detail {

struct Reduction {
  StandardForm form;
  std::vector<Eigen::Index> free_index; // position in x for each free variable
  Eigen::VectorXd fixed_values;         // full-length template with fixed slots set
  std::vector<bool> fixed;
  double objective_shift = 0.0; // constant picked up from substitution
  bool proven_infeasible = false;
  std::string infeasible_row;

  Eigen::VectorXd expand(const Eigen::VectorXd& x_free) const {
    Eigen::VectorXd full = fixed_values;
    for (std::size_t j = 0; j < free_index.size(); ++j) {
      full[free_index[j]] = x_free[static_cast<Eigen::Index>(j)];
    }
    return full;
  }
};

Reduction reduce(const ConicProgram& program, const Eigen::VectorXd& lower,
                 const Eigen::VectorXd& upper);

}  // namespace freqsec::conic::detail
