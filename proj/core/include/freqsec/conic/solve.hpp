#pragma once

#include <vector>

#include "freqsec/conic/program.hpp"
#include "freqsec/conic/socp.hpp"

namespace freqsec::conic {

struct MiOptions {
  double gap = 0.005;       // relative duality gap target
  long node_limit = 200000; // evaluated-node cap, NodeLimit error beyond
  IpmOptions ipm;
};

/// Solves the continuous SOCP with every binary pinned to the given 0/1
/// value. Throws NumericalFailure (with the iteration trace) when the
/// interior-point method cannot conclude.
SolveResult solve_continuous(const ConicProgram& program,
                             const std::vector<double>& binary_values = {},
                             const IpmOptions& options = {});

/// Continuous relaxation with explicit variable bounds (binaries relaxed into
/// [lower, upper]); building block of the branch-and-bound search.
SolveResult solve_relaxation(const ConicProgram& program, const Eigen::VectorXd& lower,
                             const Eigen::VectorXd& upper, const IpmOptions& options = {});

/// Best-first branch-and-bound over the binaries. Deterministic: branches on
/// the most fractional binary (ties by lowest index) and explores nodes in
/// best-bound order (ties by insertion order).
SolveResult solve_mi(const ConicProgram& program, const MiOptions& options = {});

/// Independent solve path: one continuous SOCP per nadir-interval hypothesis,
/// returning the cheapest feasible one. Requires the binaries to be exactly
/// the interval selectors.
SolveResult solve_by_enumeration(const ConicProgram& program, const IpmOptions& options = {});

}  // namespace freqsec::conic
