#pragma once

#include <optional>
#include <string>
#include <vector>

#include "freqsec/conic/program.hpp"
#include "freqsec/types.hpp"

namespace freqsec::conic {

struct VarBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Variable wiring for one frequency-security constraint block.
struct SecurityVars {
  std::size_t h = 0;        // generator inertia, MW·s
  std::size_t p_loss = 0;   // largest loss, MW
  std::vector<std::size_t> r; // one allocation per service, MW
};

/// Adds the RoCoF row, the steady-state row, the exactly-one selector row and
/// per candidate interval the big-M gated entry/exit rows plus the rotated
/// nadir cone. Demand-side inertia enters as a constant: h_demand when no
/// chance spec is given, otherwise the eta/alpha adjusted forecast. Returns
/// the selector variable indices (appended to program.interval_selectors).
///
/// security_margin tightens the rows/cones by that relative amount so that
/// solver output stays strictly inside the exact security region.
///
/// Requires finite bounds on h, p_loss and every allocation; throws
/// UnboundedBigM otherwise.
std::vector<std::size_t> add_security_constraints(ConicProgram& program,
                                                  const std::vector<FrService>& services,
                                                  const SecuritySpec& spec,
                                                  const std::optional<ChanceSpec>& chance,
                                                  double h_demand, const SecurityVars& vars,
                                                  const std::string& tag,
                                                  double security_margin = 0.0);

struct BuildOptions {
  VarBounds inertia;                 // bounds for the H decision, MW·s
  std::optional<VarBounds> p_loss;   // default [0, spec.p_loss_max]
  double h_demand = 0.0;             // deterministic demand inertia (no chance spec)
  double inertia_cost = 0.0;         // currency per MW·s scheduled
  double p_loss_cost = 0.0;          // shadow term on the largest-loss decision
  double security_margin = 1e-6;     // relative tightening of the security rows
};

/// Standalone FR-scheduling program: variables H, P_L and one allocation per
/// service, the full frequency-security constraint set, and the linear cost
///   sum_s headroom_cost_s * R_s + inertia_cost * H + p_loss_cost * P_L.
ConicProgram build_program(const std::vector<FrService>& services, const SecuritySpec& spec,
                           const std::optional<ChanceSpec>& chance, const BuildOptions& options);

}  // namespace freqsec::conic
