#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "conic_reduction.hpp"
#include "freqsec/conic/solve.hpp"
#include "freqsec/errors.hpp"

namespace freqsec::conic {

namespace {

constexpr double kIntegralityTol = 1e-6;

std::ptrdiff_t detect_active_interval(const ConicProgram& program, const Eigen::VectorXd& x) {
  for (std::size_t pos = 0; pos < program.interval_selectors.size(); ++pos) {
    const std::size_t var = program.interval_selectors[pos];
    if (x[static_cast<Eigen::Index>(var)] > 0.5) return static_cast<std::ptrdiff_t>(pos);
  }
  return -1;
}

}  // namespace

SolveResult solve_relaxation(const ConicProgram& program, const Eigen::VectorXd& lower,
                             const Eigen::VectorXd& upper, const IpmOptions& options) {
  const detail::Reduction red = detail::reduce(program, lower, upper);

  SolveResult result;
  result.node_count = 1;
  if (red.proven_infeasible) {
    result.status = SolveResult::Status::Infeasible;
    return result;
  }

  if (red.free_index.empty()) {
    // everything pinned: plain feasibility check of the point
    const Eigen::VectorXd x = red.fixed_values;
    if (!point_feasible(program, x, 1e-7)) {
      result.status = SolveResult::Status::Infeasible;
      return result;
    }
    result.status = SolveResult::Status::Optimal;
    result.values = x;
    result.objective = program.objective.dot(x) + program.objective_constant;
    result.active_interval = detect_active_interval(program, x);
    return result;
  }

  const IpmSolution sol = solve_standard_form(red.form, options);
  switch (sol.status) {
    case IpmStatus::Optimal: {
      result.status = SolveResult::Status::Optimal;
      result.values = red.expand(sol.x);
      result.objective = program.objective.dot(result.values) + program.objective_constant;
      result.duality_gap = sol.rel_gap;
      result.active_interval = detect_active_interval(program, result.values);
      return result;
    }
    case IpmStatus::PrimalInfeasible:
      result.status = SolveResult::Status::Infeasible;
      return result;
    case IpmStatus::DualInfeasible:
      throw Error(Errc::NumericalFailure,
                  "relaxation is unbounded below; variable bounds are missing");
    default:
      throw Error(Errc::NumericalFailure,
                  "interior-point method did not converge\n" + sol.trace);
  }
}

SolveResult solve_continuous(const ConicProgram& program,
                             const std::vector<double>& binary_values,
                             const IpmOptions& options) {
  if (binary_values.size() != program.binaries.size()) {
    throw Error(Errc::BadInput, "expected one value per binary variable");
  }
  Eigen::VectorXd lower = program.lower;
  Eigen::VectorXd upper = program.upper;
  for (std::size_t k = 0; k < program.binaries.size(); ++k) {
    const double v = binary_values[k];
    if (std::abs(v) > kIntegralityTol && std::abs(v - 1.0) > kIntegralityTol) {
      throw Error(Errc::BadInput, "binary values must be 0 or 1");
    }
    const double rounded = std::round(v);
    const Eigen::Index i = static_cast<Eigen::Index>(program.binaries[k]);
    lower[i] = rounded;
    upper[i] = rounded;
  }
  return solve_relaxation(program, lower, upper, options);
}

namespace {

// exactly-one groups: equality rows of +1 coefficients on binaries with rhs 1;
// used to propagate fixings before each node relaxation
std::vector<std::vector<std::size_t>> exactly_one_groups(const ConicProgram& program) {
  std::vector<bool> is_binary(program.num_variables(), false);
  for (std::size_t b : program.binaries) is_binary[b] = true;

  std::vector<std::vector<std::size_t>> groups;
  for (const LinearRow& row : program.rows) {
    if (row.kind != LinearRow::Kind::Eq || std::abs(row.rhs - 1.0) > 1e-12) continue;
    std::vector<std::size_t> members;
    bool clean = true;
    for (Eigen::Index i = 0; i < row.coefficients.size(); ++i) {
      const double a = row.coefficients[i];
      if (a == 0.0) continue;
      if (std::abs(a - 1.0) > 1e-12 || !is_binary[static_cast<std::size_t>(i)]) {
        clean = false;
        break;
      }
      members.push_back(static_cast<std::size_t>(i));
    }
    if (clean && members.size() > 1) groups.push_back(std::move(members));
  }
  return groups;
}

struct Node {
  long id = 0;
  double bound = 0.0;
  Eigen::VectorXd lower, upper; // binary bound state (full-size vectors)
  Eigen::VectorXd relaxation;   // solution of this node's relaxation
  bool integral = false;
};

struct NodeOrder {
  // best bound first; ties broken by insertion order
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

}  // namespace

SolveResult solve_mi(const ConicProgram& program, const MiOptions& options) {
  if (!(options.gap >= 0.0) || !std::isfinite(options.gap)) {
    throw Error(Errc::BadInput, "gap must be a finite non-negative fraction");
  }
  const auto groups = exactly_one_groups(program);
  const double int_tol = kIntegralityTol;

  auto propagate = [&](Eigen::VectorXd& lower, Eigen::VectorXd& upper) {
    for (const auto& group : groups) {
      std::ptrdiff_t forced_one = -1;
      std::size_t open = 0;
      std::size_t last_open = 0;
      for (std::size_t v : group) {
        const Eigen::Index i = static_cast<Eigen::Index>(v);
        if (lower[i] > 0.5) forced_one = static_cast<std::ptrdiff_t>(v);
        if (upper[i] > 0.5 && lower[i] < 0.5) {
          ++open;
          last_open = v;
        }
      }
      if (forced_one >= 0) {
        for (std::size_t v : group) {
          if (static_cast<std::ptrdiff_t>(v) != forced_one) {
            upper[static_cast<Eigen::Index>(v)] = 0.0;
          }
        }
      } else if (open == 1) {
        lower[static_cast<Eigen::Index>(last_open)] = 1.0;
      }
    }
  };

  long next_id = 0;
  long evaluated = 0;
  SolveResult incumbent;
  bool have_incumbent = false;
  std::vector<std::pair<long, double>> node_bounds;

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open_nodes;

  auto evaluate_and_push = [&](Eigen::VectorXd lower, Eigen::VectorXd upper) {
    if (evaluated >= options.node_limit) {
      throw Error(Errc::NodeLimit,
                  "branch-and-bound exceeded " + std::to_string(options.node_limit) + " nodes");
    }
    propagate(lower, upper);
    ++evaluated;
    SolveResult relax;
    relax = solve_relaxation(program, lower, upper, options.ipm);
    if (relax.status == SolveResult::Status::Infeasible) return;

    Node node;
    node.id = next_id++;
    node.bound = relax.objective;
    node.lower = std::move(lower);
    node.upper = std::move(upper);
    node.relaxation = relax.values;
    node.integral = true;
    for (std::size_t b : program.binaries) {
      const double v = relax.values[static_cast<Eigen::Index>(b)];
      if (std::abs(v - std::round(v)) > int_tol) {
        node.integral = false;
        break;
      }
    }
    node_bounds.emplace_back(node.id, node.bound);

    if (node.integral) {
      if (!have_incumbent || relax.objective < incumbent.objective) {
        incumbent = relax;
        // snap binaries to exact integers in the reported point
        for (std::size_t b : program.binaries) {
          Eigen::Index i = static_cast<Eigen::Index>(b);
          incumbent.values[i] = std::round(incumbent.values[i]);
        }
        incumbent.active_interval = detect_active_interval(program, incumbent.values);
        have_incumbent = true;
      }
      return; // leaf
    }
    open_nodes.push(std::move(node));
  };

  evaluate_and_push(program.lower, program.upper);

  // lowest bound among subtrees pruned by the gap rule; caps the gap we can prove
  double weakest_pruned = std::numeric_limits<double>::infinity();
  auto rel_gap = [&]() {
    if (!have_incumbent) return std::numeric_limits<double>::infinity();
    double lb = incumbent.objective;
    if (!open_nodes.empty()) lb = std::min(lb, open_nodes.top().bound);
    lb = std::min(lb, weakest_pruned);
    return (incumbent.objective - lb) / std::max(std::abs(incumbent.objective), 1e-10);
  };

  while (!open_nodes.empty()) {
    if (have_incumbent && rel_gap() <= options.gap) break;
    Node node = open_nodes.top();
    open_nodes.pop();

    if (have_incumbent &&
        node.bound >= incumbent.objective -
                          options.gap * std::max(std::abs(incumbent.objective), 1e-10)) {
      weakest_pruned = std::min(weakest_pruned, node.bound);
      continue; // cannot improve beyond the requested gap
    }

    // branch on the most fractional binary, ties by lowest index
    std::ptrdiff_t branch_var = -1;
    double best_frac = -1.0;
    for (std::size_t b : program.binaries) {
      const Eigen::Index i = static_cast<Eigen::Index>(b);
      if (node.upper[i] - node.lower[i] < 0.5) continue; // already fixed
      const double v = node.relaxation[i];
      const double frac = 0.5 - std::abs(v - std::floor(v) - 0.5);
      if (frac > best_frac + 1e-15) {
        best_frac = frac;
        branch_var = static_cast<std::ptrdiff_t>(b);
      }
    }
    if (branch_var < 0) continue; // integral node already handled at creation

    {
      Eigen::VectorXd lo = node.lower, up = node.upper;
      up[branch_var] = 0.0;
      evaluate_and_push(std::move(lo), std::move(up));
    }
    {
      Eigen::VectorXd lo = node.lower, up = node.upper;
      lo[branch_var] = 1.0;
      evaluate_and_push(std::move(lo), std::move(up));
    }
  }

  if (!have_incumbent) {
    SolveResult result;
    result.status = SolveResult::Status::Infeasible;
    result.node_count = evaluated;
    result.node_bounds = std::move(node_bounds);
    return result;
  }

  incumbent.node_count = evaluated;
  const double final_gap = rel_gap();
  incumbent.node_bounds = std::move(node_bounds);
  incumbent.duality_gap = final_gap;
  incumbent.status = (final_gap <= 1e-9) ? SolveResult::Status::Optimal
                                         : SolveResult::Status::GapReached;
  return incumbent;
}

SolveResult solve_by_enumeration(const ConicProgram& program, const IpmOptions& options) {
  if (program.interval_selectors.empty()) {
    throw Error(Errc::BadInput, "program has no interval selectors to enumerate");
  }
  std::vector<std::size_t> sorted_bins = program.binaries;
  std::vector<std::size_t> sorted_sel = program.interval_selectors;
  std::sort(sorted_bins.begin(), sorted_bins.end());
  std::sort(sorted_sel.begin(), sorted_sel.end());
  if (sorted_bins != sorted_sel) {
    throw Error(Errc::BadInput,
                "enumeration requires the binaries to be exactly the interval selectors");
  }

  SolveResult best;
  best.status = SolveResult::Status::Infeasible;
  long solves = 0;
  for (std::size_t pos = 0; pos < program.interval_selectors.size(); ++pos) {
    std::vector<double> fixing(program.binaries.size(), 0.0);
    for (std::size_t k = 0; k < program.binaries.size(); ++k) {
      fixing[k] = (program.binaries[k] == program.interval_selectors[pos]) ? 1.0 : 0.0;
    }
    SolveResult hypothesis = solve_continuous(program, fixing, options);
    ++solves;
    if (hypothesis.status != SolveResult::Status::Optimal) continue;
    if (best.status == SolveResult::Status::Infeasible ||
        hypothesis.objective < best.objective) {
      best = std::move(hypothesis);
      best.active_interval = static_cast<std::ptrdiff_t>(pos);
    }
  }
  best.node_count = solves;
  return best;
}

}  // namespace freqsec::conic
