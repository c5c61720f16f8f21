#include "freqsec/conic/program.hpp"

#include <algorithm>
#include <cmath>

#include "conic_reduction.hpp"
#include "freqsec/errors.hpp"

namespace freqsec::conic {

std::size_t ConicProgram::add_variable(std::string name, double lo, double hi, bool binary) {
  const std::size_t index = variable_names.size();
  variable_names.push_back(std::move(name));
  lower.conservativeResize(index + 1);
  upper.conservativeResize(index + 1);
  objective.conservativeResize(index + 1);
  lower[index] = lo;
  upper[index] = hi;
  objective[index] = 0.0;
  for (LinearRow& row : rows) {
    row.coefficients.conservativeResize(index + 1);
    row.coefficients[index] = 0.0;
  }
  for (RsocBlock& cone : cones) {
    for (auto* coefs : {&cone.u_coefficients, &cone.v_coefficients, &cone.w_coefficients}) {
      coefs->conservativeResize(index + 1);
      (*coefs)[index] = 0.0;
    }
  }
  if (binary) binaries.push_back(index);
  return index;
}

std::ptrdiff_t ConicProgram::find_variable(std::string_view name) const {
  for (std::size_t i = 0; i < variable_names.size(); ++i) {
    if (variable_names[i] == name) return static_cast<std::ptrdiff_t>(i);
  }
  return -1;
}

double SolveResult::value_of(const ConicProgram& program, std::string_view name) const {
  const std::ptrdiff_t idx = program.find_variable(name);
  if (idx < 0 || idx >= values.size()) {
    throw Error(Errc::BadInput, "no variable named '" + std::string(name) + "' in solution");
  }
  return values[idx];
}

namespace {

// links materialized into the row data: a.x <= b + M(1-z)  =>  a.x + M z <= b + M
std::vector<LinearRow> materialized_rows(const ConicProgram& program) {
  std::vector<LinearRow> rows = program.rows;
  for (const BigMLink& link : program.links) {
    LinearRow& row = rows.at(link.row);
    if (row.kind != LinearRow::Kind::LessEq) {
      throw Error(Errc::BadInput, "big-M link on an equality row");
    }
    row.coefficients[static_cast<Eigen::Index>(link.binary)] += link.big_m;
    row.rhs += link.big_m;
  }
  return rows;
}

}  // namespace

bool point_feasible(const ConicProgram& program, const Eigen::VectorXd& x, double rel_tol) {
  if (x.size() != static_cast<Eigen::Index>(program.num_variables())) return false;
  const double xscale = x.size() ? x.lpNorm<Eigen::Infinity>() : 0.0;

  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double tol = rel_tol * std::max({1.0, std::abs(program.lower[i]),
                                           std::abs(program.upper[i])});
    if (x[i] < program.lower[i] - tol || x[i] > program.upper[i] + tol) return false;
  }
  for (const LinearRow& row : materialized_rows(program)) {
    const double lhs = row.coefficients.dot(x);
    const double scale = std::max(
        {1.0, std::abs(row.rhs), row.coefficients.lpNorm<Eigen::Infinity>() * xscale});
    if (row.kind == LinearRow::Kind::Eq) {
      if (std::abs(lhs - row.rhs) > rel_tol * scale) return false;
    } else if (lhs - row.rhs > rel_tol * scale) {
      return false;
    }
  }
  for (const RsocBlock& cone : program.cones) {
    const double u = cone.u_coefficients.dot(x) + cone.u_constant;
    const double v = cone.v_coefficients.dot(x) + cone.v_constant;
    const double w = cone.w_coefficients.dot(x) + cone.w_constant;
    const double scale = std::max({1.0, std::abs(u * v), w * w});
    if (u < -rel_tol * std::max(1.0, std::abs(cone.u_constant))) return false;
    if (v < -rel_tol * std::max(1.0, std::abs(cone.v_constant))) return false;
    if (u * v - w * w < -rel_tol * scale) return false;
  }
  return true;
}

namespace detail {

Reduction reduce(const ConicProgram& program, const Eigen::VectorXd& lower,
                 const Eigen::VectorXd& upper) {
  const Eigen::Index n_all = static_cast<Eigen::Index>(program.num_variables());
  Reduction red;
  red.fixed.assign(n_all, false);
  red.fixed_values = Eigen::VectorXd::Zero(n_all);

  for (Eigen::Index i = 0; i < n_all; ++i) {
    if (lower[i] > upper[i] + 1e-12 * std::max(1.0, std::abs(upper[i]))) {
      red.proven_infeasible = true;
      red.infeasible_row = "bounds of " + program.variable_names[i];
      return red;
    }
    if (upper[i] - lower[i] <= 1e-11 * std::max({1.0, std::abs(upper[i]), std::abs(lower[i])})) {
      red.fixed[i] = true;
      red.fixed_values[i] = 0.5 * (lower[i] + upper[i]);
    } else {
      red.free_index.push_back(i);
    }
  }
  const Eigen::Index n = static_cast<Eigen::Index>(red.free_index.size());

  auto compress = [&](const Eigen::RowVectorXd& coefs, double& shift) {
    Eigen::RowVectorXd out(n);
    for (Eigen::Index j = 0; j < n; ++j) out[j] = coefs[red.free_index[j]];
    for (Eigen::Index i = 0; i < n_all; ++i) {
      if (red.fixed[i]) shift += coefs[i] * red.fixed_values[i];
    }
    return out;
  };

  // objective over free variables
  double obj_shift = 0.0;
  Eigen::RowVectorXd c_row = compress(program.objective.transpose(), obj_shift);
  red.objective_shift = obj_shift;
  red.form.c = c_row.transpose();

  std::vector<Eigen::RowVectorXd> eq_rows, le_rows;
  std::vector<double> eq_rhs, le_rhs;
  for (const LinearRow& row : materialized_rows(program)) {
    double shift = 0.0;
    Eigen::RowVectorXd coefs = compress(row.coefficients, shift);
    const double rhs = row.rhs - shift;
    const double scale = std::max(1.0, std::abs(row.rhs));
    if ((n == 0 ? 0.0 : coefs.lpNorm<Eigen::Infinity>()) <= 1e-13 * scale) {
      const bool ok = (row.kind == LinearRow::Kind::Eq) ? std::abs(rhs) <= 1e-9 * scale
                                                        : rhs >= -1e-9 * scale;
      if (!ok) {
        red.proven_infeasible = true;
        red.infeasible_row = row.name;
        return red;
      }
      continue;
    }
    if (row.kind == LinearRow::Kind::Eq) {
      eq_rows.push_back(std::move(coefs));
      eq_rhs.push_back(rhs);
    } else {
      le_rows.push_back(std::move(coefs));
      le_rhs.push_back(rhs);
    }
  }

  // free-variable bounds as orthant rows
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index i = red.free_index[j];
    if (std::isfinite(upper[i])) {
      Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(n);
      r[j] = 1.0;
      le_rows.push_back(std::move(r));
      le_rhs.push_back(upper[i]);
    }
    if (std::isfinite(lower[i])) {
      Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(n);
      r[j] = -1.0;
      le_rows.push_back(std::move(r));
      le_rhs.push_back(-lower[i]);
    }
  }

  red.form.A.resize(static_cast<Eigen::Index>(eq_rows.size()), n);
  red.form.b.resize(static_cast<Eigen::Index>(eq_rows.size()));
  for (std::size_t i = 0; i < eq_rows.size(); ++i) {
    red.form.A.row(static_cast<Eigen::Index>(i)) = eq_rows[i];
    red.form.b[static_cast<Eigen::Index>(i)] = eq_rhs[i];
  }

  const Eigen::Index n_orth = static_cast<Eigen::Index>(le_rows.size());
  const Eigen::Index n_cone_rows = 3 * static_cast<Eigen::Index>(program.cones.size());
  red.form.G.resize(n_orth + n_cone_rows, n);
  red.form.h.resize(n_orth + n_cone_rows);
  for (Eigen::Index i = 0; i < n_orth; ++i) {
    red.form.G.row(i) = le_rows[static_cast<std::size_t>(i)];
    red.form.h[i] = le_rhs[static_cast<std::size_t>(i)];
  }
  red.form.dims.nonneg = n_orth;

  // rotated cone (u, v, w) embedded as the standard cone (u+v, 2w, u-v)
  Eigen::Index at = n_orth;
  for (const RsocBlock& cone : program.cones) {
    double u0 = cone.u_constant, v0 = cone.v_constant, w0 = cone.w_constant;
    Eigen::RowVectorXd uc = compress(cone.u_coefficients, u0);
    Eigen::RowVectorXd vc = compress(cone.v_coefficients, v0);
    Eigen::RowVectorXd wc = compress(cone.w_coefficients, w0);
    const double norm = std::max({(n ? uc.lpNorm<Eigen::Infinity>() : 0.0),
                                  (n ? vc.lpNorm<Eigen::Infinity>() : 0.0),
                                  (n ? wc.lpNorm<Eigen::Infinity>() : 0.0)});
    if (norm <= 1e-13) {
      // fully substituted cone: verify numerically
      const double tol = 1e-7 * std::max({1.0, std::abs(u0 * v0), w0 * w0});
      if (u0 < -tol || v0 < -tol || u0 * v0 - w0 * w0 < -tol) {
        red.proven_infeasible = true;
        red.infeasible_row = cone.name;
        return red;
      }
      red.form.G.conservativeResize(red.form.G.rows() - 3, Eigen::NoChange);
      red.form.h.conservativeResize(red.form.h.size() - 3);
      continue;
    }
    red.form.G.row(at) = -(uc + vc);
    red.form.h[at] = u0 + v0;
    red.form.G.row(at + 1) = -2.0 * wc;
    red.form.h[at + 1] = 2.0 * w0;
    red.form.G.row(at + 2) = -(uc - vc);
    red.form.h[at + 2] = u0 - v0;
    red.form.dims.soc.push_back(3);
    at += 3;
  }
  return red;
}

}  // namespace detail

}  // namespace freqsec::conic
