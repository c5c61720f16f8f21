#include "freqsec/conic/socp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace freqsec::conic {

namespace {

constexpr double kBigStep = 1e30;
constexpr double kKktRegularization = 1e-8;

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

double inf_norm(const VectorXd& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }

// -------- Jordan-algebra helpers on stacked cone vectors --------

// distance to the cone boundary; positive for strictly interior points
double min_margin(const VectorXd& u, const ConeDims& dims) {
  double margin = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < dims.nonneg; ++i) margin = std::min(margin, u[i]);
  Index at = dims.nonneg;
  for (Index q : dims.soc) {
    margin = std::min(margin, u[at] - u.segment(at + 1, q - 1).norm());
    at += q;
  }
  return margin;
}

VectorXd cone_unit(const ConeDims& dims) {
  VectorXd e = VectorXd::Zero(dims.total());
  e.head(dims.nonneg).setOnes();
  Index at = dims.nonneg;
  for (Index q : dims.soc) {
    e[at] = 1.0;
    at += q;
  }
  return e;
}

// shifts u along the identity until it is comfortably interior
VectorXd shift_into_cone(VectorXd u, const ConeDims& dims) {
  const double margin = min_margin(u, dims);
  if (margin > 0.0) return u;
  const VectorXd e = cone_unit(dims);
  return u + (1.0 - margin) * e;
}

VectorXd jordan_product(const VectorXd& u, const VectorXd& v, const ConeDims& dims) {
  VectorXd out(dims.total());
  out.head(dims.nonneg) = u.head(dims.nonneg).cwiseProduct(v.head(dims.nonneg));
  Index at = dims.nonneg;
  for (Index q : dims.soc) {
    const auto u1 = u.segment(at + 1, q - 1);
    const auto v1 = v.segment(at + 1, q - 1);
    out[at] = u.segment(at, q).dot(v.segment(at, q));
    out.segment(at + 1, q - 1) = u[at] * v1 + v[at] * u1;
    at += q;
  }
  return out;
}

// solves lambda o x = d for x (Arrow-matrix inverse on each SOC block)
VectorXd jordan_solve(const VectorXd& lambda, const VectorXd& d, const ConeDims& dims) {
  VectorXd out(dims.total());
  out.head(dims.nonneg) = d.head(dims.nonneg).cwiseQuotient(lambda.head(dims.nonneg));
  Index at = dims.nonneg;
  for (Index q : dims.soc) {
    const auto l1 = lambda.segment(at + 1, q - 1);
    const auto d1 = d.segment(at + 1, q - 1);
    const double det = lambda[at] * lambda[at] - l1.squaredNorm();
    const double x0 = (lambda[at] * d[at] - l1.dot(d1)) / det;
    out[at] = x0;
    out.segment(at + 1, q - 1) = (d1 - x0 * l1) / lambda[at];
    at += q;
  }
  return out;
}

double step_bound_nonneg(double u, double du) {
  return du < 0.0 ? -u / du : kBigStep;
}

// largest alpha with u + alpha*du staying in the second-order cone
double step_bound_soc(const Eigen::Ref<const VectorXd>& u, const Eigen::Ref<const VectorXd>& du) {
  const Index q = u.size();
  const double a = du[0] * du[0] - du.tail(q - 1).squaredNorm();
  const double b = 2.0 * (u[0] * du[0] - u.tail(q - 1).dot(du.tail(q - 1)));
  const double c = u[0] * u[0] - u.tail(q - 1).squaredNorm(); // > 0 strictly interior

  if (std::abs(a) < 1e-300) {
    return b < 0.0 ? -c / b : kBigStep;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return kBigStep; // only possible for a > 0: the ray never leaves
  const double sq = std::sqrt(disc);
  const double qq = -0.5 * (b + (b >= 0.0 ? sq : -sq));
  double r1 = qq / a;
  double r2 = (qq != 0.0) ? c / qq : kBigStep;
  if (r1 > r2) std::swap(r1, r2);
  if (r1 > 0.0) return r1;
  if (r2 > 0.0) return r2;
  return kBigStep;
}

double max_step(const VectorXd& u, const VectorXd& du, const ConeDims& dims) {
  double alpha = kBigStep;
  for (Index i = 0; i < dims.nonneg; ++i) {
    alpha = std::min(alpha, step_bound_nonneg(u[i], du[i]));
  }
  Index at = dims.nonneg;
  for (Index q : dims.soc) {
    alpha = std::min(alpha, step_bound_soc(u.segment(at, q), du.segment(at, q)));
    at += q;
  }
  return alpha;
}

// -------- Nesterov-Todd scaling --------

struct SocScaling {
  double eta = 1.0;
  MatrixXd W, Winv, W2;
};

struct Scaling {
  VectorXd orth_w;  // per-coordinate sqrt(s/z)
  std::vector<SocScaling> socs;
  VectorXd lambda;  // scaled point W z = W^{-1} s

  void identity(const ConeDims& dims) {
    orth_w = VectorXd::Ones(dims.nonneg);
    socs.clear();
    for (Index q : dims.soc) {
      SocScaling sc;
      sc.W = MatrixXd::Identity(q, q);
      sc.Winv = sc.W;
      sc.W2 = sc.W;
      socs.push_back(std::move(sc));
    }
  }

  void compute(const VectorXd& s, const VectorXd& z, const ConeDims& dims) {
    lambda.resize(dims.total());
    orth_w = (s.head(dims.nonneg).cwiseQuotient(z.head(dims.nonneg))).cwiseSqrt();
    lambda.head(dims.nonneg) =
        (s.head(dims.nonneg).cwiseProduct(z.head(dims.nonneg))).cwiseSqrt();
    socs.assign(dims.soc.size(), {});
    Index at = dims.nonneg;
    for (std::size_t k = 0; k < dims.soc.size(); ++k) {
      const Index q = dims.soc[k];
      const VectorXd sb = s.segment(at, q);
      const VectorXd zb = z.segment(at, q);
      const double rho_s = std::sqrt(sb[0] * sb[0] - sb.tail(q - 1).squaredNorm());
      const double rho_z = std::sqrt(zb[0] * zb[0] - zb.tail(q - 1).squaredNorm());
      const VectorXd sn = sb / rho_s;
      const VectorXd zn = zb / rho_z;
      const double gamma = std::sqrt((1.0 + sn.dot(zn)) / 2.0);

      VectorXd wbar(q);
      wbar[0] = (sn[0] + zn[0]) / (2.0 * gamma);
      wbar.tail(q - 1) = (sn.tail(q - 1) - zn.tail(q - 1)) / (2.0 * gamma);

      VectorXd jwbar = wbar;
      jwbar.tail(q - 1) = -jwbar.tail(q - 1);

      MatrixXd J = -MatrixXd::Identity(q, q);
      J(0, 0) = 1.0;

      SocScaling sc;
      sc.eta = std::sqrt(rho_s / rho_z);
      sc.W = sc.eta * (2.0 * wbar * wbar.transpose() - J);
      sc.Winv = (1.0 / sc.eta) * (2.0 * jwbar * jwbar.transpose() - J);
      sc.W2 = sc.W * sc.W;
      lambda.segment(at, q) = sc.W * zb;
      socs[k] = std::move(sc);
      at += q;
    }
  }

  VectorXd apply_W(const VectorXd& v, const ConeDims& dims) const {
    VectorXd out(dims.total());
    out.head(dims.nonneg) = orth_w.cwiseProduct(v.head(dims.nonneg));
    Index at = dims.nonneg;
    for (std::size_t k = 0; k < dims.soc.size(); ++k) {
      const Index q = dims.soc[k];
      out.segment(at, q) = socs[k].W * v.segment(at, q);
      at += q;
    }
    return out;
  }

  VectorXd apply_Winv(const VectorXd& v, const ConeDims& dims) const {
    VectorXd out(dims.total());
    out.head(dims.nonneg) = v.head(dims.nonneg).cwiseQuotient(orth_w);
    Index at = dims.nonneg;
    for (std::size_t k = 0; k < dims.soc.size(); ++k) {
      const Index q = dims.soc[k];
      out.segment(at, q) = socs[k].Winv * v.segment(at, q);
      at += q;
    }
    return out;
  }

  // W^T W = W^2 (W is symmetric), block diagonal
  void write_w2(MatrixXd& kkt, Index offset, const ConeDims& dims) const {
    for (Index i = 0; i < dims.nonneg; ++i) {
      kkt(offset + i, offset + i) = -orth_w[i] * orth_w[i];
    }
    Index at = dims.nonneg;
    for (std::size_t k = 0; k < dims.soc.size(); ++k) {
      const Index q = dims.soc[k];
      kkt.block(offset + at, offset + at, q, q) = -socs[k].W2;
      at += q;
    }
  }
};

// -------- KKT system --------
//
//   [ 0   A'  G'  ] [dx]   [ r1 ]
//   [ A   0   0   ] [dy] = [ r2 ]
//   [ G   0  -W'W ] [dz]   [ r3 ]
//
// factored with static regularization and polished by iterative refinement
// against the unregularized matrix.
class KktSystem {
 public:
  KktSystem(const StandardForm& p) : n_(p.c.size()), np_(p.A.rows()), m_(p.G.rows()) {
    const Index size = n_ + np_ + m_;
    base_ = MatrixXd::Zero(size, size);
    if (np_ > 0) {
      base_.block(n_, 0, np_, n_) = p.A;
      base_.block(0, n_, n_, np_) = p.A.transpose();
    }
    base_.block(n_ + np_, 0, m_, n_) = p.G;
    base_.block(0, n_ + np_, n_, m_) = p.G.transpose();
  }

  void refactor(const Scaling& scaling, const ConeDims& dims) {
    kkt_ = base_;
    scaling.write_w2(kkt_, n_ + np_, dims);
    MatrixXd reg = kkt_;
    reg.diagonal().head(n_).array() += kKktRegularization;
    reg.diagonal().segment(n_, np_).array() -= kKktRegularization;
    reg.diagonal().tail(m_).array() -= kKktRegularization;
    lu_.compute(reg);
  }

  // solve with refinement; rhs blocks are (r1, r2, r3)
  VectorXd solve(const VectorXd& rhs) const {
    VectorXd x = lu_.solve(rhs);
    double best_res = (rhs - kkt_ * x).norm();
    for (int round = 0; round < 2; ++round) {
      const VectorXd r = rhs - kkt_ * x;
      const VectorXd dx = lu_.solve(r);
      const double res = (rhs - kkt_ * (x + dx)).norm();
      if (res >= best_res) break;
      x += dx;
      best_res = res;
    }
    return x;
  }

  Index n() const { return n_; }
  Index np() const { return np_; }
  Index m() const { return m_; }

 private:
  Index n_, np_, m_;
  MatrixXd base_; // without the -W'W block
  MatrixXd kkt_;  // with the current -W'W block, unregularized
  Eigen::PartialPivLU<MatrixXd> lu_;
};

struct Split {
  VectorXd x, y, z;
};

Split split(const VectorXd& v, Index n, Index np, Index m) {
  return Split{v.head(n), v.segment(n, np), v.tail(m)};
}

std::string format_trace_line(int it, double pcost, double dcost, double gap, double pres,
                              double dres, double tau, double kappa, double step) {
  char buf[192];
  std::snprintf(buf, sizeof(buf),
                "%3d  pcost=%+.6e dcost=%+.6e gap=%.2e pres=%.2e dres=%.2e tau=%.2e "
                "kappa=%.2e step=%.3f\n",
                it, pcost, dcost, gap, pres, dres, tau, kappa, step);
  return buf;
}

}  // namespace

IpmSolution solve_standard_form(const StandardForm& problem, const IpmOptions& options) {
  const Index n = problem.c.size();
  const Index np = problem.A.rows();
  const Index m = problem.G.rows();
  const ConeDims& dims = problem.dims;

  IpmSolution sol;
  if (m != dims.total()) {
    sol.trace = "cone dims do not match G";
    return sol;
  }
  if (m == 0) {
    sol.trace = "problem has no cone constraints";
    return sol;
  }

  // row equilibration: equality and orthant rows individually, each SOC block
  // uniformly so the cone is preserved; objective normalized separately
  StandardForm p = problem;
  VectorXd da = VectorXd::Ones(np);
  for (Index i = 0; i < np; ++i) {
    const double norm = p.A.row(i).lpNorm<Eigen::Infinity>();
    if (norm > 1e-12) {
      da[i] = norm;
      p.A.row(i) /= norm;
      p.b[i] /= norm;
    }
  }
  VectorXd dg = VectorXd::Ones(m);
  for (Index i = 0; i < dims.nonneg; ++i) {
    const double norm = p.G.row(i).lpNorm<Eigen::Infinity>();
    if (norm > 1e-12) {
      dg[i] = norm;
      p.G.row(i) /= norm;
      p.h[i] /= norm;
    }
  }
  Index at = dims.nonneg;
  for (Index q : dims.soc) {
    double norm = 0.0;
    for (Index i = 0; i < q; ++i) {
      norm = std::max(norm, p.G.row(at + i).lpNorm<Eigen::Infinity>());
      norm = std::max(norm, std::abs(p.h[at + i]));
    }
    if (norm > 1e-12) {
      dg.segment(at, q).setConstant(norm);
      p.G.middleRows(at, q) /= norm;
      p.h.segment(at, q) /= norm;
    }
    at += q;
  }
  const double cost_scale = std::max(1.0, inf_norm(p.c));
  p.c /= cost_scale;

  const double norm_b = std::max(1.0, p.b.size() ? p.b.norm() : 0.0);
  const double norm_h = std::max(1.0, p.h.norm());
  const double norm_c = std::max(1.0, p.c.norm());
  const VectorXd e = cone_unit(dims);
  const double degree = dims.degree() + 1.0; // +1 for the tau/kappa pair

  KktSystem kkt(p);

  // initial point from two least-squares style solves with identity scaling
  Scaling scaling;
  scaling.identity(dims);
  kkt.refactor(scaling, dims);

  VectorXd x, y, z, s;
  {
    VectorXd rhs = VectorXd::Zero(n + np + m);
    rhs.segment(n, np) = p.b;
    rhs.tail(m) = p.h;
    const Split primal = split(kkt.solve(rhs), n, np, m);
    x = primal.x;
    s = shift_into_cone(-primal.z, dims);

    rhs.setZero();
    rhs.head(n) = -p.c;
    const Split dual = split(kkt.solve(rhs), n, np, m);
    y = dual.y;
    z = shift_into_cone(dual.z, dims);
  }
  double tau = 1.0;
  double kappa = 1.0;

  double best_metric = std::numeric_limits<double>::infinity();
  double best_tau = 1.0;
  IpmSolution best;

  auto finalize_optimal = [&](IpmSolution& out, double tau_at) {
    out.x /= tau_at;
    out.y /= tau_at;
    out.z /= tau_at;
    out.s /= tau_at;
    // undo equilibration
    out.y = cost_scale * out.y.cwiseQuotient(da);
    out.z = cost_scale * out.z.cwiseQuotient(dg);
    out.s = out.s.cwiseProduct(dg);
    out.primal_objective *= cost_scale;
    out.dual_objective *= cost_scale;
  };

  for (int it = 0; it < options.max_iterations; ++it) {
    // residuals of the homogeneous embedding
    const VectorXd f1 = p.A.transpose() * y + p.G.transpose() * z + p.c * tau;
    const VectorXd f2 = p.A * x - p.b * tau;
    const VectorXd f3 = p.G * x + s - p.h * tau;
    const double f4 = p.c.dot(x) + (np ? p.b.dot(y) : 0.0) + p.h.dot(z) + kappa;
    const double mu = (s.dot(z) + tau * kappa) / degree;

    // convergence metrics on the de-homogenized point
    const double pcost = p.c.dot(x) / tau;
    const double dcost = -((np ? p.b.dot(y) : 0.0) + p.h.dot(z)) / tau;
    const double gap = s.dot(z) / (tau * tau);
    const double rel_gap = gap / std::max({1.0, std::abs(pcost), std::abs(dcost)});
    const double pres = std::max((np ? (p.A * x / tau - p.b).norm() : 0.0) / norm_b,
                                 (p.G * x / tau + s / tau - p.h).norm() / norm_h);
    const double dres = f1.norm() / tau / norm_c;

    sol.iterations = it;
    if (options.collect_trace) {
      sol.trace += format_trace_line(it, pcost * cost_scale, dcost * cost_scale, gap, pres,
                                     dres, tau, kappa, 0.0);
    }

    const double metric = std::max({pres, dres, std::min(gap, rel_gap)});
    if (metric < best_metric) {
      best_metric = metric;
      best_tau = tau;
      best.x = x;
      best.y = y;
      best.z = z;
      best.s = s;
      best.primal_objective = pcost;
      best.dual_objective = dcost;
      best.rel_gap = rel_gap;
      best.primal_res = pres;
      best.dual_res = dres;
    }

    if (pres <= options.feas_tol && dres <= options.feas_tol &&
        (gap <= options.abs_gap_tol || rel_gap <= options.rel_gap_tol)) {
      sol.status = IpmStatus::Optimal;
      sol.x = x;
      sol.y = y;
      sol.z = z;
      sol.s = s;
      sol.primal_objective = pcost;
      sol.dual_objective = dcost;
      sol.rel_gap = rel_gap;
      sol.primal_res = pres;
      sol.dual_res = dres;
      finalize_optimal(sol, tau);
      return sol;
    }

    // certificate checks
    const double hz_by = (np ? p.b.dot(y) : 0.0) + p.h.dot(z);
    if (hz_by < -1e-10 * std::max({1.0, inf_norm(y), inf_norm(z)})) {
      const double pinf_res = (p.A.transpose() * y + p.G.transpose() * z).norm() / (-hz_by);
      if (pinf_res <= options.feas_tol) {
        sol.status = IpmStatus::PrimalInfeasible;
        sol.y = y.cwiseQuotient(da) / (-hz_by);
        sol.z = z.cwiseQuotient(dg) / (-hz_by);
        sol.x = VectorXd::Zero(n);
        sol.s = VectorXd::Zero(m);
        return sol;
      }
    }
    const double cx = p.c.dot(x);
    if (cx < -1e-10 * std::max(1.0, inf_norm(x))) {
      const double dinf_res =
          std::max((np ? (p.A * x).norm() : 0.0), (p.G * x + s).norm()) / (-cx);
      if (dinf_res <= options.feas_tol) {
        sol.status = IpmStatus::DualInfeasible;
        sol.x = x / (-cx);
        sol.s = s.cwiseProduct(dg) / (-cx);
        sol.y = VectorXd::Zero(np);
        sol.z = VectorXd::Zero(m);
        return sol;
      }
    }

    // Nesterov-Todd scaling at the current iterate
    scaling.compute(s, z, dims);
    kkt.refactor(scaling, dims);

    // constant second solve of the iteration, RHS (-c, b, h)
    VectorXd rhs2 = VectorXd::Zero(n + np + m);
    rhs2.head(n) = -p.c;
    rhs2.segment(n, np) = p.b;
    rhs2.tail(m) = p.h;
    const Split d2 = split(kkt.solve(rhs2), n, np, m);
    const double denom_base = p.c.dot(d2.x) + (np ? p.b.dot(d2.y) : 0.0) + p.h.dot(d2.z);

    auto compute_direction = [&](const VectorXd& ds_rhs, double dkappa_rhs, double rscale,
                                 VectorXd& dx, VectorXd& dy, VectorXd& dz, VectorXd& ds,
                                 double& dtau, double& dkappa) {
      // eliminate ds: ds = W(lambda \ ds_rhs) - W^2 dz
      const VectorXd wls = scaling.apply_W(jordan_solve(scaling.lambda, ds_rhs, dims), dims);
      VectorXd rhs1 = VectorXd::Zero(n + np + m);
      rhs1.head(n) = -rscale * f1;
      rhs1.segment(n, np) = -rscale * f2;
      rhs1.tail(m) = -rscale * f3 - wls;
      const Split d1 = split(kkt.solve(rhs1), n, np, m);

      const double numer = -rscale * f4 - (p.c.dot(d1.x) + (np ? p.b.dot(d1.y) : 0.0) +
                                           p.h.dot(d1.z)) -
                           dkappa_rhs / tau;
      const double denom = denom_base - kappa / tau;
      dtau = numer / denom;
      dx = d1.x + dtau * d2.x;
      dy = d1.y + dtau * d2.y;
      dz = d1.z + dtau * d2.z;
      ds = wls - scaling.apply_W(scaling.apply_W(dz, dims), dims);
      dkappa = (dkappa_rhs - kappa * dtau) / tau;
    };

    // predictor (affine) direction
    VectorXd dxa, dya, dza, dsa;
    double dtaua, dkappaa;
    {
      const VectorXd ds_rhs = -jordan_product(scaling.lambda, scaling.lambda, dims);
      compute_direction(ds_rhs, -tau * kappa, 1.0, dxa, dya, dza, dsa, dtaua, dkappaa);
    }
    double alpha_aff = std::min({max_step(s, dsa, dims), max_step(z, dza, dims),
                                 step_bound_nonneg(tau, dtaua),
                                 step_bound_nonneg(kappa, dkappaa), 1.0});
    const double sigma = std::pow(1.0 - alpha_aff, 3);

    // corrector (combined) direction
    VectorXd dx, dy, dz, ds;
    double dtau, dkappa;
    {
      const VectorXd corr = jordan_product(scaling.apply_Winv(dsa, dims),
                                           scaling.apply_W(dza, dims), dims);
      const VectorXd ds_rhs = -jordan_product(scaling.lambda, scaling.lambda, dims) -
                              corr + sigma * mu * e;
      const double dkappa_rhs = -tau * kappa - dtaua * dkappaa + sigma * mu;
      compute_direction(ds_rhs, dkappa_rhs, 1.0 - sigma, dx, dy, dz, ds, dtau, dkappa);
    }

    double alpha = options.step_fraction *
                   std::min({max_step(s, ds, dims), max_step(z, dz, dims),
                             step_bound_nonneg(tau, dtau), step_bound_nonneg(kappa, dkappa)});
    alpha = std::min(alpha, 1.0);
    if (std::getenv("FREQSEC_IPM_DEBUG")) {
      // Newton-equation residuals of the combined direction
      const VectorXd eq1 = p.A.transpose() * dy + p.G.transpose() * dz + p.c * dtau +
                           (1.0 - sigma) * f1;
      const VectorXd eq3 = p.G * dx + ds - p.h * dtau + (1.0 - sigma) * f3;
      const VectorXd eq5 =
          jordan_product(scaling.lambda,
                         scaling.apply_W(dz, dims) + scaling.apply_Winv(ds, dims), dims) -
          (-jordan_product(scaling.lambda, scaling.lambda, dims) -
           jordan_product(scaling.apply_Winv(dsa, dims), scaling.apply_W(dza, dims), dims) +
           sigma * mu * e);
      const double eq4 = p.c.dot(dx) + (np ? p.b.dot(dy) : 0.0) + p.h.dot(dz) + dkappa +
                         (1.0 - sigma) * f4;
      std::fprintf(stderr,
                   "it=%d alpha_aff=%.3e sigma=%.3e alpha=%.3e mu=%.3e "
                   "|eq1|=%.2e |eq3|=%.2e |eq4|=%.2e |eq5|=%.2e ds.dz+dt.dk=%.3e\n",
                   it, alpha_aff, sigma, alpha, mu, inf_norm(eq1), inf_norm(eq3),
                   std::abs(eq4), inf_norm(eq5), ds.dot(dz) + dtau * dkappa);
    }
    if (!(alpha > 1e-10) || !std::isfinite(alpha)) {
      break; // stalled
    }

    x += alpha * dx;
    y += alpha * dy;
    z += alpha * dz;
    s += alpha * ds;
    tau += alpha * dtau;
    kappa += alpha * dkappa;

    if (!(tau > 1e-14) || !std::isfinite(tau)) {
      break;
    }
  }

  // did not hit the strict tolerances; accept the best iterate when it is
  // within the acceptable band, otherwise report the failure with the trace
  if (best_metric <= options.acceptable_tol) {
    sol.status = IpmStatus::Optimal;
    sol.x = best.x;
    sol.y = best.y;
    sol.z = best.z;
    sol.s = best.s;
    sol.primal_objective = best.primal_objective;
    sol.dual_objective = best.dual_objective;
    sol.rel_gap = best.rel_gap;
    sol.primal_res = best.primal_res;
    sol.dual_res = best.dual_res;
    finalize_optimal(sol, best_tau);
    return sol;
  }
  sol.status = (sol.iterations + 1 >= options.max_iterations) ? IpmStatus::MaxIterations
                                                              : IpmStatus::NumericalProblem;
  sol.x = best.x;
  sol.y = best.y;
  sol.z = best.z;
  sol.s = best.s;
  sol.primal_objective = best.primal_objective * cost_scale;
  sol.dual_objective = best.dual_objective * cost_scale;
  sol.rel_gap = best.rel_gap;
  sol.primal_res = best.primal_res;
  sol.dual_res = best.dual_res;
  return sol;
}

}  // namespace freqsec::conic
