#include "freqsec/security.hpp"

#include <cmath>
#include <limits>

namespace freqsec::security {

double check_rocof(const SystemSnapshot& snapshot, const SecuritySpec& spec) {
  return snapshot.total_inertia() -
         snapshot.p_loss * spec.f_nominal / (2.0 * spec.rocof_max);
}

double check_steady_state(const Portfolio& portfolio, double p_loss) {
  return portfolio.total_allocation() - p_loss;
}

std::size_t nadir_interval_conditions(const Portfolio& portfolio, double p_loss) {
  const dynamics::IntervalDecomposition dec = dynamics::decompose(portfolio);
  return dynamics::fr_crossing(dec, p_loss).interval;
}

NadirSocTerms nadir_soc_terms(const Portfolio& portfolio, double p_loss,
                              const SecuritySpec& spec, std::size_t interval) {
  const dynamics::IntervalDecomposition dec = dynamics::decompose(portfolio);
  const dynamics::Interval& iv = dec.intervals.at(interval);
  const double four_df = 4.0 * spec.delta_f_max;

  NadirSocTerms terms;
  double residual = p_loss;
  for (std::size_t k : iv.complete) {
    const FrService& svc = portfolio.services[k];
    const double r = portfolio.allocations[k];
    terms.y1 -= r * (svc.ramp_duration + 2.0 * svc.activation_delay) / four_df;
    residual -= r;
  }
  for (std::size_t l : iv.ramping) {
    const FrService& svc = portfolio.services[l];
    const double r = portfolio.allocations[l];
    terms.y1 += r * svc.activation_delay * svc.activation_delay / svc.ramp_duration / four_df;
    terms.y2 += r / svc.ramp_duration;
    residual += r * svc.activation_delay / svc.ramp_duration;
  }
  terms.y3_sq = residual * residual / four_df;
  return terms;
}

namespace {

// Wichura's PPND16 rational approximation of the probit function; absolute
// error below 1e-15 over (0,1), comfortably inside the 1e-9 contract.
double probit(double p) {
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r + 1.0);
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
  }
  return (q < 0.0) ? -value : value;
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_inv_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(Errc::ProbabilityOutOfRange, "p must lie in (0,1)");
  }
  return probit(p);
}

double chance_adjusted_inertia(double h_gen, const ChanceSpec& chance, double p) {
  validate_chance(chance);
  return h_gen + chance.h_mu - normal_inv_cdf(p) * chance.sigma;
}

SecurityReport assess(const SystemSnapshot& snapshot, const SecuritySpec& spec,
                      const std::optional<ChanceSpec>& chance) {
  validate_snapshot(snapshot);
  validate_spec(spec);

  SystemSnapshot rocof_view = snapshot;
  SystemSnapshot nadir_view = snapshot;
  if (chance) {
    rocof_view.h_demand = 0.0;
    rocof_view.h_gen = chance_adjusted_inertia(snapshot.h_gen, *chance, chance->eta);
    nadir_view.h_demand = 0.0;
    nadir_view.h_gen = chance_adjusted_inertia(snapshot.h_gen, *chance, chance->alpha);
  }

  SecurityReport report;
  report.rocof_value = rocof_view.total_inertia() > 0.0
                           ? dynamics::rocof_initial(rocof_view, spec)
                           : std::numeric_limits<double>::infinity();
  report.rocof_ok = check_rocof(rocof_view, spec) >= 0.0;

  report.steady_state_margin = check_steady_state(snapshot.portfolio, snapshot.p_loss);
  report.steady_state_ok = report.steady_state_margin >= 0.0;

  if (report.steady_state_ok) {
    report.nadir_interval = nadir_interval_conditions(snapshot.portfolio, snapshot.p_loss);
    const NadirSocTerms terms =
        nadir_soc_terms(snapshot.portfolio, snapshot.p_loss, spec, report.nadir_interval);
    report.soc_slack = terms.slack(nadir_view.total_inertia(), spec.f_nominal);
    report.nadir_ok = report.soc_slack >= 0.0;
    if (nadir_view.total_inertia() > 0.0) {
      const dynamics::NadirPoint point = dynamics::nadir(nadir_view, spec);
      report.nadir_time = point.time;
      report.nadir_depth = point.depth;
    } else {
      report.nadir_depth = std::numeric_limits<double>::infinity();
      report.nadir_ok = false;
    }
  } else {
    report.nadir_ok = false;
    report.nadir_depth = std::numeric_limits<double>::infinity();
  }
  return report;
}

}  // namespace freqsec::security
