#include "spinbell/threshold.hpp"

#include <cmath>
#include <stdexcept>

namespace spinbell {

namespace {

double bell_max_at(const EigenSystem& es, double temperature,
                   const BellExpression& expr, const OptimizerConfig& optimizer,
                   std::vector<BellSettings>* warm) {
  const auto rho = gibbs_state(es, temperature);
  // A start that exhausts its iteration budget still terminates with its best
  // value; the stopping rule is gradient < tol OR the iteration cap.
  const auto report = maximize_bell(
      rho, expr, optimizer,
      warm && !warm->empty() ? *warm : std::vector<BellSettings>{});
  if (warm) *warm = {report.best_settings};
  return report.best_value;
}

}  // namespace

std::vector<ScanPoint> bell_max_vs_temperature(
    const ChainSpec& spec, const std::vector<double>& temperatures,
    const BellExpression& expr, const OptimizerConfig& optimizer) {
  for (std::size_t i = 0; i < temperatures.size(); ++i) {
    if (!(temperatures[i] > 0.0)) {
      throw std::invalid_argument("temperatures must be positive");
    }
    if (i > 0 && temperatures[i] <= temperatures[i - 1]) {
      throw std::invalid_argument("temperatures must be strictly ascending");
    }
  }
  const auto es = eigendecompose(build_field_hamiltonian(spec));
  std::vector<ScanPoint> scan;
  scan.reserve(temperatures.size());
  std::vector<BellSettings> warm;
  for (double t : temperatures) {
    scan.push_back({t, bell_max_at(es, t, expr, optimizer, &warm)});
  }
  return scan;
}

ThresholdReport threshold_temperature(const ChainSpec& spec,
                                      const BellExpression& expr,
                                      const ThresholdConfig& search,
                                      const OptimizerConfig& optimizer) {
  if (!(search.t_lo > 0.0) || !(search.t_hi > search.t_lo) ||
      !(search.scan_step > 0.0) || !(search.bisection_tol > 0.0)) {
    throw std::invalid_argument("invalid threshold search range");
  }
  std::vector<double> grid;
  for (double t = search.t_lo; t <= search.t_hi + 1e-12; t += search.scan_step) {
    grid.push_back(t);
  }
  ThresholdReport report;
  report.field = spec.field;
  report.bound = expr.classical_bound;
  report.scan = bell_max_vs_temperature(spec, grid, expr, optimizer);

  // Highest grid interval where the curve crosses down through the bound.
  int bracket = -1;
  for (int i = 0; i + 1 < static_cast<int>(report.scan.size()); ++i) {
    if (report.scan[i].bell_max > report.bound &&
        report.scan[i + 1].bell_max <= report.bound) {
      bracket = i;
    }
  }
  bool any_violation = false;
  for (const auto& p : report.scan) {
    if (p.bell_max > report.bound) any_violation = true;
  }
  if (!any_violation) {
    report.threshold = std::nullopt;
    return report;
  }
  if (bracket < 0) {
    // Violated everywhere on the grid; threshold is beyond t_hi.
    throw std::runtime_error(
        "bell violation persists at the top of the scan range; widen t_hi");
  }
  const auto es = eigendecompose(build_field_hamiltonian(spec));
  double lo = report.scan[bracket].temperature;
  double hi = report.scan[bracket + 1].temperature;
  std::vector<BellSettings> warm;
  while (hi - lo > search.bisection_tol) {
    const double mid = 0.5 * (lo + hi);
    if (bell_max_at(es, mid, expr, optimizer, &warm) > report.bound) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  report.threshold = 0.5 * (lo + hi);
  return report;
}

std::vector<ThresholdReport> field_sweep(const ChainSpec& spec_template,
                                         const std::vector<double>& fields,
                                         const BellExpression& expr,
                                         const ThresholdConfig& search,
                                         const OptimizerConfig& optimizer) {
  std::vector<ThresholdReport> reports;
  reports.reserve(fields.size());
  for (double b : fields) {
    if (!std::isfinite(b)) {
      throw std::invalid_argument("field values must be finite");
    }
    ChainSpec spec = spec_template;
    spec.field = b;
    reports.push_back(threshold_temperature(spec, expr, search, optimizer));
  }
  return reports;
}

}  // namespace spinbell
