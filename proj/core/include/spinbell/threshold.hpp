#pragma once

#include "spinbell/bell.hpp"

#include <optional>

namespace spinbell {

struct ScanPoint {
  double temperature;
  double bell_max;
};

struct ThresholdReport {
  double field;
  std::optional<double> threshold;
  std::vector<ScanPoint> scan;
  double bound;
};

struct ThresholdConfig {
  double t_lo = 0.01;
  double t_hi = 2.0;
  double scan_step = 0.02;
  double bisection_tol = 1e-3;
};

// Maximized Bell value of the Gibbs state at each grid temperature.
// Each point is warm-started from the previous optimum in addition to
// the configured random starts.
std::vector<ScanPoint> bell_max_vs_temperature(const ChainSpec& spec,
                                               const std::vector<double>& temperatures,
                                               const BellExpression& expr,
                                               const OptimizerConfig& optimizer);

// T0 = highest crossing of the maximized Bell value through the
// classical bound: coarse scan first (the curve need not be monotone),
// then bisection on the highest bracketing interval. No grid point
// above the bound -> no threshold.
ThresholdReport threshold_temperature(const ChainSpec& spec,
                                      const BellExpression& expr,
                                      const ThresholdConfig& search,
                                      const OptimizerConfig& optimizer);

// One independent threshold search per field value.
std::vector<ThresholdReport> field_sweep(const ChainSpec& spec_template,
                                         const std::vector<double>& fields,
                                         const BellExpression& expr,
                                         const ThresholdConfig& search,
                                         const OptimizerConfig& optimizer);

}  // namespace spinbell
