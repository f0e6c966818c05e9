#pragma once

#include "spinbell/thermal.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace spinbell {

// Two measurement angles per site, in the x-z plane.
struct BellSettings {
  std::vector<std::array<double, 2>> angles;  // angles[site][setting]

  int n_sites() const { return static_cast<int>(angles.size()); }
};

// Two-setting full-correlation Bell expression: a sign per setting
// tuple. Tuples are indexed with site 1 as the most significant bit,
// bit 0 = setting 1, bit 1 = setting 2.
struct BellExpression {
  int n_sites;
  std::vector<int> signs;  // 2^n_sites entries, each +1 or -1
  double classical_bound;

  std::string to_json() const;
};

// The four-qubit inequality with LHV bound 4.
BellExpression zukowski_brukner_n4();
// CHSH, bound 2.
BellExpression chsh_n2();

// Q = tr[rho * kron_n (sin(theta_n) sx + cos(theta_n) sz)], in [-1, 1].
double correlation(const DensityOperator& state,
                   const std::vector<double>& thetas);

// d/dtheta_n of the above: derivative operator at site n, measurement
// operators elsewhere.
std::vector<double> correlation_gradient(const DensityOperator& state,
                                         const std::vector<double>& thetas);

// Closed-form correlation of canonical eigenstate |phi_mu>, mu in 0..15.
// Independent of the trace-based path above.
double eigenstate_correlation_oracle(int mu, const std::array<double, 4>& thetas);

// Signed sum of correlations over all setting tuples.
double bell_quantity(const DensityOperator& state, const BellExpression& expr,
                     const BellSettings& settings);

// Gradient of bell_quantity with respect to the flattened angle vector
// (site-major, setting-minor).
std::vector<double> bell_gradient(const DensityOperator& state,
                                  const BellExpression& expr,
                                  const BellSettings& settings);

struct OptimizerConfig {
  int starts = 64;
  std::uint64_t seed = 42;
  double tolerance = 1e-8;   // gradient-norm convergence threshold
  int max_iterations = 500;  // per start
};

struct OptimizationReport {
  double best_value;
  BellSettings best_settings;
  int starts;
  int converged_starts;
  long iterations_total;
};

// Multi-start gradient ascent with backtracking line search over the 2N
// measurement angles. Deterministic for a fixed seed. Optional warm
// starts are ascended before the random ones.
OptimizationReport maximize_bell(const DensityOperator& state,
                                 const BellExpression& expr,
                                 const OptimizerConfig& config,
                                 const std::vector<BellSettings>& warm_starts = {});

enum class StateFamily { SingleExcitation, TripleExcitation, DoubleExcitation };

// Number of amplitude parameters: 3, 3 or 5.
int family_parameter_count(StateFamily family);

// Pure state with nested sin/cos amplitudes on the family's basis
// strings (weight-1, weight-3 or weight-2 sector of 4 qubits).
DensityOperator parametrized_state(StateFamily family,
                                   const std::vector<double>& alphas);

struct FamilyOptimizationReport {
  double best_value;
  std::vector<double> best_alphas;
  BellSettings best_settings;
  int starts;
  int converged_starts;
  long iterations_total;
};

// Joint ascent over amplitude parameters and measurement angles.
FamilyOptimizationReport maximize_bell_over_state_family(
    StateFamily family, const BellExpression& expr,
    const OptimizerConfig& config);

}  // namespace spinbell
