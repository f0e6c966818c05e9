#pragma once

#include "spinbell/spectral.hpp"

namespace spinbell {

// Unit-trace, positive-semidefinite real symmetric matrix.
using DensityOperator = Matrix;

// Z = sum_mu exp(-beta E_mu). Throws for beta < 0 or non-finite beta.
double partition_function(const std::vector<double>& eigenvalues, double beta);

// rho(T) = (1/Z) sum_mu exp(-E_mu/T) |phi_mu><phi_mu| for T > 0.
// Weights are computed with the ground energy subtracted, so beta up to
// ~1e3 stays representable. T <= 0 throws; use ground_state_projector
// for the zero-temperature limit.
DensityOperator gibbs_state(const EigenSystem& es, double temperature);

// Normalized projector onto the lowest-eigenvalue eigenspace
// (rank = ground degeneracy, trace 1). Degeneracy cutoff 1e-9.
DensityOperator ground_state_projector(const EigenSystem& es);

}  // namespace spinbell
