#pragma once

#include <Eigen/Dense>
#include <vector>

// Dense operators for short spin-1/2 chains in the computational basis.
// Basis convention: site 1 maps to the most significant bit of the basis
// index, bit value 0 is the sigma_z = +1 eigenstate |0>.

namespace spinbell {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Chain length, bond couplings and uniform field strength. Couplings
// default to the site-dependent profile sqrt(n(N-n)).
struct ChainSpec {
  int n_sites;
  std::vector<double> couplings;
  double field = 0.0;

  static ChainSpec with_default_couplings(int n_sites, double field = 0.0);
  void validate() const;  // throws std::invalid_argument
};

// [sqrt(n(N-n)) for n = 1..N-1]; throws for n_sites < 2
std::vector<double> coupling_profile(int n_sites);

// H = sum_n J_{n,n+1} (s+_n s-_{n+1} + s-_n s+_{n+1}), real symmetric,
// block diagonal over excitation-number (Hamming weight) sectors.
Matrix build_xx_hamiltonian(const ChainSpec& spec);

// H' = H + B * sum_n sigma_z(n). The field term is diagonal:
// <s|sum sigma_z|s> = N - 2*popcount(s).
Matrix build_field_hamiltonian(const ChainSpec& spec);

// sin(theta) sigma_x + cos(theta) sigma_z; eigenvalues +-1, squares to I.
Eigen::Matrix2d measurement_operator(double theta);

// Kronecker product of dim-2 factors in site order (site 1 leftmost).
Matrix tensor_chain(const std::vector<Eigen::Matrix2d>& locals);

}  // namespace spinbell
