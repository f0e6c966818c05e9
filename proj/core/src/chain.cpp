#include "spinbell/chain.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace spinbell {

ChainSpec ChainSpec::with_default_couplings(int n_sites, double field) {
  ChainSpec spec;
  spec.n_sites = n_sites;
  spec.couplings = coupling_profile(n_sites);
  spec.field = field;
  return spec;
}

void ChainSpec::validate() const {
  if (n_sites < 2) {
    throw std::invalid_argument("chain needs at least 2 sites");
  }
  if (static_cast<int>(couplings.size()) != n_sites - 1) {
    throw std::invalid_argument("couplings must have n_sites-1 entries");
  }
  for (double j : couplings) {
    if (!(j >= 0.0) || !std::isfinite(j)) {
      throw std::invalid_argument("couplings must be finite and nonnegative");
    }
  }
  if (!std::isfinite(field)) {
    throw std::invalid_argument("field must be finite");
  }
}

std::vector<double> coupling_profile(int n_sites) {
  if (n_sites < 2) {
    throw std::invalid_argument("coupling_profile: chain needs at least 2 sites");
  }
  std::vector<double> couplings(n_sites - 1);
  for (int n = 1; n < n_sites; ++n) {
    couplings[n - 1] = std::sqrt(static_cast<double>(n) * (n_sites - n));
  }
  return couplings;
}

Matrix build_xx_hamiltonian(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.n_sites;
  const long dim = 1L << n;
  Matrix h = Matrix::Zero(dim, dim);
  // s+_n s-_{n+1} + h.c. hops one excitation between neighboring sites.
  // Site n occupies bit (n_sites - n) counting from bit 0, n = 1..N.
  for (int bond = 0; bond < n - 1; ++bond) {
    const long hi = 1L << (n - 1 - bond);      // site bond+1
    const long lo = 1L << (n - 2 - bond);      // site bond+2
    const double j = spec.couplings[bond];
    for (long s = 0; s < dim; ++s) {
      if ((s & hi) && !(s & lo)) {
        const long t = (s & ~hi) | lo;
        h(t, s) += j;
        h(s, t) += j;
      }
    }
  }
  return h;
}

Matrix build_field_hamiltonian(const ChainSpec& spec) {
  Matrix h = build_xx_hamiltonian(spec);
  const int n = spec.n_sites;
  const long dim = 1L << n;
  for (long s = 0; s < dim; ++s) {
    const int weight = std::popcount(static_cast<unsigned long>(s));
    h(s, s) += spec.field * (n - 2 * weight);
  }
  return h;
}

Eigen::Matrix2d measurement_operator(double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("measurement angle must be finite");
  }
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  Eigen::Matrix2d m;
  m << c, s,
       s, -c;
  return m;
}

Matrix tensor_chain(const std::vector<Eigen::Matrix2d>& locals) {
  if (locals.empty()) {
    throw std::invalid_argument("tensor_chain: empty factor list");
  }
  Matrix result = locals.front();
  for (std::size_t i = 1; i < locals.size(); ++i) {
    const Matrix& a = result;
    const Eigen::Matrix2d& b = locals[i];
    Matrix next(a.rows() * 2, a.cols() * 2);
    for (long r = 0; r < a.rows(); ++r) {
      for (long c = 0; c < a.cols(); ++c) {
        next.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
      }
    }
    result = std::move(next);
  }
  return result;
}

}  // namespace spinbell
