#include "spinbell/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace spinbell {

namespace {

void normalize_signs(Matrix& vectors) {
  for (long k = 0; k < vectors.cols(); ++k) {
    long imax = 0;
    vectors.col(k).cwiseAbs().maxCoeff(&imax);
    if (vectors(imax, k) < 0.0) {
      vectors.col(k) = -vectors.col(k);
    }
  }
}

}  // namespace

EigenSystem eigendecompose(const Matrix& op) {
  if (op.rows() != op.cols()) {
    throw std::invalid_argument("eigendecompose: operator not square");
  }
  if ((op - op.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("eigendecompose: operator not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecompose: solver failed to converge");
  }
  EigenSystem es;
  es.values.assign(solver.eigenvalues().data(),
                   solver.eigenvalues().data() + op.rows());
  es.vectors = solver.eigenvectors();
  normalize_signs(es.vectors);
  es.source = EigenSource::Numeric;
  return es;
}

EigenSystem canonical_eigensystem_n4(double field) {
  const double s3 = std::sqrt(3.0);
  const double r8 = 1.0 / std::sqrt(8.0);
  const double r10 = 1.0 / std::sqrt(10.0);

  // Zero-field energies and excitation count per state, published order.
  const double energy[16] = {0, -3, 3, -1, 1, -4, -2, 0,
                             0, 2, 4, -3, 3, -1, 1, 0};
  const int excitations[16] = {0, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 4};

  EigenSystem es;
  es.source = EigenSource::CanonicalN4;
  es.vectors = Matrix::Zero(16, 16);
  es.values.resize(16);
  for (int mu = 0; mu < 16; ++mu) {
    es.values[mu] = energy[mu] + field * (4 - 2 * excitations[mu]);
  }

  auto set = [&](int mu, std::initializer_list<std::pair<int, double>> amps) {
    for (auto [basis, amp] : amps) es.vectors(basis, mu) = amp;
  };
  set(0, {{0b0000, 1.0}});
  set(1, {{0b1000, -r8}, {0b0100, s3 * r8}, {0b0010, -s3 * r8}, {0b0001, r8}});
  set(2, {{0b1000, r8}, {0b0100, s3 * r8}, {0b0010, s3 * r8}, {0b0001, r8}});
  set(3, {{0b1000, s3 * r8}, {0b0100, -r8}, {0b0010, -r8}, {0b0001, s3 * r8}});
  set(4, {{0b1000, -s3 * r8}, {0b0100, -r8}, {0b0010, r8}, {0b0001, s3 * r8}});
  set(5, {{0b1100, 0.25}, {0b1010, -0.5}, {0b1001, s3 / 4},
          {0b0110, s3 / 4}, {0b0101, -0.5}, {0b0011, 0.25}});
  set(6, {{0b1100, -0.5}, {0b1010, 0.5}, {0b0101, -0.5}, {0b0011, 0.5}});
  set(7, {{0b1100, s3 * r10}, {0b1001, -2 * r10}, {0b0011, s3 * r10}});
  set(8, {{0b1100, -0.5 * s3 * r10}, {0b1001, -1.5 * r10},
          {0b0110, 2.5 * r10}, {0b0011, -0.5 * s3 * r10}});
  set(9, {{0b1100, -0.5}, {0b1010, -0.5}, {0b0101, 0.5}, {0b0011, 0.5}});
  set(10, {{0b1100, 0.25}, {0b1010, 0.5}, {0b1001, s3 / 4},
           {0b0110, s3 / 4}, {0b0101, 0.5}, {0b0011, 0.25}});
  set(11, {{0b1110, -r8}, {0b1101, s3 * r8}, {0b1011, -s3 * r8}, {0b0111, r8}});
  set(12, {{0b1110, r8}, {0b1101, s3 * r8}, {0b1011, s3 * r8}, {0b0111, r8}});
  set(13, {{0b1110, s3 * r8}, {0b1101, -r8}, {0b1011, -r8}, {0b0111, s3 * r8}});
  set(14, {{0b1110, -s3 * r8}, {0b1101, -r8}, {0b1011, r8}, {0b0111, s3 * r8}});
  set(15, {{0b1111, 1.0}});

  // Transcription check against the field Hamiltonian.
  const Matrix h =
      build_field_hamiltonian(ChainSpec::with_default_couplings(4, field));
  for (int mu = 0; mu < 16; ++mu) {
    const double resid =
        (h * es.vectors.col(mu) - es.values[mu] * es.vectors.col(mu)).norm();
    if (resid > 1e-12) {
      throw std::logic_error("canonical_eigensystem_n4: residual check failed");
    }
  }
  return es;
}

}  // namespace spinbell
