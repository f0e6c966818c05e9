#pragma once

#include "spinbell/chain.hpp"

namespace spinbell {

enum class EigenSource { Numeric, CanonicalN4 };

// Full spectrum and orthonormal eigenbasis of a real symmetric operator.
// Eigenvalues ascend; column k of `vectors` belongs to values[k].
struct EigenSystem {
  std::vector<double> values;
  Matrix vectors;
  EigenSource source = EigenSource::Numeric;

  long dim() const { return vectors.rows(); }
};

// Dense symmetric eigensolver. Vectors are sign-normalized so the
// largest-magnitude component of each is positive. Throws on
// non-symmetric input or solver failure.
EigenSystem eigendecompose(const Matrix& op);

// The fixed 16-state eigenbasis of the 4-site chain with default
// couplings, in the published index order (not ascending by energy).
// Eigenvalues include the field shift B * (N - 2*weight). Verified
// against the Hamiltonian at construction.
EigenSystem canonical_eigensystem_n4(double field);

}  // namespace spinbell
