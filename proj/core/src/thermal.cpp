#include "spinbell/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinbell {

double partition_function(const std::vector<double>& eigenvalues, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("partition_function: beta must be finite and >= 0");
  }
  if (eigenvalues.empty()) {
    throw std::invalid_argument("partition_function: empty spectrum");
  }
  double z = 0.0;
  for (double e : eigenvalues) z += std::exp(-beta * e);
  return z;
}

DensityOperator gibbs_state(const EigenSystem& es, double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("gibbs_state: temperature must be finite and > 0");
  }
  const double e0 = *std::min_element(es.values.begin(), es.values.end());
  Vector weights(es.dim());
  for (long mu = 0; mu < es.dim(); ++mu) {
    weights[mu] = std::exp(-(es.values[mu] - e0) / temperature);
  }
  weights /= weights.sum();
  return es.vectors * weights.asDiagonal() * es.vectors.transpose();
}

DensityOperator ground_state_projector(const EigenSystem& es) {
  const double e0 = *std::min_element(es.values.begin(), es.values.end());
  Matrix proj = Matrix::Zero(es.dim(), es.dim());
  int rank = 0;
  for (long mu = 0; mu < es.dim(); ++mu) {
    if (es.values[mu] - e0 < 1e-9) {
      proj += es.vectors.col(mu) * es.vectors.col(mu).transpose();
      ++rank;
    }
  }
  return proj / rank;
}

}  // namespace spinbell
