#include "spinbell/spectral.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace spinbell;

namespace {

// E'_mu closed forms: zero-field energy plus B * (4 - 2*excitations).
std::vector<double> field_spectrum_closed_form(double b) {
  const double e0[16] = {0, -3, 3, -1, 1, -4, -2, 0, 0, 2, 4, -3, 3, -1, 1, 0};
  const int exc[16] = {0, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 4};
  std::vector<double> values(16);
  for (int mu = 0; mu < 16; ++mu) values[mu] = e0[mu] + b * (4 - 2 * exc[mu]);
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace

TEST_CASE("eigendecompose diagonal") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  const auto es = eigendecompose(d);
  CHECK(es.values[0] == doctest::Approx(1.0));
  CHECK(es.values[1] == doctest::Approx(3.0));
  CHECK(es.vectors(1, 0) == doctest::Approx(1.0));
  CHECK(es.vectors(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("eigendecompose rejects non-symmetric input") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(eigendecompose(m), std::invalid_argument);
}

TEST_CASE("eigensystem invariants for the 4-site chain") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> field(0.0, 3.0);
  for (int trial = 0; trial < 5; ++trial) {
    const double b = field(rng);
    const auto h = build_field_hamiltonian(ChainSpec::with_default_couplings(4, b));
    const auto es = eigendecompose(h);
    for (int i = 0; i < 16; ++i) {
      CHECK(std::abs(es.vectors.col(i).norm() - 1.0) <= 1e-12);
      CHECK((h * es.vectors.col(i) - es.values[i] * es.vectors.col(i)).norm() <=
            1e-10);
      for (int j = i + 1; j < 16; ++j) {
        CHECK(std::abs(es.vectors.col(i).dot(es.vectors.col(j))) <= 1e-10);
      }
    }
  }
}

TEST_CASE("numeric field spectrum matches closed forms") {
  // contains -3 - 2*0.7 at B = 0.7
  const auto es07 =
      eigendecompose(build_field_hamiltonian(ChainSpec::with_default_couplings(4, 0.7)));
  const bool found = std::any_of(es07.values.begin(), es07.values.end(),
                                 [](double e) { return std::abs(e + 4.4) <= 1e-10; });
  CHECK(found);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> field(0.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double b = field(rng);
    const auto es =
        eigendecompose(build_field_hamiltonian(ChainSpec::with_default_couplings(4, b)));
    const auto expected = field_spectrum_closed_form(b);
    for (int i = 0; i < 16; ++i) {
      CHECK(std::abs(es.values[i] - expected[i]) <= 1e-10);
    }
  }
}

TEST_CASE("canonical eigensystem, zero field") {
  const auto es = canonical_eigensystem_n4(0.0);

  CHECK(es.values[0] == 0.0);
  CHECK(es.vectors(0b0000, 0) == 1.0);

  CHECK(es.values[5] == -4.0);
  Vector phi5 = Vector::Zero(16);
  phi5[0b1100] = 0.25;
  phi5[0b1010] = -0.5;
  phi5[0b1001] = std::sqrt(3.0) / 4;
  phi5[0b0110] = std::sqrt(3.0) / 4;
  phi5[0b0101] = -0.5;
  phi5[0b0011] = 0.25;
  CHECK((es.vectors.col(5) - phi5).cwiseAbs().maxCoeff() <= 1e-15);

  // Gram matrix is the identity
  Matrix gram = es.vectors.transpose() * es.vectors;
  CHECK((gram - Matrix::Identity(16, 16)).cwiseAbs().maxCoeff() <= 1e-12);

  // numeric and canonical eigenvalue multisets agree
  auto canonical = es.values;
  std::sort(canonical.begin(), canonical.end());
  const auto numeric =
      eigendecompose(build_xx_hamiltonian(ChainSpec::with_default_couplings(4)));
  for (int i = 0; i < 16; ++i) {
    CHECK(std::abs(canonical[i] - numeric.values[i]) <= 1e-10);
  }
}

TEST_CASE("canonical eigensystem under field") {
  const auto es = canonical_eigensystem_n4(0.5);
  CHECK(es.values[5] == doctest::Approx(-4.0));
  CHECK(es.values[11] == doctest::Approx(-4.0));  // -3 - 2B at B = 0.5
  CHECK(es.values[0] == doctest::Approx(2.0));
  CHECK(es.values[15] == doctest::Approx(-2.0));
}
