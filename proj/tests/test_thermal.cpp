#include "spinbell/thermal.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace spinbell;

namespace {

const std::vector<double> kSpectrumN4 = {0, -3, 3, -1, 1, -4, -2, 0,
                                         0, 2, 4, -3, 3, -1, 1, 0};

}  // namespace

TEST_CASE("partition function") {
  // beta -> 0: every term -> 1
  CHECK(partition_function(kSpectrumN4, 1e-14) == doctest::Approx(16.0));

  // closed form 4 + 4 cosh(3b) + 4 cosh(b) + 2 cosh(4b) + 2 cosh(2b)
  for (double beta : {0.1, 1.0, 5.0, 20.0}) {
    const double closed = 4 + 4 * std::cosh(3 * beta) + 4 * std::cosh(beta) +
                          2 * std::cosh(4 * beta) + 2 * std::cosh(2 * beta);
    CHECK(partition_function(kSpectrumN4, beta) ==
          doctest::Approx(closed).epsilon(1e-10));
  }
  CHECK(partition_function(kSpectrumN4, 1.0) == doctest::Approx(112.5838).epsilon(1e-5));

  CHECK(partition_function({0.0}, 7.3) == doctest::Approx(1.0));

  CHECK_THROWS_AS(partition_function(kSpectrumN4, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(partition_function(kSpectrumN4, std::nan("")),
                  std::invalid_argument);
}

TEST_CASE("gibbs state limits") {
  const auto es = canonical_eigensystem_n4(0.0);

  const auto hot = gibbs_state(es, 1e9);
  CHECK((hot - Matrix::Identity(16, 16) / 16.0).cwiseAbs().maxCoeff() <= 1e-8);

  const auto cold = gibbs_state(es, 0.01);
  const Matrix phi5 = es.vectors.col(5) * es.vectors.col(5).transpose();
  CHECK((cold - phi5).cwiseAbs().maxCoeff() <= 1e-8);

  CHECK_THROWS_AS(gibbs_state(es, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(gibbs_state(es, -1.0), std::invalid_argument);
}

TEST_CASE("two-site gibbs state closed form") {
  const auto es =
      eigendecompose(build_xx_hamiltonian(ChainSpec::with_default_couplings(2)));
  for (double t : {0.2, 0.7, 3.0}) {
    const double beta = 1.0 / t;
    const double z = 2.0 + 2.0 * std::cosh(beta);
    const auto rho = gibbs_state(es, t);
    CHECK(rho(0b01, 0b10) == doctest::Approx(-std::sinh(beta) / z).epsilon(1e-12));
  }
}

TEST_CASE("gibbs invariants") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> field(0.0, 2.0);
  std::uniform_real_distribution<double> temp(0.05, 5.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double b = field(rng);
    const double t = temp(rng);
    const auto h = build_field_hamiltonian(ChainSpec::with_default_couplings(4, b));
    const auto numeric = gibbs_state(eigendecompose(h), t);
    const auto canonical = gibbs_state(canonical_eigensystem_n4(b), t);

    CHECK(std::abs(numeric.trace() - 1.0) <= 1e-12);
    CHECK((numeric * h - h * numeric).cwiseAbs().maxCoeff() <= 1e-10);
    // basis independence inside degenerate blocks
    CHECK((numeric - canonical).cwiseAbs().maxCoeff() <= 1e-9);

    const auto evals = eigendecompose(numeric).values;
    CHECK(evals.front() >= -1e-12);
  }
}

TEST_CASE("purity is non-increasing in temperature") {
  const auto es = canonical_eigensystem_n4(0.0);
  double previous = 2.0;
  for (double t = 0.1; t <= 5.0 + 1e-9; t += 0.1) {
    const auto rho = gibbs_state(es, t);
    const double purity = (rho * rho).trace();
    CHECK(purity <= previous + 1e-12);
    previous = purity;
  }
}

TEST_CASE("ground state projector") {
  const auto es0 = canonical_eigensystem_n4(0.0);
  const Matrix phi5 = es0.vectors.col(5) * es0.vectors.col(5).transpose();
  CHECK((ground_state_projector(es0) - phi5).cwiseAbs().maxCoeff() <= 1e-14);

  // B = 0.5 makes E'_5 = E'_11 = -4 doubly degenerate
  const auto es05 = canonical_eigensystem_n4(0.5);
  const auto proj = ground_state_projector(es05);
  CHECK(std::abs(proj.trace() - 1.0) <= 1e-12);
  const Matrix expected = (es05.vectors.col(5) * es05.vectors.col(5).transpose() +
                           es05.vectors.col(11) * es05.vectors.col(11).transpose()) /
                          2.0;
  CHECK((proj - expected).cwiseAbs().maxCoeff() <= 1e-14);

  EigenSystem identity_system;
  identity_system.values = {1.0, 1.0, 1.0, 1.0};
  identity_system.vectors = Matrix::Identity(4, 4);
  CHECK((ground_state_projector(identity_system) - Matrix::Identity(4, 4) / 4.0)
            .cwiseAbs()
            .maxCoeff() <= 1e-15);
}
