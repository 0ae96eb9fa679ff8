#include <doctest.h>

#include <cmath>

#include "revolve/collocation.hpp"

using namespace revolve;

TEST_CASE("closed-form bases for small K") {
  {
    const LglBasis b = lgl_basis(2);
    CHECK(b.nodes(0) == -1.0);
    CHECK(b.nodes(1) == 1.0);
    CHECK(b.weights(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(b.weights(1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(b.int_matrix(0, 0) == 0.0);
    CHECK(b.int_matrix(0, 1) == 0.0);
    CHECK(b.int_matrix(1, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(b.int_matrix(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
  }
  {
    const LglBasis b = lgl_basis(3);
    CHECK(b.nodes(1) == doctest::Approx(0.0));
    CHECK(b.weights(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(b.weights(1) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(b.weights(2) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    // integrals of the three Lagrange basis polynomials from -1 to 0
    CHECK(b.int_matrix(1, 0) == doctest::Approx(5.0 / 12.0).epsilon(1e-13));
    CHECK(b.int_matrix(1, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(b.int_matrix(1, 2) == doctest::Approx(-1.0 / 12.0).epsilon(1e-13));
  }
  {
    const LglBasis b = lgl_basis(4);
    CHECK(b.nodes(1) == doctest::Approx(-1.0 / std::sqrt(5.0)).epsilon(1e-13));
    CHECK(b.nodes(2) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-13));
    CHECK(b.weights(0) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    CHECK(b.weights(1) == doctest::Approx(5.0 / 6.0).epsilon(1e-13));
  }
  {
    const LglBasis b = lgl_basis(5);
    CHECK(b.nodes(1) == doctest::Approx(-std::sqrt(3.0 / 7.0)).epsilon(1e-13));
    CHECK(b.nodes(2) == doctest::Approx(0.0));
    CHECK(b.weights(0) == doctest::Approx(0.1).epsilon(1e-13));
    CHECK(b.weights(1) == doctest::Approx(49.0 / 90.0).epsilon(1e-13));
    CHECK(b.weights(2) == doctest::Approx(32.0 / 45.0).epsilon(1e-13));
  }
  CHECK_THROWS_AS(lgl_basis(1), std::invalid_argument);
  CHECK_THROWS_AS(lgl_basis(9), std::invalid_argument);
}

TEST_CASE("structural identities for all supported K") {
  for (int K = 2; K <= 8; ++K) {
    const LglBasis b = lgl_basis(K);
    REQUIRE(b.order() == K);

    CHECK(b.nodes(0) == -1.0);
    CHECK(b.nodes(K - 1) == 1.0);
    for (int j = 1; j < K; ++j) CHECK(b.nodes(j) > b.nodes(j - 1));
    for (int j = 0; j < K; ++j) {
      CHECK(b.nodes(j) == doctest::Approx(-b.nodes(K - 1 - j)).epsilon(1e-14));
      CHECK(b.weights(j) == doctest::Approx(b.weights(K - 1 - j)).epsilon(1e-13));
      CHECK(b.weights(j) > 0.0);
    }
    CHECK(b.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));

    // first row zero, last row equals the quadrature weights
    for (int l = 0; l < K; ++l) {
      CHECK(b.int_matrix(0, l) == 0.0);
      CHECK(std::abs(b.int_matrix(K - 1, l) - b.weights(l)) <= 1e-14);
    }

    // quadrature exact for monomials through degree 2K-3
    for (int deg = 0; deg <= 2 * K - 3; ++deg) {
      double q = 0.0;
      for (int j = 0; j < K; ++j) q += b.weights(j) * std::pow(b.nodes(j), deg);
      const double exact = (deg % 2 == 0) ? 2.0 / (deg + 1.0) : 0.0;
      CHECK(std::abs(q - exact) <= 1e-12);
    }
  }

  // the degree claim is tight: 2K-2 is not integrated exactly
  for (int K = 2; K <= 5; ++K) {
    const LglBasis b = lgl_basis(K);
    const int deg = 2 * K - 2;
    double q = 0.0;
    for (int j = 0; j < K; ++j) q += b.weights(j) * std::pow(b.nodes(j), deg);
    CHECK(std::abs(q - 2.0 / (deg + 1.0)) > 1e-6);
  }
}

TEST_CASE("integral reconstruction is exact on polynomial derivatives") {
  // rhs sampled from a polynomial of degree K-1: the interpolant is the
  // polynomial itself, so every node state must equal the antiderivative
  for (int K = 2; K <= 8; ++K) {
    const LglBasis b = lgl_basis(K);
    const double h = 0.37;

    // f(tau) = sum_d c_d tau^d, F(tau) = antiderivative with F(-1) = 0
    Eigen::VectorXd c(K);
    for (int d = 0; d < K; ++d) c(d) = std::cos(1.7 * d + K);

    Eigen::MatrixXd rhs(2, K);
    Eigen::MatrixXd expect(2, K);
    for (int j = 0; j < K; ++j) {
      const double tau = b.nodes(j);
      double f = 0.0, F = 0.0;
      for (int d = 0; d < K; ++d) {
        f += c(d) * std::pow(tau, d);
        F += c(d) / (d + 1.0) * (std::pow(tau, d + 1) - std::pow(-1.0, d + 1));
      }
      rhs(0, j) = f;
      rhs(1, j) = -2.0 * f;
      // the mesh variable runs over width h while tau spans 2
      expect(0, j) = 3.0 + 0.5 * h * F;
      expect(1, j) = -1.0 - h * F;
    }

    Eigen::VectorXd x0(2);
    x0 << 3.0, -1.0;
    const Eigen::MatrixXd X = integrate_states(b, x0, rhs, h);
    CHECK((X - expect).cwiseAbs().maxCoeff() <= 1e-13);
  }
}
