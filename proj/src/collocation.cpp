#include "revolve/collocation.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace revolve {

namespace {

// Legendre P_n(x) and P'_n(x) by the three-term recurrence.
void legendre(int n, double x, double& pn, double& dpn) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    pn = 1.0;
    dpn = 0.0;
    return;
  }
  for (int j = 2; j <= n; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  pn = p1;
  dpn = n * (p0 - x * p1) / (1.0 - x * x);  // (1-x^2) P'_n = n (P_{n-1} - x P_n)
}

// Gauss-Legendre nodes/weights (interior rule) used only to integrate the
// Lagrange basis polynomials exactly when assembling int_matrix.
void gauss_legendre(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int j = 1; j < n; ++j) {
    const double b = j / std::sqrt(4.0 * j * j - 1.0);
    J(j, j - 1) = J(j - 1, j) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  x = es.eigenvalues();
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton-polish the eigenvalue on P_n, then w = 2 / ((1-x^2) P'_n^2)
    double xi = x(i), pn, dpn;
    for (int it = 0; it < 2; ++it) {
      legendre(n, xi, pn, dpn);
      xi -= pn / dpn;
    }
    legendre(n, xi, pn, dpn);
    x(i) = xi;
    w(i) = 2.0 / ((1.0 - xi * xi) * dpn * dpn);
  }
}

double lagrange_basis(const Eigen::VectorXd& nodes, int l, double t) {
  double v = 1.0;
  for (int i = 0; i < nodes.size(); ++i)
    if (i != l) v *= (t - nodes(i)) / (nodes(l) - nodes(i));
  return v;
}

}  // namespace

LglBasis lgl_basis(int K) {
  if (K < 2 || K > 8) throw std::invalid_argument("lgl_basis: K must be in [2,8]");

  LglBasis b;
  b.nodes.resize(K);
  b.nodes(0) = -1.0;
  b.nodes(K - 1) = 1.0;

  const int n = K - 1;  // interior nodes are roots of P'_n
  if (K > 2) {
    // Jacobi matrix of the (alpha=beta=1) Jacobi polynomials, whose roots
    // are exactly the roots of P'_n
    const int ni = K - 2;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(ni, ni);
    for (int j = 1; j < ni; ++j) {
      const double b2 = double(j) * (j + 2.0) / ((2.0 * j + 1.0) * (2.0 * j + 3.0));
      J(j, j - 1) = J(j - 1, j) = std::sqrt(b2);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    for (int i = 0; i < ni; ++i) {
      double x = es.eigenvalues()(i), pn, dpn;
      // Newton on P'_n with (1-x^2) P''_n = 2x P'_n - n(n+1) P_n
      for (int it = 0; it < 2; ++it) {
        legendre(n, x, pn, dpn);
        const double ddpn = (2.0 * x * dpn - n * (n + 1.0) * pn) / (1.0 - x * x);
        x -= dpn / ddpn;
      }
      b.nodes(i + 1) = x;
    }
    // enforce the symmetry the eigenproblem has analytically
    for (int i = 1; i < K - 1; ++i) {
      const double s = 0.5 * (b.nodes(i) - b.nodes(K - 1 - i));
      b.nodes(i) = s;
    }
    for (int i = 1; i < K - 1; ++i) b.nodes(K - 1 - i) = -b.nodes(i);
  }

  b.weights.resize(K);
  for (int j = 0; j < K; ++j) {
    double pn, dpn;
    legendre(n, b.nodes(j), pn, dpn);
    b.weights(j) = 2.0 / (K * n * pn * pn);
  }

  // int_matrix(j,l) = integral_{-1}^{node j} of Lagrange basis l; the basis
  // has degree K-1, so an 8-point interior Gauss rule integrates it exactly
  Eigen::VectorXd gx, gw;
  gauss_legendre(8, gx, gw);
  b.int_matrix = Eigen::MatrixXd::Zero(K, K);
  for (int j = 1; j < K; ++j) {
    const double a = -1.0, c = b.nodes(j);
    const double half = 0.5 * (c - a), mid = 0.5 * (c + a);
    for (int l = 0; l < K; ++l) {
      double acc = 0.0;
      for (int q = 0; q < gx.size(); ++q)
        acc += gw(q) * lagrange_basis(b.nodes, l, mid + half * gx(q));
      b.int_matrix(j, l) = half * acc;
    }
  }
  return b;
}

Eigen::MatrixXd integrate_states(const LglBasis& basis, const Eigen::VectorXd& x_first,
                                 const Eigen::MatrixXd& rhs, double h) {
  const int K = basis.order();
  if (rhs.cols() != K) throw std::invalid_argument("integrate_states: rhs must have K columns");
  Eigen::MatrixXd X = (0.5 * h) * rhs * basis.int_matrix.transpose();
  X.colwise() += x_first;
  return X;
}

}  // namespace revolve
