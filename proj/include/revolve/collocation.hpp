#pragma once

// Legendre-Gauss-Lobatto collocation basis in integral form on [-1,1].
// Row j of int_matrix integrates the Lagrange interpolant of nodal samples
// from -1 up to node j, so the first row is zero and the last row equals the
// quadrature weights. Quadrature is exact through degree 2K-3.

#include <Eigen/Core>

namespace revolve {

struct LglBasis {
  Eigen::VectorXd nodes;       // K points, -1 = nodes(0) < ... < nodes(K-1) = 1
  Eigen::VectorXd weights;     // positive, sum to 2
  Eigen::MatrixXd int_matrix;  // K x K integral operator described above
  int order() const { return static_cast<int>(nodes.size()); }
};

// K in [2,8]. Interior nodes are the roots of P'_{K-1} found as eigenvalues
// of the Jacobi matrix of the (1,1)-Jacobi polynomials, polished by Newton.
LglBasis lgl_basis(int K);

// Reconstruct states at all K nodes of one subinterval of width h from the
// first-node state and the K nodal derivative samples (columns of rhs):
//   X(:,j) = x_first + (h/2) * sum_l int_matrix(j,l) rhs(:,l).
Eigen::MatrixXd integrate_states(const LglBasis& basis, const Eigen::VectorXd& x_first,
                                 const Eigen::MatrixXd& rhs, double h);

}  // namespace revolve
