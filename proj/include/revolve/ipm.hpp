#pragma once

// Bundled primal-dual interior-point solver for the NlpProblem contract.
//
// Inequality rows receive slack variables; every finite bound is relaxed by a
// tiny margin so equality constraints may pin variables exactly onto their
// bounds. Search directions come from a sparse symmetric quasi-definite KKT
// system factored with LDL^T (inertia-corrected by diagonal regularization);
// the Hessian block is either the problem's exact Lagrangian Hessian or a
// limited-memory BFGS approximation applied through a low-rank update of the
// factorized system. Globalization is a nonmonotone l1-penalty line search
// with fraction-to-boundary stepping and a monotone barrier schedule.
//
// Deterministic: no randomness, no threads; repeated calls with the same
// problem, start point, and options produce identical iterates.

#include <Eigen/Core>

#include "revolve/nlp.hpp"

namespace revolve {

SolveResult solve_interior_point(const NlpProblem& problem, const Eigen::VectorXd& x0,
                                 const SolveOptions& options = {});

}  // namespace revolve
